use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// A bidegree `(s, t)`: filtration `s` and total degree `t`; the stem is `t - s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub s: i32,
    pub t: i32,
}

impl Bidegree {
    pub const fn new(s: i32, t: i32) -> Self {
        Self { s, t }
    }

    /// The bidegree in filtration `s` and stem `n`.
    pub const fn from_stem(s: i32, n: i32) -> Self {
        Self { s, t: n + s }
    }

    pub const fn stem(self) -> i32 {
        self.t - self.s
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.s + rhs.s, self.t + rhs.t)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;

    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.s - rhs.s, self.t - rhs.t)
    }
}

/// Finitely supported bigraded F_p vector space, recorded by dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedModule {
    p: u32,
    dims: BTreeMap<Bidegree, usize>,
}

impl BigradedModule {
    /// Drops zero entries.
    pub fn new(p: u32, dims: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        Self {
            p,
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    /// Nonzero entries in bidegree order.
    pub fn entries(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Entries with `s` in `[lo, hi]`.
    pub fn restrict_s(&self, lo: i32, hi: i32) -> BigradedModule {
        Self::new(
            self.p,
            self.dims
                .iter()
                .filter(|(b, _)| (lo..=hi).contains(&b.s))
                .map(|(&b, &d)| (b, d)),
        )
    }
}
