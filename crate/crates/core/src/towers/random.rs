use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexes::GradedComplex;
use crate::error::{Error, Result};
use crate::flinalg::{validate_prime, FpMatrix};
use crate::towers::{FilteredComplex, FilteredMap, Generator, Tower, TowerMap};

pub const MAX_RANDOM_GENERATORS: usize = 200;
pub const MAX_RANDOM_LEVELS: usize = 32;

/// Probability that an allowed off-diagonal entry of the change of basis is nonzero.
const MIXING: f64 = 0.3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub p: u64,
    /// Filtrations are drawn from `0..max_levels`.
    pub max_levels: usize,
    pub max_generators: usize,
    /// Inclusive degree range of the generators.
    pub degree_window: (i32, i32),
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            p: 2,
            max_levels: 6,
            max_generators: 40,
            degree_window: (0, 4),
        }
    }
}

impl RandomParams {
    pub fn validate(&self) -> Result<u32> {
        let p = validate_prime(self.p)?;
        if self.max_levels == 0 || self.max_levels > MAX_RANDOM_LEVELS {
            return Err(Error::Params(format!(
                "max_levels must be in 1..={MAX_RANDOM_LEVELS}, got {}",
                self.max_levels
            )));
        }
        if self.max_generators == 0 || self.max_generators > MAX_RANDOM_GENERATORS {
            return Err(Error::Params(format!(
                "max_generators must be in 1..={MAX_RANDOM_GENERATORS}, got {}",
                self.max_generators
            )));
        }
        let (lo, hi) = self.degree_window;
        if lo > hi {
            return Err(Error::Params(format!("empty degree window [{lo}, {hi}]")));
        }
        Ok(p)
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut ChaCha8Rng, p: u32) -> u32 {
    rng.gen_range(1..p)
}

/// Spheres and disks with random degrees and filtrations, then a random
/// filtration-preserving change of basis.
fn random_filtered_with(rng: &mut ChaCha8Rng, p: u32, params: &RandomParams, prefix: &str) -> FilteredComplex {
    let (lo, hi) = params.degree_window;
    let target = rng.gen_range(1..=params.max_generators);
    let mut generators: Vec<Generator> = Vec::new();
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    let push = |generators: &mut Vec<Generator>, degree: i32, filtration: usize| {
        generators.push(Generator {
            name: String::new(),
            degree,
            filtration,
        });
        generators.len() - 1
    };
    while generators.len() < target {
        let room = target - generators.len();
        if room >= 2 && hi > lo && rng.gen_bool(0.6) {
            let n = rng.gen_range(lo + 1..=hi);
            let fa = rng.gen_range(0..params.max_levels);
            let fb = rng.gen_range(fa..params.max_levels);
            let a = push(&mut generators, n, fa);
            let b = push(&mut generators, n - 1, fb);
            edges.push((b, a, nonzero(rng, p)));
        } else {
            let n = rng.gen_range(lo..=hi);
            let f = rng.gen_range(0..params.max_levels);
            push(&mut generators, n, f);
        }
    }
    for (i, g) in generators.iter_mut().enumerate() {
        g.name = format!("{prefix}{i}");
    }
    let total = generators.len();
    let mut d = FpMatrix::zeros(p, total, total);
    for (i, j, c) in edges {
        d.set(i, j, c);
    }

    // u is unit triangular for the order (filtration, index) and only mixes a
    // generator with same-degree generators of filtration at least its own.
    let mut u = FpMatrix::identity(p, total);
    for j in 0..total {
        for i in 0..total {
            let (gi, gj) = (&generators[i], &generators[j]);
            let later = (gi.filtration, i) > (gj.filtration, j);
            if gi.degree == gj.degree && later && rng.gen_bool(MIXING) {
                u.set(i, j, rng.gen_range(0..p));
            }
        }
    }
    let inverse_columns: Vec<Vec<u32>> = (0..total)
        .map(|k| {
            let mut e = vec![0; total];
            e[k] = 1;
            u.solve(&e).expect("unit triangular matrices are invertible")
        })
        .collect();
    let u_inv = FpMatrix::from_columns(p, total, &inverse_columns);
    let conjugated = u_inv.mul(&d).mul(&u);
    FilteredComplex::new(p, generators, conjugated).expect("conjugating elementary pieces keeps d² = 0")
}

pub fn random_filtered(seed: u64, params: &RandomParams) -> Result<FilteredComplex> {
    let p = params.validate()?;
    Ok(random_filtered_with(&mut rng_for(seed), p, params, "g"))
}

pub fn random_tower(seed: u64, params: &RandomParams) -> Result<Tower> {
    Ok(random_filtered(seed, params)?.to_tower())
}

/// A random bounded complex, for smashing against towers.
pub fn random_complex(seed: u64, p: u64, max_generators: usize, degree_window: (i32, i32)) -> Result<GradedComplex> {
    let params = RandomParams {
        p,
        max_levels: 1,
        max_generators,
        degree_window,
    };
    Ok(random_tower(seed, &params)?.level(0).clone())
}

/// A uniformly random filtered chain map `X → Y`, drawn from the solution
/// space of `d f = f d` over the entries allowed by degree and filtration.
fn random_filtered_map(rng: &mut ChaCha8Rng, x: &FilteredComplex, y: &FilteredComplex) -> FilteredMap {
    let p = x.p();
    let (xs, ys) = (x.generators(), y.generators());
    let mut variables = Vec::new();
    for (j, from) in xs.iter().enumerate() {
        for (i, to) in ys.iter().enumerate() {
            if to.degree == from.degree && to.filtration >= from.filtration {
                variables.push((i, j));
            }
        }
    }
    // one equation per entry (i, j) of d_Y f - f d_X, with deg y_i = deg x_j - 1
    let mut equations = Vec::new();
    for (j, from) in xs.iter().enumerate() {
        for (i, to) in ys.iter().enumerate() {
            if to.degree == from.degree - 1 {
                equations.push((i, j));
            }
        }
    }
    let (dx, dy) = (x.differential(), y.differential());
    let mut system = FpMatrix::zeros(p, equations.len(), variables.len());
    for (row, &(i, j)) in equations.iter().enumerate() {
        for (col, &(a, b)) in variables.iter().enumerate() {
            // coefficient of f_ab in (d_Y f)_ij - (f d_X)_ij
            let mut c = if b == j { dy.get(i, a) } else { 0 };
            if a == i {
                c = (c + p - dx.get(b, j)) % p;
            }
            system.set(row, col, c);
        }
    }
    let kernel = system.kernel();
    let mut values = vec![0u32; variables.len()];
    for v in kernel.basis() {
        let c = rng.gen_range(0..p);
        for (k, &e) in v.iter().enumerate() {
            values[k] = (values[k] + c * e) % p;
        }
    }
    let mut matrix = FpMatrix::zeros(p, ys.len(), xs.len());
    for (&(i, j), &v) in variables.iter().zip(&values) {
        matrix.set(i, j, v);
    }
    FilteredMap::new(x.clone(), y.clone(), matrix).expect("kernel elements are filtered chain maps")
}

/// Random towers `X`, `Y` and a random tower map between them.
pub fn random_tower_map(seed: u64, params: &RandomParams) -> Result<TowerMap> {
    let p = params.validate()?;
    let mut rng = rng_for(seed);
    let x = random_filtered_with(&mut rng, p, params, "x");
    let y = random_filtered_with(&mut rng, p, params, "y");
    Ok(random_filtered_map(&mut rng, &x, &y).to_tower_map())
}

/// `Y`, `Y'` and the split tower `Y ⊕ Y'`, with inclusion `Y → X` and projection `X → Y`.
pub fn random_split(seed: u64, params: &RandomParams) -> Result<(Tower, Tower, TowerMap, TowerMap)> {
    let p = params.validate()?;
    let mut rng = rng_for(seed);
    let y = random_filtered_with(&mut rng, p, params, "y").to_tower();
    let other = random_filtered_with(&mut rng, p, params, "z").to_tower();
    let split = y.direct_sum(&other)?;
    let sum = split.sum.clone();
    Ok((sum, y, split.include_first, split.project_first))
}
