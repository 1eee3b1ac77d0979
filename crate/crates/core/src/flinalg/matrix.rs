use std::fmt;

use crate::error::{Error, Result};
use crate::flinalg::Subspace;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is a prime small enough for `u32` residues.
pub fn validate_prime(p: u64) -> Result<u32> {
    if p > u64::from(u32::MAX) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) + u64::from(b)) % u64::from(p)) as u32
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u32;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    result
}

pub(crate) fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(i64::from(p)) as u32
}

/// Brings `rows` to reduced row echelon form on the first `width` columns.
///
/// Columns past `width` are carried along but never pivoted on. Pivots are
/// chosen as the first nonzero entry in scan order, so the result depends only
/// on the input. Returns the pivot column of each nonzero row; those rows are
/// moved to the front.
pub(crate) fn row_reduce(rows: &mut [Vec<u32>], width: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(next, found);
        let inv = inv_mod(rows[next][col], p);
        if inv != 1 {
            for x in rows[next].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row[col] == 0 {
                continue;
            }
            let factor = neg_mod(row[col], p);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = add_mod(*x, mul_mod(factor, y, p), p);
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        debug_assert!(is_prime(u64::from(p)));
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer entries in row-major order, reducing mod `p`.
    pub fn from_entries(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let p = validate_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            p,
            rows,
            cols,
            data: entries.iter().map(|&x| reduce_i64(x, p)).collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % p;
            }
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x % p;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.data[i * self.cols + j] = value % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    (acc + u64::from(a) * u64::from(b)) % u64::from(self.p)
                }) as u32
            })
            .collect()
    }

    /// The product `self * rhs`, i.e. the map "first `rhs`, then `self`".
    pub fn compose(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.p != rhs.p {
            return Err(Error::PrimeMismatch(self.p, rhs.p));
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul(rhs))
    }

    pub(crate) fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let p = u64::from(self.p);
        let mut out = FpMatrix::zeros(self.p, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = u64::from(self.get(i, k));
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(rhs.row(k)) {
                    *x = (*x + a * u64::from(b)) % p;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = x as u32;
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = add_mod(*x, y, self.p);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let c = c % self.p;
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x = mul_mod(*x, c, self.p));
        out
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.p - 1)
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn echelon(&self) -> (FpMatrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = row_reduce(&mut rows, self.cols, self.p);
        (FpMatrix::from_rows(self.p, self.cols, &rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        row_reduce(&mut rows, self.cols, self.p).len()
    }

    /// Basis of `{v : Mv = 0}`.
    pub fn kernel(&self) -> Subspace {
        let mut rows = self.row_vecs();
        let pivots = row_reduce(&mut rows, self.cols, self.p);
        let mut is_pivot = vec![false; self.cols];
        pivots.iter().for_each(|&c| is_pivot[c] = true);
        let basis = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (row, &c) in rows.iter().zip(&pivots) {
                    v[c] = neg_mod(row[f], self.p);
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::from_vectors(self.p, self.cols, &basis).expect("kernel vectors have ambient length")
    }

    /// Column span.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.p, self.rows, &self.columns()).expect("columns have ambient length")
    }

    /// Some `x` with `Mx = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let mut rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i] % self.p);
                r
            })
            .collect();
        let pivots = row_reduce(&mut rows, self.cols, self.p);
        if rows[pivots.len()..].iter().any(|r| r[self.cols] != 0) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &c) in rows.iter().zip(&pivots) {
            x[c] = row[self.cols];
        }
        Some(x)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMatrix::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i * out.cols..i * out.cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * out.cols + self.cols..(i + 1) * out.cols].copy_from_slice(other.row(i));
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &FpMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            let start = (row + i) * self.cols + col;
            self.data[start..start + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block_diagonal(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Kronecker product: `(A ⊗ B)[(i, k), (j, l)] = A[i, j] * B[k, l]`.
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * out.cols + j * other.cols + l] =
                            mul_mod(a, other.get(k, l), self.p);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}) [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}
