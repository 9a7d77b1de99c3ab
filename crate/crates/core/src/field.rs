//! Prime-field arithmetic and dense matrix rank.

use crate::error::{Error, Result};

/// 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Arithmetic modulo a prime `p < 2^32`, with Barrett reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    // floor(2^64 / p)
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::BadModulus { modulus: p });
        }
        Ok(PrimeField {
            p,
            barrett: (u128::from(u64::MAX) + 1).div_euclid(u128::from(p)) as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.barrett)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// Embeds a non-negative integer.
    pub fn from_u64(&self, a: u64) -> u64 {
        self.reduce(a)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(DEFAULT_PRIME).expect("2^31 - 1 is prime")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense row-major matrix over a prime field; entries are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds from row vectors, reducing each entry.
    pub fn from_rows(field: &PrimeField, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        u64::from(self.data[i * self.cols + j])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v <= u32::MAX as u64);
        self.data[i * self.cols + j] = v as u32;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Rank over the field.
    pub fn rank(&self, field: &PrimeField) -> usize {
        self.rank_up_to(field, usize::MAX)
    }

    /// Rank, stopping early once `target` independent rows are found.
    ///
    /// Eliminates along the shorter dimension so the working rows are the
    /// longer vectors.
    pub fn rank_up_to(&self, field: &PrimeField, target: usize) -> usize {
        if self.rows > self.cols {
            return self.transpose().rank_up_to(field, target);
        }
        let mut work = self.clone();
        work.eliminate(field, target)
    }

    fn eliminate(&mut self, field: &PrimeField, target: usize) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let target = target.min(rows).min(cols);
        let mut rank = 0;
        let mut pivot_row = vec![0u64; cols];
        for col in 0..cols {
            if rank >= target {
                break;
            }
            let Some(found) = (rank..rows).find(|&i| self.data[i * cols + col] != 0) else {
                continue;
            };
            if found != rank {
                for j in col..cols {
                    self.data.swap(found * cols + j, rank * cols + j);
                }
            }
            let inv = field.inv(u64::from(self.data[rank * cols + col]));
            for (p, &v) in pivot_row[col..]
                .iter_mut()
                .zip(&self.data[rank * cols + col..(rank + 1) * cols])
            {
                *p = field.mul(u64::from(v), inv);
            }
            for i in rank + 1..rows {
                let lead = u64::from(self.data[i * cols + col]);
                if lead == 0 {
                    continue;
                }
                let factor = field.neg(lead);
                let row = &mut self.data[i * cols..(i + 1) * cols];
                row[col] = 0;
                for j in col + 1..cols {
                    let v = u64::from(row[j]) + factor * pivot_row[j];
                    row[j] = field.reduce(v) as u32;
                }
            }
            rank += 1;
        }
        rank
    }
}
