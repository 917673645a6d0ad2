//! Dense matrices over a prime field.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl PrimeField {
    /// Primes up to `2^63` are accepted.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFieldMatrix")]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawFieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl TryFrom<RawFieldMatrix> for FieldMatrix {
    type Error = String;

    fn try_from(raw: RawFieldMatrix) -> std::result::Result<Self, String> {
        if raw.data.len() != raw.rows || raw.data.iter().any(|r| r.len() != raw.cols) {
            return Err(format!(
                "matrix data does not match shape {}x{}",
                raw.rows, raw.cols
            ));
        }
        if raw.data.iter().flatten().any(|&v| v >= raw.field.p) {
            return Err(format!("entry outside [0, {})", raw.field.p));
        }
        Ok(FieldMatrix {
            field: raw.field,
            rows: raw.rows,
            cols: raw.cols,
            data: raw.data,
        })
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    /// Values are reduced modulo `p`.
    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let data = (0..rows)
            .map(|r| (0..cols).map(|c| f(r, c) % field.p).collect())
            .collect();
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |r, c| rows[r][c])
    }

    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r][c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.data[c][r])
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), self.cols, |r, c| {
            self.data[rows[r]][c]
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, cols.len(), |r, c| {
            self.data[r][cols[c]]
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let w = self.cols;
        Self::from_fn(self.field, self.rows, w + other.cols, |r, c| {
            if c < w {
                self.data[r][c]
            } else {
                other.data[r][c - w]
            }
        })
    }

    pub fn mul(&self, other: &FieldMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r][k];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r][c] = f.add(out.data[r][c], f.mul(a, other.data[k][c]));
                }
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(sel) = (row..a.rows).find(|&r| a.data[r][col] != 0) else {
                continue;
            };
            a.data.swap(row, sel);
            let inv = f.inv(a.data[row][col]);
            for v in a.data[row].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row = a.data[row].clone();
            for r in 0..a.rows {
                let factor = a.data[r][col];
                if r == row || factor == 0 {
                    continue;
                }
                for (v, &pv) in a.data[r].iter_mut().zip(&pivot_row) {
                    *v = f.sub(*v, f.mul(factor, pv));
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns of the result span `{x : self * x = 0}` and are independent.
    pub fn right_null_space(&self) -> FieldMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.data[fc][k] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                out.data[pc][k] = f.neg(r.data[pr][fc]);
            }
        }
        out
    }

    /// Rows of the result span `{y : y * self = 0}` and are independent.
    pub fn left_null_space(&self) -> FieldMatrix {
        self.transpose().right_null_space().transpose()
    }

    /// Some solution of `self * x = b`, or `None` when the system is
    /// inconsistent (`rank(self) < rank([self | b])`).
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&FieldMatrix::from_fn(self.field, self.rows, 1, |r, _| b[r]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[pr][self.cols];
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        let f = self.field;
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Entries lifted to the symmetric range `(-p/2, p/2]`.
    pub fn lifted(&self) -> Vec<Vec<i64>> {
        let p = self.field.p as i64;
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if (v as i64) > p / 2 {
                            v as i64 - p
                        } else {
                            v as i64
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Exact rank over the matrix's field.
pub fn field_rank(a: &FieldMatrix) -> usize {
    a.rank()
}

/// Rows span the left null space of `a`.
pub fn left_null_space(a: &FieldMatrix) -> FieldMatrix {
    a.left_null_space()
}
