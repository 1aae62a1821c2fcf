//! Dense matrices over the exact rationals.
//!
//! Small and direct: enough linear algebra (products, inverses, ranks) to
//! support nilpotent-orbit computations and constant factors of loop-group
//! elements. Not a general-purpose matrix library.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> BigRational {
    BigRational::from(BigInt::from(num))
}

/// A square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut m = QMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// Build from integer rows; panics if the shape is not `n x n`.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        QMatrix::from_fn(n, |i, j| rat_int(rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale_row(&mut self, i: usize, c: &BigRational) {
        for j in 0..self.n {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    pub fn pow(&self, k: usize) -> QMatrix {
        let mut acc = QMatrix::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Rank over the rationals by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !m[r * n + col].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_range(p, row, n, col);
            let inv = m[row * n + col].clone();
            for r in (row + 1)..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = &m[r * n + col] / &inv;
                for c in col..n {
                    let v = &m[r * n + c] - &factor * &m[row * n + c];
                    m[r * n + c] = v;
                }
            }
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }

    pub fn det(&self) -> BigRational {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r * n + col].is_zero());
            let Some(p) = pivot else {
                return BigRational::zero();
            };
            if p != col {
                m.swap_range(p, col, n, col);
                det = -det;
            }
            let inv = m[col * n + col].clone();
            det *= &inv;
            for r in (col + 1)..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = &m[r * n + col] / &inv;
                for c in col..n {
                    let v = &m[r * n + c] - &factor * &m[col * n + c];
                    m[r * n + c] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; errors on singular input.
    pub fn inverse(&self) -> Result<QMatrix> {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r * n + col].is_zero());
            let Some(p) = pivot else {
                return Err(Error::Singular);
            };
            if p != col {
                m.swap_range(p, col, n, 0);
                inv.entries.swap_range(p, col, n, 0);
            }
            let d = m[col * n + col].clone();
            for c in 0..n {
                m[col * n + c] /= &d;
                inv.entries[col * n + c] /= &d;
            }
            for r in 0..n {
                if r == col || m[r * n + col].is_zero() {
                    continue;
                }
                let factor = m[r * n + col].clone();
                for c in 0..n {
                    let v = &m[r * n + c] - &factor * &m[col * n + c];
                    m[r * n + c] = v;
                    let v = &inv.entries[r * n + c] - &factor * &inv.entries[col * n + c];
                    inv.entries[r * n + c] = v;
                }
            }
        }
        Ok(inv)
    }

    /// True iff some power (at most the `n`-th) vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n).is_zero()
    }
}

trait SwapRange {
    fn swap_range(&mut self, r1: usize, r2: usize, n: usize, from_col: usize);
}

impl SwapRange for Vec<BigRational> {
    fn swap_range(&mut self, r1: usize, r2: usize, n: usize, from_col: usize) {
        if r1 == r2 {
            return;
        }
        for c in from_col..n {
            self.swap(r1 * n + c, r2 * n + c);
        }
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        QMatrix::from_fn(n, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..n {
                if !self.get(i, k).is_zero() && !rhs.get(k, j).is_zero() {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
            }
            acc
        })
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Dimension of the commutant `{X : XZ = ZX}` inside `gl_n`, as the exact
/// nullity of the commutator operator `X -> XZ - ZX` on `n^2` coordinates.
pub fn commutant_dim(z: &QMatrix) -> usize {
    let n = z.n();
    // Row (i,j) of the operator matrix holds the coefficients of
    // (XZ - ZX)_{ij} as a linear form in the entries X_{kl}.
    let mut op = vec![BigRational::zero(); n * n * n * n];
    let idx = |i: usize, j: usize| i * n + j;
    for i in 0..n {
        for j in 0..n {
            let row = idx(i, j);
            for k in 0..n {
                // (XZ)_{ij} = sum_k X_{ik} Z_{kj}
                op[row * n * n + idx(i, k)] += z.get(k, j);
                // (ZX)_{ij} = sum_k Z_{ik} X_{kj}
                op[row * n * n + idx(k, j)] -= z.get(i, k);
            }
        }
    }
    let big = QMatrix {
        n: n * n,
        entries: op,
    };
    n * n - big.rank()
}
