//! Square matrices of Laurent polynomials: exact ring operations,
//! fraction-free determinants, inverses of unimodular matrices, the
//! affine-permutation projection, and loop-group membership predicates.

use crate::affine::AffinePermutation;
use crate::error::{Error, Result};
use crate::laurent::poly::LaurentPoly;
use crate::rational::QMatrix;
use crate::tableau::ParabolicDescriptor;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An `n x n` matrix of Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl Serialize for LaurentMatrix {
    /// Wire format: `{n, entries}` with `entries` a nested `n x n` grid of
    /// term-triple lists.
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<&LaurentPoly>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut st = serializer.serialize_struct("LaurentMatrix", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl LaurentMatrix {
    pub fn zero(n: usize) -> Self {
        LaurentMatrix {
            n,
            entries: vec![LaurentPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut m = LaurentMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// Embed a constant rational matrix.
    pub fn from_rational(q: &QMatrix) -> Self {
        LaurentMatrix::from_fn(q.n(), |i, j| LaurentPoly::constant(q.get(i, j).clone()))
    }

    /// `1 - t^{-1} N` for a constant matrix `N`.
    pub fn one_minus_tinv(n_mat: &QMatrix) -> Self {
        let n = n_mat.n();
        LaurentMatrix::from_fn(n, |i, j| {
            let mut p = LaurentPoly::monomial(-1, -n_mat.get(i, j).clone());
            if i == j {
                p.add_term(0, BigRational::one());
            }
            p
        })
    }

    /// The monomial matrix `sum t^{exps[i]} E_{sigma(i), i}` of an affine
    /// permutation, with all coefficients `1`.
    pub fn lift(w: &AffinePermutation) -> Self {
        let n = w.n();
        let mut m = LaurentMatrix::zero(n);
        for i in 0..n {
            m.set(
                w.sigma()[i] - 1,
                i,
                LaurentPoly::monomial(w.exps()[i], BigRational::one()),
            );
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn total_terms(&self) -> usize {
        self.entries.iter().map(|p| p.num_terms()).sum()
    }

    /// Multiply every entry by `t^k`.
    pub fn mul_tpow(&self, k: i64) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.mul_tpow(k)).collect(),
        }
    }

    /// Lowest valuation over all nonzero entries.
    pub fn min_valuation(&self) -> Option<i64> {
        self.entries.iter().filter_map(|p| p.valuation()).min()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.entries.iter().filter_map(|p| p.max_exp()).max()
    }

    /// Evaluation at `t = 0` (the matrix of constant terms). Meaningful for
    /// integral matrices; for general ones it simply drops non-`t^0` terms.
    pub fn constant_term_matrix(&self) -> QMatrix {
        QMatrix::from_fn(self.n, |i, j| self.get(i, j).constant_term())
    }

    /// Determinant by fraction-free (Bareiss) elimination over polynomials,
    /// after pulling the lowest power of `t` out of each row.
    pub fn det(&self) -> LaurentPoly {
        let n = self.n;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut shift_total: i64 = 0;
        let mut a: Vec<LaurentPoly> = Vec::with_capacity(n * n);
        for i in 0..n {
            let row_val = (0..n).filter_map(|j| self.get(i, j).valuation()).min();
            let Some(v) = row_val else {
                return LaurentPoly::zero();
            };
            shift_total += v;
            for j in 0..n {
                a.push(self.get(i, j).mul_tpow(-v));
            }
        }
        let mut sign = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return LaurentPoly::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, r * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k * n + k] * &a[i * n + j]) - &(&a[i * n + k] * &a[k * n + j]);
                    a[i * n + j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[i * n + k] = LaurentPoly::zero();
            }
            prev = a[k * n + k].clone();
        }
        let mut det = a[(n - 1) * n + (n - 1)].clone().mul_tpow(shift_total);
        if sign {
            det = -&det;
        }
        det
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> LaurentMatrix {
        let n = self.n;
        let rows: Vec<usize> = (0..n).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != skip_col).collect();
        LaurentMatrix::from_fn(n - 1, |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Inverse of a matrix whose determinant is a unit of the Laurent ring
    /// (a single nonzero term), via the adjugate.
    pub fn inverse_of_unimodular(&self) -> Result<LaurentMatrix> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let Some((dexp, dcoef)) = det.as_monomial() else {
            return Err(Error::NonUnimodular(format!(
                "determinant {} is not a unit monomial",
                det
            )));
        };
        let inv_det = LaurentPoly::monomial(-dexp, BigRational::one() / dcoef);
        let n = self.n;
        Ok(LaurentMatrix::from_fn(n, |i, j| {
            let cof = self.minor(j, i).det();
            let signed = if (i + j) % 2 == 0 { cof } else { -&cof };
            &signed * &inv_det
        }))
    }

    /// Project a monomial-support matrix to its affine permutation: keep the
    /// `t`-order of each entry and drop the scalar coefficient.
    pub fn apm(&self) -> Result<AffinePermutation> {
        let n = self.n;
        let mut sigma = vec![0usize; n];
        let mut exps = vec![0i64; n];
        let mut row_seen = vec![false; n];
        for col in 0..n {
            let mut found = None;
            for row in 0..n {
                let p = self.get(row, col);
                if p.is_zero() {
                    continue;
                }
                if found.is_some() {
                    return Err(Error::NonMonomial(format!(
                        "column {} has several nonzero entries",
                        col + 1
                    )));
                }
                let Some((e, _)) = p.as_monomial() else {
                    return Err(Error::NonMonomial(format!(
                        "entry ({}, {}) is not a monomial: {}",
                        row + 1,
                        col + 1,
                        p
                    )));
                };
                found = Some((row, e));
            }
            let Some((row, e)) = found else {
                return Err(Error::NonMonomial(format!("column {} is zero", col + 1)));
            };
            if row_seen[row] {
                return Err(Error::NonMonomial(format!(
                    "row {} has several nonzero entries",
                    row + 1
                )));
            }
            row_seen[row] = true;
            sigma[col] = row + 1;
            exps[col] = e;
        }
        if exps.iter().sum::<i64>() != 0 {
            return Err(Error::NonMonomial(format!(
                "t-orders sum to {}, not 0",
                exps.iter().sum::<i64>()
            )));
        }
        AffinePermutation::new(sigma, exps)
    }
}

impl Add for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, rhs.n);
        LaurentMatrix::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, rhs.n);
        LaurentMatrix::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn neg(self) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        LaurentMatrix::from_fn(n, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        })
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawMatrix {
    n: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(deserializer)?;
        if raw.entries.len() != raw.n || raw.entries.iter().any(|r| r.len() != raw.n) {
            return Err(D::Error::custom("entries must form an n x n grid"));
        }
        Ok(LaurentMatrix {
            n: raw.n,
            entries: raw.entries.into_iter().flatten().collect(),
        })
    }
}

/// The subgroups of the loop group with a membership predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    /// Integral, and upper triangular at `t = 0`.
    Iwahori,
    /// Integral with constant determinant.
    G0,
    /// Integral, and in the block pattern of the descriptor at `t = 0`.
    Parahoric(ParabolicDescriptor),
    /// Polynomial in `t^{-1}`, lower triangular at `t^{-1} = 0`.
    OppositeIwahori,
}

/// Membership predicate. Always a plain boolean: inputs outside the loop
/// group (non-unit determinant) are simply not members.
pub fn membership(m: &LaurentMatrix, subgroup: &Subgroup) -> bool {
    let n = m.n();
    let det = m.det();
    let det_is_nonzero_const = det.as_monomial().is_some_and(|(e, _)| e == 0);
    match subgroup {
        Subgroup::Iwahori | Subgroup::G0 | Subgroup::Parahoric(_) => {
            let integral = m
                .entries()
                .iter()
                .all(|p| p.valuation().is_none_or(|v| v >= 0));
            if !integral || !det_is_nonzero_const {
                return false;
            }
            match subgroup {
                Subgroup::G0 => true,
                Subgroup::Iwahori => {
                    let c = m.constant_term_matrix();
                    (0..n).all(|i| (0..i).all(|j| c.get(i, j).is_zero()))
                }
                Subgroup::Parahoric(desc) => {
                    if desc.n() != n {
                        return false;
                    }
                    let c = m.constant_term_matrix();
                    (0..n).all(|i| {
                        (0..n).all(|j| {
                            desc.block_of(i + 1) <= desc.block_of(j + 1) || c.get(i, j).is_zero()
                        })
                    })
                }
                _ => unreachable!(),
            }
        }
        Subgroup::OppositeIwahori => {
            let anti_integral = m
                .entries()
                .iter()
                .all(|p| p.max_exp().is_none_or(|v| v <= 0));
            if !anti_integral || !det_is_nonzero_const {
                return false;
            }
            let c = m.constant_term_matrix();
            (0..n).all(|i| ((i + 1)..n).all(|j| c.get(i, j).is_zero()))
        }
    }
}
