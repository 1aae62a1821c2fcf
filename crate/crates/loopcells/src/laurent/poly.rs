//! Laurent polynomials in one variable `t` with exact rational coefficients.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial, stored as a map from exponent to nonzero rational
/// coefficient (ascending exponent order).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with nonzero coefficient; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some((exp, coeff))` iff the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn mul_tpow(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e + k, v.clone()))
                .collect(),
        }
    }

    /// Evaluation at `t = 0` for integral polynomials: the constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    /// Exact polynomial division; errors if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::Internal("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let dv = divisor.max_exp().unwrap();
        let dc = divisor.coeff(dv);
        // When the division is exact, every quotient exponent generated
        // top-down stays at or above val(self) - val(divisor).
        let min_qexp = self.valuation().unwrap() - divisor.valuation().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rv) = rem.max_exp() {
            let qe = rv - dv;
            if qe < min_qexp {
                return Err(Error::Internal(format!(
                    "inexact polynomial division: remainder {}",
                    rem
                )));
            }
            let term = LaurentPoly::monomial(qe, rem.coeff(rv) / &dc);
            quot = &quot + &term;
            rem = &rem - &(&term * divisor);
        }
        Ok(quot)
    }

    /// Low-order series quotient: returns `q` with
    /// `valuation(self - q * divisor) >= prec` and
    /// `valuation(q) = valuation(self) - valuation(divisor)`.
    ///
    /// Walks the residual from its lowest term upward, so when the division
    /// happens to be exact it terminates with a zero residual.
    pub fn series_quotient(
        &self,
        divisor: &LaurentPoly,
        prec: i64,
        steps: &mut u64,
    ) -> LaurentPoly {
        let dv = divisor.valuation().expect("nonzero divisor");
        let dc = divisor.coeff(dv);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rv) = rem.valuation() {
            if rv >= prec {
                break;
            }
            *steps += 1;
            let term = LaurentPoly::monomial(rv - dv, rem.coeff(rv) / &dc);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        quot
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

fn coeff_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Human form `coef*t^exp + ...`, ascending exponents; `0` when zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{}", coeff_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", coeff_string(&mag))?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

fn bigint_to_i128(x: &BigInt) -> std::result::Result<i128, String> {
    i128::try_from(x).map_err(|_| format!("coefficient {} exceeds the i128 wire format", x))
}

impl Serialize for LaurentPoly {
    /// Wire format: list of `[exp, num, den]` triples, ascending exponents.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut triples: Vec<(i64, i128, i128)> = Vec::with_capacity(self.terms.len());
        for (&e, c) in &self.terms {
            let num = bigint_to_i128(c.numer()).map_err(serde::ser::Error::custom)?;
            let den = bigint_to_i128(c.denom()).map_err(serde::ser::Error::custom)?;
            triples.push((e, num, den));
        }
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let triples: Vec<(i64, i128, i128)> = Vec::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        let mut last: Option<i64> = None;
        for (e, num, den) in triples {
            if den == 0 {
                return Err(D::Error::custom("zero denominator"));
            }
            if num == 0 {
                return Err(D::Error::custom("explicit zero coefficient"));
            }
            if last.is_some_and(|l| l >= e) {
                return Err(D::Error::custom("exponents must be strictly ascending"));
            }
            last = Some(e);
            p.add_term(e, BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
        Ok(p)
    }
}
