//! Text parsing for Laurent polynomials and matrices.
//!
//! Polynomial grammar: terms joined by `+`/`-`, each term `coef`,
//! `coef*t^exp`, `t^exp`, or `t`, with `coef` an integer or `a/b`.
//! Matrix text format: a line with `n`, then `n` lines of `n` entries
//! separated by `;`. Lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::laurent::matrix::LaurentMatrix;
use crate::laurent::poly::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::str::FromStr;

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<LaurentPoly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = LaurentPoly::zero();
        for (negative, term) in split_terms(s)? {
            let (exp, coeff) = parse_term(term)?;
            out.add_term(exp, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// Split on top-level `+`/`-`, keeping each term's sign. A `-` directly
/// after `^` or `/` binds to the following number instead.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = s.as_bytes();
    let mut parts = Vec::new();
    let mut start = 0;
    let mut sign = false;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '+' || c == '-' {
            let prev = s[..i].trim_end().chars().next_back();
            let binds_number = matches!(prev, Some('^') | Some('/') | Some('*'));
            if !binds_number {
                let chunk = s[start..i].trim();
                if chunk.is_empty() {
                    // Only a single unary sign at the very start is allowed.
                    if i != 0 {
                        return Err(Error::Parse(format!("dangling sign in '{}'", s)));
                    }
                } else {
                    parts.push((sign, chunk));
                }
                sign = c == '-';
                start = i + 1;
            }
        }
        i += 1;
    }
    let chunk = s[start..].trim();
    if chunk.is_empty() {
        return Err(Error::Parse(format!("dangling sign in '{}'", s)));
    }
    parts.push((sign, chunk));
    Ok(parts)
}

fn parse_term(term: &str) -> Result<(i64, BigRational)> {
    let term = term.trim();
    let (coef_str, t_str) = match term.find('t') {
        None => (term, None),
        Some(pos) => {
            let before = term[..pos].trim().trim_end_matches('*').trim();
            (before, Some(term[pos..].trim()))
        }
    };
    let coeff = if coef_str.is_empty() {
        if t_str.is_none() {
            return Err(Error::Parse(format!("empty term in '{}'", term)));
        }
        BigRational::one()
    } else {
        parse_rational(coef_str)?
    };
    let exp = match t_str {
        None => 0,
        Some("t") => 1,
        Some(rest) => {
            let Some(exp_str) = rest.strip_prefix("t^") else {
                return Err(Error::Parse(format!("bad t-power in '{}'", term)));
            };
            exp_str
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in '{}'", term)))?
        }
    };
    Ok((exp, coeff))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((a, b)) => (a.trim(), b.trim()),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad numerator '{}'", s)))?;
    let den =
        BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad denominator '{}'", s)))?;
    if den == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in '{}'", s)));
    }
    Ok(BigRational::new(num, den))
}

/// Parse the plain-text matrix format.
pub fn parse_matrix_text(input: &str) -> Result<LaurentMatrix> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the matrix size".into()))?;
    if n == 0 {
        return Err(Error::Parse("matrix size must be positive".into()));
    }
    let mut m = LaurentMatrix::zero(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
        let cells: Vec<&str> = line.split(';').map(str::trim).collect();
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                cells.len(),
                n
            )));
        }
        for (j, cell) in cells.iter().enumerate() {
            m.set(i, j, cell.parse()?);
        }
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after the last row".into()));
    }
    Ok(m)
}

/// Parse a matrix from either the JSON or the plain-text format, deciding
/// by the leading character.
pub fn parse_matrix_auto(input: &str) -> Result<LaurentMatrix> {
    if input.trim_start().starts_with('{') {
        serde_json::from_str(input).map_err(|e| Error::Parse(format!("json: {}", e)))
    } else {
        parse_matrix_text(input)
    }
}
