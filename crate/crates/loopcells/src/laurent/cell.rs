//! Iwahori-Bruhat cell extraction: given an invertible Laurent-polynomial
//! matrix `M`, find the unique affine permutation `w` with `M` in `B w B`.
//!
//! The elimination picks pivots of minimal valuation (ties: largest row,
//! then smallest column) and clears the pivot's row and column using only
//! Iwahori-legal operations: unit multiples may flow from later rows upward
//! and from earlier columns rightward, while the opposite directions demand
//! `t`-divisible multiples. Clearing is performed to a finite precision
//! `prec` that exceeds every possible pivot valuation by at least one; the
//! leftover terms of valuation `>= prec` are absorbed into the right Iwahori
//! factor, which is verified at the end by an explicit membership check of
//! `w^{-1} * (final matrix)`.

use crate::affine::{AffinePermutation, Side};
use crate::error::{Error, Result};
use crate::laurent::matrix::{membership, LaurentMatrix, Subgroup};
use crate::laurent::poly::LaurentPoly;

/// The label `w` of the Bruhat cell `B w B` containing `M`.
///
/// Requires `det M` to be a unit monomial. A determinant of nonzero
/// `t`-order `k` is normalized away by the scalar `t^{-k/n}` when `n`
/// divides `k`, and rejected otherwise.
pub fn extract_cell(m: &LaurentMatrix) -> Result<AffinePermutation> {
    let n = m.n();
    if n < 2 {
        return Err(Error::InvalidPermutation("rank must be >= 2".into()));
    }
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let Some((k, _)) = det.as_monomial() else {
        return Err(Error::NonUnimodular(format!(
            "determinant {} is not a unit monomial",
            det
        )));
    };
    let normalized;
    let m = if k == 0 {
        m
    } else if k % (n as i64) == 0 {
        normalized = m.mul_tpow(-k / (n as i64));
        &normalized
    } else {
        return Err(Error::NonUnimodular(format!(
            "determinant order {} is not a multiple of n = {}",
            k, n
        )));
    };
    eliminate(m)
}

/// The minimal representative of the cell of `M` modulo the parahoric of
/// the simple reflections `j_set`.
pub fn extract_cell_mod(m: &LaurentMatrix, j_set: &[usize]) -> Result<AffinePermutation> {
    extract_cell(m)?.min_coset_rep(j_set, Side::Right)
}

fn eliminate(m: &LaurentMatrix) -> Result<AffinePermutation> {
    let n = m.n();
    let mu = m.min_valuation().ok_or(Error::Singular)?;
    let max_exp = m.max_exponent().unwrap_or(0);
    // Final pivot valuations v_i satisfy v_i >= mu and sum to 0, so each is
    // at most -(n-1)*mu; clearing to `prec` beyond that bound lets the
    // residue be absorbed into the Iwahori factor.
    let vmax_bound = std::cmp::max(0, -((n as i64 - 1) * std::cmp::min(0, mu)));
    let prec = vmax_bound + 1;
    let spread = (max_exp - mu).max(0) as u64;
    let budget = 8 * (n as u64) * (n as u64) * (spread + prec.unsigned_abs() + 2);

    let mut a: Vec<LaurentPoly> = m.entries().to_vec();
    let mut row_done = vec![false; n];
    let mut col_done = vec![false; n];
    let mut pivots: Vec<(usize, usize, i64)> = Vec::with_capacity(n);
    let mut steps: u64 = 0;

    for _round in 0..n {
        // Pivot: minimal valuation, then largest row, then smallest column.
        let mut best: Option<(i64, usize, usize)> = None;
        for r in 0..n {
            if row_done[r] {
                continue;
            }
            for c in 0..n {
                if col_done[c] {
                    continue;
                }
                let Some(v) = a[r * n + c].valuation() else {
                    continue;
                };
                let better = match best {
                    None => true,
                    Some((bv, br, bc)) => {
                        (v, std::cmp::Reverse(r), c) < (bv, std::cmp::Reverse(br), bc)
                    }
                };
                if better {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((pv, pr, pc)) = best else {
            return Err(Error::Singular);
        };

        // Clear the pivot column with row operations row_r += p * row_pr.
        let pivot = a[pr * n + pc].clone();
        for r in 0..n {
            if r == pr {
                continue;
            }
            let entry = &a[r * n + pc];
            let Some(v) = entry.valuation() else { continue };
            if v >= prec {
                continue; // residue, absorbed by the Iwahori factor
            }
            if r > pr && v <= pv {
                return Err(Error::Internal(
                    "pivot tie-break violated below the pivot".into(),
                ));
            }
            let q = entry.series_quotient(&pivot, prec, &mut steps);
            let row_pr: Vec<LaurentPoly> = (0..n).map(|c| a[pr * n + c].clone()).collect();
            for (c, src) in row_pr.iter().enumerate() {
                if src.is_zero() {
                    continue;
                }
                let delta = &q * src;
                a[r * n + c] = &a[r * n + c] - &delta;
            }
            steps += 1;
            if steps > budget {
                return Err(Error::Internal("elimination step budget exceeded".into()));
            }
        }

        // Clear the pivot row with column operations col_c += p * col_pc.
        for c in 0..n {
            if c == pc {
                continue;
            }
            let entry = &a[pr * n + c];
            let Some(v) = entry.valuation() else { continue };
            if v >= prec {
                continue;
            }
            if c < pc && v <= pv {
                return Err(Error::Internal(
                    "pivot tie-break violated left of the pivot".into(),
                ));
            }
            let q = entry.series_quotient(&pivot, prec, &mut steps);
            let col_pc: Vec<LaurentPoly> = (0..n).map(|r| a[r * n + pc].clone()).collect();
            for (r, src) in col_pc.iter().enumerate() {
                if src.is_zero() {
                    continue;
                }
                let delta = &q * src;
                a[r * n + c] = &a[r * n + c] - &delta;
            }
            steps += 1;
            if steps > budget {
                return Err(Error::Internal("elimination step budget exceeded".into()));
            }
        }

        row_done[pr] = true;
        col_done[pc] = true;
        pivots.push((pr, pc, pv));
    }

    let mut sigma = vec![0usize; n];
    let mut exps = vec![0i64; n];
    for &(r, c, v) in &pivots {
        sigma[c] = r + 1;
        exps[c] = v;
    }
    let w = AffinePermutation::new(sigma, exps)
        .map_err(|e| Error::Internal(format!("pivot pattern is not a cell label: {}", e)))?;

    // Certificate: w^{-1} * (final matrix) must land in the Iwahori subgroup,
    // proving final = w~ * b and hence M in B w B.
    let mut w_inv = LaurentMatrix::zero(n);
    for &(r, c, v) in &pivots {
        w_inv.set(c, r, LaurentPoly::monomial(-v, crate::rational::rat_int(1)));
    }
    let final_m = LaurentMatrix::from_fn(n, |i, j| a[i * n + j].clone());
    let rest = &w_inv * &final_m;
    if !membership(&rest, &Subgroup::Iwahori) {
        return Err(Error::Internal(
            "elimination certificate failed: residue is not Iwahori".into(),
        ));
    }
    Ok(w)
}
