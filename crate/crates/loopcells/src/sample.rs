//! Seeded random generators for test matrices and group elements.
//!
//! Everything takes an explicit `Rng`, so callers (CLI sweeps, acceptance
//! runs, property tests) stay reproducible from a single seed.

use crate::affine::AffinePermutation;
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::rational::{rat_int, QMatrix};
use crate::tableau::ParabolicTableau;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Random word of the given length in the simple reflections.
pub fn random_word(n: usize, len: usize, rng: &mut impl Rng) -> AffinePermutation {
    let mut w = AffinePermutation::identity(n);
    for _ in 0..len {
        let j = rng.gen_range(0..n);
        w = &w * &AffinePermutation::simple_reflection(n, j).unwrap();
    }
    w
}

/// A monomial lift of `w` with random nonzero rational coefficients.
pub fn signed_lift(w: &AffinePermutation, rng: &mut impl Rng) -> LaurentMatrix {
    let n = w.n();
    let mut m = LaurentMatrix::zero(n);
    for i in 0..n {
        let c = loop {
            let v = rng.gen_range(-3i64..=3);
            if v != 0 {
                break v;
            }
        };
        m.set(
            w.sigma()[i] - 1,
            i,
            LaurentPoly::monomial(w.exps()[i], rat_int(c)),
        );
    }
    m
}

/// A random element of the Iwahori subgroup, as a product of elementary
/// unipotents with legal coefficient valuations and unit diagonals.
pub fn random_iwahori(n: usize, ops: usize, rng: &mut impl Rng) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(n);
    for _ in 0..ops {
        match rng.gen_range(0..3) {
            0 => {
                // unit coefficient above the diagonal
                let i = rng.gen_range(0..n - 1);
                let j = rng.gen_range(i + 1..n);
                let p = LaurentPoly::from_terms(
                    (0..=rng.gen_range(0..2)).map(|k| (k as i64, rat_int(rng.gen_range(-2..=2)))),
                );
                let mut e = LaurentMatrix::identity(n);
                e.set(i, j, p);
                m = if rng.gen() { &m * &e } else { &e * &m };
            }
            1 => {
                // t-divisible coefficient below the diagonal
                let j = rng.gen_range(0..n - 1);
                let i = rng.gen_range(j + 1..n);
                let p = LaurentPoly::from_terms(
                    (1..=rng.gen_range(1..3)).map(|k| (k as i64, rat_int(rng.gen_range(-2..=2)))),
                );
                let mut e = LaurentMatrix::identity(n);
                e.set(i, j, p);
                m = if rng.gen() { &m * &e } else { &e * &m };
            }
            _ => {
                let i = rng.gen_range(0..n);
                let c = [
                    rat_int(-1),
                    rat_int(2),
                    BigRational::new(1.into(), 2.into()),
                ][rng.gen_range(0..3)]
                .clone();
                let mut e = LaurentMatrix::identity(n);
                e.set(i, i, LaurentPoly::constant(c));
                m = &m * &e;
            }
        }
    }
    m
}

/// A random rational matrix with small integer entries and determinant 1,
/// normalized by scaling the first row; singular samples are redrawn.
pub fn random_sl_matrix(n: usize, rng: &mut impl Rng) -> QMatrix {
    loop {
        let m = QMatrix::from_fn(n, |_, _| rat_int(rng.gen_range(-2..=2)));
        let det = m.det();
        if det.is_zero() {
            continue;
        }
        let mut m = m;
        m.scale_row(0, &(BigRational::one() / det));
        debug_assert!(m.det().is_one());
        return m;
    }
}

/// A random element of the nilradical `u`: entries supported on the strict
/// block pattern of the tableau's descriptor.
pub fn random_u_element(tab: &ParabolicTableau, rng: &mut impl Rng) -> QMatrix {
    let n = tab.n();
    let desc = &tab.descriptor;
    QMatrix::from_fn(n, |i, j| {
        if desc.block_of(i + 1) < desc.block_of(j + 1) {
            rat_int(rng.gen_range(-2..=2))
        } else {
            BigRational::zero()
        }
    })
}
