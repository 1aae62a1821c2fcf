//! The named objects attached to a parabolic tableau: the dense-orbit
//! nilpotent `Z`, the Iwahori factors `b`, `c` with `b (1 - t^{-1}Z) c`
//! equal to a signed monomial lift of the cell `varpi`, the elements
//! `kappa = tau_q sigma` and the factorization `varpi = w_g kappa w_p`,
//! the maps `phi_P`, `psi`, `theta`, and the per-descriptor verdicts.

use crate::affine::{bruhat_leq, AffinePermutation, Coroot, Side};
use crate::error::{Error, Result};
use crate::laurent::{
    extract_cell, extract_cell_mod, membership, LaurentMatrix, LaurentPoly, Subgroup,
};
use crate::partition::Partition;
use crate::rational::{commutant_dim, QMatrix};
use crate::tableau::ParabolicTableau;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// A nilpotent rational matrix; nilpotency is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentMatrix {
    mat: QMatrix,
}

impl NilpotentMatrix {
    pub fn new(mat: QMatrix) -> Result<Self> {
        if !mat.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        Ok(NilpotentMatrix { mat })
    }

    pub fn zero(n: usize) -> Self {
        NilpotentMatrix {
            mat: QMatrix::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }
}

/// A point of the cotangent bundle: `g` with `det g = 1` and `Y` in the
/// nilradical of the descriptor's parabolic.
#[derive(Debug, Clone)]
pub struct CotangentPoint {
    g: QMatrix,
    y: NilpotentMatrix,
}

impl CotangentPoint {
    pub fn new(g: QMatrix, y: QMatrix, tab: &ParabolicTableau) -> Result<Self> {
        if g.n() != tab.n() || y.n() != tab.n() {
            return Err(Error::RankMismatch(g.n(), tab.n()));
        }
        if !g.det().is_one() {
            return Err(Error::InvalidDescriptor(
                "cotangent point needs det g = 1".into(),
            ));
        }
        if !in_nilradical_structural(tab, &y) {
            return Err(Error::InvalidDescriptor(
                "Y is not supported on the strict block pattern".into(),
            ));
        }
        Ok(CotangentPoint {
            g,
            y: NilpotentMatrix::new(y)?,
        })
    }

    pub fn g(&self) -> &QMatrix {
        &self.g
    }

    pub fn y(&self) -> &NilpotentMatrix {
        &self.y
    }
}

/// Block-pattern membership in the nilradical: entries vanish unless the
/// row's flag block strictly precedes the column's.
pub fn in_nilradical_structural(tab: &ParabolicTableau, m: &QMatrix) -> bool {
    let desc = &tab.descriptor;
    let n = tab.n();
    (0..n).all(|i| {
        (0..n).all(|j| desc.block_of(i + 1) < desc.block_of(j + 1) || m.get(i, j).is_zero())
    })
}

/// Flag-based membership: `M(V_i)` is contained in `V_{i-1}` for every
/// block boundary, with `V_i` spanned by the first `d_i` basis vectors.
pub fn in_nilradical_dynamic(tab: &ParabolicTableau, m: &QMatrix) -> bool {
    let n = tab.n();
    let mut bounds = vec![0usize];
    bounds.extend_from_slice(tab.descriptor.d());
    bounds.push(n);
    // For each block boundary d_i, columns j <= d_i must vanish below d_{i-1}.
    bounds.windows(2).all(|w| {
        let (lo, hi) = (w[0], w[1]);
        (0..hi).all(|j| (lo..n).all(|i| m.get(i, j).is_zero()))
    })
}

/// The matrix `Z`: ones along each tableau column, one step up.
pub fn build_z(tab: &ParabolicTableau) -> NilpotentMatrix {
    let n = tab.n();
    let mut m = QMatrix::zero(n);
    for i in 1..=tab.s {
        for j in 1..tab.nu_i(i) {
            m.set(tab.f(i, j) - 1, tab.f(i, j + 1) - 1, BigRational::one());
        }
    }
    NilpotentMatrix::new(m).expect("Z is nilpotent by construction")
}

/// Jordan type of a nilpotent matrix from the rank sequence of its powers.
pub fn jordan_type(m: &QMatrix) -> Result<Partition> {
    if !m.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut ranks = vec![m.n()];
    let mut power = m.clone();
    while ranks.last() != Some(&0) {
        ranks.push(power.rank());
        power = &power * m;
    }
    // Differences of consecutive ranks count blocks of size >= k.
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition::new(conj)?.conjugate())
}

/// Dimension of the `gl_n` centralizer of `Z`, by exact kernel rank.
pub fn centralizer_dim(z: &NilpotentMatrix) -> usize {
    commutant_dim(z.matrix())
}

/// The Iwahori factors of the cell computation:
/// `b = sum_i sum_{j<=k} t^{k-j} E_{f(i,k), f(i,j)}` and
/// `c = 1 + sum_i sum_{j>=2} t^{j-1} E_{f(i,j), f(i,1)}`.
pub fn build_bc(tab: &ParabolicTableau) -> (LaurentMatrix, LaurentMatrix) {
    let n = tab.n();
    let mut b = LaurentMatrix::zero(n);
    let mut c = LaurentMatrix::identity(n);
    for i in 1..=tab.s {
        let h = tab.nu_i(i);
        for j in 1..=h {
            for k in j..=h {
                b.set(
                    tab.f(i, k) - 1,
                    tab.f(i, j) - 1,
                    LaurentPoly::monomial((k - j) as i64, BigRational::one()),
                );
            }
            if j >= 2 {
                c.set(
                    tab.f(i, j) - 1,
                    tab.f(i, 1) - 1,
                    LaurentPoly::monomial(j as i64 - 1, BigRational::one()),
                );
            }
        }
    }
    (b, c)
}

/// The signed monomial lift of `varpi`:
/// `sum_i (t^{nu_i - 1} E_{f(i, nu_i), f(i, 1)} - sum_{j >= 2} t^{-1} E_{f(i, j-1), f(i, j)})`.
pub fn varpi_lift(tab: &ParabolicTableau) -> LaurentMatrix {
    let n = tab.n();
    let mut m = LaurentMatrix::zero(n);
    for i in 1..=tab.s {
        let h = tab.nu_i(i);
        m.set(
            tab.f(i, h) - 1,
            tab.f(i, 1) - 1,
            LaurentPoly::monomial(h as i64 - 1, BigRational::one()),
        );
        for j in 2..=h {
            m.set(
                tab.f(i, j - 1) - 1,
                tab.f(i, j) - 1,
                LaurentPoly::monomial(-1, -BigRational::one()),
            );
        }
    }
    m
}

/// The affine permutation of the cell containing `1 - t^{-1} Z`: drop the
/// scalar signs of [`varpi_lift`] and keep the `t`-orders.
pub fn build_varpi(tab: &ParabolicTableau) -> AffinePermutation {
    let n = tab.n();
    let mut sigma = vec![0usize; n];
    let mut exps = vec![0i64; n];
    for i in 1..=tab.s {
        let h = tab.nu_i(i);
        let top = tab.f(i, 1);
        sigma[top - 1] = tab.f(i, h);
        exps[top - 1] = h as i64 - 1;
        for j in 2..=h {
            let x = tab.f(i, j);
            sigma[x - 1] = tab.f(i, j - 1);
            exps[x - 1] = -1;
        }
    }
    AffinePermutation::new(sigma, exps).expect("varpi is an affine permutation")
}

/// `kappa`: `t^{nu_i - 1}` in column `l(i)`, row `i`, and `t^{-1}` in
/// column `m(i)`, row `s + i`.
pub fn build_kappa(tab: &ParabolicTableau) -> AffinePermutation {
    let n = tab.n();
    let mut sigma = vec![0usize; n];
    let mut exps = vec![0i64; n];
    for (i, &l) in tab.l_seq.iter().enumerate() {
        sigma[l - 1] = i + 1;
        exps[l - 1] = tab.nu_i(i + 1) as i64 - 1;
    }
    for (i, &m) in tab.m_seq.iter().enumerate() {
        sigma[m - 1] = tab.s + i + 1;
        exps[m - 1] = -1;
    }
    AffinePermutation::new(sigma, exps).expect("kappa is an affine permutation")
}

/// The finite part `sigma` of `kappa = tau_q sigma`.
pub fn build_sigma(tab: &ParabolicTableau) -> AffinePermutation {
    let n = tab.n();
    let mut sigma = vec![0usize; n];
    for (i, &l) in tab.l_seq.iter().enumerate() {
        sigma[l - 1] = i + 1;
    }
    for (i, &m) in tab.m_seq.iter().enumerate() {
        sigma[m - 1] = tab.s + i + 1;
    }
    AffinePermutation::from_finite(sigma).expect("sigma is a permutation")
}

/// The coroot `q` with `q_i = 1 - nu_i` for `i <= s` and `q_i = 1` after.
pub fn build_q(tab: &ParabolicTableau) -> Coroot {
    let n = tab.n();
    let mut q = vec![1i64; n];
    for i in 1..=tab.s {
        q[i - 1] = 1 - tab.nu_i(i) as i64;
    }
    Coroot::new(q).expect("q sums to zero")
}

pub fn build_tau_q(tab: &ParabolicTableau) -> AffinePermutation {
    AffinePermutation::translation(&build_q(tab))
}

/// The finite factors of `varpi = w_g kappa w_p`, with `w_g` in `W` and
/// `w_p` in `W_P`; the identity is verified by multiplication.
pub fn build_factorization(
    tab: &ParabolicTableau,
) -> Result<(AffinePermutation, AffinePermutation)> {
    let n = tab.n();
    // w_g: e_i -> e_{f(i, nu_i)} for i <= s, e_{s+i} -> e_{iota(t(i))}.
    let mut wg = vec![0usize; n];
    for i in 1..=tab.s {
        wg[i - 1] = tab.f(i, tab.nu_i(i));
    }
    for (i, &tv) in tab.t_seq.iter().enumerate() {
        wg[tab.s + i] = tab.iota[&tv];
    }
    let w_g = AffinePermutation::from_finite(wg)?;
    // w_p: e_{f(i,1)} -> e_{l(i)}, e_{t(i)} -> e_{m(i)}; row-preserving.
    let mut wp = vec![0usize; n];
    for (i, &l) in tab.l_seq.iter().enumerate() {
        wp[tab.f(i + 1, 1) - 1] = l;
    }
    for (i, &m) in tab.m_seq.iter().enumerate() {
        wp[tab.t_seq[i] - 1] = m;
    }
    let w_p = AffinePermutation::from_finite(wp)?;
    for (col, &row) in w_p.sigma().iter().enumerate() {
        if tab.row_of_value(col + 1) != tab.row_of_value(row) {
            return Err(Error::Internal(format!(
                "w_p moves {} across rows",
                col + 1
            )));
        }
    }
    let product = &(&w_g * &build_kappa(tab)) * &w_p;
    if product != build_varpi(tab) {
        return Err(Error::Internal(
            "factorization varpi = w_g kappa w_p failed".into(),
        ));
    }
    Ok((w_g, w_p))
}

/// `phi_P(g, Y) = g (1 - t^{-1} Y)`, with its cell modulo the parahoric.
pub fn phi_p(
    pt: &CotangentPoint,
    tab: &ParabolicTableau,
) -> Result<(LaurentMatrix, AffinePermutation)> {
    if pt.g.n() != tab.n() {
        return Err(Error::RankMismatch(pt.g.n(), tab.n()));
    }
    let matrix =
        &LaurentMatrix::from_rational(&pt.g) * &LaurentMatrix::one_minus_tinv(pt.y.matrix());
    let cell = extract_cell_mod(&matrix, &tab.descriptor.sp_indices())?;
    Ok((matrix, cell))
}

/// `psi(N) = 1 - t^{-1} N`, with its cell modulo the finite parahoric.
pub fn psi(nil: &NilpotentMatrix) -> Result<(LaurentMatrix, AffinePermutation)> {
    let n = nil.n();
    let matrix = LaurentMatrix::one_minus_tinv(nil.matrix());
    let s0: Vec<usize> = (1..n).collect();
    let cell = extract_cell_mod(&matrix, &s0)?;
    Ok((matrix, cell))
}

/// Recover `N` from `1 - t^{-1} N`: negate the `t^{-1}` coefficients.
pub fn psi_preimage(matrix: &LaurentMatrix) -> QMatrix {
    QMatrix::from_fn(matrix.n(), |i, j| -matrix.get(i, j).coeff(-1))
}

/// The Springer-type map `theta(g, Y) = g Y g^{-1}`.
pub fn springer_theta(pt: &CotangentPoint) -> NilpotentMatrix {
    let g_inv = pt.g.inverse().expect("det g = 1");
    NilpotentMatrix::new(&(&pt.g * pt.y.matrix()) * &g_inv)
        .expect("conjugate of a nilpotent is nilpotent")
}

/// The exact matrix identity `g (1 - t^{-1} Y) = (1 - t^{-1} g Y g^{-1}) g`
/// witnessing the commutation of the projection with `theta`.
pub fn springer_commutes(pt: &CotangentPoint) -> bool {
    let lhs = &LaurentMatrix::from_rational(&pt.g) * &LaurentMatrix::one_minus_tinv(pt.y.matrix());
    let conj = springer_theta(pt);
    let rhs = &LaurentMatrix::one_minus_tinv(conj.matrix()) * &LaurentMatrix::from_rational(&pt.g);
    lhs == rhs
}

/// A permutation-matrix lift of a finite Weyl element with determinant 1
/// (the first nonzero entry carries the sign correction).
pub fn sl_lift_of_finite(w: &AffinePermutation) -> Result<QMatrix> {
    if !w.is_finite() {
        return Err(Error::InvalidPermutation("need a finite element".into()));
    }
    let n = w.n();
    let mut m = QMatrix::zero(n);
    for (col, &row) in w.sigma().iter().enumerate() {
        m.set(row - 1, col, BigRational::one());
    }
    if !m.det().is_one() {
        let row = w.sigma()[0] - 1;
        m.set(row, 0, -BigRational::one());
    }
    debug_assert!(m.det().is_one());
    Ok(m)
}

/// `l(kappa)` predicted by the tableau:
/// `2 dim G/P + sum_{k' < k} #Row(k) * #Blue(k')`.
pub fn kappa_length_formula(tab: &ParabolicTableau) -> u64 {
    let mut extra = 0u64;
    for k in 0..tab.r {
        for kp in 0..k {
            extra += (tab.rows[k].len() * tab.blue[kp].len()) as u64;
        }
    }
    2 * tab.dim_g_mod_p() as u64 + extra
}

/// Per-descriptor verdicts for the stability, minimality, length and
/// compactification claims.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Verdicts {
    /// For every `1 <= i < n`, either `s_i kappa = kappa` modulo the
    /// parahoric or `s_i kappa < kappa`.
    pub g_stable: bool,
    /// `kappa` has no right descents in `S_P`.
    pub kappa_minimal_in_wp: bool,
    pub kappa_length: u64,
    pub kappa_length_formula: u64,
    pub kappa_length_matches: bool,
    /// `l(kappa) = 2 dim G/P`.
    pub is_compactification: bool,
}

pub fn verdicts(tab: &ParabolicTableau) -> Verdicts {
    let kappa = build_kappa(tab);
    let sp = tab.descriptor.sp_indices();
    let n = tab.n();
    let kappa_len = kappa.length();

    let mut g_stable = true;
    for i in 1..n {
        let s_i = AffinePermutation::simple_reflection(n, i).expect("valid index");
        let si_kappa = &s_i * &kappa;
        let same_coset = si_kappa
            .min_coset_rep(&sp, Side::Right)
            .expect("valid subset")
            == kappa;
        let goes_down = si_kappa.length() < kappa_len;
        if !(same_coset || goes_down) {
            g_stable = false;
        }
    }

    let kappa_minimal_in_wp = sp.iter().all(|&j| !kappa.right_descent_simple(j));
    let formula = kappa_length_formula(tab);
    Verdicts {
        g_stable,
        kappa_minimal_in_wp,
        kappa_length: kappa_len,
        kappa_length_formula: formula,
        kappa_length_matches: kappa_len == formula,
        is_compactification: kappa_len == 2 * tab.dim_g_mod_p() as u64,
    }
}

/// Textual views of one Weyl element for reports.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ElementView {
    pub window: String,
    pub matrix: String,
}

impl ElementView {
    pub fn of(w: &AffinePermutation) -> Self {
        ElementView {
            window: w.window_string(),
            matrix: w.monomial_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LengthsView {
    pub kappa: u64,
    pub tau_q: u64,
    pub sigma: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ChecksView {
    pub bc_identity: bool,
    pub b_iwahori: bool,
    pub c_iwahori: bool,
    pub kappa_eq_tau_sigma: bool,
    pub factorization: bool,
    pub length_additive: bool,
    pub kappa_length_formula: bool,
    pub g_stable: bool,
    pub kappa_minimal_in_wp: bool,
    pub is_compactification: bool,
}

impl ChecksView {
    pub fn all_pass(&self) -> bool {
        self.bc_identity
            && self.b_iwahori
            && self.c_iwahori
            && self.kappa_eq_tau_sigma
            && self.factorization
            && self.length_additive
            && self.kappa_length_formula
            && self.g_stable
            && self.kappa_minimal_in_wp
    }

    /// Name of the first failing identity, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("bc_identity", self.bc_identity),
            ("b_iwahori", self.b_iwahori),
            ("c_iwahori", self.c_iwahori),
            ("kappa_eq_tau_sigma", self.kappa_eq_tau_sigma),
            ("factorization", self.factorization),
            ("length_additive", self.length_additive),
            ("kappa_length_formula", self.kappa_length_formula),
            ("g_stable", self.g_stable),
            ("kappa_minimal_in_wp", self.kappa_minimal_in_wp),
        ]
        .into_iter()
        .find(|(_, ok)| !ok)
        .map(|(name, _)| name)
    }
}

/// The full JSON report for one descriptor.
#[derive(Debug, Clone, Serialize)]
pub struct KappaReport {
    pub descriptor: crate::tableau::ParabolicDescriptor,
    pub lambda: Vec<usize>,
    pub nu: Vec<usize>,
    pub dim_g_mod_p: usize,
    pub kappa: ElementView,
    pub varpi: ElementView,
    pub tau_q: ElementView,
    pub w_g: Option<ElementView>,
    pub w_p: Option<ElementView>,
    pub lengths: LengthsView,
    pub checks: ChecksView,
}

pub fn kappa_report(tab: &ParabolicTableau) -> KappaReport {
    let kappa = build_kappa(tab);
    let varpi = build_varpi(tab);
    let tau_q = build_tau_q(tab);
    let sigma = build_sigma(tab);
    let (b, c) = build_bc(tab);
    let z = build_z(tab);
    let product = &(&b * &LaurentMatrix::one_minus_tinv(z.matrix())) * &c;
    let bc_identity = product == varpi_lift(tab);
    let factorization = build_factorization(tab);
    let v = verdicts(tab);
    KappaReport {
        descriptor: tab.descriptor.clone(),
        lambda: tab.lambda.clone(),
        nu: tab.nu.parts().to_vec(),
        dim_g_mod_p: tab.dim_g_mod_p(),
        kappa: ElementView::of(&kappa),
        varpi: ElementView::of(&varpi),
        tau_q: ElementView::of(&tau_q),
        w_g: factorization
            .as_ref()
            .ok()
            .map(|(wg, _)| ElementView::of(wg)),
        w_p: factorization
            .as_ref()
            .ok()
            .map(|(_, wp)| ElementView::of(wp)),
        lengths: LengthsView {
            kappa: kappa.length(),
            tau_q: tau_q.length(),
            sigma: sigma.length(),
        },
        checks: ChecksView {
            bc_identity,
            b_iwahori: membership(&b, &Subgroup::Iwahori),
            c_iwahori: membership(&c, &Subgroup::Iwahori),
            kappa_eq_tau_sigma: kappa == &tau_q * &sigma,
            factorization: factorization.is_ok(),
            length_additive: kappa.length() == tau_q.length() + sigma.length(),
            kappa_length_formula: v.kappa_length_matches,
            g_stable: v.g_stable,
            kappa_minimal_in_wp: v.kappa_minimal_in_wp,
            is_compactification: v.is_compactification,
        },
    }
}

/// Convenience wrapper giving the cell of `1 - t^{-1} Z` and checking it
/// against the predicted `varpi`.
pub fn extract_varpi_cell(tab: &ParabolicTableau) -> Result<AffinePermutation> {
    let z = build_z(tab);
    extract_cell(&LaurentMatrix::one_minus_tinv(z.matrix()))
}

/// `varpi <= kappa` after right-minimization, part of the containment
/// statement for the image of `phi_P`.
pub fn varpi_cell_below_kappa(tab: &ParabolicTableau) -> Result<bool> {
    let varpi = build_varpi(tab);
    let rep = varpi.min_coset_rep(&tab.descriptor.sp_indices(), Side::Right)?;
    bruhat_leq(&rep, &build_kappa(tab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::tableau::{build_tableau, ParabolicDescriptor};

    fn tab(n: usize, d: &[usize]) -> ParabolicTableau {
        build_tableau(&ParabolicDescriptor::new(n, d.to_vec()).unwrap())
    }

    fn t17() -> ParabolicTableau {
        tab(17, &[1, 5, 9, 11])
    }

    #[test]
    fn z_examples() {
        let z = build_z(&tab(3, &[1, 2]));
        let expected = QMatrix::from_i64_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(z.matrix(), &expected);

        let z = build_z(&tab(2, &[1]));
        assert_eq!(
            z.matrix(),
            &QMatrix::from_i64_rows(&[vec![0, 1], vec![0, 0]])
        );

        let t = t17();
        let z = build_z(&t);
        assert!(in_nilradical_structural(&t, z.matrix()));
        assert!(in_nilradical_dynamic(&t, z.matrix()));
        assert_eq!(
            jordan_type(z.matrix()).unwrap(),
            Partition::new(vec![5, 4, 3, 3, 1, 1]).unwrap()
        );
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(
            jordan_type(&QMatrix::zero(4)).unwrap(),
            Partition::new(vec![1, 1, 1, 1]).unwrap()
        );
        let reg = QMatrix::from_i64_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(jordan_type(&reg).unwrap(), Partition::new(vec![3]).unwrap());
        let not_nil = QMatrix::identity(2);
        assert!(matches!(jordan_type(&not_nil), Err(Error::NotNilpotent)));
    }

    #[test]
    fn centralizer_examples() {
        let reg = NilpotentMatrix::new(QMatrix::from_i64_rows(&[
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![0, 0, 0],
        ]))
        .unwrap();
        assert_eq!(centralizer_dim(&reg), 3);
        assert_eq!(centralizer_dim(&NilpotentMatrix::zero(2)), 4);
    }

    #[test]
    fn centralizer_of_z17_is_sum_of_squares() {
        let t = t17();
        let z = build_z(&t);
        assert_eq!(centralizer_dim(&z), 73);
        let lambda_sq: usize = t.lambda.iter().map(|&x| x * x).sum();
        assert_eq!(lambda_sq, 73);
        let min_sum: usize = (1..=t.s)
            .flat_map(|i| (1..=t.s).map(move |j| (i, j)))
            .map(|(i, j)| t.nu_i(i).min(t.nu_i(j)))
            .sum();
        assert_eq!(min_sum, 73);
    }

    #[test]
    fn bc_identity_small() {
        // n = 2: b = 1 + t E_21, c = 1 + t E_21, and
        // b (1 - t^{-1} Z) c = t E_21 - t^{-1} E_12.
        let t = tab(2, &[1]);
        let (b, c) = build_bc(&t);
        let mut expected_b = LaurentMatrix::identity(2);
        expected_b.set(1, 0, LaurentPoly::monomial(1, rat_int(1)));
        assert_eq!(b, expected_b);
        assert_eq!(c, expected_b);
        let z = build_z(&t);
        let product = &(&b * &LaurentMatrix::one_minus_tinv(z.matrix())) * &c;
        assert_eq!(product, varpi_lift(&t));
        let mut expected = LaurentMatrix::zero(2);
        expected.set(1, 0, LaurentPoly::monomial(1, rat_int(1)));
        expected.set(0, 1, LaurentPoly::monomial(-1, rat_int(-1)));
        assert_eq!(product, expected);
        assert!(membership(&b, &Subgroup::Iwahori));
        assert!(membership(&c, &Subgroup::Iwahori));
    }

    #[test]
    fn bc_identity_n3_and_n17() {
        for t in [tab(3, &[1, 2]), t17()] {
            let (b, c) = build_bc(&t);
            let z = build_z(&t);
            let product = &(&b * &LaurentMatrix::one_minus_tinv(z.matrix())) * &c;
            assert_eq!(product, varpi_lift(&t));
            assert!(membership(&b, &Subgroup::Iwahori));
            assert!(membership(&c, &Subgroup::Iwahori));
            assert_eq!(product.apm().unwrap(), build_varpi(&t));
        }
    }

    #[test]
    fn kappa_sigma_tau_examples() {
        // n = 2: kappa = diag(t, t^{-1}), sigma = id, w_g = (1 2), w_p = id.
        let t = tab(2, &[1]);
        let kappa = build_kappa(&t);
        assert_eq!(kappa.sigma(), &[1, 2]);
        assert_eq!(kappa.exps(), &[1, -1]);
        assert!(build_sigma(&t).is_identity());
        assert_eq!(kappa, build_tau_q(&t));
        assert_eq!(kappa.length(), 2);
        let (w_g, w_p) = build_factorization(&t).unwrap();
        assert_eq!(w_g.sigma(), &[2, 1]);
        assert!(w_p.is_identity());

        // n = 3 full flag: kappa = t^2 E_11 + t^{-1} E_23 + t^{-1} E_32.
        let t = tab(3, &[1, 2]);
        let kappa = build_kappa(&t);
        assert_eq!(kappa.sigma(), &[1, 3, 2]);
        assert_eq!(kappa.exps(), &[2, -1, -1]);
        assert_eq!(kappa.length(), 7);
        assert_eq!(kappa, &build_tau_q(&t) * &build_sigma(&t));
        let (w_g, w_p) = build_factorization(&t).unwrap();
        assert_eq!(w_g, AffinePermutation::transposition(3, 1, 3).unwrap());
        assert!(w_p.is_identity());
        assert_eq!(build_varpi(&t), &(&w_g * &kappa) * &w_p);
    }

    #[test]
    fn kappa_length_n17() {
        let t = t17();
        let kappa = build_kappa(&t);
        assert_eq!(kappa.length(), 272);
        assert_eq!(kappa_length_formula(&t), 272);
        assert_eq!(kappa, &build_tau_q(&t) * &build_sigma(&t));
        let q = build_q(&t);
        let mut expected = vec![-4i64, -3, -2, -2, 0, 0];
        expected.extend(std::iter::repeat(1).take(11));
        assert_eq!(q.entries(), &expected[..]);
        assert_eq!(crate::affine::translation_length(&q), 216);
        assert_eq!(build_tau_q(&t).length(), 216);
    }

    #[test]
    fn q_examples() {
        assert_eq!(build_q(&tab(2, &[1])).entries(), &[-1, 1]);
        let q = build_q(&tab(3, &[1, 2]));
        assert_eq!(q.entries(), &[-2, 1, 1]);
        assert_eq!(crate::affine::translation_length(&q), 6);
        assert_eq!(
            crate::affine::translation_length(&q) as usize,
            2 * tab(3, &[1, 2]).dim_g_mod_p()
        );
    }

    #[test]
    fn phi_examples() {
        let t = tab(3, &[1, 2]);
        // (identity, 0) maps to the identity coset.
        let pt = CotangentPoint::new(QMatrix::identity(3), QMatrix::zero(3), &t).unwrap();
        let (m, cell) = phi_p(&pt, &t).unwrap();
        assert_eq!(m, LaurentMatrix::identity(3));
        assert!(cell.is_identity());

        // (identity, Z): the cell is varpi reduced mod S_P, and lies below kappa.
        let z = build_z(&t);
        let pt = CotangentPoint::new(QMatrix::identity(3), z.matrix().clone(), &t).unwrap();
        let (_, cell) = phi_p(&pt, &t).unwrap();
        let expected = build_varpi(&t)
            .min_coset_rep(&t.descriptor.sp_indices(), Side::Right)
            .unwrap();
        assert_eq!(cell, expected);
        assert!(bruhat_leq(&cell, &build_kappa(&t)).unwrap());

        // A lift of the w with kappa = w varpi reaches the top cell.
        let kappa = build_kappa(&t);
        let w = &kappa * &build_varpi(&t).inverse();
        assert!(w.is_finite());
        let g = sl_lift_of_finite(&w).unwrap();
        let pt = CotangentPoint::new(g, z.matrix().clone(), &t).unwrap();
        let (_, cell) = phi_p(&pt, &t).unwrap();
        assert_eq!(cell, kappa);
    }

    #[test]
    fn cotangent_point_validation() {
        let t = tab(3, &[1]);
        // det != 1 is rejected.
        let g2 = QMatrix::from_i64_rows(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(CotangentPoint::new(g2, QMatrix::zero(3), &t).is_err());
        // Y outside the block pattern is rejected.
        let bad_y = QMatrix::from_i64_rows(&[vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert!(CotangentPoint::new(QMatrix::identity(3), bad_y, &t).is_err());
        let good_y = QMatrix::from_i64_rows(&[vec![0, 1, 1], vec![0, 0, 0], vec![0, 0, 0]]);
        assert!(CotangentPoint::new(QMatrix::identity(3), good_y, &t).is_ok());
    }

    #[test]
    fn nilradical_predicates_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for n in 2..=5 {
            for desc in crate::tableau::all_descriptors(n) {
                let t = build_tableau(&desc);
                for _ in 0..10 {
                    let m = QMatrix::from_fn(n, |_, _| rat_int(rng.gen_range(-1..=1)));
                    assert_eq!(
                        in_nilradical_structural(&t, &m),
                        in_nilradical_dynamic(&t, &m)
                    );
                }
                let y = crate::sample::random_u_element(&t, &mut rng);
                assert!(in_nilradical_structural(&t, &y));
                assert!(in_nilradical_dynamic(&t, &y));
            }
        }
    }

    #[test]
    fn psi_examples() {
        // psi(0) is the identity coset.
        let (_, cell) = psi(&NilpotentMatrix::zero(3)).unwrap();
        assert!(cell.is_identity());

        // psi(Z) for n = 2: the cell is varpi itself (window [0, 3]), which
        // is strictly below tau_q = [-1, 4]; equality needs a generic
        // conjugate.
        let t = tab(2, &[1]);
        let z = build_z(&t);
        let (m, cell) = psi(&z).unwrap();
        assert_eq!(cell.window(), vec![0, 3]);
        let tau = build_tau_q(&t);
        assert!(bruhat_leq(&cell, &tau).unwrap());
        assert_ne!(cell, tau);
        assert_eq!(&psi_preimage(&m), z.matrix());
    }

    #[test]
    fn psi_generic_conjugate_reaches_tau() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let t = tab(3, &[1, 2]);
        let z = build_z(&t);
        let tau = build_tau_q(&t);
        let mut hit = false;
        for _ in 0..20 {
            let g = crate::sample::random_sl_matrix(3, &mut rng);
            let conj = &(&g * z.matrix()) * &g.inverse().unwrap();
            let (_, cell) = psi(&NilpotentMatrix::new(conj).unwrap()).unwrap();
            assert!(bruhat_leq(&cell, &tau).unwrap());
            if cell == tau {
                hit = true;
            }
        }
        assert!(hit, "no conjugate reached the top cell in 20 draws");
    }

    #[test]
    fn springer_examples() {
        use rand::SeedableRng;
        let t = tab(3, &[1, 2]);
        let z = build_z(&t);
        let pt = CotangentPoint::new(QMatrix::identity(3), z.matrix().clone(), &t).unwrap();
        assert_eq!(springer_theta(&pt).matrix(), z.matrix());
        assert!(springer_commutes(&pt));

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let t = t17();
        for _ in 0..3 {
            let g = crate::sample::random_sl_matrix(17, &mut rng);
            let y = crate::sample::random_u_element(&t, &mut rng);
            let pt = CotangentPoint::new(g, y, &t).unwrap();
            assert!(springer_commutes(&pt));
            let conj = springer_theta(&pt);
            assert!(jordan_type(conj.matrix())
                .unwrap()
                .dominance_leq(&t.nu)
                .unwrap());
        }
    }

    #[test]
    fn verdict_examples() {
        let v = verdicts(&t17());
        assert!(v.g_stable);
        assert!(v.kappa_minimal_in_wp);
        assert_eq!(v.kappa_length, 272);
        assert!(v.kappa_length_matches);
        assert!(!v.is_compactification); // five rows

        let v = verdicts(&tab(4, &[2]));
        assert!(v.is_compactification); // maximal parabolic, two rows

        let v = verdicts(&tab(2, &[1]));
        assert!(v.g_stable && v.kappa_minimal_in_wp && v.is_compactification);
        assert_eq!(v.kappa_length, 2);
    }

    #[test]
    fn table_case_on_kappa_columns() {
        // The reflection square of kappa at columns (l(1), l(2)) = (1, 2)
        // for the n=17 shape: the column orders differ (nu_1 > nu_2), the
        // rows are 1 < 2, and the minimum is s_1 kappa, one step below.
        let t = t17();
        let kappa = build_kappa(&t);
        assert_eq!((t.l_seq[0], t.l_seq[1]), (1, 2));
        let case = crate::affine::table_case(&kappa, 1, 2).unwrap();
        assert_eq!(case.kind, crate::affine::TableCaseKind::Split);
        let s1 = AffinePermutation::simple_reflection(17, 1).unwrap();
        assert_eq!(case.minimal, &s1 * &kappa);
        assert_eq!(case.minimal.length(), kappa.length() - 1);
    }

    #[test]
    fn report_passes_all_checks() {
        for t in [tab(2, &[1]), tab(4, &[2]), tab(5, &[1, 3]), t17()] {
            let report = kappa_report(&t);
            assert!(
                report.checks.all_pass(),
                "failure {:?} at {}",
                report.checks.first_failure(),
                t.descriptor
            );
            // is_compactification holds exactly for <= 2 rows.
            assert_eq!(report.checks.is_compactification, t.r <= 2);
        }
    }
}
