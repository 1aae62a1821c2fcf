//! The tableau attached to a parabolic subgroup of `SL_n`.
//!
//! A descriptor fixes the flag shape `0 < d_1 < ... < d_{r-1} < n`; the
//! tableau is the left-aligned filling of `{1, ..., n}` whose `i`-th row
//! holds `d_{i-1} < k <= d_i` in increasing order. Everything else here
//! (block sizes, column profile, coordinates, the red/blue split and the
//! `l`/`m`/`t` enumerations) is derived data used by the constructions
//! layer. Indexing is 1-based throughout.

use crate::error::{Error, Result};
use crate::partition::Partition;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Flag shape of a parabolic subgroup: the positions of the omitted
/// simple roots. An empty sequence means the full group (`P = G`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParabolicDescriptor {
    n: usize,
    d: Vec<usize>,
}

impl ParabolicDescriptor {
    pub fn new(n: usize, d: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDescriptor(format!(
                "n must be >= 2, got {}",
                n
            )));
        }
        for w in d.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidDescriptor(format!(
                    "d must be strictly increasing: {:?}",
                    d
                )));
            }
        }
        if d.first().is_some_and(|&x| x == 0) || d.last().is_some_and(|&x| x >= n) {
            return Err(Error::InvalidDescriptor(format!(
                "need 0 < d_i < n = {}: {:?}",
                n, d
            )));
        }
        Ok(ParabolicDescriptor { n, d })
    }

    /// The full flag: `d = (1, 2, ..., n-1)`, i.e. `P = B`.
    pub fn full_flag(n: usize) -> Result<Self> {
        ParabolicDescriptor::new(n, (1..n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> &[usize] {
        &self.d
    }

    /// Number of rows of the tableau.
    pub fn rows(&self) -> usize {
        self.d.len() + 1
    }

    /// The simple-reflection indices of `S_P`: all of `1..n-1` except the `d_i`.
    pub fn sp_indices(&self) -> Vec<usize> {
        (1..self.n).filter(|i| !self.d.contains(i)).collect()
    }

    /// The finite simple reflections `S_0 = {1, ..., n-1}`.
    pub fn s0_indices(&self) -> Vec<usize> {
        (1..self.n).collect()
    }

    /// Index (1-based) of the flag block containing the value `v`.
    pub fn block_of(&self, v: usize) -> usize {
        debug_assert!(v >= 1 && v <= self.n);
        1 + self.d.iter().filter(|&&x| x < v).count()
    }
}

impl fmt::Display for ParabolicDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        write!(f, "n={} d=({})", self.n, items.join(","))
    }
}

/// All descriptors for a given `n`, one per subset of `{1, ..., n-1}`,
/// in a fixed deterministic order.
pub fn all_descriptors(n: usize) -> Vec<ParabolicDescriptor> {
    let positions: Vec<usize> = (1..n).collect();
    let mut out = Vec::with_capacity(1 << positions.len());
    for mask in 0u64..(1 << positions.len()) {
        let d: Vec<usize> = positions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        out.push(ParabolicDescriptor::new(n, d).unwrap());
    }
    out
}

/// The tableau and all of its derived combinatorial data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicTableau {
    pub descriptor: ParabolicDescriptor,
    /// Block sizes `lambda_i = d_i - d_{i-1}`, one per row.
    pub lambda: Vec<usize>,
    /// Column heights; a partition of `n`.
    pub nu: Partition,
    /// Number of columns, `max lambda_i`.
    pub s: usize,
    /// Number of rows, `nu_1`.
    pub r: usize,
    /// `coords[i-1][j-1] = f(i, j)`, the `j`-th entry from the top of column `i`.
    pub coords: Vec<Vec<usize>>,
    /// `rows[k-1]` = the entries of row `k`, increasing.
    pub rows: Vec<Vec<usize>>,
    /// Entries topmost in their column, per row (increasing within a row).
    pub s1: Vec<Vec<usize>>,
    /// Complement of `s1` within each row.
    pub s2: Vec<Vec<usize>>,
    /// The `#S1(k)` smallest entries of row `k`.
    pub red: Vec<Vec<usize>>,
    /// Complement of `red` within each row.
    pub blue: Vec<Vec<usize>>,
    /// All red entries in increasing order; length `s`.
    pub l_seq: Vec<usize>,
    /// Blue entries, rows bottom to top, each row left to right; length `n - s`.
    pub m_seq: Vec<usize>,
    /// Enumeration of `S2` with `t_seq[i]` in the same row as `m_seq[i]`.
    pub t_seq: Vec<usize>,
    /// `iota[f(i,j)] = f(i, j-1)` for the non-top column entries.
    pub iota: BTreeMap<usize, usize>,
    /// Rows where the closed-form description of `red` disagrees with the
    /// normative smallest-entries definition (expected empty; kept as a flag).
    pub closed_form_mismatch_rows: Vec<usize>,
}

/// Build the tableau for a descriptor.
pub fn build_tableau(desc: &ParabolicDescriptor) -> ParabolicTableau {
    let n = desc.n();
    let r = desc.rows();
    let mut bounds = Vec::with_capacity(r + 1);
    bounds.push(0);
    bounds.extend_from_slice(desc.d());
    bounds.push(n);

    let lambda: Vec<usize> = (0..r).map(|k| bounds[k + 1] - bounds[k]).collect();
    let rows: Vec<Vec<usize>> = (0..r)
        .map(|k| (bounds[k] + 1..=bounds[k + 1]).collect())
        .collect();
    let s = *lambda.iter().max().expect("at least one row");

    // Column i holds the i-th entry of every row with lambda >= i, top to bottom.
    let mut coords: Vec<Vec<usize>> = Vec::with_capacity(s);
    for i in 1..=s {
        let col: Vec<usize> = (0..r)
            .filter(|&k| lambda[k] >= i)
            .map(|k| bounds[k] + i)
            .collect();
        coords.push(col);
    }
    let nu = Partition::new(coords.iter().map(|c| c.len()).collect())
        .expect("column heights are weakly decreasing");

    let mut s1: Vec<Vec<usize>> = vec![Vec::new(); r];
    for col in &coords {
        let top = col[0];
        let row = row_of(&bounds, top);
        s1[row - 1].push(top);
    }
    for v in &mut s1 {
        v.sort_unstable();
    }
    let s2: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            rows[k]
                .iter()
                .copied()
                .filter(|x| !s1[k].contains(x))
                .collect()
        })
        .collect();

    // Red(k): the #S1(k) smallest entries of row k. The closed form
    // d_{k-1} < j <= d_k - max(lambda before k) is recorded only as a
    // cross-check flag.
    let mut red: Vec<Vec<usize>> = Vec::with_capacity(r);
    let mut closed_form_mismatch_rows = Vec::new();
    for k in 0..r {
        let take = s1[k].len();
        let reds: Vec<usize> = rows[k][..take].to_vec();
        let max_before = lambda[..k].iter().copied().max().unwrap_or(0);
        let hi = bounds[k + 1] as i64 - max_before as i64;
        let closed: Vec<usize> = rows[k]
            .iter()
            .copied()
            .filter(|&j| (j as i64) <= hi)
            .collect();
        if closed != reds {
            closed_form_mismatch_rows.push(k + 1);
        }
        red.push(reds);
    }
    let blue: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            rows[k]
                .iter()
                .copied()
                .filter(|x| !red[k].contains(x))
                .collect()
        })
        .collect();

    let mut l_seq: Vec<usize> = red.iter().flatten().copied().collect();
    l_seq.sort_unstable();

    // Blue entries row by row from bottom to top, each row left to right,
    // and the row-aligned enumeration of S2 paired with them.
    let mut m_seq = Vec::with_capacity(n - s);
    let mut t_seq = Vec::with_capacity(n - s);
    for k in (0..r).rev() {
        m_seq.extend_from_slice(&blue[k]);
        t_seq.extend_from_slice(&s2[k]);
    }

    let mut iota = BTreeMap::new();
    for col in &coords {
        for j in 1..col.len() {
            iota.insert(col[j], col[j - 1]);
        }
    }

    ParabolicTableau {
        descriptor: desc.clone(),
        lambda,
        nu,
        s,
        r,
        coords,
        rows,
        s1,
        s2,
        red,
        blue,
        l_seq,
        m_seq,
        t_seq,
        iota,
        closed_form_mismatch_rows,
    }
}

fn row_of(bounds: &[usize], value: usize) -> usize {
    bounds
        .windows(2)
        .position(|w| w[0] < value && value <= w[1])
        .expect("value within 1..=n")
        + 1
}

impl ParabolicTableau {
    pub fn n(&self) -> usize {
        self.descriptor.n()
    }

    /// `f(i, j)`: the `j`-th entry from the top of column `i` (both 1-based).
    pub fn f(&self, i: usize, j: usize) -> usize {
        self.coords[i - 1][j - 1]
    }

    /// Height of column `i`.
    pub fn nu_i(&self, i: usize) -> usize {
        self.coords[i - 1].len()
    }

    /// The tableau row (1-based) containing the value `v`.
    pub fn row_of_value(&self, v: usize) -> usize {
        self.descriptor.block_of(v)
    }

    /// `dim G/P = sum_{i<j} lambda_i lambda_j`, which also equals
    /// `(n^2 - sum lambda_i^2) / 2`.
    pub fn dim_g_mod_p(&self) -> usize {
        let mut cross = 0;
        for i in 0..self.lambda.len() {
            for j in (i + 1)..self.lambda.len() {
                cross += self.lambda[i] * self.lambda[j];
            }
        }
        let n = self.n();
        let sq: usize = self.lambda.iter().map(|&x| x * x).sum();
        debug_assert_eq!(2 * cross, n * n - sq);
        cross
    }

    /// Text rendering, one row of integers per line.
    pub fn render(&self) -> String {
        let width = self.n().to_string().len();
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| format!("{:>width$}", v, width = width))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
