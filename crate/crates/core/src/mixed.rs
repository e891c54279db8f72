//! Mixed and mixed dominating matrices.
//!
//! A matrix is mixed when every row has a strictly positive and a strictly
//! negative entry, and mixed dominating when it is mixed but has no square
//! mixed submatrix. Both notions only depend on the sign pattern, so the
//! checks run on [`SignMatrix`], a bitmask encoding of the signs (at most 64
//! columns).
//!
//! Two independent checks are provided: [`is_mixed_dominating`] searches all
//! square submatrices, [`is_mixed_dominating_fast`] uses the recursive
//! block decomposition every mixed dominating matrix admits.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MixedError {
    #[error("matrix is not mixed dominating")]
    NotMixedDominating,
    #[error("decomposition needs at least one row")]
    NoRows,
    #[error("gluing row needs nonzero positive and negative parts")]
    ZeroGluingVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Columns where a row is positive and negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignRow {
    pub pos: u64,
    pub neg: u64,
}

impl SignRow {
    pub fn support(self) -> u64 {
        self.pos | self.neg
    }

    pub fn is_mixed_on(self, cols: u64) -> bool {
        self.pos & cols != 0 && self.neg & cols != 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    cols: usize,
    rows: Vec<SignRow>,
}

impl SignMatrix {
    pub fn new(cols: usize, rows: Vec<SignRow>) -> Self {
        assert!(cols <= 64, "sign matrices support at most 64 columns");
        SignMatrix { cols, rows }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        assert!(m.ncols() <= 64, "sign matrices support at most 64 columns");
        let rows = m
            .row_iter()
            .map(|row| {
                let mut r = SignRow::default();
                for (j, x) in row.iter().enumerate() {
                    if x.is_positive() {
                        r.pos |= 1 << j;
                    } else if x.is_negative() {
                        r.neg |= 1 << j;
                    }
                }
                r
            })
            .collect();
        SignMatrix { cols: m.ncols(), rows }
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SignRow] {
        &self.rows
    }

    fn all_cols(&self) -> u64 {
        if self.cols == 64 {
            u64::MAX
        } else {
            (1u64 << self.cols) - 1
        }
    }

    pub fn is_mixed(&self) -> bool {
        let all = self.all_cols();
        self.rows.iter().all(|r| r.is_mixed_on(all))
    }

    /// Definition check: mixed, and for every `k ≥ 1` no `k × k` submatrix is
    /// mixed. For each column set `C` with `|C| = k` the rows mixed on `C` are
    /// counted; any `k` of them give a mixed `k × k` submatrix.
    pub fn is_mixed_dominating(&self) -> bool {
        if !self.is_mixed() {
            return false;
        }
        let r = self.rows.len();
        for k in 1..=r.min(self.cols) {
            let mut found = false;
            for_each_subset(self.cols, k, |cols| {
                let mixed = self.rows.iter().filter(|row| row.is_mixed_on(cols)).count();
                if mixed >= k {
                    found = true;
                }
                !found
            });
            if found {
                return false;
            }
        }
        true
    }

    pub fn is_mixed_dominating_fast(&self) -> bool {
        dominating_recursive(&self.rows, self.all_cols())
    }
}

// Calls `f` on every `k`-subset of `0..n` as a bitmask until it returns false.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k == 0 || k > n {
        return;
    }
    let limit: u128 = 1u128 << n;
    let mut s: u64 = (1u64 << k) - 1;
    loop {
        if !f(s) {
            return;
        }
        // Gosper's hack: next integer with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s as u128 + c as u128;
        if r >= limit {
            return;
        }
        let r = r as u64;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

fn dominating_recursive(rows: &[SignRow], cols: u64) -> bool {
    if rows.is_empty() {
        return true;
    }
    if !rows.iter().all(|r| r.is_mixed_on(cols)) {
        return false;
    }
    if rows.len() >= cols.count_ones() as usize {
        return false;
    }
    for q in 0..rows.len() {
        let mut ok = false;
        for_each_split(rows, cols, q, |e1| {
            let e2 = cols & !e1;
            let s1: Vec<SignRow> = side_rows(rows, q, e1).map(|i| rows[i]).collect();
            let s2: Vec<SignRow> = side_rows(rows, q, e2).map(|i| rows[i]).collect();
            ok = dominating_recursive(&s1, e1) && dominating_recursive(&s2, e2);
            !ok
        });
        if ok {
            return true;
        }
    }
    false
}

fn side_rows(rows: &[SignRow], q: usize, side: u64) -> impl Iterator<Item = usize> + '_ {
    (0..rows.len()).filter(move |&i| i != q && rows[i].support() & !side == 0)
}

// Enumerates column bipartitions (as the E1 mask) compatible with row `q`
// as the gluing row: q's positive columns in E1, negative columns in E2,
// every other row entirely on one side.
fn for_each_split(rows: &[SignRow], cols: u64, q: usize, mut f: impl FnMut(u64) -> bool) {
    let mut components: Vec<u64> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if i == q {
            continue;
        }
        let mut merged = r.support() & cols;
        if merged == 0 {
            continue;
        }
        components.retain(|&c| {
            if c & merged != 0 {
                merged |= c;
                false
            } else {
                true
            }
        });
        components.push(merged);
    }
    let covered = components.iter().fold(0, |a, c| a | c);
    let mut rest = cols & !covered;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        components.push(bit);
        rest &= !bit;
    }

    let gq = rows[q];
    let mut forced = 0u64;
    let mut free = Vec::new();
    for c in components {
        let (p, n) = (c & gq.pos != 0, c & gq.neg != 0);
        match (p, n) {
            (true, true) => return,
            (true, false) => forced |= c,
            (false, true) => {}
            (false, false) => free.push(c),
        }
    }
    for choice in 0u64..(1u64 << free.len()) {
        let mut e1 = forced;
        for (b, c) in free.iter().enumerate() {
            if choice >> b & 1 == 1 {
                e1 |= c;
            }
        }
        if !f(e1) {
            return;
        }
    }
}

pub fn is_mixed(m: &IntMatrix) -> bool {
    SignMatrix::from_int(m).is_mixed()
}

pub fn is_mixed_dominating(m: &IntMatrix) -> bool {
    SignMatrix::from_int(m).is_mixed_dominating()
}

pub fn is_mixed_dominating_fast(m: &IntMatrix) -> bool {
    SignMatrix::from_int(m).is_mixed_dominating_fast()
}

/// Block decomposition of a mixed dominating matrix.
///
/// Row `q` is the gluing row: positive on `e1`, nonpositive on `e2`. Rows in
/// `s1` (resp. `s2`) are supported inside `e1` (resp. `e2`), and the two
/// blocks they form are again mixed dominating. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmsDecomposition {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub q: usize,
}

impl FmsDecomposition {
    /// The two diagonal blocks `M[s1, e1]`, `M[s2, e2]`.
    pub fn blocks(&self, m: &IntMatrix) -> (IntMatrix, IntMatrix) {
        (m.select_rows(&self.s1).select_columns(&self.e1), m.select_rows(&self.s2).select_columns(&self.e2))
    }

    /// `(u_q⁺ on e1, u_q⁻ on e2)`.
    pub fn gluing_parts(&self, m: &IntMatrix) -> (Vec<BigInt>, Vec<BigInt>) {
        let row = m.row(self.q);
        (self.e1.iter().map(|&j| row[j].clone()).collect(), self.e2.iter().map(|&j| -&row[j]).collect())
    }
}

fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&j| mask >> j & 1 == 1).collect()
}

/// Canonical decomposition: smallest `e1` bitmask (bit `j` = column `j`),
/// then smallest `q`.
pub fn fms_decompose(m: &IntMatrix) -> Result<FmsDecomposition, MixedError> {
    if m.nrows() == 0 {
        return Err(MixedError::NoRows);
    }
    let sm = SignMatrix::from_int(m);
    if !sm.is_mixed_dominating_fast() {
        return Err(MixedError::NotMixedDominating);
    }
    let rows = sm.rows();
    let cols = sm.all_cols();
    let mut candidates = Vec::new();
    for q in 0..rows.len() {
        for_each_split(rows, cols, q, |e1| {
            candidates.push((e1, q));
            true
        });
    }
    candidates.sort_unstable();
    for (e1, q) in candidates {
        let e2 = cols & !e1;
        let s1: Vec<usize> = side_rows(rows, q, e1).collect();
        let s2: Vec<usize> = side_rows(rows, q, e2).collect();
        let block = |s: &[usize]| s.iter().map(|&i| rows[i]).collect::<Vec<_>>();
        if dominating_recursive(&block(&s1), e1) && dominating_recursive(&block(&s2), e2) {
            return Ok(FmsDecomposition { e1: mask_to_indices(e1), e2: mask_to_indices(e2), s1, s2, q });
        }
    }
    unreachable!("every mixed dominating matrix with a row decomposes")
}

/// `[[M1, 0], [0, M2], [u⁺, −u⁻]]`.
pub fn block_compose(
    m1: &IntMatrix,
    m2: &IntMatrix,
    u_plus: &[BigInt],
    u_minus: &[BigInt],
) -> Result<IntMatrix, MixedError> {
    let (n1, n2) = (m1.ncols(), m2.ncols());
    if u_plus.len() != n1 {
        return Err(MixedError::DimensionMismatch { expected: n1, found: u_plus.len() });
    }
    if u_minus.len() != n2 {
        return Err(MixedError::DimensionMismatch { expected: n2, found: u_minus.len() });
    }
    let nonneg_nonzero = |v: &[BigInt]| v.iter().all(|x| !x.is_negative()) && v.iter().any(|x| !x.is_zero());
    if !nonneg_nonzero(u_plus) || !nonneg_nonzero(u_minus) {
        return Err(MixedError::ZeroGluingVector);
    }
    let mut out = IntMatrix::zeros(m1.nrows() + m2.nrows() + 1, n1 + n2);
    for i in 0..m1.nrows() {
        for j in 0..n1 {
            out.set(i, j, m1.get(i, j).clone());
        }
    }
    for i in 0..m2.nrows() {
        for j in 0..n2 {
            out.set(m1.nrows() + i, n1 + j, m2.get(i, j).clone());
        }
    }
    let last = m1.nrows() + m2.nrows();
    for (j, x) in u_plus.iter().enumerate() {
        out.set(last, j, x.clone());
    }
    for (j, x) in u_minus.iter().enumerate() {
        out.set(last, n1 + j, -x);
    }
    Ok(out)
}
