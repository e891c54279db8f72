//! Gluing of lattices and the complete-intersection deciders.
//!
//! A positive lattice `L ⊂ Z^m` is the gluing of `L_{E1}` and `L_{E2}` when
//! some nonzero `u ∈ L`, nonnegative on `E1` and nonpositive on `E2`, gives
//! `L = L_{E1} + L_{E2} + ⟨u⟩`; it is the `p`-gluing when the index of that
//! sum in `L` is a power of `p`. [`ci_decide`] and [`stci_decide`] search for
//! complete (p-)gluings recursively and return a [`GluingCertificate`], which
//! [`verify_certificate`] re-checks through the glue vectors alone.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::{self, coset_orthant_first, Positivity, SignPattern};
use crate::linalg::{DisplayVec, IntMatrix, Lattice, Prime};
use crate::mixed::SignMatrix;

/// Default cap on the exponent searched in `p`-gluing.
pub const DEFAULT_MAX_EXP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("lattice is not positive: {} is a nonzero nonnegative element", DisplayVec(.witness))]
    NotPositive { witness: Vec<BigInt> },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("at most 64 coordinates are supported, got {0}")]
    TooManyCoordinates(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(Prime),
}

impl Characteristic {
    /// `0` or a prime; anything else is rejected.
    pub fn from_u64(n: u64) -> Option<Self> {
        if n == 0 {
            Some(Characteristic::Zero)
        } else {
            Prime::new(n).map(Characteristic::Prime)
        }
    }

    pub fn as_u64(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p.get(),
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u64())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GluingMode {
    Exact,
    /// Index a power of `p`; `max_exp` caps the search when the set of
    /// admissible multiples is unbounded.
    PPower {
        p: Prime,
        max_exp: u32,
    },
}

impl GluingMode {
    pub fn for_characteristic(ch: Characteristic, max_exp: u32) -> Self {
        match ch {
            Characteristic::Zero => GluingMode::Exact,
            Characteristic::Prime(p) => GluingMode::PPower { p, max_exp },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingSearch {
    /// `u` with the sign pattern and `[L : L_{E1}+L_{E2}+⟨u⟩] = p^index_exponent`.
    Found { u: Vec<BigInt>, index_exponent: u32 },
    /// No admissible `u` exists.
    NotGlued,
    /// None found, but candidates beyond the exponent cap were not ruled out.
    Exhausted,
}

/// A tree of gluings ending in rank-zero lattices.
///
/// Node indices are 0-based positions in the coordinate set of that node; the
/// root's coordinate set is `0..m`. Children live in `Z^{|e1|}` and
/// `Z^{|e2|}`, with coordinate `i` of a child standing for `e1[i]` (`e2[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingCertificate {
    Leaf { dim: usize },
    Node(Box<GlueNode>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueNode {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub u: Vec<BigInt>,
    pub index_exponent: u32,
    pub left: GluingCertificate,
    pub right: GluingCertificate,
}

impl GluingCertificate {
    pub fn dim(&self) -> usize {
        match self {
            GluingCertificate::Leaf { dim } => *dim,
            GluingCertificate::Node(n) => n.e1.len() + n.e2.len(),
        }
    }

    pub fn root(&self) -> Option<&GlueNode> {
        match self {
            GluingCertificate::Leaf { .. } => None,
            GluingCertificate::Node(n) => Some(n),
        }
    }

    /// Sum of the index exponents over all nodes.
    pub fn total_exponent(&self) -> u64 {
        match self {
            GluingCertificate::Leaf { .. } => 0,
            GluingCertificate::Node(n) => {
                u64::from(n.index_exponent) + n.left.total_exponent() + n.right.total_exponent()
            }
        }
    }

    fn check_structure(&self) -> Result<(), GluingError> {
        let GluingCertificate::Node(n) = self else {
            return Ok(());
        };
        let dim = self.dim();
        let bad = |msg: String| Err(GluingError::MalformedCertificate(msg));
        if n.e1.is_empty() || n.e2.is_empty() {
            return bad("empty side in a partition".into());
        }
        let mut seen = vec![false; dim];
        for &i in n.e1.iter().chain(&n.e2) {
            if i >= dim || seen[i] {
                return bad(format!("index {i} out of range or repeated"));
            }
            seen[i] = true;
        }
        if n.e1.windows(2).any(|w| w[0] > w[1]) || n.e2.windows(2).any(|w| w[0] > w[1]) {
            return bad("partition indices must be increasing".into());
        }
        if n.u.len() != dim {
            return bad(format!("glue vector has length {}, expected {dim}", n.u.len()));
        }
        if n.left.dim() != n.e1.len() || n.right.dim() != n.e2.len() {
            return bad("child dimension does not match its side".into());
        }
        n.left.check_structure()?;
        n.right.check_structure()
    }

    // Visits nodes in preorder with the map from local to root coordinates.
    fn visit<'a>(&'a self, coords: &[usize], f: &mut impl FnMut(&'a GlueNode, &[usize])) {
        if let GluingCertificate::Node(n) = self {
            f(n, coords);
            let left: Vec<usize> = n.e1.iter().map(|&i| coords[i]).collect();
            let right: Vec<usize> = n.e2.iter().map(|&i| coords[i]).collect();
            n.left.visit(&left, f);
            n.right.visit(&right, f);
        }
    }
}

/// The glue vectors of a certificate in root coordinates, root first.
pub fn basis_from_certificate(cert: &GluingCertificate) -> Result<Vec<Vec<BigInt>>, GluingError> {
    cert.check_structure()?;
    let m = cert.dim();
    let coords: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    cert.visit(&coords, &mut |node, map| {
        let mut v = vec![BigInt::zero(); m];
        for (x, &c) in node.u.iter().zip(map) {
            v[c] = x.clone();
        }
        out.push(v);
    });
    Ok(out)
}

/// First reason a certificate is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("certificate is for Z^{found}, lattice lives in Z^{expected}")]
    Dimension { expected: usize, found: usize },
    #[error("{0}")]
    Malformed(String),
    #[error("glue vector {} does not have its positive part on E1 and negative part on E2", DisplayVec(.0))]
    SignPattern(Vec<BigInt>),
    #[error("glue vector {} is not in the lattice", DisplayVec(.0))]
    NotInLattice(Vec<BigInt>),
    #[error("glue vectors do not form a mixed dominating matrix")]
    NotMixedDominating,
    #[error("{found} glue vectors for a lattice of rank {expected}")]
    Count { expected: usize, found: usize },
    #[error("span has index {index} in the lattice, expected 1")]
    IndexNotOne { index: String },
    #[error("characteristic 0 certificates need all index exponents 0")]
    NonzeroExponent,
    #[error("span index {index} is not a power of {p}")]
    IndexNotPPower { index: String, p: Prime },
    #[error("span index is {p}^{actual} but the certificate claims {p}^{claimed}")]
    ExponentMismatch { p: Prime, actual: u32, claimed: u64 },
}

/// Checks a certificate against `l` without reference to how it was found:
/// the glue vectors must lie in `l`, carry their sign patterns, form a mixed
/// dominating matrix, and span `l` (characteristic 0) or a sublattice of
/// `p`-power index equal to the claimed total exponent (characteristic `p`).
pub fn verify_certificate(
    l: &Lattice,
    cert: &GluingCertificate,
    ch: Characteristic,
) -> Result<(), CertificateViolation> {
    if cert.dim() != l.ambient_dim() {
        return Err(CertificateViolation::Dimension { expected: l.ambient_dim(), found: cert.dim() });
    }
    let basis = basis_from_certificate(cert).map_err(|e| CertificateViolation::Malformed(e.to_string()))?;
    let mut sign_failure = None;
    cert.visit(&(0..cert.dim()).collect::<Vec<_>>(), &mut |node, _| {
        let pattern = SignPattern::split(node.u.len(), &node.e1, &node.e2);
        if sign_failure.is_none() && (!pattern.admits(&node.u) || node.u.iter().all(Zero::is_zero)) {
            sign_failure = Some(node.u.clone());
        }
    });
    if let Some(u) = sign_failure {
        return Err(CertificateViolation::SignPattern(u));
    }
    if let Some(v) = basis.iter().find(|v| !l.contains(v)) {
        return Err(CertificateViolation::NotInLattice(v.clone()));
    }
    if basis.len() != l.rank() {
        return Err(CertificateViolation::Count { expected: l.rank(), found: basis.len() });
    }
    let matrix = IntMatrix::from_bigint_rows(l.ambient_dim(), basis.clone());
    if matrix.ncols() > 64 || !SignMatrix::from_int(&matrix).is_mixed_dominating() {
        return Err(CertificateViolation::NotMixedDominating);
    }
    let span = Lattice::from_generators(&matrix);
    let order = l
        .quotient_invariants(&span)
        .expect("glue vectors are members")
        .order()
        .expect("a mixed dominating matrix has independent rows");
    match ch {
        Characteristic::Zero => {
            if !order.is_one() {
                return Err(CertificateViolation::IndexNotOne { index: order.to_string() });
            }
            if cert.total_exponent() != 0 {
                return Err(CertificateViolation::NonzeroExponent);
            }
        }
        Characteristic::Prime(p) => {
            let Some(actual) = p.log_exact(&order) else {
                return Err(CertificateViolation::IndexNotPPower { index: order.to_string(), p });
            };
            if u64::from(actual) != cert.total_exponent() {
                return Err(CertificateViolation::ExponentMismatch { p, actual, claimed: cert.total_exponent() });
            }
        }
    }
    Ok(())
}

fn check_partition(m: usize, e1: &[usize], e2: &[usize]) -> Result<(), GluingError> {
    if e1.is_empty() || e2.is_empty() {
        return Err(GluingError::BadPartition("both sides must be nonempty".into()));
    }
    let mut seen = vec![false; m];
    for &i in e1.iter().chain(e2) {
        if i >= m {
            return Err(GluingError::BadPartition(format!("index {i} outside 0..{m}")));
        }
        if seen[i] {
            return Err(GluingError::BadPartition(format!("index {i} appears twice")));
        }
        seen[i] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(GluingError::BadPartition(format!("index {i} is not covered")));
    }
    Ok(())
}

fn require_positive(l: &Lattice) -> Result<(), GluingError> {
    match geometry::positivity(l) {
        Positivity::Positive(_) => Ok(()),
        Positivity::NotPositive(witness) => Err(GluingError::NotPositive { witness }),
    }
}

/// Searches for a gluing vector of `l` along `(e1, e2)` (0-based indices).
///
/// The classes of `Q = L / (L_{E1} + L_{E2})` are enumerated; `Q` must have
/// free rank one. A class `(t, g) ∈ Z ⊕ G` spans a sublattice of index
/// `|t|·|G|`, so exact mode needs `G = 0`, `t = ±1` and `p` mode needs `|G|`
/// and `|t|` powers of `p`. Each class is a coset of `L_{E1} ⊕ L_{E2}`, and it
/// meets the sign pattern iff both halves meet their orthants, which is a
/// finite search by positivity. Candidates are tried by increasing `|t|`,
/// then `t > 0` first, then the torsion part; the first hit is returned.
///
/// In `p` mode `|t|` runs up to `p^max_exp · |G|`. When nothing is found, a
/// rational bound on `|t|` decides between [`GluingSearch::NotGlued`] (no
/// admissible `t` beyond the cap) and [`GluingSearch::Exhausted`].
pub fn gluing_vector(l: &Lattice, e1: &[usize], e2: &[usize], mode: GluingMode) -> Result<GluingSearch, GluingError> {
    check_partition(l.ambient_dim(), e1, e2)?;
    require_positive(l)?;
    Ok(glue_search(l, e1, e2, mode))
}

struct Class {
    exponent: u32,
    negative: bool,
    torsion_index: usize,
    w: Vec<BigInt>,
}

// Assumes a valid partition and a positive lattice.
fn glue_search(l: &Lattice, e1: &[usize], e2: &[usize], mode: GluingMode) -> GluingSearch {
    let n = l.ambient_dim();
    let r = l.rank();
    if r == 0 {
        return GluingSearch::NotGlued;
    }
    let l1 = l.restrict(e1);
    let l2 = l.restrict(e2);
    if l1.rank() + l2.rank() + 1 != r {
        return GluingSearch::NotGlued;
    }
    let q = l.quotient_structure(&l1.sum(&l2)).expect("restrictions are sublattices");
    debug_assert_eq!(q.free.len(), 1);
    let f0 = &q.free[0];
    let orders: Vec<BigInt> = q.torsion.iter().map(|(_, d)| d.clone()).collect();
    let group_order: BigInt = orders.iter().product();

    let (p, torsion_exp) = match mode {
        GluingMode::Exact => {
            if !group_order.is_one() {
                return GluingSearch::NotGlued;
            }
            (None, 0)
        }
        GluingMode::PPower { p, .. } => match p.log_exact(&group_order) {
            Some(g) => (Some(p), g),
            None => return GluingSearch::NotGlued,
        },
    };

    let torsion_lifts: Vec<Vec<BigInt>> = torsion_residues(&orders)
        .map(|c| {
            let mut w = vec![BigInt::zero(); n];
            for ((gen, _), k) in q.torsion.iter().zip(&c) {
                for (x, y) in w.iter_mut().zip(gen) {
                    *x += k * y;
                }
            }
            w
        })
        .collect();

    let pattern1 = SignPattern::split(n, e1, &[]);
    let pattern2 = SignPattern::split(n, &[], e2);
    let mut candidates = Vec::new();
    let mut inconclusive = false;
    for negative in [false, true] {
        let dir: Vec<BigInt> = if negative { f0.iter().map(|x| -x).collect() } else { f0.clone() };
        for (gi, wg) in torsion_lifts.iter().enumerate() {
            let exponents = match (mode, p) {
                (GluingMode::PPower { max_exp, .. }, Some(p)) => {
                    let (lo, hi) = multiplier_range(&dir, wg, &l1, &l2, e1, e2);
                    let Some(lo) = lo else { continue };
                    let cap = BigRational::from_integer(p.pow(max_exp + torsion_exp));
                    let beyond = BigRational::from_integer(p.pow(max_exp + torsion_exp + 1));
                    if hi.as_ref().is_none_or(|hi| hi >= &beyond) {
                        inconclusive = true;
                    }
                    powers_in_range(p, &lo, &hi.map_or(cap.clone(), |hi| hi.min(cap)))
                }
                _ => vec![0],
            };
            for k in exponents {
                let t = p.map_or_else(BigInt::one, |p| p.pow(k));
                let w: Vec<BigInt> = dir.iter().zip(wg).map(|(d, g)| &t * d + g).collect();
                candidates.push(Class { exponent: k, negative, torsion_index: gi, w });
            }
        }
    }
    candidates.sort_by_key(|c| (c.exponent, c.negative, c.torsion_index));
    for c in candidates {
        let Some(u) = complete_in_orthant(&c.w, &l1, &l2, &pattern1, &pattern2) else {
            continue;
        };
        return GluingSearch::Found { u, index_exponent: c.exponent + torsion_exp };
    }
    if inconclusive {
        GluingSearch::Exhausted
    } else {
        GluingSearch::NotGlued
    }
}

// All residue vectors `0 ≤ c_j < orders[j]` in lexicographic order.
fn torsion_residues(orders: &[BigInt]) -> impl Iterator<Item = Vec<BigInt>> + '_ {
    let mut next = Some(vec![BigInt::zero(); orders.len()]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut c = current.clone();
        for j in (0..orders.len()).rev() {
            c[j] += 1;
            if c[j] < orders[j] {
                next = Some(c);
                break;
            }
            c[j] = BigInt::zero();
        }
        Some(current)
    })
}

// `w + L1 + L2` meets the pattern; returns the lexicographically first point.
fn complete_in_orthant(
    w: &[BigInt],
    l1: &Lattice,
    l2: &Lattice,
    pattern1: &SignPattern,
    pattern2: &SignPattern,
) -> Option<Vec<BigInt>> {
    let lambda1 = coset_orthant_first(w, l1, pattern1).expect("restriction of a positive lattice")?;
    let lambda2 = coset_orthant_first(w, l2, pattern2).expect("restriction of a positive lattice")?;
    let x1 = l1.combine(&lambda1);
    let x2 = l2.combine(&lambda2);
    Some(w.iter().zip(x1.iter().zip(&x2)).map(|(a, (b, c))| a + b + c).collect())
}

// Rational range of `t ≥ 1` for which `t·dir + wg + L1 + L2` meets the
// pattern over Q. `(None, _)` when empty, `(_, None)` when unbounded.
fn multiplier_range(
    dir: &[BigInt],
    wg: &[BigInt],
    l1: &Lattice,
    l2: &Lattice,
    e1: &[usize],
    e2: &[usize],
) -> (Option<BigRational>, Option<BigRational>) {
    let (r1, r2) = (l1.rank(), l2.rank());
    let nvars = 1 + r1 + r2;
    let mut rows = Vec::new();
    let mut push = |j: usize, sign: i32| {
        let mut coeffs = vec![BigInt::zero(); nvars];
        coeffs[0] = &dir[j] * sign;
        for i in 0..r1 {
            coeffs[1 + i] = l1.basis().get(i, j) * sign;
        }
        for i in 0..r2 {
            coeffs[1 + r1 + i] = l2.basis().get(i, j) * sign;
        }
        rows.push((coeffs, -(&wg[j] * sign)));
    };
    for &j in e1 {
        push(j, 1);
    }
    for &j in e2 {
        push(j, -1);
    }
    let mut t_row = vec![BigInt::zero(); nvars];
    t_row[0] = BigInt::one();
    rows.push((t_row, BigInt::one()));
    match geometry::project(nvars, &rows) {
        Err(_) => (None, None),
        Ok(proj) => {
            let (lo, hi) = proj.bounds(0, &[]);
            (Some(lo.unwrap_or_else(BigRational::one)), hi)
        }
    }
}

fn powers_in_range(p: Prime, lo: &BigRational, hi: &BigRational) -> Vec<u32> {
    let mut out = Vec::new();
    let mut k = 0;
    let mut pk = BigRational::one();
    let step = BigRational::from_integer(p.as_bigint());
    while &pk <= hi {
        if &pk >= lo {
            out.push(k);
        }
        pk *= &step;
        k += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Yes,
    No,
    /// No complete gluing was found, but some branch hit the exponent cap.
    NoWithinBound,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::NoWithinBound => "no_within_bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub characteristic: Characteristic,
    pub certificate: Option<GluingCertificate>,
    pub diagnostics: Vec<String>,
}

/// Decides whether `l` is completely glued (its lattice ideal is a complete
/// intersection).
pub fn ci_decide(l: &Lattice) -> Result<Verdict, GluingError> {
    decide(l, Characteristic::Zero, GluingMode::Exact)
}

/// Decides whether `l` is completely `p`-glued (its lattice ideal is a
/// set-theoretic complete intersection on binomials in characteristic `p`).
/// Characteristic 0 is the same as [`ci_decide`].
pub fn stci_decide(l: &Lattice, ch: Characteristic, max_exp: u32) -> Result<Verdict, GluingError> {
    decide(l, ch, GluingMode::for_characteristic(ch, max_exp))
}

fn decide(l: &Lattice, ch: Characteristic, mode: GluingMode) -> Result<Verdict, GluingError> {
    if l.ambient_dim() > 64 {
        return Err(GluingError::TooManyCoordinates(l.ambient_dim()));
    }
    require_positive(l)?;
    let mut search = Search { root: l, mode, memo: HashMap::new(), partitions: 0, inconclusive: Vec::new() };
    let all: Vec<usize> = (0..l.ambient_dim()).collect();
    let result = search.solve(&all);
    let mut diagnostics = vec![
        format!("partitions examined: {}", search.partitions),
        format!("coordinate subsets decided: {}", search.memo.len()),
    ];
    for coords in &search.inconclusive {
        diagnostics.push(format!(
            "exponent cap reached on coordinates {}",
            coords.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(",")
        ));
    }
    let (outcome, certificate) = match result {
        Sub::Yes(cert) => {
            if let Err(v) = verify_certificate(l, &cert, ch) {
                panic!("decider produced a certificate that fails verification: {v}");
            }
            (Outcome::Yes, Some(cert))
        }
        Sub::No => (Outcome::No, None),
        Sub::Unknown => (Outcome::NoWithinBound, None),
    };
    Ok(Verdict { outcome, characteristic: ch, certificate, diagnostics })
}

#[derive(Clone)]
enum Sub {
    Yes(GluingCertificate),
    No,
    Unknown,
}

struct Search<'a> {
    root: &'a Lattice,
    mode: GluingMode,
    memo: HashMap<u64, Sub>,
    partitions: u64,
    inconclusive: Vec<Vec<usize>>,
}

impl Search<'_> {
    // Decides `L_F` for the root coordinates `coords`, read in `Z^{|F|}`.
    fn solve(&mut self, coords: &[usize]) -> Sub {
        let key = coords.iter().fold(0u64, |k, &c| k | 1 << c);
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let result = self.solve_uncached(coords);
        self.memo.insert(key, result.clone());
        result
    }

    fn solve_uncached(&mut self, coords: &[usize]) -> Sub {
        let n = coords.len();
        let local = self.root.restrict(coords).project(coords);
        if local.is_zero() {
            return Sub::Yes(GluingCertificate::Leaf { dim: n });
        }
        let mut unknown = false;
        // Coordinate 0 always sits in E1; bit i of `mask` puts coordinate i+1 there.
        for mask in 0u64..(1u64 << (n - 1)) - 1 {
            let e1: Vec<usize> = std::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
            let e2: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 0).collect();
            if local.restricted_rank(&e1) + local.restricted_rank(&e2) + 1 != local.rank() {
                continue;
            }
            self.partitions += 1;
            let (u, index_exponent) = match glue_search(&local, &e1, &e2, self.mode) {
                GluingSearch::Found { u, index_exponent } => (u, index_exponent),
                GluingSearch::NotGlued => continue,
                GluingSearch::Exhausted => {
                    unknown = true;
                    if !self.inconclusive.iter().any(|c| c == coords) {
                        self.inconclusive.push(coords.to_vec());
                    }
                    continue;
                }
            };
            let global1: Vec<usize> = e1.iter().map(|&i| coords[i]).collect();
            let global2: Vec<usize> = e2.iter().map(|&i| coords[i]).collect();
            let left = self.solve(&global1);
            if matches!(left, Sub::No) {
                continue;
            }
            let right = self.solve(&global2);
            match (left, right) {
                (Sub::Yes(left), Sub::Yes(right)) => {
                    return Sub::Yes(GluingCertificate::Node(Box::new(GlueNode {
                        e1,
                        e2,
                        u,
                        index_exponent,
                        left,
                        right,
                    })));
                }
                (_, Sub::No) => {}
                _ => unknown = true,
            }
        }
        if unknown {
            Sub::Unknown
        } else {
            Sub::No
        }
    }
}
