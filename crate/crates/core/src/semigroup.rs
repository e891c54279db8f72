//! Semigroups in `Z^n ⊕ T` and their kernel lattices.
//!
//! A presentation lists generators `a_1, …, a_m` of a subsemigroup of
//! `Z^n ⊕ Z/d_1 ⊕ … ⊕ Z/d_t`. Its kernel lattice is the kernel of
//! `Z^m → Z^n ⊕ T`, `e_i ↦ a_i`. Gluing of semigroups is checked here directly
//! in the group `Z^n ⊕ T`, independently of the lattice-side search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{self, coset_orthant_first, extreme_rays, GeometryError, Positivity, SignPattern};
use crate::gluing::GluingMode;
use crate::linalg::{hermite, smith, solve_left, IntMatrix, Lattice, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("torsion orders must be at least 2, got {0}")]
    BadTorsionOrder(BigInt),
    #[error("generator {index} has {found} {part} entries, expected {expected}")]
    Shape { index: usize, part: &'static str, expected: usize, found: usize },
    #[error("the semigroup has invertible elements (its lattice is not positive)")]
    NotAdmissible,
    #[error("bad partition: {0}")]
    BadPartition(String),
}

/// An element of `Z^n ⊕ Z/d_1 ⊕ … ⊕ Z/d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    /// Residues reduced into `[0, d_j)`.
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation {
    free_rank: usize,
    torsion_orders: Vec<BigInt>,
    generators: Vec<GroupElement>,
}

impl SemigroupPresentation {
    /// Validates shapes and reduces torsion residues.
    pub fn new(
        free_rank: usize,
        torsion_orders: Vec<BigInt>,
        generators: Vec<GroupElement>,
    ) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        if let Some(d) = torsion_orders.iter().find(|d| **d < BigInt::from(2)) {
            return Err(SemigroupError::BadTorsionOrder(d.clone()));
        }
        let t = torsion_orders.len();
        let mut reduced = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            if g.free.len() != free_rank {
                return Err(SemigroupError::Shape { index, part: "free", expected: free_rank, found: g.free.len() });
            }
            if g.torsion.len() != t {
                return Err(SemigroupError::Shape { index, part: "torsion", expected: t, found: g.torsion.len() });
            }
            let torsion = g.torsion.iter().zip(&torsion_orders).map(|(r, d)| r.mod_floor(d)).collect();
            reduced.push(GroupElement { free: g.free, torsion });
        }
        Ok(SemigroupPresentation { free_rank, torsion_orders, generators: reduced })
    }

    /// Generators in `Z^n` without torsion.
    pub fn affine<T: Clone + Into<BigInt>, R: AsRef<[T]>>(
        free_rank: usize,
        gens: &[R],
    ) -> Result<Self, SemigroupError> {
        let generators = gens
            .iter()
            .map(|g| GroupElement { free: g.as_ref().iter().cloned().map(Into::into).collect(), torsion: Vec::new() })
            .collect();
        Self::new(free_rank, Vec::new(), generators)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Rows `(free | torsion)` of the chosen generators followed by the
    /// torsion relations `d_j e_{n+j}`.
    fn relation_matrix(&self, indices: &[usize]) -> IntMatrix {
        let n = self.free_rank;
        let t = self.torsion_orders.len();
        let mut m = IntMatrix::zeros(indices.len() + t, n + t);
        for (row, &i) in indices.iter().enumerate() {
            let g = &self.generators[i];
            for (j, x) in g.free.iter().chain(&g.torsion).enumerate() {
                m.set(row, j, x.clone());
            }
        }
        for (j, d) in self.torsion_orders.iter().enumerate() {
            m.set(indices.len() + j, n + j, d.clone());
        }
        m
    }

    fn lift(&self, g: &GroupElement) -> Vec<BigInt> {
        g.free.iter().chain(&g.torsion).cloned().collect()
    }

    fn reduce(&self, lifted: &[BigInt]) -> GroupElement {
        let n = self.free_rank;
        GroupElement {
            free: lifted[..n].to_vec(),
            torsion: lifted[n..].iter().zip(&self.torsion_orders).map(|(x, d)| x.mod_floor(d)).collect(),
        }
    }

    /// `Σ c_i a_i`.
    pub fn evaluate(&self, coeffs: &[BigInt]) -> GroupElement {
        let mut acc = vec![BigInt::zero(); self.free_rank + self.torsion_orders.len()];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            for (a, x) in acc.iter_mut().zip(self.lift(g)) {
                *a += c * x;
            }
        }
        self.reduce(&acc)
    }

    fn sub_presentation(&self, indices: &[usize]) -> SemigroupPresentation {
        SemigroupPresentation {
            free_rank: self.free_rank,
            torsion_orders: self.torsion_orders.clone(),
            generators: indices.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }
}

/// Kernel of `Z^m → Z^n ⊕ T`, `e_i ↦ a_i`.
pub fn kernel_lattice(p: &SemigroupPresentation) -> Lattice {
    let m = p.len();
    let all: Vec<usize> = (0..m).collect();
    let kernel = hermite(&p.relation_matrix(&all)).left_kernel();
    Lattice::from_generators(&kernel.select_columns(&all))
}

pub fn has_no_invertibles(p: &SemigroupPresentation) -> bool {
    geometry::is_positive(&kernel_lattice(p))
}

/// The semigroup generated by the classes `e_i + L` in `Z^m / L`.
///
/// With `U · basis · V = diag(d)`, the class of `e_i` has coordinates given
/// by row `i` of `V`: entries with `d_k ≥ 2` are torsion residues, entries
/// beyond the rank are free, and entries with `d_k = 1` vanish.
pub fn associated_semigroup(l: &Lattice) -> Result<SemigroupPresentation, SemigroupError> {
    if !geometry::is_positive(l) {
        return Err(SemigroupError::NotAdmissible);
    }
    let m = l.ambient_dim();
    let r = l.rank();
    let (v, diagonal) = if l.is_zero() {
        (IntMatrix::identity(m), Vec::new())
    } else {
        let s = smith(l.basis());
        (s.right, s.diagonal)
    };
    let torsion_cols: Vec<usize> = (0..r).filter(|&k| diagonal[k] > BigInt::one()).collect();
    let torsion_orders: Vec<BigInt> = torsion_cols.iter().map(|&k| diagonal[k].clone()).collect();
    let generators = (0..m)
        .map(|i| GroupElement {
            free: (r..m).map(|k| v.get(i, k).clone()).collect(),
            torsion: torsion_cols.iter().map(|&k| v.get(i, k).mod_floor(&diagonal[k])).collect(),
        })
        .collect();
    SemigroupPresentation::new(m - r, torsion_orders, generators)
}

/// Witness of a semigroup gluing: `a = Σ_{E1} u_i a_i = Σ_{E2} (−u_i) a_i`
/// with `u ≥ 0` on `E1`, `u ≤ 0` on `E2`, and `[Z A^{E1} ∩ Z A^{E2} : Z a]`
/// equal to `p^index_exponent` (1 for exact gluing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupGlue {
    pub a: GroupElement,
    pub u: Vec<BigInt>,
    pub index_exponent: u32,
}

/// Checks whether `N A` is the gluing (or `p`-gluing) of `N A^{E1}` and
/// `N A^{E2}` (0-based indices), working in `Z^n ⊕ T`.
///
/// The intersection `I = Z A^{E1} ∩ Z A^{E2}` is computed from the lifted
/// generator lattices in `Z^{n+t}`. It must have free rank one; its elements
/// `t·f + g` with `|t|` and the torsion order powers of `p` (just `±f` for
/// exact gluing, which needs `I ≅ Z`) are tested for membership in both
/// `N A^{E1}` and `N A^{E2}`. Candidate multiples `|t|` run up to
/// `p^(max_exp) · |tors I|`.
pub fn semigroup_gluing_check(
    p: &SemigroupPresentation,
    e1: &[usize],
    e2: &[usize],
    mode: GluingMode,
) -> Result<Option<SemigroupGlue>, SemigroupError> {
    check_partition(p.len(), e1, e2)?;
    if !has_no_invertibles(p) {
        return Err(SemigroupError::NotAdmissible);
    }
    let dim = p.free_rank + p.torsion_orders.len();
    let relations = {
        let mut d = IntMatrix::zeros(p.torsion_orders.len(), dim);
        for (j, o) in p.torsion_orders.iter().enumerate() {
            d.set(j, p.free_rank + j, o.clone());
        }
        Lattice::from_generators(&d)
    };
    let span = |idx: &[usize]| Lattice::from_generators(&p.relation_matrix(idx));
    let meet = span(e1).intersection(&span(e2));
    let q = meet.quotient_structure(&relations).expect("torsion relations lie in both spans");
    if q.free.len() != 1 {
        return Ok(None);
    }
    let orders: Vec<BigInt> = q.torsion.iter().map(|(_, d)| d.clone()).collect();
    let group_order: BigInt = orders.iter().product();
    let (prime, max_exp, torsion_exp) = match mode {
        GluingMode::Exact if group_order.is_one() => (None, 0, 0),
        GluingMode::Exact => return Ok(None),
        GluingMode::PPower { p: prime, max_exp } => match prime.log_exact(&group_order) {
            Some(g) => (Some(prime), max_exp, g),
            None => return Ok(None),
        },
    };

    let side1 = p.sub_presentation(e1);
    let side2 = p.sub_presentation(e2);
    let kernel1 = kernel_lattice(&side1);
    let kernel2 = kernel_lattice(&side2);
    let max_k = if prime.is_some() { max_exp + torsion_exp } else { 0 };
    for k in 0..=max_k {
        let t = prime.map_or_else(BigInt::one, |pr: Prime| pr.pow(k));
        for sign in [1, -1] {
            for residues in residues_of(&orders) {
                let mut lifted: Vec<BigInt> = q.free[0].iter().map(|x| x * &t * sign).collect();
                for ((gen, _), c) in q.torsion.iter().zip(&residues) {
                    for (x, y) in lifted.iter_mut().zip(gen) {
                        *x += c * y;
                    }
                }
                let Some(v1) = nonnegative_representation(&side1, &kernel1, &lifted) else {
                    continue;
                };
                let Some(v2) = nonnegative_representation(&side2, &kernel2, &lifted) else {
                    continue;
                };
                let mut u = vec![BigInt::zero(); p.len()];
                for (&i, x) in e1.iter().zip(v1) {
                    u[i] = x;
                }
                for (&i, x) in e2.iter().zip(v2) {
                    u[i] = -x;
                }
                return Ok(Some(SemigroupGlue { a: p.reduce(&lifted), u, index_exponent: k + torsion_exp }));
            }
        }
    }
    Ok(None)
}

fn residues_of(orders: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for d in orders {
        let mut next = Vec::new();
        for prefix in &out {
            let mut c = BigInt::zero();
            while &c < d {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
                c += 1;
            }
        }
        out = next;
    }
    out
}

// `v ∈ N^{|side|}` with `Σ v_i a_i = target` in `Z^n ⊕ T`, if any.
fn nonnegative_representation(
    side: &SemigroupPresentation,
    kernel: &Lattice,
    target: &[BigInt],
) -> Option<Vec<BigInt>> {
    let all: Vec<usize> = (0..side.len()).collect();
    let x = solve_left(&side.relation_matrix(&all), target)?;
    let x0 = &x[..side.len()];
    let pattern = SignPattern::split(side.len(), &all, &[]);
    let lambda = coset_orthant_first(x0, kernel, &pattern).expect("kernel of an admissible side is positive")?;
    let shift = kernel.combine(&lambda);
    Some(x0.iter().zip(shift).map(|(a, b)| a + b).collect())
}

fn check_partition(m: usize, e1: &[usize], e2: &[usize]) -> Result<(), SemigroupError> {
    let bad = |s: String| Err(SemigroupError::BadPartition(s));
    if e1.is_empty() || e2.is_empty() {
        return bad("both sides must be nonempty".into());
    }
    let mut seen = vec![false; m];
    for &i in e1.iter().chain(e2) {
        if i >= m || seen[i] {
            return bad(format!("index {i} out of range or repeated"));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return bad("sides do not cover all generators".into());
    }
    Ok(())
}

/// Extreme rays of the cone over the free parts of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    /// Rank of the group generated by the projected generators.
    pub dimension: usize,
    pub projected: Vec<Vec<BigInt>>,
    /// Generator indices, one per extreme ray.
    pub rays: Vec<usize>,
    pub count: usize,
    /// `count ≤ 2·dimension − 2`; only meaningful for `dimension ≥ 2`.
    pub within_bound: Option<bool>,
}

pub fn cone_report(p: &SemigroupPresentation) -> Result<ConeReport, SemigroupError> {
    if !has_no_invertibles(p) {
        return Err(SemigroupError::NotAdmissible);
    }
    let projected: Vec<Vec<BigInt>> = p.generators.iter().map(|g| g.free.clone()).collect();
    let dimension = IntMatrix::from_bigint_rows(p.free_rank, projected.clone()).rank();
    let rays = extreme_rays(&projected).map_err(|e| match e {
        GeometryError::NotStronglyConvex => SemigroupError::NotAdmissible,
        other => unreachable!("projected generators share a dimension: {other}"),
    })?;
    let count = rays.len();
    let within_bound = (dimension >= 2).then(|| count + 2 <= 2 * dimension);
    Ok(ConeReport { dimension, projected, rays, count, within_bound })
}

/// A nonzero nonnegative element of the kernel lattice, if the semigroup has
/// invertible elements.
pub fn invertibility_witness(p: &SemigroupPresentation) -> Option<Vec<BigInt>> {
    match geometry::positivity(&kernel_lattice(p)) {
        Positivity::Positive(_) => None,
        Positivity::NotPositive(w) => Some(w),
    }
}

/// Whether some nonzero `Σ c_i a_i` with `0 ≤ c_i ≤ bound` is a torsion element.
pub fn has_torsion_element_within(p: &SemigroupPresentation, bound: u32) -> bool {
    let m = p.len();
    let mut c = vec![0u32; m];
    loop {
        let mut i = 0;
        while i < m && c[i] == bound {
            c[i] = 0;
            i += 1;
        }
        if i == m {
            return false;
        }
        c[i] += 1;
        let coeffs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        if p.evaluate(&coeffs).free.iter().all(|x| !x.is_positive() && !x.is_negative()) {
            return true;
        }
    }
}
