//! Exact rational polyhedral computations: positivity of lattices, integer
//! points of a lattice coset inside an orthant, and extreme rays of cones.
//!
//! All feasibility questions go through [`fourier_motzkin`].

mod fourier_motzkin;

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::Lattice;
pub(crate) use fourier_motzkin::{project, Projection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("lattice is not positive on the constrained coordinates")]
    NotPositive,
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Vector of exact rationals in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn dot_int(&self, v: &[BigInt]) -> BigRational {
        self.0.iter().zip(v).map(|(c, x)| c * BigRational::from_integer(x.clone())).sum()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Per-coordinate sign requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    NonNegative,
    NonPositive,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    pub fn free(dim: usize) -> Self {
        SignPattern(vec![Sign::Free; dim])
    }

    /// `≥ 0` on `nonneg`, `≤ 0` on `nonpos`, free elsewhere.
    pub fn split(dim: usize, nonneg: &[usize], nonpos: &[usize]) -> Self {
        let mut p = Self::free(dim);
        for &i in nonneg {
            p.0[i] = Sign::NonNegative;
        }
        for &i in nonpos {
            p.0[i] = Sign::NonPositive;
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn admits(&self, v: &[BigInt]) -> bool {
        self.0.iter().zip(v).all(|(s, x)| match s {
            Sign::NonNegative => !x.is_negative(),
            Sign::NonPositive => !x.is_positive(),
            Sign::Free => true,
        })
    }

    fn constrained(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().enumerate().filter_map(|(j, s)| match s {
            Sign::NonNegative => Some((j, 1)),
            Sign::NonPositive => Some((j, -1)),
            Sign::Free => None,
        })
    }
}

/// Outcome of a positivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// A strictly positive grading vanishing on the lattice.
    Positive(RationalVector),
    /// A nonzero element of `L ∩ N^m`.
    NotPositive(Vec<BigInt>),
}

/// Decides whether `L ∩ N^m = {0}`.
///
/// Works in coefficient space: the system `λ·B ≥ 0, Σ(λ·B) ≥ 1` is feasible
/// iff `L` has a nonzero nonnegative element. When it is infeasible, the
/// Farkas multipliers `y` give the grading `c_k = y_k + y_sum > 0`.
pub fn positivity(l: &Lattice) -> Positivity {
    let b = l.basis();
    let r = l.rank();
    let m = l.ambient_dim();
    let mut rows = Vec::with_capacity(m + 1);
    for k in 0..m {
        rows.push((b.column(k), BigInt::zero()));
    }
    let sums: Vec<BigInt> = b.row_iter().map(|row| row.iter().sum()).collect();
    rows.push((sums, BigInt::one()));
    match project(r, &rows) {
        Err(y) => {
            let c: Vec<BigInt> = (0..m).map(|k| &y[k] + &y[m]).collect();
            let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            let grading = c.iter().map(|x| BigRational::from_integer(x / &g)).collect();
            Positivity::Positive(RationalVector(grading))
        }
        Ok(p) => {
            let lambda = p.rational_point();
            let den = lambda.iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
            let coeffs: Vec<BigInt> =
                lambda.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
            let g = coeffs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            let coeffs: Vec<BigInt> = coeffs.into_iter().map(|x| x / &g).collect();
            Positivity::NotPositive(b.left_mul_vec(&coeffs))
        }
    }
}

/// A strictly positive rational `c` with `c·u = 0` for all `u ∈ L`, if any.
pub fn positive_grading(l: &Lattice) -> Option<RationalVector> {
    match positivity(l) {
        Positivity::Positive(c) => Some(c),
        Positivity::NotPositive(_) => None,
    }
}

pub fn is_positive(l: &Lattice) -> bool {
    matches!(positivity(l), Positivity::Positive(_))
}

fn coset_projection(w0: &[BigInt], b: &Lattice, pattern: &SignPattern) -> Result<Option<Projection>, GeometryError> {
    let m = b.ambient_dim();
    for found in [w0.len(), pattern.dim()] {
        if found != m {
            return Err(GeometryError::DimensionMismatch { expected: m, found });
        }
    }
    let basis = b.basis();
    let r = b.rank();
    let constrained: Vec<(usize, i32)> = pattern.constrained().collect();

    // Bounded iff no nonzero λ keeps the signed values of λ·B nonnegative.
    let cols: Vec<usize> = constrained.iter().map(|&(j, _)| j).collect();
    if basis.select_columns(&cols).rank() < r {
        return Err(GeometryError::NotPositive);
    }
    let signed_col = |j: usize, s: i32| -> Vec<BigInt> { basis.column(j).into_iter().map(|x| x * s).collect() };
    let mut recession: Vec<(Vec<BigInt>, BigInt)> =
        constrained.iter().map(|&(j, s)| (signed_col(j, s), BigInt::zero())).collect();
    let mut total = vec![BigInt::zero(); r];
    for (a, _) in &recession {
        for (t, x) in total.iter_mut().zip(a) {
            *t += x;
        }
    }
    recession.push((total, BigInt::one()));
    if r > 0 && project(r, &recession).is_ok() {
        return Err(GeometryError::NotPositive);
    }

    let rows: Vec<(Vec<BigInt>, BigInt)> =
        constrained.iter().map(|&(j, s)| (signed_col(j, s), -(&w0[j] * s))).collect();
    Ok(project(r, &rows).ok())
}

/// All integer `λ` with `w0 + λ·basis(B)` inside `pattern`.
///
/// `B` must be positive on the constrained coordinates (with signs applied),
/// which makes the solution set finite. Solutions come in lexicographic order.
pub fn coset_orthant_solve(
    w0: &[BigInt],
    b: &Lattice,
    pattern: &SignPattern,
) -> Result<Vec<Vec<BigInt>>, GeometryError> {
    let mut out = Vec::new();
    if let Some(p) = coset_projection(w0, b, pattern)? {
        let _ = p
            .for_each_integer_point(|x| {
                out.push(x.to_vec());
                ControlFlow::Continue(())
            })
            .map_err(|_| GeometryError::NotPositive)?;
    }
    Ok(out)
}

/// Lexicographically smallest solution of [`coset_orthant_solve`].
pub fn coset_orthant_first(
    w0: &[BigInt],
    b: &Lattice,
    pattern: &SignPattern,
) -> Result<Option<Vec<BigInt>>, GeometryError> {
    let mut first = None;
    if let Some(p) = coset_projection(w0, b, pattern)? {
        let _ = p
            .for_each_integer_point(|x| {
                first = Some(x.to_vec());
                ControlFlow::Break(())
            })
            .map_err(|_| GeometryError::NotPositive)?;
    }
    Ok(first)
}

fn dot_rows(gens: &[&[BigInt]], rhs: &[BigInt]) -> Vec<(Vec<BigInt>, BigInt)> {
    gens.iter().zip(rhs).map(|(g, b)| (g.to_vec(), b.clone())).collect()
}

/// Whether `pos_Q(gens)` meets its negative only in zero.
pub fn is_strongly_convex(gens: &[Vec<BigInt>]) -> bool {
    let Some(n) = gens.first().map(Vec::len) else {
        return true;
    };
    let nonzero: Vec<&[BigInt]> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).map(Vec::as_slice).collect();
    let ones = vec![BigInt::one(); nonzero.len()];
    project(n, &dot_rows(&nonzero, &ones)).is_ok()
}

fn same_ray(a: &[BigInt], b: &[BigInt]) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    a.iter().zip(b).any(|(x, y)| (x * y).is_positive())
}

/// Indices of the generators spanning extreme rays of `pos_Q(gens)`, one per
/// ray (the smallest index among parallel generators).
pub fn extreme_rays(gens: &[Vec<BigInt>]) -> Result<Vec<usize>, GeometryError> {
    let Some(n) = gens.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(GeometryError::DimensionMismatch { expected: n, found: g.len() });
    }
    if !is_strongly_convex(gens) {
        return Err(GeometryError::NotStronglyConvex);
    }
    let nonzero: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].iter().any(|x| !x.is_zero())).collect();
    let mut rays = Vec::new();
    for (pos, &i) in nonzero.iter().enumerate() {
        if nonzero[..pos].iter().any(|&j| same_ray(&gens[j], &gens[i])) {
            continue;
        }
        // Extreme iff some functional is ≥ 0 on the other rays and < 0 on this one.
        let mut rows: Vec<(Vec<BigInt>, BigInt)> = nonzero
            .iter()
            .filter(|&&j| !same_ray(&gens[j], &gens[i]))
            .map(|&j| (gens[j].clone(), BigInt::zero()))
            .collect();
        rows.push((gens[i].iter().map(|x| -x).collect(), BigInt::one()));
        if project(n, &rows).is_ok() {
            rays.push(i);
        }
    }
    Ok(rays)
}
