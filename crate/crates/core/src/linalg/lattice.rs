use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{DisplayVec, IntMatrix};
use super::normal_form::{hermite, smith};
use super::{LinalgError, Prime};

/// A sublattice of `Z^m`, stored by its canonical Hermite basis.
///
/// Two values compare equal exactly when they span the same subgroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

/// Isomorphism type of a quotient `L / M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | …`, each at least 2.
    pub torsion: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the quotient, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

/// Explicit generators of `L / M` as elements of `L`.
///
/// `free` lifts a basis of the free part, `torsion` lifts generators of the
/// cyclic factors together with their orders. Every class of the quotient is
/// `Σ t_i free_i + Σ c_j torsion_j` for unique `t_i ∈ Z`, `0 ≤ c_j < order_j`.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub free: Vec<Vec<BigInt>>,
    pub torsion: Vec<(Vec<BigInt>, BigInt)>,
    lattice: Lattice,
    // Coordinates of an element of L in the generator basis are `c · change`.
    change: IntMatrix,
    // Per generator-basis coordinate: Some(order) for torsion, None for free,
    // Some(1) for coordinates killed in the quotient.
    kinds: Vec<Option<BigInt>>,
}

impl QuotientStructure {
    pub fn invariants(&self) -> QuotientInvariants {
        QuotientInvariants {
            free_rank: self.free.len(),
            torsion: self.torsion.iter().map(|(_, d)| d.clone()).collect(),
        }
    }

    /// Class of `v ∈ L` as (free coordinates, torsion residues).
    pub fn class_of(&self, v: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let c = self.lattice.coordinates(v)?;
        let y = self.change.left_mul_vec(&c);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (yi, kind) in y.into_iter().zip(&self.kinds) {
            match kind {
                None => free.push(yi),
                Some(d) if d.is_one() => {}
                Some(d) => torsion.push(yi.mod_floor(d)),
            }
        }
        Some((free, torsion))
    }
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::empty(ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::identity(ambient_dim) }
    }

    /// Row span of `generators` (any number of rows, zero rows allowed).
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let h = hermite(generators);
        Lattice { ambient_dim: generators.ncols(), basis: h.basis() }
    }

    pub fn from_rows<T, R>(ambient_dim: usize, rows: &[R]) -> Self
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        Self::from_generators(&IntMatrix::from_rows(ambient_dim, rows))
    }

    pub fn from_vectors(ambient_dim: usize, rows: &[Vec<BigInt>]) -> Self {
        Self::from_generators(&IntMatrix::from_bigint_rows(ambient_dim, rows.to_vec()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical (Hermite) basis, one row per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.to_rows()
    }

    /// Integer coefficients `c` with `c · basis = v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (i, row) in self.basis.row_iter().enumerate() {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            // Columns before this pivot are already cleared by earlier rows.
            if residual[..pivot_col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = residual[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in residual.iter_mut().zip(self.basis.row(i)) {
                    *x -= &q * b;
                }
            }
            coeffs.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.row_iter().all(|r| self.contains(r))
    }

    /// Element with the given coordinates in the canonical basis.
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        self.basis.left_mul_vec(coeffs)
    }

    /// `L ∩ Z^E`, kept in the same ambient space.
    pub fn restrict(&self, coords: &[usize]) -> Lattice {
        let mut keep = vec![false; self.ambient_dim];
        for &c in coords {
            keep[c] = true;
        }
        let outside: Vec<usize> = (0..self.ambient_dim).filter(|&j| !keep[j]).collect();
        if outside.is_empty() || self.is_zero() {
            return self.clone();
        }
        let kernel = hermite(&self.basis.select_columns(&outside)).left_kernel();
        Lattice::from_generators(&kernel.mul(&self.basis))
    }

    /// Rank of `L ∩ Z^E` without building it.
    pub fn restricted_rank(&self, coords: &[usize]) -> usize {
        let mut keep = vec![false; self.ambient_dim];
        for &c in coords {
            keep[c] = true;
        }
        let outside: Vec<usize> = (0..self.ambient_dim).filter(|&j| !keep[j]).collect();
        self.rank() - self.basis.select_columns(&outside).rank()
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimensions differ");
        Lattice::from_generators(&self.basis.vstack(&other.basis))
    }

    /// Sum with the cyclic lattice generated by `v`.
    pub fn sum_vector(&self, v: &[BigInt]) -> Lattice {
        let mut g = self.basis.clone();
        g.push_row(v);
        Lattice::from_generators(&g)
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimensions differ");
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.ambient_dim);
        }
        let stacked = self.basis.vstack(&other.basis);
        let kernel = hermite(&stacked).left_kernel();
        let own: Vec<usize> = (0..self.rank()).collect();
        Lattice::from_generators(&kernel.select_columns(&own).mul(&self.basis))
    }

    /// Reads a lattice supported on `coords` as a lattice of `Z^{|coords|}`.
    pub fn project(&self, coords: &[usize]) -> Lattice {
        Lattice::from_generators(&self.basis.select_columns(coords))
    }

    /// Inverse of [`Lattice::project`]: coordinate `i` goes to `coords[i]` of `Z^ambient`.
    pub fn embed(&self, coords: &[usize], ambient_dim: usize) -> Lattice {
        assert_eq!(coords.len(), self.ambient_dim);
        let mut g = IntMatrix::zeros(self.rank(), ambient_dim);
        for i in 0..self.rank() {
            for (j, &c) in coords.iter().enumerate() {
                g.set(i, c, self.basis.get(i, j).clone());
            }
        }
        Lattice::from_generators(&g)
    }

    /// Lattice with coordinates permuted: old coordinate `j` moves to `perm[j]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Lattice {
        self.embed(perm, self.ambient_dim)
    }

    fn coefficient_matrix(&self, sub: &Lattice) -> Result<IntMatrix, LinalgError> {
        if sub.ambient_dim != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: sub.ambient_dim });
        }
        let mut rows = Vec::with_capacity(sub.rank());
        for r in sub.basis.row_iter() {
            match self.coordinates(r) {
                Some(c) => rows.push(c),
                None => return Err(LinalgError::NotASublattice { witness: DisplayVec(r).to_string() }),
            }
        }
        Ok(IntMatrix::from_bigint_rows(self.rank(), rows))
    }

    /// Generators of `self / sub`; fails unless `sub ⊆ self`.
    pub fn quotient_structure(&self, sub: &Lattice) -> Result<QuotientStructure, LinalgError> {
        let coeffs = self.coefficient_matrix(sub)?;
        let s = smith(&coeffs);
        let k = self.rank();
        let gens = s.right_inverse.mul(&self.basis);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        let mut kinds = Vec::with_capacity(k);
        for i in 0..k {
            let d = s.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                free.push(gens.row(i).to_vec());
                kinds.push(None);
            } else {
                if !d.is_one() {
                    torsion.push((gens.row(i).to_vec(), d.clone()));
                }
                kinds.push(Some(d));
            }
        }
        Ok(QuotientStructure { free, torsion, lattice: self.clone(), change: s.right, kinds })
    }

    pub fn quotient_invariants(&self, sub: &Lattice) -> Result<QuotientInvariants, LinalgError> {
        let coeffs = self.coefficient_matrix(sub)?;
        let s = smith(&coeffs);
        let nonzero: Vec<&BigInt> = s.diagonal.iter().filter(|d| !d.is_zero()).collect();
        Ok(QuotientInvariants {
            free_rank: self.rank() - nonzero.len(),
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        })
    }

    /// `Some(e)` when `[self : sub] = p^e`, `None` when the finite index is
    /// not a power of `p`.
    pub fn index_p_power(&self, sub: &Lattice, p: Prime) -> Result<Option<u32>, LinalgError> {
        if sub.rank() != self.rank() {
            return Err(LinalgError::InfiniteIndex { rank: self.rank(), sub_rank: sub.rank() });
        }
        let inv = self.quotient_invariants(sub)?;
        let order = inv.order().expect("equal ranks give a finite quotient");
        Ok(p.log_exact(&order))
    }

    /// `(L : p^∞)`, all vectors with some `p`-power multiple in `L`.
    pub fn saturate_p(&self, p: Prime) -> Lattice {
        self.saturate_with(|d| p.strip(d))
    }

    /// Smallest lattice containing `L` with torsion-free quotient `Z^m / L`.
    pub fn saturate_full(&self) -> Lattice {
        self.saturate_with(|_| BigInt::one())
    }

    // With `basis = U^{-1} · diag(d) · V^{-1}`, the lattice is spanned by
    // `d_i · w_i` where `w_i` are rows of `V^{-1}`; rescale each `d_i`.
    fn saturate_with(&self, rescale: impl Fn(&BigInt) -> BigInt) -> Lattice {
        if self.is_zero() {
            return self.clone();
        }
        let s = smith(&self.basis);
        let mut g = IntMatrix::zeros(0, self.ambient_dim);
        for (i, d) in s.diagonal.iter().enumerate() {
            let f = rescale(d);
            let row: Vec<BigInt> = s.right_inverse.row(i).iter().map(|x| x * &f).collect();
            g.push_row(&row);
        }
        Lattice::from_generators(&g)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(Z^{}, {})", self.ambient_dim, self.basis)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{} in Z^{}", self.basis, self.ambient_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lattice_l() -> Lattice {
        Lattice::from_rows(4, &[[1, 3, -4, 0], [3, 1, 0, -4]])
    }

    fn lattice_l_prime() -> Lattice {
        Lattice::from_rows(4, &[[1, 3, -4, 0], [0, 2, -3, 1]])
    }

    #[test]
    fn membership_and_coordinates() {
        let l = lattice_l();
        assert!(l.contains(&v(&[4, 4, -4, -4])));
        assert!(!l.contains(&v(&[0, 2, -3, 1])));
        let c = l.coordinates(&v(&[3, 1, 0, -4])).unwrap();
        assert_eq!(l.combine(&c), v(&[3, 1, 0, -4]));
    }

    #[test]
    fn restrict_examples() {
        let l = lattice_l();
        assert_eq!(l.restrict(&[0, 1, 2]), Lattice::from_rows(4, &[[1, 3, -4, 0]]));
        assert_eq!(l.restrict(&[3]), Lattice::zero(4));
        assert_eq!(l.restrict(&[0, 1, 2, 3]), l);
        assert_eq!(l.restricted_rank(&[0, 1, 2]), 1);
        assert_eq!(l.restricted_rank(&[1, 2, 3]), 1);
        assert_eq!(l.restricted_rank(&[0, 1]), 0);
    }

    #[test]
    fn sums() {
        let a = Lattice::from_rows(4, &[[1, 3, -4, 0]]);
        assert_eq!(a.sum(&Lattice::zero(4)), a);
        let b = Lattice::from_rows(4, &[[3, 1, 0, -4]]);
        assert_eq!(a.sum(&b), lattice_l());
        let x = Lattice::from_rows(2, &[[1, 0]]);
        let y = Lattice::from_rows(2, &[[0, 1]]);
        assert_eq!(x.sum(&y), Lattice::full(2));
    }

    #[test]
    fn quotients() {
        let l = lattice_l();
        assert!(l.quotient_invariants(&l).unwrap().is_trivial());
        let two = Lattice::from_rows(2, &[[2, 0], [0, 2]]);
        let q = Lattice::full(2).quotient_invariants(&two).unwrap();
        assert_eq!(q, QuotientInvariants { free_rank: 0, torsion: v(&[2, 2]) });
        let q = lattice_l_prime().quotient_invariants(&l).unwrap();
        assert_eq!(q, QuotientInvariants { free_rank: 0, torsion: v(&[4]) });
        assert!(matches!(l.quotient_invariants(&lattice_l_prime()), Err(LinalgError::NotASublattice { .. })));
    }

    #[test]
    fn quotient_structure_classes() {
        let lp = lattice_l_prime();
        let base = Lattice::from_rows(4, &[[1, 3, -4, 0]]);
        let qs = lp.quotient_structure(&base).unwrap();
        assert_eq!(qs.free.len(), 1);
        assert!(qs.torsion.is_empty());
        let (free, _) = qs.class_of(&qs.free[0]).unwrap();
        assert_eq!(free, v(&[1]));
        let (free, _) = qs.class_of(&v(&[3, 1, 0, -4])).unwrap();
        assert_eq!(free[0].abs(), BigInt::from(4));
    }

    #[test]
    fn p_power_index() {
        let two = Prime::new(2).unwrap();
        let l = lattice_l();
        assert_eq!(l.index_p_power(&l, two), Ok(Some(0)));
        assert_eq!(lattice_l_prime().index_p_power(&l, two), Ok(Some(2)));
        let z = Lattice::from_rows(1, &[[1]]);
        let six = Lattice::from_rows(1, &[[6]]);
        assert_eq!(z.index_p_power(&six, two), Ok(None));
        assert!(matches!(l.index_p_power(&Lattice::zero(4), two), Err(LinalgError::InfiniteIndex { .. })));
    }

    #[test]
    fn saturations() {
        let two = Prime::new(2).unwrap();
        let l = Lattice::from_rows(2, &[[2, -2]]);
        assert_eq!(l.saturate_p(two), Lattice::from_rows(2, &[[1, -1]]));
        assert_eq!(l.saturate_full(), Lattice::from_rows(2, &[[1, -1]]));
        assert_eq!(lattice_l().saturate_p(two), lattice_l_prime().saturate_p(two));
        let three = Prime::new(3).unwrap();
        assert_eq!(lattice_l().saturate_p(three), lattice_l());
        assert_eq!(Lattice::from_rows(2, &[[2, 0], [0, 3]]).saturate_full(), Lattice::full(2));
        assert_eq!(Lattice::full(3).saturate_full(), Lattice::full(3));
    }

    #[test]
    fn intersection_and_embedding() {
        let a = Lattice::from_rows(2, &[[2, 0], [0, 1]]);
        let b = Lattice::from_rows(2, &[[1, 0], [0, 3]]);
        assert_eq!(a.intersection(&b), Lattice::from_rows(2, &[[2, 0], [0, 3]]));
        let l = lattice_l().restrict(&[0, 1, 2]);
        let p = l.project(&[0, 1, 2]);
        assert_eq!(p, Lattice::from_rows(3, &[[1, 3, -4]]));
        assert_eq!(p.embed(&[0, 1, 2], 4), l);
    }
}
