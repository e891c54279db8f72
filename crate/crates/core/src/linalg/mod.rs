//! Exact integer linear algebra: normal forms, lattices, quotients and
//! p-saturation.

mod lattice;
mod matrix;
mod normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use lattice::{Lattice, QuotientInvariants, QuotientStructure};
pub use matrix::{DisplayVec, IntMatrix};
pub use normal_form::{hermite, smith, HermiteDecomposition, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("not a sublattice: {witness} is not a member")]
    NotASublattice { witness: String },
    #[error("infinite index: rank {rank} versus sublattice rank {sub_rank}")]
    InfiniteIndex { rank: usize, sub_rank: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A prime number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Option<Prime> {
        is_prime(p).then_some(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p`-adic valuation of a nonzero integer.
    pub fn valuation(self, n: &BigInt) -> u32 {
        assert!(!n.is_zero(), "valuation of zero");
        let p = self.as_bigint();
        let mut n = n.abs();
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return e;
            }
            n = q;
            e += 1;
        }
    }

    /// `n` with every factor `p` removed (sign kept).
    pub fn strip(self, n: &BigInt) -> BigInt {
        let p = self.as_bigint();
        let mut n = n.clone();
        while !n.is_zero() && n.is_multiple_of(&p) {
            n /= &p;
        }
        n
    }

    /// `Some(e)` when `|n| = p^e`.
    pub fn log_exact(self, n: &BigInt) -> Option<u32> {
        if n.is_zero() {
            return None;
        }
        let e = self.valuation(n);
        self.strip(n).abs().is_one().then_some(e)
    }

    pub fn pow(self, e: u32) -> BigInt {
        num_traits::pow(self.as_bigint(), e as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical lattice spanned by the rows of `m`.
pub fn hnf(m: &IntMatrix) -> Lattice {
    Lattice::from_generators(m)
}

pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    smith(m)
}

/// `(u⁺, u⁻)` with `u = u⁺ − u⁻`, both nonnegative with disjoint supports.
pub fn pos_neg_parts(u: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    u.iter().map(|x| if x.is_positive() { (x.clone(), BigInt::zero()) } else { (BigInt::zero(), -x) }).unzip()
}

pub fn restrict(l: &Lattice, coords: &[usize]) -> Lattice {
    l.restrict(coords)
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Lattice {
    a.sum(b)
}

pub fn quotient_invariants(l: &Lattice, m: &Lattice) -> Result<QuotientInvariants, LinalgError> {
    l.quotient_invariants(m)
}

pub fn index_p_power(l: &Lattice, m: &Lattice, p: Prime) -> Result<Option<u32>, LinalgError> {
    l.index_p_power(m, p)
}

pub fn saturate_p(l: &Lattice, p: Prime) -> Lattice {
    l.saturate_p(p)
}

pub fn saturate_full(l: &Lattice) -> Lattice {
    l.saturate_full()
}

/// Some integer `x` with `x · m = target`, if one exists.
pub fn solve_left(m: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let h = hermite(m);
    let basis = h.basis();
    let lattice = Lattice::from_generators(&basis);
    debug_assert_eq!(lattice.basis(), &basis);
    let coords = lattice.coordinates(target)?;
    let rows: Vec<usize> = (0..h.rank).collect();
    Some(h.transform.select_rows(&rows).left_mul_vec(&coords))
}

/// Integer vector from small integers.
pub fn int_vec<T: Clone + Into<BigInt>>(xs: &[T]) -> Vec<BigInt> {
    xs.iter().cloned().map(Into::into).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pos_neg_examples() {
        assert_eq!(pos_neg_parts(&int_vec(&[1, -2, 0])), (int_vec(&[1, 0, 0]), int_vec(&[0, 2, 0])));
        assert_eq!(pos_neg_parts(&int_vec(&[0, 0])), (int_vec(&[0, 0]), int_vec(&[0, 0])));
        assert_eq!(pos_neg_parts(&int_vec(&[3, 1, 0, -4])), (int_vec(&[3, 1, 0, 0]), int_vec(&[0, 0, 0, 4])));
    }

    #[test]
    fn primes() {
        assert!(Prime::new(1).is_none());
        assert!(Prime::new(4).is_none());
        let p = Prime::new(2).unwrap();
        assert_eq!(p.log_exact(&BigInt::from(8)), Some(3));
        assert_eq!(p.log_exact(&BigInt::from(-4)), Some(2));
        assert_eq!(p.log_exact(&BigInt::from(6)), None);
        assert_eq!(p.strip(&BigInt::from(24)), BigInt::from(3));
    }

    #[test]
    fn solve_left_examples() {
        let m = IntMatrix::from_rows(2, &[[2, 0], [0, 2], [1, 1]]);
        let x = solve_left(&m, &int_vec(&[3, 1])).unwrap();
        assert_eq!(m.left_mul_vec(&x), int_vec(&[3, 1]));
        assert!(solve_left(&m, &int_vec(&[1, 0])).is_none());
        assert_eq!(solve_left(&IntMatrix::empty(2), &int_vec(&[0, 0])), Some(vec![]));
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&IntMatrix::identity(2)).basis(), &IntMatrix::identity(2));
        let l = hnf(&IntMatrix::from_rows(2, &[[2, 0], [0, 2], [1, 1]]));
        assert_eq!(l.basis(), &IntMatrix::from_rows(2, &[[1, 1], [0, 2]]));
    }
}
