#![allow(dead_code)]

use ci_lattice::geometry::is_positive;
use ci_lattice::linalg::int_vec;
use ci_lattice::mixed::block_compose;
use ci_lattice::semigroup::{GroupElement, SemigroupPresentation};
use ci_lattice::{IntMatrix, Lattice};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lattice_l() -> Lattice {
    Lattice::from_rows(4, &[[1, 3, -4, 0], [3, 1, 0, -4]])
}

pub fn lattice_l_prime() -> Lattice {
    Lattice::from_rows(4, &[[1, 3, -4, 0], [0, 2, -3, 1]])
}

pub fn torsion_semigroup() -> SemigroupPresentation {
    let g = |f: [i64; 2], t: i64| GroupElement { free: int_vec(&f), torsion: int_vec(&[t]) };
    SemigroupPresentation::new(2, int_vec(&[4]), vec![g([4, 0], 0), g([0, 4], 0), g([1, 3], 0), g([3, 1], 1)]).unwrap()
}

pub fn affine_semigroup() -> SemigroupPresentation {
    SemigroupPresentation::affine(2, &[[4, 0], [0, 4], [1, 3], [3, 1]]).unwrap()
}

fn nonneg_nonzero(rng: &mut TestRng, len: usize, max: i64) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=max)).collect();
        if v.iter().any(|&x| x != 0) {
            return int_vec(&v);
        }
    }
}

/// A mixed dominating `r × m` matrix built by nested block composition;
/// needs `m ≥ r + 1` when `r ≥ 1`.
pub fn random_md(rng: &mut TestRng, r: usize, m: usize) -> IntMatrix {
    let m_out = compose_rec(rng, r, m);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let mut rows: Vec<usize> = (0..r).collect();
    rows.shuffle(rng);
    m_out.select_columns(&perm).select_rows(&rows)
}

fn compose_rec(rng: &mut TestRng, r: usize, m: usize) -> IntMatrix {
    assert!(m >= 1 && (r == 0 || m > r));
    if r == 0 {
        return IntMatrix::empty(m);
    }
    let r1 = rng.gen_range(0..r);
    let r2 = r - 1 - r1;
    // Each side needs at least rows + 1 columns.
    let min1 = r1 + 1;
    let min2 = r2 + 1;
    let m1 = rng.gen_range(min1..=m - min2);
    let m2 = m - m1;
    let a = compose_rec(rng, r1, m1);
    let b = compose_rec(rng, r2, m2);
    let up = nonneg_nonzero(rng, m1, 3);
    let um = nonneg_nonzero(rng, m2, 3);
    block_compose(&a, &b, &up, &um).unwrap()
}

/// Random unimodular `n × n` matrix.
pub fn random_unimodular(rng: &mut TestRng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n == 0 {
        return u;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => u.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-2..=2))),
            1 => u.swap_rows(i, j),
            _ => u.negate_row(i),
        }
    }
    u
}

/// Random `n × n` matrix with determinant `±det`.
pub fn random_with_determinant(rng: &mut TestRng, n: usize, det: &BigInt) -> IntMatrix {
    let mut d = IntMatrix::identity(n);
    let k = rng.gen_range(0..n);
    d.set(k, k, det.clone());
    random_unimodular(rng, n).mul(&d).mul(&random_unimodular(rng, n))
}

/// Random admissible presentation: nonnegative nonzero free parts.
pub fn random_presentation(rng: &mut TestRng, m: usize, n: usize, orders: &[i64]) -> SemigroupPresentation {
    let generators = (0..m)
        .map(|_| GroupElement {
            free: nonneg_nonzero(rng, n, 4),
            torsion: orders.iter().map(|&d| BigInt::from(rng.gen_range(0..d))).collect(),
        })
        .collect();
    SemigroupPresentation::new(n, int_vec(orders), generators).unwrap()
}

/// Canonical partitions of `0..n`: `0 ∈ E1`, both sides nonempty.
pub fn canonical_partitions(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (0u64..(1u64 << (n - 1)) - 1)
        .map(|mask| {
            let e1 = std::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
            let e2 = (1..n).filter(|i| mask >> (i - 1) & 1 == 0).collect();
            (e1, e2)
        })
        .collect()
}

/// Random positive lattice: a block composed lattice, the kernel of a random
/// affine semigroup, or a random index-2 sublattice of either.
pub fn random_positive_lattice(rng: &mut TestRng, m: usize, max_rank: usize) -> Lattice {
    loop {
        let r = rng.gen_range(0..=max_rank.min(m - 1));
        let l = match rng.gen_range(0..3) {
            0 => Lattice::from_generators(&random_md(rng, r, m)),
            1 => {
                let p = random_presentation(rng, m, m - r, &[]);
                ci_lattice::semigroup::kernel_lattice(&p)
            }
            _ => {
                let base = Lattice::from_generators(&random_md(rng, r, m));
                if base.rank() == 0 {
                    base
                } else {
                    let a = random_with_determinant(rng, base.rank(), &BigInt::from(2));
                    Lattice::from_generators(&a.mul(base.basis()))
                }
            }
        };
        if is_positive(&l) {
            return l;
        }
    }
}

/// Kernel of a random affine semigroup in `N^n` with entries up to `max`.
pub fn random_semigroup_lattice(rng: &mut TestRng, m: usize, n: usize, max: i64) -> Lattice {
    let generators: Vec<Vec<BigInt>> = (0..m).map(|_| nonneg_nonzero(rng, n, max)).collect();
    let p = SemigroupPresentation::affine(n, &generators).unwrap();
    ci_lattice::semigroup::kernel_lattice(&p)
}

/// Exhaustive complete-gluing decider: every partition (not only canonical
/// ones), glue vectors searched over `|λ_i| ≤ bound` in the lattice basis.
pub fn brute_force_ci(l: &Lattice, bound: i64) -> bool {
    let n = l.ambient_dim();
    let r = l.rank();
    if r == 0 {
        return true;
    }
    for mask in 1u64..(1u64 << n) - 1 {
        let e1: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let e2: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let l1 = l.restrict(&e1);
        let l2 = l.restrict(&e2);
        let sum = l1.sum(&l2);
        let mut lambda = vec![-bound; r];
        let mut glued = false;
        'search: loop {
            let u = l.combine(&int_vec(&lambda));
            let signs_ok = u.iter().any(|x| !x.is_zero())
                && e1.iter().all(|&i| !u[i].is_negative())
                && e2.iter().all(|&i| !u[i].is_positive());
            if signs_ok && &sum.sum_vector(&u) == l {
                glued = true;
                break 'search;
            }
            let mut k = 0;
            while k < r && lambda[k] == bound {
                lambda[k] = -bound;
                k += 1;
            }
            if k == r {
                break;
            }
            lambda[k] += 1;
        }
        if glued && brute_force_ci(&l1.project(&e1), bound) && brute_force_ci(&l2.project(&e2), bound) {
            return true;
        }
    }
    false
}

/// Brute-force search for a nonzero element of `L ∩ N^m` with coefficients
/// `|λ_i| ≤ bound`.
pub fn brute_nonneg_element(l: &Lattice, bound: i64) -> Option<Vec<BigInt>> {
    let r = l.rank();
    if r == 0 {
        return None;
    }
    let mut lambda = vec![-bound; r];
    loop {
        let v = l.combine(&int_vec(&lambda));
        if v.iter().any(|x| !x.is_zero()) && v.iter().all(|x| !x.is_negative()) {
            return Some(v);
        }
        let mut k = 0;
        while k < r && lambda[k] == bound {
            lambda[k] = -bound;
            k += 1;
        }
        if k == r {
            return None;
        }
        lambda[k] += 1;
    }
}

/// Random coordinate permutation of `0..m`.
pub fn random_permutation(rng: &mut TestRng, m: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.shuffle(rng);
    p
}
