mod common;

use ci_lattice::geometry::{coset_orthant_solve, extreme_rays, positivity, Positivity, SignPattern};
use ci_lattice::linalg::int_vec;
use ci_lattice::{IntMatrix, Lattice};
use common::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn small_lattice() -> impl Strategy<Value = Lattice> {
    (1usize..=4, 0usize..=3).prop_flat_map(|(m, r)| {
        prop::collection::vec(-3i64..=3, r * m).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(m).map(<[i64]>::to_vec).collect();
            Lattice::from_rows(m, &rows)
        })
    })
}

proptest! {
    #[test]
    fn positivity_matches_box_search(l in small_lattice()) {
        let brute = brute_nonneg_element(&l, 10);
        match positivity(&l) {
            Positivity::Positive(c) => {
                prop_assert!(brute.is_none(), "box search found {:?}", brute);
                prop_assert!(c.is_strictly_positive());
                for row in l.basis().row_iter() {
                    prop_assert!(c.dot_int(row).is_zero());
                }
            }
            Positivity::NotPositive(w) => {
                prop_assert!(l.contains(&w));
                prop_assert!(w.iter().all(|x| !x.is_negative()) && w.iter().any(|x| x.is_positive()));
            }
        }
    }

    #[test]
    fn extreme_rays_invariant_under_scaling_and_order(
        gens in prop::collection::vec(prop::collection::vec(0i64..=4, 2..=2), 1..=6),
        scale in prop::collection::vec(1i64..=3, 6),
        seed in any::<u64>(),
    ) {
        let gens: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).map(|g| int_vec(g)).collect();
        prop_assume!(!gens.is_empty());
        let rays = |gs: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            let mut out: Vec<Vec<BigInt>> = extreme_rays(gs).unwrap().into_iter().map(|i| primitive(&gs[i])).collect();
            out.sort();
            out
        };
        let base = rays(&gens);
        let scaled: Vec<Vec<BigInt>> = gens.iter().zip(&scale).map(|(g, &s)| g.iter().map(|x| x * s).collect()).collect();
        prop_assert_eq!(rays(&scaled), base.clone());
        let mut rng = rng(seed);
        let perm = random_permutation(&mut rng, gens.len());
        let shuffled: Vec<Vec<BigInt>> = perm.iter().map(|&i| gens[i].clone()).collect();
        prop_assert_eq!(rays(&shuffled), base);
    }
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    v.iter().map(|x| x / &g).collect()
}

/// Every integer `λ` in a wide box with `w0 + λ·B` inside the pattern.
fn brute_coset(w0: &[BigInt], b: &Lattice, pattern: &SignPattern, bound: i64) -> Vec<Vec<BigInt>> {
    let r = b.rank();
    let mut out = Vec::new();
    let mut lambda = vec![-bound; r];
    loop {
        let coeffs = int_vec(&lambda);
        let v: Vec<BigInt> = w0.iter().zip(b.combine(&coeffs)).map(|(a, x)| a + x).collect();
        if pattern.admits(&v) {
            out.push(coeffs);
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
    out.sort();
    out
}

#[test]
fn coset_solutions_match_box_enumeration() {
    let mut rng = rng(43);
    let mut nonempty = 0;
    for _ in 0..300 {
        let e = rng.gen_range(1..=4);
        let l = random_positive_lattice(&mut rng, e.max(2), 2);
        let e = l.ambient_dim();
        let w0: Vec<BigInt> = (0..e).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect();
        let pattern = SignPattern::split(e, &(0..e).collect::<Vec<_>>(), &[]);
        let mut fast = coset_orthant_solve(&w0, &l, &pattern).unwrap();
        fast.sort();
        assert_eq!(fast, brute_coset(&w0, &l, &pattern, 25), "{l:?} {w0:?}");
        if !fast.is_empty() {
            nonempty += 1;
        }
    }
    assert!(nonempty > 30);
}

#[test]
fn coset_examples() {
    let all = |n: usize| SignPattern::split(n, &(0..n).collect::<Vec<_>>(), &[]);
    assert_eq!(
        coset_orthant_solve(&int_vec(&[3, 1, 0]), &Lattice::zero(3), &all(3)).unwrap(),
        vec![Vec::<BigInt>::new()]
    );
    let b = Lattice::from_rows(3, &[[1, 3, -4]]);
    assert_eq!(coset_orthant_solve(&int_vec(&[3, 1, 0]), &b, &all(3)).unwrap(), vec![int_vec(&[0])]);
    assert!(coset_orthant_solve(&int_vec(&[-1]), &Lattice::zero(1), &all(1)).unwrap().is_empty());
    let not_positive = Lattice::from_generators(&IntMatrix::from_rows(2, &[[1, 1]]));
    assert!(coset_orthant_solve(&int_vec(&[0, 0]), &not_positive, &all(2)).is_err());
}
