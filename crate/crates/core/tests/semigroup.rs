mod common;

use ci_lattice::gluing::{gluing_vector, GluingMode, GluingSearch};
use ci_lattice::semigroup::{
    associated_semigroup, cone_report, has_no_invertibles, has_torsion_element_within, kernel_lattice,
    semigroup_gluing_check,
};
use ci_lattice::{ci_decide, stci_decide, Characteristic, Lattice, Outcome, Prime};
use common::*;
use rand::Rng;

const ORDERS: [&[i64]; 6] = [&[], &[2], &[3], &[4], &[6], &[2, 2]];

#[test]
fn semigroup_and_lattice_gluing_agree() {
    let mut rng = rng(23);
    let two = GluingMode::PPower { p: Prime::new(2).unwrap(), max_exp: 4 };
    let mut glued = [0usize; 2];
    for case in 0..150 {
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=3);
        let p = random_presentation(&mut rng, m, n, ORDERS[case % ORDERS.len()]);
        let l = kernel_lattice(&p);
        for (e1, e2) in canonical_partitions(m) {
            for (k, mode) in [GluingMode::Exact, two].into_iter().enumerate() {
                let lattice_side = matches!(gluing_vector(&l, &e1, &e2, mode).unwrap(), GluingSearch::Found { .. });
                let semigroup_side = semigroup_gluing_check(&p, &e1, &e2, mode).unwrap();
                assert_eq!(lattice_side, semigroup_side.is_some(), "{p:?} {e1:?}|{e2:?} {mode:?}");
                if let Some(g) = semigroup_side {
                    glued[k] += 1;
                    assert!(l.contains(&g.u));
                    let plus: Vec<_> = g.u.iter().map(|x| x.clone().max(0.into())).collect();
                    assert_eq!(p.evaluate(&plus), g.a);
                }
            }
        }
    }
    assert!(glued[0] > 20 && glued[1] > glued[0], "{glued:?}");
}

#[test]
fn associated_semigroup_round_trip() {
    let mut rng = rng(29);
    for _ in 0..200 {
        let m = rng.gen_range(1..=6);
        let l = random_positive_lattice(&mut rng, m.max(2), 3);
        let s = associated_semigroup(&l).unwrap();
        assert_eq!(kernel_lattice(&s), l);
        assert!(has_no_invertibles(&s));
    }
    assert!(associated_semigroup(&Lattice::from_rows(2, &[[1, 1]])).is_err());
}

#[test]
fn extreme_ray_bound_for_glued_semigroups() {
    let mut rng = rng(31);
    let mut checked = 0;
    for _ in 0..200 {
        let m = rng.gen_range(3..=7);
        let l = random_positive_lattice(&mut rng, m, 4);
        let yes = ci_decide(&l).unwrap().outcome == Outcome::Yes
            || stci_decide(&l, Characteristic::from_u64(2).unwrap(), 4).unwrap().outcome == Outcome::Yes;
        if !yes {
            continue;
        }
        let report = cone_report(&associated_semigroup(&l).unwrap()).unwrap();
        if report.dimension >= 2 {
            checked += 1;
            assert_eq!(report.within_bound, Some(true), "{l:?}");
        }
    }
    assert!(checked > 50);
}

#[test]
fn admissible_semigroups_have_no_small_torsion_combinations() {
    let mut rng = rng(37);
    for case in 0..60 {
        let m = rng.gen_range(1..=4);
        let p = random_presentation(&mut rng, m, 2, ORDERS[case % ORDERS.len()]);
        assert!(has_no_invertibles(&p));
        assert!(!has_torsion_element_within(&p, 3));
    }
    let torsion_gen = torsion_semigroup();
    assert!(!has_torsion_element_within(&torsion_gen, 5));
}
