use num_complex::Complex64;
use proptest::prelude::*;

use arthur_phi::chamber::DEFAULT_HYPERPLANE_CAP;
use arthur_phi::characters::{
    close, dual_highest_weight, wcf_trace, weight_multiplicities, weyl_dimension, TorusElement,
};
use arthur_phi::constants::CbarSolver;
use arthur_phi::root_datum::{types, RootSystem, WeightVec, WeylGroup, DEFAULT_WEYL_CAP};
use arthur_phi::scalar::Scalar;
use arthur_phi::{Rat, SmallRat};

fn regular(sys: &RootSystem<Rat>, v: &[i64]) -> bool {
    let w = WeightVec::<Rat>::from_ints(v);
    sys.coroots().iter().all(|c| w.pair(c) != Rat::from_int(0))
}

fn rank_two() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    (
        prop_oneof![Just("B2"), Just("C2"), Just("G2")],
        prop::collection::vec(-9i64..=9, 2),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wall_equations_hold_and_values_are_even((name, v) in rank_two()) {
        let sys = types::by_name::<Rat>(name).unwrap();
        prop_assume!(regular(&sys, &v));
        let s = CbarSolver::new(&sys, DEFAULT_HYPERPLANE_CAP).unwrap();
        let t = s.table(&WeightVec::from_ints(&v)).unwrap();
        for (f, facet) in s.arrangement().complex().facets().iter().enumerate() {
            let [a, b] = facet.chambers;
            prop_assert_eq!(t.values[a] + t.values[b], 2 * t.facet_values[f]);
        }
        prop_assert!(t.values.iter().all(|c| c % 2 == 0));
    }

    #[test]
    fn orbit_sums((name, v) in rank_two()) {
        let sys = types::by_name::<Rat>(name).unwrap();
        prop_assume!(regular(&sys, &v));
        let weyl = WeylGroup::generate(&sys, DEFAULT_WEYL_CAP).unwrap();
        let s = CbarSolver::new(&sys, DEFAULT_HYPERPLANE_CAP).unwrap();
        let lambda = WeightVec::from_ints(&v);
        let x0 = s.dual_chamber(&lambda).unwrap();
        let order = weyl.order() as i64;
        prop_assert_eq!(s.prop1_sum(&weyl, x0, &lambda).unwrap(), order);
        prop_assert_eq!(s.prop1_alt_sum(&weyl, x0, &lambda).unwrap(), s.expected_alt_sum(&weyl).unwrap());
    }

    #[test]
    fn tables_are_equivariant((name, v) in rank_two(), g in 0usize..12) {
        let sys = types::by_name::<Rat>(name).unwrap();
        prop_assume!(regular(&sys, &v));
        let weyl = WeylGroup::generate(&sys, DEFAULT_WEYL_CAP).unwrap();
        let g = g % weyl.order();
        let s = CbarSolver::new(&sys, DEFAULT_HYPERPLANE_CAP).unwrap();
        let lambda = WeightVec::from_ints(&v);
        let t = s.table(&lambda).unwrap();
        let moved = s.table(&weyl.act_weight(g, &lambda)).unwrap();
        for c in 0..t.values.len() {
            prop_assert_eq!(moved.values[s.arrangement().act_on_chamber(&weyl, g, c)], t.values[c]);
        }
    }

    #[test]
    fn small_and_big_rationals_agree((name, v) in rank_two()) {
        let big = types::by_name::<Rat>(name).unwrap();
        prop_assume!(regular(&big, &v));
        let small = types::by_name::<SmallRat>(name).unwrap();
        let a = CbarSolver::new(&big, DEFAULT_HYPERPLANE_CAP).unwrap().table(&WeightVec::from_ints(&v)).unwrap();
        let b = CbarSolver::new(&small, DEFAULT_HYPERPLANE_CAP).unwrap().table(&WeightVec::from_ints(&v)).unwrap();
        prop_assert_eq!(a.values, b.values);
        prop_assert_eq!(a.facet_values, b.facet_values);
    }

    #[test]
    fn dimension_and_trace(
        name in prop_oneof![Just("A2"), Just("B2"), Just("G2")],
        coeffs in prop::collection::vec(0i64..=2, 2),
        angle in prop::collection::vec(-0.5f64..0.5, 2),
        real in prop::collection::vec(-0.5f64..0.5, 2),
    ) {
        let sys = types::by_name::<Rat>(name).unwrap();
        let weyl = WeylGroup::generate(&sys, DEFAULT_WEYL_CAP).unwrap();
        let pos = weyl.positive_system().clone();
        // mu with <mu, alpha_i^vee> = coeffs[i] on the simple roots.
        let pair = |i: usize, k: usize| sys.root(pos.simple[k]).pair(sys.coroot(pos.simple[i]));
        let det = pair(0, 0) * pair(1, 1) - pair(0, 1) * pair(1, 0);
        let (a, b) = (Rat::from_int(coeffs[0]), Rat::from_int(coeffs[1]));
        let c0 = (a.clone() * pair(1, 1) - b.clone() * pair(0, 1)) / det.clone();
        let c1 = (b * pair(0, 0) - a * pair(1, 0)) / det;
        let mu = &sys.root(pos.simple[0]).scale(&c0) + &sys.root(pos.simple[1]).scale(&c1);
        let table = weight_multiplicities(&sys, &pos, &mu).unwrap();
        prop_assert_eq!(Rat::from_int(table.dimension() as i64), weyl_dimension(&sys, &pos, &mu));
        let gamma = TorusElement::new(real, angle);
        if let Ok(w) = wcf_trace::<f64, Rat>(&sys, &weyl, &pos, &mu, &gamma) {
            let t = table.trace(&gamma);
            prop_assume!(w.norm() < 1e6);
            prop_assert!(close(t, w, 1e-6), "{} vs {}", t, w);
        }
        let dual = weight_multiplicities(&sys, &pos, &dual_highest_weight(&sys, &pos, &mu)).unwrap();
        let a: Complex64 = dual.trace(&gamma.inverse());
        prop_assert!(close(a, table.trace(&gamma), 1e-9));
    }
}
