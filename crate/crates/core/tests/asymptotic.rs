mod common;

use proptest::prelude::*;
use symcon_core::asymptotic::{
    asymptotic_ideal, build_generating_sets, main_theorem_pipeline, oracle_value, verify_asymptotic_subadditivity,
    GradedSequence, Oracle, Provenance,
};
use symcon_core::monomial::{multiplier_ideal_monomial, MonomialIdeal};
use symcon_core::poly::Monomial;
use symcon_core::sympow::symbolic_power_monomial;

use common::{mono, ring};

#[test]
fn fresh_generators_of_symbolic_powers() {
    let r = ring("Q[x,y,z]");
    let seq = GradedSequence::symbolic_powers(mono(&r, "x*y, x*z, y*z")).unwrap();
    let sets = build_generating_sets(&seq, 3).unwrap();
    assert_eq!(sets.up_to(), 3);
    let xyz = Monomial::from_exponents([1, 1, 1]);
    let entry = sets.level(2).iter().find(|e| e.monomial == xyz).unwrap();
    assert_eq!(entry.provenance, Provenance::Fresh);
    assert!(sets.level(1).iter().all(|e| e.provenance == Provenance::Fresh));
    for m in 1..=3 {
        assert_eq!(sets.ideal(m), seq.level(m).unwrap());
    }
}

#[test]
fn stabilization() {
    let triv = GradedSequence::trivial(2);
    let a = asymptotic_ideal(&triv, 1, Oracle::Multiplier).unwrap();
    assert_eq!(a.l_star, 1);
    assert!(a.ideal.is_unit());

    let r = ring("Q[x,y]");
    let pw = GradedSequence::powers(mono(&r, "x, y"));
    let a = asymptotic_ideal(&pw, 2, Oracle::Multiplier).unwrap();
    assert_eq!(a.l_star, 1);
    assert_eq!(a.ideal, MonomialIdeal::maximal_power(2, 1));

    let r = ring("Q[x,y,z]");
    let tri = mono(&r, "x*y, x*z, y*z");
    let seq = GradedSequence::symbolic_powers(tri.clone()).unwrap();
    let a = asymptotic_ideal(&seq, 2, Oracle::Multiplier).unwrap();
    assert!(a.ideal.contains(&symbolic_power_monomial(&tri, 2).unwrap()));
    assert!(asymptotic_ideal(&seq, 0, Oracle::Multiplier).is_err());
}

#[test]
fn snc_oracle() {
    let f = MonomialIdeal::principal(Monomial::from_exponents([4, 7]));
    assert_eq!(oracle_value(&f, 2, Oracle::SncTest).unwrap(), MonomialIdeal::principal(Monomial::from_exponents([2, 3])));
    assert!(oracle_value(&MonomialIdeal::maximal_power(2, 1), 2, Oracle::SncTest).is_err());
}

#[test]
fn pipelines() {
    let r = ring("Q[x,y,z]");
    for m in 1..=3 {
        let rep = main_theorem_pipeline(&r, &mono(&r, "x*y, x*z, y*z"), m).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.h, 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn power_sequences(gens in prop::collection::vec([0u32..5, 0u32..5], 1..4), n in 1u32..3) {
        prop_assume!(gens.iter().all(|g| g[0] + g[1] > 0));
        let a = MonomialIdeal::from_exponents(2, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap();
        let seq = GradedSequence::powers(a.clone());
        let asym = asymptotic_ideal(&seq, n, Oracle::Multiplier).unwrap();
        // for powers the value is reached at once: J(a^n)
        prop_assert_eq!(asym.l_star, 1);
        prop_assert_eq!(&asym.ideal, &multiplier_ideal_monomial(&a.power(n), &num_rational::BigRational::from_integer(1.into())).unwrap());
        prop_assert!(verify_asymptotic_subadditivity(&seq, n, 2, Oracle::Multiplier).unwrap().passed);
    }
}
