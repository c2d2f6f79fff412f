mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use symcon_core::monomial::{
    big_height, height, integral_closure, minimal_primes_squarefree, multiplier_ideal_monomial, newton_polyhedron,
    Halfspace, MonomialIdeal,
};
use symcon_core::poly::Monomial;

use common::{mono, ring};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn hs(normal: &[i64], offset: i64) -> Halfspace {
    Halfspace {
        normal: normal.iter().map(|&a| BigInt::from(a)).collect(),
        offset: offset.into(),
    }
}

fn show(m: &MonomialIdeal, vars: &[&str]) -> String {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let s = m.display_with(&names).to_string();
    s
}

#[test]
fn newton_halfspaces() {
    let r = ring("Q[x,y]");
    let p = newton_polyhedron(&mono(&r, "x^2, y^3")).unwrap();
    let mut facets: Vec<_> = p.halfspaces().iter().filter(|h| !h.is_coordinate()).cloned().collect();
    facets.sort();
    assert_eq!(facets, vec![hs(&[3, 2], 6)]);

    let r = ring("Q[x,y,z]");
    let p = newton_polyhedron(&mono(&r, "x*y, x*z, y*z")).unwrap();
    assert!(p.halfspaces().contains(&hs(&[1, 1, 1], 2)));
    assert!(p.contains_lattice_point(&[1, 1, 1]));
    assert!(p.contains_point(&[q(2, 3), q(2, 3), q(2, 3)]));
    assert!(!p.contains_point(&[q(1, 2), q(1, 2), q(1, 2)]));
    assert!(p.separating_halfspace(&[q(1, 2), q(1, 2), q(1, 2)]).is_some());
}

#[test]
fn closures() {
    let r = ring("Q[x,y]");
    let c = integral_closure(&mono(&r, "x^2, y^2")).unwrap();
    assert_eq!(c, mono(&r, "x^2, x*y, y^2"));
    let c = integral_closure(&mono(&r, "x^3, y^3")).unwrap();
    assert_eq!(c, mono(&r, "x^3, x^2*y, x*y^2, y^3"));
    let i = mono(&r, "x^2, x*y, y^2");
    assert_eq!(integral_closure(&i).unwrap(), i);
}

#[test]
fn primes() {
    let r = ring("Q[x,y,z]");
    let tri = mono(&r, "x*y, x*z, y*z");
    assert_eq!(minimal_primes_squarefree(&tri).unwrap(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    assert_eq!(height(&tri).unwrap(), 2);
    assert_eq!(big_height(&tri).unwrap(), 2);
    let r = ring("Q[x,y,z,w]");
    let i = mono(&r, "x*y, z*w");
    assert_eq!(minimal_primes_squarefree(&i).unwrap().len(), 4);
    assert_eq!(big_height(&i).unwrap(), 2);
    let i = mono(&r, "x, y*z");
    assert_eq!((height(&i).unwrap(), big_height(&i).unwrap()), (2, 2));
    let i = mono(&r, "x*y, x*z");
    assert_eq!((height(&i).unwrap(), big_height(&i).unwrap()), (1, 2));
    assert!(minimal_primes_squarefree(&mono(&r, "x^2")).is_err());
}

#[test]
fn multiplier_values() {
    let r = ring("Q[x,y]");
    let i = mono(&r, "x^2, y^3");
    let at = |t| multiplier_ideal_monomial(&i, &t).unwrap();
    let m = mono(&r, "x, y");
    assert!(at(q(1, 2)).is_unit());
    assert_eq!(at(q(5, 6)), m);
    assert_eq!(at(q(1, 1)), m);
    assert_eq!(at(q(4, 3)), mono(&r, "x^2, x*y, y^2"));
    assert_eq!(at(q(5, 3)), mono(&r, "x^2, x*y^2, y^3"));
    assert!(at(BigRational::zero()).is_unit());
    let p = mono(&r, "x^3*y^2");
    let j = multiplier_ideal_monomial(&p, &q(3, 2)).unwrap();
    assert_eq!(show(&j, &["x", "y"]), "(x^4*y^3)");
}

#[test]
fn multiplier_of_the_maximal_ideal() {
    // x^v is in J(m^t) iff |v| + d > t
    for d in 1..=4usize {
        for k in 0..=30i64 {
            let t = q(k, 6);
            let need = (t.floor().to_integer() + BigInt::one() - BigInt::from(d as i64)).max(BigInt::zero());
            let expect = MonomialIdeal::maximal_power(d, need.try_into().unwrap());
            let got = multiplier_ideal_monomial(&MonomialIdeal::maximal_power(d, 1), &t).unwrap();
            assert_eq!(got, expect, "d = {d}, t = {t}");
        }
    }
}

/// Whether `w` is strictly above some point of `t·[a, b]`, by intersecting
/// the open conditions on the segment parameter.
fn strictly_above_segment(a: &[u32], b: &[u32], w: &[u32], t: &BigRational) -> bool {
    // interval of λ with bounds (value, strict)
    let mut lo = (BigRational::zero(), false);
    let mut hi = (BigRational::one(), false);
    for i in 0..w.len() {
        let s = BigRational::from_integer((a[i] as i64 - b[i] as i64).into());
        let rest = BigRational::from_integer(w[i].into()) / t - BigRational::from_integer(b[i].into());
        if s.is_zero() {
            if rest <= BigRational::zero() {
                return false;
            }
        } else if s > BigRational::zero() {
            let bound = rest / s;
            if bound <= hi.0 {
                hi = (bound, true);
            }
        } else {
            let bound = rest / s;
            if bound >= lo.0 {
                lo = (bound, true);
            }
        }
    }
    lo.0 < hi.0 || (lo.0 == hi.0 && !lo.1 && !hi.1)
}

/// Lattice description of `J(a^t)` in two variables: `x^v` belongs iff
/// `v + (1,1)` is interior to `t·Newt(a)`. The lower boundary of a planar
/// Newton polygon is a chain of segments between generators, so pairs suffice.
fn howald_2d(gens: &[[u32; 2]], v: [u32; 2], t: &BigRational) -> bool {
    let w = [v[0] + 1, v[1] + 1];
    if t.is_zero() {
        return true;
    }
    gens.iter().any(|a| gens.iter().any(|b| strictly_above_segment(a, b, &w, t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplier_matches_lattice_oracle(
        gens in prop::collection::vec([0u32..6, 0u32..6], 1..4),
        num in 0i64..120,
        den in 1i64..25,
    ) {
        prop_assume!(gens.iter().all(|g| g[0] + g[1] > 0));
        let t = q(num % (3 * den + 1), den);
        let m = MonomialIdeal::from_exponents(2, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap();
        let j = multiplier_ideal_monomial(&m, &t).unwrap();
        for v0 in 0..20u32 {
            for v1 in 0..20u32 {
                let inside = j.contains_monomial(&Monomial::from_exponents([v0, v1]));
                prop_assert_eq!(inside, howald_2d(&gens, [v0, v1], &t), "v = ({}, {}), t = {}", v0, v1, t);
            }
        }
    }

    #[test]
    fn multiplier_properties(
        gens in prop::collection::vec(prop::collection::vec(0u32..5, 3), 1..4),
        k1 in 0i64..40,
        k2 in 0i64..40,
    ) {
        prop_assume!(gens.iter().all(|g| g.iter().any(|&e| e > 0)));
        let m = MonomialIdeal::from_exponents(3, &gens).unwrap();
        let (s, t) = (q(k1.min(k2), 8), q(k1.max(k2), 8));
        let js = multiplier_ideal_monomial(&m, &s).unwrap();
        let jt = multiplier_ideal_monomial(&m, &t).unwrap();
        // monotone in t
        prop_assert!(js.contains(&jt));
        // the integral closure sits inside J(a)
        let closure = integral_closure(&m).unwrap();
        prop_assert!(closure.contains(&m));
        prop_assert!(multiplier_ideal_monomial(&m, &BigRational::one()).unwrap().contains(&closure));
        // a·J(a^t) ⊆ J(a^{t+1}), with equality once t ≥ 2 (Skoda, d = 3)
        let shifted = multiplier_ideal_monomial(&m, &(&t + BigRational::one())).unwrap();
        let product = m.product(&jt).unwrap();
        prop_assert!(shifted.contains(&product));
        if t >= q(2, 1) {
            prop_assert_eq!(shifted, product);
        }
    }
}
