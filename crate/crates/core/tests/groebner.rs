mod common;

use proptest::prelude::*;
use symcon_core::groebner::{buchberger, eliminate, is_groebner_basis, kernel_of_map, reduce};
use symcon_core::ideal::Ideal;

use common::{basis, ideal, poly, ring};

fn gb_strings(decl: &str, gens: &str) -> Vec<String> {
    let r = ring(decl);
    let i = ideal(&r, gens);
    let gb = buchberger(&r, i.generators()).unwrap();
    gb.generators().iter().map(|g| g.to_string()).collect()
}

#[test]
fn division() {
    let r = ring("Q[x,y] lex");
    assert!(reduce(&poly(&r, "x^2"), &[poly(&r, "x")]).unwrap().0.is_zero());
    assert_eq!(reduce(&poly(&r, "y"), &[poly(&r, "x")]).unwrap().0, poly(&r, "y"));
    let (rem, quo) = reduce(&poly(&r, "x^2*y + y"), &[poly(&r, "x^2 - 1")]).unwrap();
    assert_eq!(rem, poly(&r, "2*y"));
    assert_eq!(quo, vec![poly(&r, "y")]);
}

#[test]
fn reduced_bases() {
    assert_eq!(gb_strings("Q[x,y] lex", "x"), ["x"]);
    assert_eq!(gb_strings("Q[x,y] lex", "x - y^2, y - x^2"), ["x - y^2", "y^4 - y"]);
    for order in ["lex", "grevlex", "block(1)"] {
        let mut g = gb_strings(&format!("Q[x,y,z] {order}"), "x*y, x*z, y*z");
        g.sort();
        assert_eq!(g, ["x*y", "x*z", "y*z"]);
    }
}

#[test]
fn membership() {
    let r = ring("Q[x,y,z]");
    let gb = buchberger(&r, &[poly(&r, "x")]).unwrap();
    assert!(gb.membership(&poly(&r, "x^2 + x*y")).unwrap());
    let gb = buchberger(&r, &[poly(&r, "x"), poly(&r, "y")]).unwrap();
    assert!(!gb.membership(&poly(&r, "1")).unwrap());
    let tri2 = ideal(&r, "x*y, x*z, y*z").power(2).unwrap();
    assert!(!tri2.membership(&poly(&r, "x*y*z")).unwrap());
}

#[test]
fn elimination() {
    let r = ring("Q[t,x] lex");
    let gb = buchberger(&r, &[poly(&r, "t*x - 1")]).unwrap();
    assert!(eliminate(&gb, 1).unwrap().is_zero_ideal());

    let r = ring("Q[t,x,y] lex");
    let gb = buchberger(&r, &[poly(&r, "y - t^2"), poly(&r, "x - t^3")]).unwrap();
    let e = eliminate(&gb, 2).unwrap();
    let names: Vec<String> = e.generators().iter().map(|g| g.to_string()).collect();
    assert_eq!(names.len(), 1);
    let kept = e.ring().clone();
    assert_eq!(e.generators()[0].monic(), poly(&kept, "x^2 - y^3").monic());

    let gb = buchberger(&r, &[poly(&r, "x - y")]).unwrap();
    assert_eq!(eliminate(&gb, 3).unwrap().generators(), gb.generators());
}

#[test]
fn kernels() {
    let src = ring("Q[x,y,z]");
    let tgt = ring("Q[t]");
    let t = tgt.var(0);
    let images = vec![t.pow(3).unwrap(), t.pow(4).unwrap(), t.pow(5).unwrap()];
    let ker = Ideal::from_basis(kernel_of_map(&src, &tgt, &images).unwrap());
    for g in ["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"] {
        assert!(ker.membership(&poly(&src, g)).unwrap(), "{g}");
    }
    // every kernel element maps to zero
    for g in ker.groebner().unwrap().generators() {
        assert!(g.substitute(&images).unwrap().is_zero());
    }

    let src1 = ring("Q[x]");
    assert!(kernel_of_map(&src1, &tgt, std::slice::from_ref(&t)).unwrap().is_zero_ideal());

    let diag = ring("Q[T1,T2]");
    let r = ring("Q[x]");
    let ker = kernel_of_map(&diag, &r, &[r.var(0), r.var(0)]).unwrap();
    assert_eq!(ker.generators(), &[poly(&diag, "T1 - T2")]);
}

#[test]
fn timeouts_are_reported() {
    use std::time::Duration;
    use symcon_core::budget::{scoped, Budget};
    let r = ring("Q[x,y,z,w]");
    let i = ideal(&r, "x + y + z + w, x*y + y*z + z*w + w*x, x*y*z + y*z*w + z*w*x + w*x*y, x*y*z*w - 1");
    let res = scoped(Budget::with_timeout(Duration::ZERO), || buchberger(&r, i.generators()));
    assert_eq!(res.unwrap_err(), symcon_core::Error::Timeout);
}

const POOL: [&str; 8] = ["x^2 - y", "x*y - 1", "y^2 - x*z", "x*z + y", "z^2 - 1", "x + y + z", "x^2*y - z", "y*z - x^2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The reduced basis is a basis, is reduced, is independent of generator
    /// order and scaling, and reduces each generator to zero.
    #[test]
    fn reduced_basis_is_canonical(picks in prop::collection::vec(0usize..POOL.len(), 1..4), scale in 1i64..5, order in 0usize..3) {
        let decl = ["Q[x,y,z] lex", "Q[x,y,z] grevlex", "Q[x,y,z] block(1)"][order];
        let r = ring(decl);
        let gens: Vec<_> = picks.iter().map(|&k| poly(&r, POOL[k])).collect();
        let gb = buchberger(&r, &gens).unwrap();
        prop_assert!(gb.is_reduced());
        prop_assert!(is_groebner_basis(gb.generators()).unwrap());
        for g in &gens {
            prop_assert!(gb.membership(g).unwrap());
        }
        let mut rev: Vec<_> = gens.iter().rev().map(|g| g.scale(&num_rational::BigRational::from_integer(scale.into()))).collect();
        rev.push(&gens[0] * &poly(&r, "x + 1"));
        let again = buchberger(&r, &rev).unwrap();
        prop_assert_eq!(again.generators(), gb.generators());
    }
}

#[test]
fn basis_strings_are_stable() {
    let r = ring("Q[x,y,z]");
    assert_eq!(basis(&ideal(&r, "x*y, x*z, y*z")), ["x*y", "x*z", "y*z"]);
}
