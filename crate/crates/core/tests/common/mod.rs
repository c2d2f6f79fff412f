#![allow(dead_code)]

use std::sync::Arc;

use symcon_core::ideal::Ideal;
use symcon_core::monomial::MonomialIdeal;
use symcon_core::poly::{PolyRing, Polynomial};
use symcon_core::script::{eval_ideal, eval_poly, parse_ring};

pub fn ring(decl: &str) -> Arc<PolyRing> {
    parse_ring(decl).unwrap()
}

pub fn poly(r: &Arc<PolyRing>, text: &str) -> Polynomial {
    eval_poly(r, text).unwrap()
}

pub fn ideal(r: &Arc<PolyRing>, text: &str) -> Ideal {
    eval_ideal(r, text).unwrap()
}

pub fn mono(r: &Arc<PolyRing>, text: &str) -> MonomialIdeal {
    MonomialIdeal::from_ideal(&ideal(r, text)).unwrap()
}

/// Generators of the reduced basis, printed.
pub fn basis(i: &Ideal) -> Vec<String> {
    i.groebner().unwrap().generators().iter().map(|g| g.to_string()).collect()
}
