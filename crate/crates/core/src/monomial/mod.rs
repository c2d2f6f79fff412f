//! Monomial ideals and their geometry.

mod hull;
mod newton;
mod primes;

pub use newton::{
    integral_closure, multiplier_ideal_monomial, newton_polyhedron, Halfspace, NewtonPolyhedron,
    MAX_NEWTON_DIM,
};
pub use primes::{big_height, height, minimal_primes_squarefree};

use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Coeff, Monomial, PolyRing, Polynomial};

/// A monomial ideal given by its minimal generators.
///
/// Generators form an antichain under divisibility and are kept sorted, so
/// structural equality is ideal equality. No generators means the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new<I: IntoIterator<Item = Monomial>>(nvars: usize, gens: I) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::InvalidArgument(format!(
                "exponent vector of length {} in {nvars} variables",
                bad.nvars()
            )));
        }
        Ok(Self::minimalized(nvars, gens))
    }

    pub fn from_exponents(nvars: usize, exps: &[Vec<u32>]) -> Result<Self> {
        Self::new(
            nvars,
            exps.iter().map(|e| Monomial::from_exponents(e.iter().copied())),
        )
    }

    fn minimalized(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for m in gens {
            if !kept.iter().any(|k| k.divides(&m)) {
                kept.push(m);
            }
        }
        kept.sort();
        MonomialIdeal { nvars, gens: kept }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            nvars: m.nvars(),
            gens: vec![m],
        }
    }

    /// The ideal generated by all monomials of total degree `k`.
    pub fn maximal_power(nvars: usize, k: u32) -> Self {
        let mut gens = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps.iter().copied()));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        if nvars == 0 {
            return Self::unit(0);
        }
        rec(0, k, &mut exps, &mut gens);
        Self::minimalized(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|m| m.is_one())
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|m| m.is_squarefree())
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// True when `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|m| self.contains_monomial(m))
    }

    /// A generator of `other` outside `self`, if any.
    pub fn first_missing<'a>(&self, other: &'a MonomialIdeal) -> Option<&'a Monomial> {
        other.gens.iter().find(|m| !self.contains_monomial(m))
    }

    fn check(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check(other)?;
        Ok(Self::minimalized(
            self.nvars,
            self.gens.iter().chain(&other.gens).cloned().collect(),
        ))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(Self::minimalized(self.nvars, gens))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::minimalized(self.nvars, gens))
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.product(&base).expect("same arity");
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base).expect("same arity");
            }
        }
        acc
    }

    /// Componentwise maximum of the generator exponents.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.nvars];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn to_ideal(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        if ring.nvars() != self.nvars {
            return Err(Error::RingMismatch);
        }
        let gens = self
            .gens
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), Coeff::one()))
            .collect();
        Ideal::new(ring, gens)
    }

    /// Reads a monomial ideal off the reduced Gröbner basis of `ideal`.
    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        let gb = ideal.groebner()?;
        let mut gens = Vec::with_capacity(gb.generators().len());
        for g in gb.generators() {
            if !g.is_monomial() {
                return Err(Error::NotMonomial(g.to_string()));
            }
            gens.push(g.terms()[0].0.clone());
        }
        Self::new(ideal.ring().nvars(), gens)
    }

    /// Formats with the given variable names, e.g. `(x^2, x*y)`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { ideal: self, names }
    }
}

pub(crate) fn fmt_monomial(f: &mut impl fmt::Write, m: &Monomial, names: &[String]) -> fmt::Result {
    if m.is_one() {
        return write!(f, "1");
    }
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        match names.get(i) {
            Some(n) => write!(f, "{n}")?,
            None => write!(f, "x{}", i + 1)?,
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

struct Named<'a> {
    ideal: &'a MonomialIdeal,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.ideal.gens.is_empty() {
            write!(f, "0")?;
        }
        for (i, m) in self.ideal.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            fmt_monomial(f, m, self.names)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
