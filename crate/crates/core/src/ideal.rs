//! Ideals of a polynomial ring: sums, products, powers, intersections,
//! colons, saturation and containment.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use num_traits::One;

use crate::poly::{Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Primality {
    #[default]
    Unknown,
    /// The caller vouches that the ideal is prime.
    AssertedPrime,
    /// Generated by variables, hence prime.
    CertifiedMonomialPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IdealMeta {
    pub declared_height: Option<u32>,
    pub primality: Primality,
}

/// Finitely generated ideal with a lazily computed reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    meta: IdealMeta,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if !PolyRing::same(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut meta = IdealMeta::default();
        if !generators.is_empty()
            && generators
                .iter()
                .all(|g| g.is_monomial() && g.degree() == 1)
        {
            meta.primality = Primality::CertifiedMonomialPrime;
            let mut vars: Vec<usize> = generators.iter().flat_map(|g| g.lm().support().collect::<Vec<_>>()).collect();
            vars.sort_unstable();
            vars.dedup();
            meta.declared_height = Some(vars.len() as u32);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            gb: OnceLock::new(),
            meta,
        })
    }

    /// Ideal with a precomputed basis; both generating sets are checked to
    /// generate the same ideal.
    pub fn with_basis(ring: &Arc<PolyRing>, generators: Vec<Polynomial>, gb: GroebnerBasis) -> Result<Ideal> {
        let ideal = Ideal::new(ring, generators)?;
        if !PolyRing::same(gb.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        for g in &ideal.generators {
            if !gb.membership(g)? {
                return Err(Error::InvalidArgument(format!("generator {g} not in supplied basis")));
            }
        }
        let own = ideal.groebner()?;
        for g in gb.generators() {
            if !own.membership(g)? {
                return Err(Error::InvalidArgument(format!("basis element {g} not in ideal")));
            }
        }
        let _ = ideal.gb.set(gb);
        Ok(ideal)
    }

    pub fn from_basis(gb: GroebnerBasis) -> Ideal {
        let ring = gb.ring().clone();
        let generators = gb.generators().to_vec();
        let ideal = Ideal::new(&ring, generators).expect("basis lives in its own ring");
        let _ = ideal.gb.set(gb);
        ideal
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn meta(&self) -> IdealMeta {
        self.meta
    }

    pub fn with_meta(mut self, meta: IdealMeta) -> Ideal {
        self.meta = meta;
        self
    }

    pub fn assert_prime(mut self, height: Option<u32>) -> Ideal {
        if self.meta.primality == Primality::Unknown {
            self.meta.primality = Primality::AssertedPrime;
        }
        if height.is_some() {
            self.meta.declared_height = height;
        }
        self
    }

    /// Reduced Gröbner basis, computed on first use.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner::buchberger(&self.ring, &self.generators)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn membership(&self, f: &Polynomial) -> Result<bool> {
        self.groebner()?.membership(f)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.checked_mul(b)?);
            }
        }
        dedup(&mut gens);
        Ideal::new(&self.ring, gens)
    }

    /// `Iⁿ`, generated by all degree-n monomials in the generators.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        if n == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let k = self.generators.len();
        let mut gens = Vec::new();
        let mut combo = vec![0usize; n as usize];
        if k > 0 {
            loop {
                let mut p = Polynomial::one(&self.ring);
                for &i in &combo {
                    p = p.checked_mul(&self.generators[i])?;
                }
                gens.push(p);
                // next non-decreasing index tuple
                let mut pos = combo.len();
                while pos > 0 && combo[pos - 1] == k - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                let v = combo[pos - 1] + 1;
                for c in &mut combo[pos - 1..] {
                    *c = v;
                }
            }
        }
        dedup(&mut gens);
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let mut names = vec!["t'".to_string()];
        names.extend(self.ring.vars().iter().cloned());
        let big = PolyRing::internal(names, self.ring.domain(), MonomialOrder::Block(1))?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = big.var(0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.remap(&big, &shift));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.remap(&big, &shift));
        }
        let gb = groebner::buchberger(&big, &gens)?;
        let elim = groebner::eliminate(&gb, n)?;
        self.pull_back(elim)
    }

    /// Moves a basis from an elimination subring (same variables as this
    /// ring, possibly another order) back into this ring.
    fn pull_back(&self, elim: GroebnerBasis) -> Result<Ideal> {
        let identity: Vec<usize> = (0..self.ring.nvars()).collect();
        let gens: Vec<Polynomial> = elim
            .generators()
            .iter()
            .map(|g| g.remap(&self.ring, &identity))
            .collect();
        if elim.order() == self.ring.order() {
            let gb = GroebnerBasis::from_parts(&self.ring, gens, elim.is_reduced());
            return Ok(Ideal::from_basis(gb));
        }
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f)`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.generators.iter().all(|g| g.is_monomial()) && f.is_monomial() {
            return self.monomial_colon(f);
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.generators.len());
        for g in meet.generators() {
            let q = g
                .div_exact(f)?
                .expect("elements of (f) are divisible by f");
            gens.push(q);
        }
        let gb = groebner::buchberger(&self.ring, &gens)?;
        Ok(Ideal::from_basis(gb))
    }

    fn monomial_colon(&self, f: &Polynomial) -> Result<Ideal> {
        let m = f.lm();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let e: Vec<u32> = g
                    .lm()
                    .exponents()
                    .iter()
                    .zip(m.exponents())
                    .map(|(a, b)| a.saturating_sub(*b))
                    .collect();
                Polynomial::monomial(&self.ring, Monomial::from_exponents(e), Coeff::one())
            })
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f^∞)`, iterating colons until the chain stabilizes.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        let mut current = self.clone();
        loop {
            let next = current.colon(f)?;
            if current.contains(&next)? {
                return Ok(current.with_meta(self.meta));
            }
            current = next;
        }
    }

    /// True when `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.groebner()?;
        for g in &other.generators {
            if !gb.membership(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Whether `f ∈ √I`, via `1 ∈ I + (1 − y·f)` with a fresh variable `y`.
    pub fn radical_membership(&self, f: &Polynomial) -> Result<bool> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.ring.nvars();
        let mut names = vec!["y'".to_string()];
        names.extend(self.ring.vars().iter().cloned());
        let big = PolyRing::internal(names, self.ring.domain(), MonomialOrder::GrevLex)?;
        let shift: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.remap(&big, &shift)).collect();
        gens.push(&Polynomial::one(&big) - &(&big.var(0) * &f.remap(&big, &shift)));
        Ok(groebner::buchberger(&big, &gens)?.is_unit())
    }
}

fn dedup(gens: &mut Vec<Polynomial>) {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| seen.insert(g.clone()));
}

impl fmt::Display for Ideal {
    /// Prints the reduced basis when it is already known, the raw generators
    /// otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = match self.gb.get() {
            Some(gb) => gb.generators(),
            None => &self.generators,
        };
        write!(f, "(")?;
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}
