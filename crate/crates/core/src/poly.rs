//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending order under the ring's monomial
//! order, with no zero coefficients. Coefficients are [`BigRational`]s; over
//! a prime field they are always integers in `0..q`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::budget;
use crate::error::{Error, Result};

/// Largest number of variables a user-declared ring may have.
pub const MAX_USER_VARS: usize = 10;
/// Internal rings (elimination, Rees algebras) may carry auxiliary variables.
pub(crate) const MAX_INTERNAL_VARS: usize = 64;

pub type Coeff = BigRational;
pub type Term = (Monomial, Coeff);

/// Exponent vector of a monomial.
///
/// The derived `Ord` is plain lexicographic comparison of the exponent
/// slices; it is used for canonical sorting of monomial sets, not as a term
/// order. Use [`MonomialOrder::cmp`] for term orders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        Monomial(exps.into_iter().collect())
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, when `other | self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Term orders on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Lex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the first `k` variables.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                lex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientDomain {
    Rationals,
    PrimeField(u32),
}

impl CoefficientDomain {
    /// Maps an arbitrary rational into the domain. Fails over a prime field
    /// when the denominator vanishes mod q.
    pub fn coerce(&self, c: &Coeff) -> Result<Coeff> {
        match *self {
            CoefficientDomain::Rationals => Ok(c.clone()),
            CoefficientDomain::PrimeField(q) => {
                let q = BigInt::from(q);
                let den = c.denom().mod_floor(&q);
                if den.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "denominator of {c} vanishes mod {q}"
                    )));
                }
                let inv = mod_inverse(&den, &q);
                Ok(BigRational::from_integer((c.numer() * inv).mod_floor(&q)))
            }
        }
    }

    fn reduce(&self, c: Coeff) -> Coeff {
        match *self {
            CoefficientDomain::Rationals => c,
            CoefficientDomain::PrimeField(q) => {
                debug_assert!(c.is_integer());
                BigRational::from_integer(c.numer().mod_floor(&BigInt::from(q)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match *self {
            CoefficientDomain::Rationals => a.recip(),
            CoefficientDomain::PrimeField(q) => {
                let q = BigInt::from(q);
                BigRational::from_integer(mod_inverse(a.numer(), &q))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }
}

fn mod_inverse(a: &BigInt, q: &BigInt) -> BigInt {
    let e = a.extended_gcd(q);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(q)
}

pub(crate) fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::PrimeField(q) => write!(f, "GF({q})"),
        }
    }
}

/// A polynomial ring: ordered variables, coefficient domain and term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    domain: CoefficientDomain,
    order: MonomialOrder,
}

impl PolyRing {
    /// A user-facing ring; at most [`MAX_USER_VARS`] variables.
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        domain: CoefficientDomain,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        Self::build(vars, domain, order, MAX_USER_VARS)
    }

    pub(crate) fn internal<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        domain: CoefficientDomain,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        Self::build(vars, domain, order, MAX_INTERNAL_VARS)
    }

    fn build<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        domain: CoefficientDomain,
        order: MonomialOrder,
        max: usize,
    ) -> Result<Arc<PolyRing>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() > max {
            return Err(Error::DimensionLimit {
                dim: vars.len(),
                max,
            });
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let CoefficientDomain::PrimeField(q) = domain {
            if !is_prime(q) || q >= 1 << 31 {
                return Err(Error::InvalidRing(format!("{q} is not a prime below 2^31")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "block({k}) exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            domain,
            order,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        PolyRing::internal(self.vars.clone(), self.domain, order)
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), index, 1), Coeff::one())
    }

    pub fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {}", self.domain, self.vars.join(","), self.order)
    }
}

/// A sparse polynomial, terms sorted descending by the ring order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = ring.domain.reduce_any(c);
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros and sorts.
    pub fn from_terms<I: IntoIterator<Item = Term>>(ring: &Arc<PolyRing>, terms: I) -> Self {
        let dom = ring.domain;
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let c = dom.reduce_any(c);
            match acc.get_mut(&m) {
                Some(e) => *e = dom.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted descending, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the ring's order.
    pub fn leading_term(&self) -> Result<(&Monomial, &Coeff)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term_under(&self, order: MonomialOrder) -> Result<(Monomial, Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &Coeff {
        &self.terms[0].1
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let dom = self.ring.domain;
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = dom.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = dom.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let p = Polynomial {
            ring: self.ring.clone(),
            terms,
        };
        budget::check_size(p.degree(), p.len())?;
        Ok(p)
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let dom = self.ring.domain;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                order.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { dom.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        dom.sub(&a[i].1, &b[j].1)
                    } else {
                        dom.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let dom = self.ring.domain;
        let c = dom.reduce_any(c.clone());
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), dom.mul(d, &c)))
                .collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let dom = self.ring.domain;
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), dom.mul(d, c)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => {
                let inv = self.ring.domain.inv(lc);
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut exps: Vec<u32> = m.exponents().to_vec();
            exps[var] -= 1;
            Some((
                Monomial::from_exponents(exps),
                c * BigRational::from_integer(BigInt::from(e)),
            ))
        });
        Polynomial::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable
    /// `var_map[i]` of the target ring.
    pub fn remap(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[var_map[i]] += e;
            }
            (Monomial::from_exponents(exps), c.clone())
        });
        Polynomial::from_terms(target, terms.collect::<Vec<_>>())
    }

    /// Evaluates the ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Ok(Polynomial::from_terms(
                    &self.ring,
                    self.terms.iter().cloned().collect::<Vec<_>>(),
                ))
            }
        };
        for p in images {
            if !PolyRing::same(&p.ring, &target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut result = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match powers.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[i].pow(e)?;
                        powers.insert((i, e), p.clone());
                        p
                    }
                };
                t = t.checked_mul(&p)?;
            }
            result = result.checked_add(&t)?;
        }
        Ok(result)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dom = self.ring.domain;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first() {
            let Some(q) = m.checked_div(d.lm()) else {
                return Ok(None);
            };
            let qc = dom.div(c, d.lc());
            rest = rest.merge(&d.mul_term(&q, &qc), true);
            quotient.push((q, qc));
        }
        Ok(Some(Polynomial::from_sorted(&self.ring, quotient)))
    }

    /// Writes the polynomial using the supplied variable names.
    pub fn fmt_with(&self, f: &mut impl fmt::Write, names: &[String]) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut wrote = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl CoefficientDomain {
    /// Like `coerce` but for values already known to be valid in the domain
    /// (integers for prime fields).
    fn reduce_any(&self, c: Coeff) -> Coeff {
        match self {
            CoefficientDomain::Rationals => c,
            CoefficientDomain::PrimeField(_) => {
                self.coerce(&c).expect("coefficient denominator invertible")
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &self.ring.vars)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication failed")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let dom = self.ring.domain;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), dom.neg(c)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coeff {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ring(order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(["x", "y", "z"], CoefficientDomain::Rationals, order).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn addition_cancels() {
        let r = ring(MonomialOrder::GrevLex);
        let (x, y) = (r.var(0), r.var(1));
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&q(2, 1)));
        assert_eq!(&x + &Polynomial::zero(&r), x);
    }

    #[test]
    fn rational_coefficients_add_exactly() {
        let r = ring(MonomialOrder::GrevLex);
        let x = r.var(0);
        let s = &x.scale(&q(1, 2)) + &x.scale(&q(1, 3));
        assert_eq!(s, x.scale(&q(5, 6)));
    }

    #[test]
    fn products() {
        let r = ring(MonomialOrder::GrevLex);
        let (x, y) = (r.var(0), r.var(1));
        assert_eq!(&(&x + &y) * &(&x - &y), &(&x * &x) - &(&y * &y));
        let one = Polynomial::one(&r);
        assert_eq!(&x * &one, x);
        // (x+1)^3 against repeated addition of binomial terms
        let cube = (&x + &one).pow(3).unwrap();
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        let three = q(3, 1);
        let expected = &(&(&x3 + &x2.scale(&three)) + &x.scale(&three)) + &one;
        assert_eq!(cube, expected);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = ring(MonomialOrder::GrevLex);
        let b = PolyRing::new(["u"], CoefficientDomain::Rationals, MonomialOrder::Lex).unwrap();
        assert_eq!(a.var(0).checked_add(&b.var(0)), Err(Error::RingMismatch));
        assert_eq!(a.var(0).checked_mul(&b.var(0)), Err(Error::RingMismatch));
    }

    #[test]
    fn leading_terms_depend_on_order() {
        // x^2 y + x y^3
        let terms = vec![(mono(&[2, 1, 0]), q(1, 1)), (mono(&[1, 3, 0]), q(1, 1))];
        let lexr = ring(MonomialOrder::Lex);
        let f = Polynomial::from_terms(&lexr, terms.clone());
        assert_eq!(f.leading_term().unwrap().0, &mono(&[2, 1, 0]));
        let g = Polynomial::from_terms(&ring(MonomialOrder::GrevLex), terms);
        assert_eq!(g.leading_term().unwrap().0, &mono(&[1, 3, 0]));
        assert_eq!(
            f.leading_term_under(MonomialOrder::GrevLex).unwrap().0,
            mono(&[1, 3, 0])
        );
        let five = Polynomial::constant(&lexr, q(5, 1));
        let (m, c) = five.leading_term().unwrap();
        assert!(m.is_one());
        assert_eq!(c, &q(5, 1));
        assert_eq!(
            Polynomial::zero(&lexr).leading_term(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&mono(&[1, 1, 0]), &mono(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 1, 0]), &mono(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn ring_validation() {
        assert!(matches!(
            PolyRing::new(["x", "x"], CoefficientDomain::Rationals, MonomialOrder::Lex),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            PolyRing::new(["x"], CoefficientDomain::PrimeField(9), MonomialOrder::Lex),
            Err(Error::InvalidRing(_))
        ));
        let many: Vec<String> = (0..11).map(|i| format!("x{i}")).collect();
        assert!(matches!(
            PolyRing::new(many, CoefficientDomain::Rationals, MonomialOrder::Lex),
            Err(Error::DimensionLimit { dim: 11, max: 10 })
        ));
    }

    #[test]
    fn prime_field_arithmetic() {
        let r = PolyRing::new(["x", "y"], CoefficientDomain::PrimeField(7), MonomialOrder::Lex)
            .unwrap();
        let (x, y) = (r.var(0), r.var(1));
        // Frobenius: (x+y)^7 = x^7 + y^7 in characteristic 7
        let lhs = (&x + &y).pow(7).unwrap();
        let rhs = &x.pow(7).unwrap() + &y.pow(7).unwrap();
        assert_eq!(lhs, rhs);
        let half = r.domain().coerce(&q(1, 2)).unwrap();
        assert_eq!(half, q(4, 1));
        assert!(r.domain().coerce(&q(1, 7)).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let r = ring(MonomialOrder::GrevLex);
        let f = Polynomial::from_terms(
            &r,
            vec![
                (mono(&[2, 1, 0]), q(3, 1)),
                (mono(&[0, 0, 1]), q(-1, 2)),
                (mono(&[0, 0, 0]), q(-4, 1)),
            ],
        );
        assert_eq!(f.to_string(), "3*x^2*y - 1/2*z - 4");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!((-&r.var(1)).to_string(), "-y");
    }

    #[test]
    fn exact_division() {
        let r = ring(MonomialOrder::GrevLex);
        let (x, y) = (r.var(0), r.var(1));
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), Some(&x - &y));
        assert_eq!(f.div_exact(&x).unwrap(), None);
    }

    #[test]
    fn derivative_and_substitution() {
        let r = ring(MonomialOrder::GrevLex);
        let (x, y) = (r.var(0), r.var(1));
        let f = &(&x * &x) * &y;
        assert_eq!(f.derivative(0), (&x * &y).scale(&q(2, 1)));
        let img = f
            .substitute(&[y.clone(), x.clone(), Polynomial::zero(&r)])
            .unwrap();
        assert_eq!(img, &(&y * &y) * &x);
    }
}
