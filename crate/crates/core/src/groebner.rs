//! Buchberger's algorithm, multivariate division, elimination and kernels
//! of ring maps.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::budget;
use crate::error::{Error, Result};
use crate::poly::{Coeff, CoefficientDomain, Monomial, MonomialOrder, PolyRing, Polynomial, Term};

/// A Gröbner basis under the ring's monomial order.
///
/// When `reduced` is set the generators are monic, no term of any generator
/// is divisible by another generator's leading monomial, and the list is
/// sorted by leading monomial, largest first. That makes the basis a
/// canonical form for the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub(crate) fn from_parts(ring: &Arc<PolyRing>, generators: Vec<Polynomial>, reduced: bool) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            generators,
            reduced,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant())
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        normal_form(f, &self.generators)
    }

    pub fn membership(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// Multivariate division of `f` by the ordered list `divisors`.
///
/// Returns the remainder and one quotient per divisor with
/// `f = Σ qᵢ·gᵢ + remainder`, where no term of the remainder is divisible by
/// any divisor's leading monomial. Zero divisors get a zero quotient.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ring = f.ring().clone();
    for g in divisors {
        if !PolyRing::same(g.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
    }
    let dom = ring.domain();
    let order = ring.order();
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut rest: Vec<Term> = f.terms().iter().rev().cloned().collect();
    let mut remainder: Vec<Term> = Vec::new();
    while let Some((m, c)) = rest.pop() {
        let hit = divisors
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_zero() && g.lm().divides(&m));
        match hit {
            Some((i, g)) => {
                let q = m.checked_div(g.lm()).expect("divisibility checked");
                let qc = dom.div(&c, g.lc());
                rest = sub_scaled_asc(dom, order, rest, &g.terms()[1..], &q, &qc);
                quotients[i].push((q, qc));
            }
            None => remainder.push((m, c)),
        }
        budget::check_size(0, rest.len())?;
    }
    let quotients = quotients
        .into_iter()
        .map(|t| Polynomial::from_sorted(&ring, t))
        .collect();
    Ok((Polynomial::from_sorted(&ring, remainder), quotients))
}

/// Full reduction of `f` by a list of monic polynomials.
pub(crate) fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring();
    let dom = ring.domain();
    let order = ring.order();
    let mut rest: Vec<Term> = f.terms().iter().rev().cloned().collect();
    let mut remainder: Vec<Term> = Vec::new();
    let mut steps = 0usize;
    while let Some((m, c)) = rest.pop() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = m.checked_div(g.lm()).expect("divisibility checked");
                let qc = dom.div(&c, g.lc());
                rest = sub_scaled_asc(dom, order, rest, &g.terms()[1..], &q, &qc);
                steps += 1;
                if steps % 64 == 0 {
                    budget::check_deadline()?;
                    budget::check_size(0, rest.len() + remainder.len())?;
                }
            }
            None => remainder.push((m, c)),
        }
    }
    Ok(Polynomial::from_sorted(ring, remainder))
}

/// `asc - c·q·tail` where `asc` is sorted ascending and `tail` descending.
/// The result is sorted ascending.
fn sub_scaled_asc(
    dom: CoefficientDomain,
    order: MonomialOrder,
    asc: Vec<Term>,
    tail: &[Term],
    q: &Monomial,
    c: &Coeff,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(asc.len() + tail.len());
    let mut a = asc.into_iter().peekable();
    let mut b = tail
        .iter()
        .rev()
        .map(|(m, d)| (m.mul(q), dom.mul(d, c)))
        .peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => {
                let (m, d) = b.next().unwrap();
                out.push((m, dom.neg(&d)));
            }
            Ordering::Equal => {
                let (m, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let s = dom.sub(&x, &y);
                if !s.is_zero() {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
///
/// Zero generators are ignored; an empty list yields the zero ideal.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    for g in gens {
        if !PolyRing::same(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        budget::check_size(g.degree(), g.len())?;
    }
    let inputs: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if inputs.iter().any(|g| g.is_constant()) {
        return Ok(unit_basis(ring));
    }
    if inputs.iter().all(|g| g.is_monomial()) {
        return Ok(monomial_basis(ring, &inputs));
    }

    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let install = |g: Polynomial,
                       basis: &mut Vec<Polynomial>,
                       pending: &mut Vec<Pair>,
                       pending_set: &mut HashSet<(usize, usize)>| {
        let j = basis.len();
        for (i, h) in basis.iter().enumerate() {
            let lcm = h.lm().lcm(g.lm());
            pending.push(Pair {
                i,
                j,
                degree: lcm.degree(),
                lcm,
            });
            pending_set.insert((i, j));
        }
        basis.push(g);
    };

    for g in inputs {
        install(g, &mut basis, &mut pending, &mut pending_set);
    }

    while !pending.is_empty() {
        budget::check_deadline()?;
        let next = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)
            .expect("pending is nonempty");
        let pair = pending.swap_remove(next);
        pending_set.remove(&(pair.i, pair.j));

        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        if gi.lm().is_coprime(gj.lm()) {
            continue;
        }
        if chain_criterion(&pair, &basis, &pending_set) {
            continue;
        }
        let s = s_polynomial(gi, gj, &pair.lcm);
        let r = normal_form(&s, &basis)?;
        if r.is_zero() {
            continue;
        }
        budget::check_size(r.degree(), r.len())?;
        if r.is_constant() {
            return Ok(unit_basis(ring));
        }
        install(r.monic(), &mut basis, &mut pending, &mut pending_set);
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        generators: interreduce(basis)?,
        reduced: true,
    })
}

fn chain_criterion(pair: &Pair, basis: &[Polynomial], pending: &HashSet<(usize, usize)>) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i
            && k != pair.j
            && g.lm().divides(&pair.lcm)
            && !pending.contains(&key(pair.i, k))
            && !pending.contains(&key(pair.j, k))
    })
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let one = Coeff::from_integer(1.into());
    let a = f.mul_term(&lcm.checked_div(f.lm()).unwrap(), &one);
    let b = g.mul_term(&lcm.checked_div(g.lm()).unwrap(), &one);
    &a - &b
}

/// Minimalizes and tail-reduces a Gröbner basis of monic polynomials.
fn interreduce(basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        minimal[i] = normal_form(&minimal[i], &others)?.monic();
    }
    let order = minimal.first().map(|p| p.ring().order());
    if let Some(order) = order {
        minimal.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    }
    Ok(minimal)
}

fn unit_basis(ring: &Arc<PolyRing>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        generators: vec![Polynomial::one(ring)],
        reduced: true,
    }
}

fn monomial_basis(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> GroebnerBasis {
    let mut monos: Vec<&Monomial> = gens.iter().map(|g| g.lm()).collect();
    monos.sort_by_key(|m| m.degree());
    let mut kept: Vec<&Monomial> = Vec::new();
    for m in monos {
        if !kept.iter().any(|k| k.divides(m)) {
            kept.push(m);
        }
    }
    let order = ring.order();
    kept.sort_by(|a, b| order.cmp(b, a));
    let one = Coeff::from_integer(1.into());
    GroebnerBasis {
        ring: ring.clone(),
        generators: kept
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), one.clone()))
            .collect(),
        reduced: true,
    }
}

/// True when every S-polynomial of `gens` reduces to zero.
pub fn is_groebner_basis(gens: &[Polynomial]) -> Result<bool> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let lcm = gens[i].lm().lcm(gens[j].lm());
            let s = s_polynomial(&gens[i], &gens[j], &lcm);
            if !normal_form(&s, &gens)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Intersection of the ideal with the subring in the last `keep_last`
/// variables.
///
/// The basis order must eliminate the leading variables: lex, or a block
/// order whose lex block covers every eliminated variable. The result lives
/// in a ring over the kept variables with the induced order.
pub fn eliminate(gb: &GroebnerBasis, keep_last: usize) -> Result<GroebnerBasis> {
    let ring = gb.ring();
    let n = ring.nvars();
    if keep_last > n {
        return Err(Error::InvalidArgument(format!(
            "cannot keep {keep_last} of {n} variables"
        )));
    }
    if keep_last == n {
        return Ok(gb.clone());
    }
    let drop = n - keep_last;
    let sub_order = match ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        MonomialOrder::Block(k) if k == drop => MonomialOrder::GrevLex,
        MonomialOrder::Block(k) if k > drop => MonomialOrder::Block(k - drop),
        other => {
            return Err(Error::WrongOrder(format!(
                "{other} does not eliminate the first {drop} variables"
            )))
        }
    };
    let sub = PolyRing::internal(ring.vars()[drop..].to_vec(), ring.domain(), sub_order)?;
    let generators = gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..drop].iter().all(|&e| e == 0)))
        .map(|g| project(g, &sub, drop))
        .collect();
    Ok(GroebnerBasis {
        ring: sub,
        generators,
        reduced: gb.is_reduced(),
    })
}

fn project(g: &Polynomial, sub: &Arc<PolyRing>, drop: usize) -> Polynomial {
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exponents(m.exponents()[drop..].iter().copied()), c.clone()))
        .collect();
    Polynomial::from_sorted(sub, terms)
}

/// Moves an ideal given by generators into `target` (same variables,
/// possibly another order) and returns its reduced basis there.
pub fn basis_in(target: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let identity: Vec<usize> = (0..target.nvars()).collect();
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.remap(target, &identity)).collect();
    buchberger(target, &moved)
}

/// Kernel of the ring map `source → target` sending the i-th source
/// variable to `images[i]`, as a reduced basis in `source`.
///
/// Computed by eliminating the target variables from `(Sᵢ − imageᵢ)` in the
/// tensor ring with the target variables first.
pub fn kernel_of_map(
    source: &Arc<PolyRing>,
    target: &Arc<PolyRing>,
    images: &[Polynomial],
) -> Result<GroebnerBasis> {
    if images.len() != source.nvars() {
        return Err(Error::InvalidArgument(format!(
            "{} images for {} source variables",
            images.len(),
            source.nvars()
        )));
    }
    for p in images {
        if !PolyRing::same(p.ring(), target) {
            return Err(Error::RingMismatch);
        }
    }
    if source.domain() != target.domain() {
        return Err(Error::RingMismatch);
    }
    let tn = target.nvars();
    let sn = source.nvars();
    let mut names: Vec<String> = target.vars().iter().map(|v| format!("{v}'")).collect();
    names.extend(source.vars().iter().cloned());
    let big = PolyRing::internal(names, source.domain(), MonomialOrder::Block(tn))?;
    let target_map: Vec<usize> = (0..tn).collect();
    let gens: Vec<Polynomial> = images
        .iter()
        .enumerate()
        .map(|(i, img)| &big.var(tn + i) - &img.remap(&big, &target_map))
        .collect();
    let gb = buchberger(&big, &gens)?;
    let elim = eliminate(&gb, sn)?;
    if elim.order() == source.order() {
        let identity: Vec<usize> = (0..sn).collect();
        let generators = elim
            .generators()
            .iter()
            .map(|g| g.remap(source, &identity))
            .collect();
        return Ok(GroebnerBasis {
            ring: source.clone(),
            generators,
            reduced: true,
        });
    }
    basis_in(source, elim.generators())
}
