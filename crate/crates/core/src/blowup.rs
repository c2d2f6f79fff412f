//! Rees algebras, affine charts of blowups, integral equations on charts and
//! the relative canonical divisor of the blowup of a maximal ideal.

use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate, kernel_of_map, GroebnerBasis};
use crate::ideal::Ideal;
use crate::monomial::{newton_polyhedron, MonomialIdeal};
use crate::poly::{Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};

const MAX_INTEGRALITY_DEGREE: u32 = 64;
const MAX_CANONICAL_DIM: usize = 8;

fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// `R[T1..Tm] / P` presenting `R ⊕ I t ⊕ I^2 t^2 ⊕ ...`, where `P` is the
/// kernel of `Tj ↦ zj t`. The presentation ring lists `T1..Tm` first.
#[derive(Debug, Clone)]
pub struct ReesPresentation {
    base: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    ring: Arc<PolyRing>,
    ideal: GroebnerBasis,
}

pub fn rees_presentation(ideal: &Ideal) -> Result<ReesPresentation> {
    let base = ideal.ring().clone();
    let gens: Vec<Polynomial> = ideal.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(Error::InvalidArgument("the zero ideal has no blowup".into()));
    }
    let (m, n) = (gens.len(), base.nvars());
    let mut names = vec![fresh_name("t", base.vars())];
    for j in 1..=m {
        names.push(fresh_name(&format!("T{j}"), base.vars()));
    }
    names.extend(base.vars().iter().cloned());
    let big = PolyRing::internal(names, base.domain(), MonomialOrder::Block(1))?;
    let shift: Vec<usize> = (0..n).map(|k| 1 + m + k).collect();
    let t = big.var(0);
    let rel: Vec<Polynomial> = gens
        .iter()
        .enumerate()
        .map(|(j, z)| &big.var(1 + j) - &(&z.remap(&big, &shift) * &t))
        .collect();
    let gb = buchberger(&big, &rel)?;
    let ideal_gb = eliminate(&gb, m + n)?;
    Ok(ReesPresentation {
        ring: ideal_gb.ring().clone(),
        base,
        generators: gens,
        ideal: ideal_gb,
    })
}

impl ReesPresentation {
    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    /// The generators `z1..zm` of the blown-up ideal.
    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn presentation(&self) -> &GroebnerBasis {
        &self.ideal
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    fn t_degree(&self, mono: &Monomial) -> u64 {
        mono.exponents()[..self.num_generators()].iter().map(|&e| e as u64).sum()
    }

    pub fn is_t_homogeneous(&self) -> bool {
        self.ideal.generators().iter().all(|g| {
            let d = self.t_degree(&g.terms()[0].0);
            g.terms().iter().all(|(m, _)| self.t_degree(m) == d)
        })
    }

    /// Substituting `Tj = zj` kills every relation.
    pub fn substitution_check(&self) -> Result<bool> {
        let images: Vec<Polynomial> = self
            .generators
            .iter()
            .cloned()
            .chain((0..self.base.nvars()).map(|k| self.base.var(k)))
            .collect();
        for g in self.ideal.generators() {
            if !g.substitute(&images)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Recomputes the presentation as the kernel of `R[T] → R[t]` and
    /// compares reduced bases.
    pub fn matches_kernel(&self) -> Result<bool> {
        let m = self.num_generators();
        let n = self.base.nvars();
        let mut tnames = vec!["t".to_string()];
        tnames.extend(self.base.vars().iter().cloned());
        let target = PolyRing::internal(tnames, self.base.domain(), MonomialOrder::GrevLex)?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = target.var(0);
        let images: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|z| &z.remap(&target, &shift) * &t)
            .chain((0..n).map(|k| target.var(1 + k)))
            .collect();
        let kernel = kernel_of_map(&self.ring, &target, &images)?;
        debug_assert_eq!(kernel.ring().nvars(), m + n);
        Ok(kernel.generators() == self.ideal.generators())
    }

    /// The affine chart `R[z1/zi, ..., zm/zi]`, with `i` counted from 1.
    pub fn chart(&self, i: usize) -> Result<BlowupChart> {
        let m = self.num_generators();
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, len: m });
        }
        let n = self.base.nvars();
        let mut names: Vec<String> = self.base.vars().to_vec();
        let mut ratio_vars = Vec::new();
        for j in (1..=m).filter(|&j| j != i) {
            let name = fresh_name(&format!("v{j}"), &names);
            names.push(name);
            ratio_vars.push(j);
        }
        let ring = PolyRing::internal(names, self.base.domain(), MonomialOrder::GrevLex)?;
        let mut images = Vec::with_capacity(m + n);
        let mut next = n;
        for j in 1..=m {
            if j == i {
                images.push(Polynomial::one(&ring));
            } else {
                images.push(ring.var(next));
                next += 1;
            }
        }
        images.extend((0..n).map(|k| ring.var(k)));
        let mut gens = Vec::new();
        for g in self.ideal.generators() {
            let d = g.substitute(&images)?;
            if !d.is_zero() {
                gens.push(d);
            }
        }
        let gb = buchberger(&ring, &gens)?;
        let lift: Vec<usize> = (0..n).collect();
        Ok(BlowupChart {
            index: i,
            ring: ring.clone(),
            ideal: gb,
            ratio_vars,
            generators: self.generators.iter().map(|z| z.remap(&ring, &lift)).collect(),
        })
    }

    /// Whether charts `i` and `j` agree on their overlap: each presentation,
    /// together with the transition relations, implies the other.
    pub fn charts_glue(&self, i: usize, j: usize) -> Result<bool> {
        let a = self.chart(i)?;
        let b = self.chart(j)?;
        if i == j {
            return Ok(true);
        }
        let n = self.base.nvars();
        let m = self.num_generators();
        let mut names: Vec<String> = self.base.vars().to_vec();
        for k in (1..=m).filter(|&k| k != i) {
            names.push(format!("z{k}/z{i}"));
        }
        for k in (1..=m).filter(|&k| k != j) {
            names.push(format!("z{k}/z{j}"));
        }
        let big = PolyRing::internal(names, self.base.domain(), MonomialOrder::GrevLex)?;
        let a_map: Vec<usize> = (0..n + m - 1).collect();
        let b_map: Vec<usize> = (0..n).chain(n + m - 1..n + 2 * (m - 1)).collect();
        let a_var = |k: usize| big.var(n + a.ratio_vars.iter().position(|&r| r == k).expect("ratio"));
        let b_var = |k: usize| big.var(n + m - 1 + b.ratio_vars.iter().position(|&r| r == k).expect("ratio"));
        let mut link = vec![&(&a_var(j) * &b_var(i)) - &Polynomial::one(&big)];
        for k in (1..=m).filter(|&k| k != i && k != j) {
            link.push(&b_var(k) - &(&a_var(k) * &b_var(i)));
            link.push(&a_var(k) - &(&b_var(k) * &a_var(j)));
        }
        let side_a: Vec<Polynomial> = a.ideal.generators().iter().map(|g| g.remap(&big, &a_map)).collect();
        let side_b: Vec<Polynomial> = b.ideal.generators().iter().map(|g| g.remap(&big, &b_map)).collect();
        let with_a = buchberger(&big, &[side_a.clone(), link.clone()].concat())?;
        let with_b = buchberger(&big, &[side_b.clone(), link].concat())?;
        for g in &side_b {
            if !with_a.membership(g)? {
                return Ok(false);
            }
        }
        for g in &side_a {
            if !with_b.membership(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The chart of a blowup where `zi` generates the pulled-back ideal. The
/// ring lists the base variables, then one ratio variable `vj = zj/zi` for
/// each `j ≠ i`.
#[derive(Debug, Clone)]
pub struct BlowupChart {
    index: usize,
    ring: Arc<PolyRing>,
    ideal: GroebnerBasis,
    ratio_vars: Vec<usize>,
    generators: Vec<Polynomial>,
}

impl BlowupChart {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn presentation(&self) -> &GroebnerBasis {
        &self.ideal
    }

    /// The chart ring variable standing for `zj/zi`.
    pub fn ratio_var(&self, j: usize) -> Option<Polynomial> {
        let pos = self.ratio_vars.iter().position(|&r| r == j)?;
        let n = self.ring.nvars() - self.ratio_vars.len();
        Some(self.ring.var(n + pos))
    }

    /// Checks `zi·vj = zj` for every `j ≠ i`.
    pub fn relations_hold(&self) -> Result<bool> {
        let zi = &self.generators[self.index - 1];
        for &j in &self.ratio_vars {
            let v = self.ratio_var(j).expect("ratio variable");
            let rel = &(zi * &v) - &self.generators[j - 1];
            if !self.ideal.membership(&rel)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The monic equation `X^n + a_n = 0` for `X = f/zi` on one chart, where
/// `a_n = -f^n / zi^n` is written in the chart ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartEquation {
    pub chart: usize,
    pub constant_term: String,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegralEquation {
    /// Least `n` with `f^n ∈ J^n`.
    pub degree: u32,
    /// Generators `g1..gn` of `J` and a cofactor `c` with `f^n = c·g1⋯gn`.
    pub factors: Vec<Monomial>,
    pub cofactor: Monomial,
    pub charts: Vec<ChartEquation>,
}

impl IntegralEquation {
    pub fn verified(&self) -> bool {
        self.charts.iter().all(|c| c.verified)
    }
}

/// Minimal generators of `J^k` with the generator indices producing them.
fn power_with_factors(j: &MonomialIdeal, f_n: impl Fn(u32) -> Monomial) -> Result<(u32, Vec<usize>, Monomial)> {
    let gens = j.generators();
    let mut level: Vec<(Monomial, Vec<usize>)> = vec![(Monomial::one(j.nvars()), Vec::new())];
    for n in 1..=MAX_INTEGRALITY_DEGREE {
        crate::budget::check_deadline()?;
        let mut next: Vec<(Monomial, Vec<usize>)> = Vec::new();
        for (m, idx) in &level {
            for (k, g) in gens.iter().enumerate() {
                let mut idx = idx.clone();
                idx.push(k);
                idx.sort_unstable();
                next.push((m.mul(g), idx));
            }
        }
        next.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
        next.dedup_by(|a, b| a.0 == b.0);
        let mut kept: Vec<(Monomial, Vec<usize>)> = Vec::new();
        for e in next {
            if !kept.iter().any(|k| k.0.divides(&e.0)) {
                kept.push(e);
            }
        }
        let target = f_n(n);
        if let Some((m, idx)) = kept.iter().find(|(m, _)| m.divides(&target)) {
            let cofactor = target.checked_div(m).expect("divides");
            return Ok((n, idx.clone(), cofactor));
        }
        level = kept;
    }
    Err(Error::ResourceLimit(format!(
        "no integral equation of degree at most {MAX_INTEGRALITY_DEGREE}"
    )))
}

/// For `f` integral over the monomial ideal `J` (its exponent lies in the
/// Newton polyhedron), builds `f^n + a_n = 0` with `a_n = -f^n ∈ J^n` and
/// checks on every chart of the blowup of `J` that `a_n / zi^n` lies in the
/// chart ring, making `f/zi` integral there.
pub fn integral_extension_chart(ring: &Arc<PolyRing>, j: &MonomialIdeal, f: &Monomial) -> Result<IntegralEquation> {
    if ring.nvars() != j.nvars() || f.nvars() != j.nvars() {
        return Err(Error::RingMismatch);
    }
    if j.is_zero() {
        return Err(Error::NotIntegral("the zero ideal".into()));
    }
    let newt = newton_polyhedron(j)?;
    let mut fs = String::new();
    crate::monomial::fmt_monomial(&mut fs, f, ring.vars()).expect("string write");
    if !newt.contains_lattice_point(f.exponents()) {
        return Err(Error::NotIntegral(fs));
    }
    let (n, idx, cofactor) = power_with_factors(j, |n| f.pow(n))?;
    let gens = j.generators();
    let one = Coeff::one();
    let f_n = Polynomial::monomial(ring, f.pow(n), one.clone());
    let mut charts = Vec::with_capacity(gens.len());
    for (i, zi) in gens.iter().enumerate() {
        // chart ring with the linear relations zi·vk − zk
        let mut names: Vec<String> = ring.vars().to_vec();
        let others: Vec<usize> = (0..gens.len()).filter(|&k| k != i).collect();
        for &k in &others {
            names.push(fresh_name(&format!("v{}", k + 1), &names));
        }
        let cr = PolyRing::internal(names, ring.domain(), MonomialOrder::GrevLex)?;
        let nb = ring.nvars();
        let mono = |m: &Monomial| {
            let e: Vec<u32> = m.exponents().iter().copied().chain(others.iter().map(|_| 0)).collect();
            Polynomial::monomial(&cr, Monomial::from_exponents(e), one.clone())
        };
        let rels: Vec<Polynomial> = others
            .iter()
            .enumerate()
            .map(|(pos, &k)| &(&mono(zi) * &cr.var(nb + pos)) - &mono(&gens[k]))
            .collect();
        let gb = buchberger(&cr, &rels)?;
        let mut term = mono(&cofactor);
        for &k in &idx {
            if k != i {
                let pos = others.iter().position(|&o| o == k).expect("other generator");
                term = &term * &cr.var(nb + pos);
            }
        }
        let a_n = -&term;
        // zi^n · (a_n / zi^n) + f^n must vanish in the chart ring
        let lifted_fn = f_n.remap(&cr, &(0..nb).collect::<Vec<_>>());
        let check = &(&mono(&zi.pow(n)) * &a_n) + &lifted_fn;
        let verified = gb.membership(&check)?;
        charts.push(ChartEquation {
            chart: i + 1,
            constant_term: a_n.to_string(),
            verified,
        });
    }
    Ok(IntegralEquation {
        degree: n,
        factors: idx.iter().map(|&k| gens[k].clone()).collect(),
        cofactor,
        charts,
    })
}

/// Determinant of the Jacobian matrix `∂images_r / ∂var_c`.
pub fn jacobian_determinant(images: &[Polynomial]) -> Result<Polynomial> {
    let Some(first) = images.first() else {
        return Err(Error::InvalidArgument("empty substitution".into()));
    };
    let ring = first.ring().clone();
    let d = images.len();
    if ring.nvars() != d {
        return Err(Error::InvalidArgument(format!(
            "{d} images in a ring of {} variables",
            ring.nvars()
        )));
    }
    let entries: Vec<Vec<Polynomial>> = images
        .iter()
        .map(|p| (0..d).map(|c| p.derivative(c)).collect())
        .collect();
    fn expand(
        row: usize,
        used: u32,
        sign: bool,
        acc: Polynomial,
        entries: &[Vec<Polynomial>],
        out: &mut Polynomial,
    ) -> Result<()> {
        let d = entries.len();
        if row == d {
            *out = if sign { out.checked_sub(&acc)? } else { out.checked_add(&acc)? };
            return Ok(());
        }
        for c in 0..d {
            if used & (1 << c) != 0 || entries[row][c].is_zero() {
                continue;
            }
            // columns already used to the right of c are inversions
            let inversions = (used >> (c + 1)).count_ones();
            let s = sign ^ (inversions % 2 == 1);
            expand(row + 1, used | (1 << c), s, acc.checked_mul(&entries[row][c])?, entries, out)?;
        }
        Ok(())
    }
    let mut out = Polynomial::zero(&ring);
    expand(0, 0, false, Polynomial::one(&ring), &entries, &mut out)?;
    Ok(out)
}

/// Coefficient of the exceptional divisor `E` in `K_{Y/X}` for the blowup of
/// the maximal ideal of a `d`-dimensional polynomial ring: the order in `u`
/// of the Jacobian of `x1 = u, xj = u·vj` on the first chart.
pub fn relative_canonical_maxideal(d: usize) -> Result<u32> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if d > MAX_CANONICAL_DIM {
        return Err(Error::DimensionLimit {
            dim: d,
            max: MAX_CANONICAL_DIM,
        });
    }
    let names: Vec<String> = std::iter::once("u".to_string())
        .chain((2..=d).map(|j| format!("v{j}")))
        .collect();
    let ring = PolyRing::internal(names, crate::poly::CoefficientDomain::Rationals, MonomialOrder::GrevLex)?;
    let u = ring.var(0);
    let images: Vec<Polynomial> = std::iter::once(u.clone())
        .chain((1..d).map(|j| &u * &ring.var(j)))
        .collect();
    let det = jacobian_determinant(&images)?;
    if det.is_zero() {
        return Err(Error::InvalidArgument("the substitution is not birational".into()));
    }
    Ok(det.terms().iter().map(|(m, _)| m.exponents()[0]).min().unwrap_or(0))
}

/// Sections of `O_Y(kE - hE)` on the maximal-ideal blowup, pushed down:
/// the monomials of order at least `h - k`.
pub fn twisted_sections_maxideal(d: usize, k: i64, h: i64) -> MonomialIdeal {
    let need = (h - k).max(0);
    MonomialIdeal::maximal_power(d, u32::try_from(need).unwrap_or(u32::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::CoefficientDomain;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(names.iter().copied(), CoefficientDomain::Rationals, MonomialOrder::GrevLex).unwrap()
    }

    fn vars(r: &Arc<PolyRing>) -> Ideal {
        Ideal::new(r, (0..r.nvars()).map(|k| r.var(k)).collect()).unwrap()
    }

    #[test]
    fn principal_rees_is_free() {
        let r = ring(&["x", "y"]);
        let rees = rees_presentation(&Ideal::new(&r, vec![r.var(0)]).unwrap()).unwrap();
        assert!(rees.presentation().is_zero_ideal());
        let c = rees.chart(1).unwrap();
        assert!(c.presentation().is_zero_ideal());
        assert_eq!(c.ring().nvars(), 2);
    }

    #[test]
    fn maximal_ideal_in_two_variables() {
        let r = ring(&["x", "y"]);
        let rees = rees_presentation(&vars(&r)).unwrap();
        let g = rees.presentation().generators();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "T2*x - T1*y");
        assert!(rees.is_t_homogeneous());
        assert!(rees.substitution_check().unwrap());
        assert!(rees.matches_kernel().unwrap());
        let c = rees.chart(1).unwrap();
        assert_eq!(c.presentation().generators()[0].to_string(), "x*v2 - y");
        assert!(c.relations_hold().unwrap());
        assert!(rees.charts_glue(1, 2).unwrap());
        assert!(matches!(rees.chart(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn maximal_ideal_in_three_variables() {
        let r = ring(&["x", "y", "z"]);
        let rees = rees_presentation(&vars(&r)).unwrap();
        let pr = rees.ring();
        let (t1, t2, t3) = (pr.var(0), pr.var(1), pr.var(2));
        let (x, y, z) = (pr.var(3), pr.var(4), pr.var(5));
        let minors = Ideal::new(
            pr,
            vec![&(&t1 * &y) - &(&t2 * &x), &(&t1 * &z) - &(&t3 * &x), &(&t2 * &z) - &(&t3 * &y)],
        )
        .unwrap();
        let p = Ideal::from_basis(rees.presentation().clone());
        assert!(p.equals(&minors).unwrap());
        let c = rees.chart(1).unwrap();
        let cr = c.ring();
        let (x, y, z, v2, v3) = (cr.var(0), cr.var(1), cr.var(2), cr.var(3), cr.var(4));
        let expected = Ideal::new(cr, vec![&(&x * &v2) - &y, &(&x * &v3) - &z]).unwrap();
        assert!(Ideal::from_basis(c.presentation().clone()).equals(&expected).unwrap());
        assert!(c.relations_hold().unwrap());
        assert!(rees.charts_glue(1, 3).unwrap());
    }

    fn mi(n: usize, e: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, &e.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn integral_equations() {
        let r = ring(&["x", "y"]);
        let eq = integral_extension_chart(&r, &mi(2, &[&[2, 0], &[0, 2]]), &Monomial::from_exponents([1, 1])).unwrap();
        assert_eq!(eq.degree, 2);
        assert!(eq.verified());
        assert_eq!(eq.charts.len(), 2);
        let eq = integral_extension_chart(&r, &mi(2, &[&[3, 0], &[0, 3]]), &Monomial::from_exponents([2, 1])).unwrap();
        assert_eq!(eq.degree, 3);
        assert!(eq.verified());
        let eq = integral_extension_chart(&r, &mi(2, &[&[3, 0], &[0, 3]]), &Monomial::from_exponents([4, 0])).unwrap();
        assert_eq!(eq.degree, 1);
        assert!(matches!(
            integral_extension_chart(&r, &mi(2, &[&[2, 0], &[0, 2]]), &Monomial::from_exponents([1, 0])),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn canonical_divisor() {
        for d in 1..=8 {
            assert_eq!(relative_canonical_maxideal(d).unwrap(), d as u32 - 1);
        }
        assert!(relative_canonical_maxideal(0).is_err());
        assert!(relative_canonical_maxideal(9).is_err());
    }

    #[test]
    fn twisted_sections() {
        assert_eq!(twisted_sections_maxideal(2, 1, 2), MonomialIdeal::maximal_power(2, 1));
        assert!(twisted_sections_maxideal(3, 4, 2).is_unit());
        assert_eq!(twisted_sections_maxideal(3, 2, 3), MonomialIdeal::maximal_power(3, 1));
    }
}
