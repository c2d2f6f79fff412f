//! Newton polyhedra of monomial ideals, integral closure and multiplier
//! ideals.
//!
//! The multiplier ideal of a monomial ideal `M` at exponent `t` is generated
//! by the monomials `x^v` with `v + (1,…,1)` in the interior of
//! `t·Newt(M)` (Howald). Interior means strict inequality on every
//! non-coordinate facet; coordinate facets `u_j ≥ 0` hold automatically for
//! shifted points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hull::extreme_rays;
use super::MonomialIdeal;
use crate::budget;
use crate::error::{Error, Result};
use crate::poly::Monomial;

pub const MAX_NEWTON_DIM: usize = 8;

/// The halfspace `normal·u ≥ offset`, normal nonnegative and primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Halfspace {
    /// `u_j ≥ 0`.
    pub fn is_coordinate(&self) -> bool {
        self.offset.is_zero()
            && self.normal.iter().filter(|a| !a.is_zero()).count() == 1
            && self.normal.iter().all(|a| !a.is_negative())
    }

    pub fn value(&self, u: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(u)
            .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
            .sum()
    }

    fn value_int(&self, u: &[u32]) -> BigInt {
        self.normal.iter().zip(u).map(|(a, &x)| a * BigInt::from(x)).sum()
    }
}

/// `conv(exponents) + R≥0^d` as a list of halfspaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    nvars: usize,
    generators: Vec<Monomial>,
    halfspaces: Vec<Halfspace>,
}

pub fn newton_polyhedron(m: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    let d = m.nvars();
    if d > MAX_NEWTON_DIM {
        return Err(Error::DimensionLimit {
            dim: d,
            max: MAX_NEWTON_DIM,
        });
    }
    if m.is_zero() {
        return Err(Error::InvalidArgument("the zero ideal has no Newton polyhedron".into()));
    }
    // Homogenized cone generated by (v, 1) and (e_j, 0). Its facets are the
    // extreme rays of the dual cone { (a, c) : a·v + c ≥ 0, a_j ≥ 0 }.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.generators().len() + d);
    for j in 0..d {
        let mut r = vec![BigInt::zero(); d + 1];
        r[j] = BigInt::from(1);
        rows.push(r);
    }
    for g in m.generators() {
        let mut r: Vec<BigInt> = g.exponents().iter().map(|&e| BigInt::from(e)).collect();
        r.push(BigInt::from(1));
        rows.push(r);
    }
    let rays = extreme_rays(&rows, d + 1)?;
    let mut halfspaces: Vec<Halfspace> = rays
        .into_iter()
        .filter(|y| y[..d].iter().any(|a| !a.is_zero()))
        .map(|y| Halfspace {
            normal: y[..d].to_vec(),
            offset: -y[d].clone(),
        })
        .collect();
    for j in 0..d {
        let mut normal = vec![BigInt::zero(); d];
        normal[j] = BigInt::from(1);
        let h = Halfspace {
            normal,
            offset: BigInt::zero(),
        };
        if !halfspaces.contains(&h) {
            halfspaces.push(h);
        }
    }
    halfspaces.sort_by(|a, b| {
        a.is_coordinate()
            .cmp(&b.is_coordinate())
            .then_with(|| b.normal.cmp(&a.normal))
            .then_with(|| a.offset.cmp(&b.offset))
    });
    Ok(NewtonPolyhedron {
        nvars: d,
        generators: m.generators().to_vec(),
        halfspaces,
    })
}

impl NewtonPolyhedron {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains_point(&self, u: &[BigRational]) -> bool {
        self.halfspaces
            .iter()
            .all(|h| h.value(u) >= BigRational::from_integer(h.offset.clone()))
    }

    pub fn contains_lattice_point(&self, u: &[u32]) -> bool {
        self.halfspaces.iter().all(|h| h.value_int(u) >= h.offset)
    }

    /// A halfspace violated by `u`, certifying `u ∉ Newt`.
    pub fn separating_halfspace(&self, u: &[BigRational]) -> Option<&Halfspace> {
        self.halfspaces
            .iter()
            .find(|h| h.value(u) < BigRational::from_integer(h.offset.clone()))
    }

    /// Whether `u` lies in the interior of `t·Newt`: strict on non-coordinate
    /// facets, weak on coordinate ones.
    pub fn interior_of_scaled(&self, u: &[u32], t: &BigRational) -> bool {
        let (num, den) = (t.numer(), t.denom());
        self.halfspaces.iter().all(|h| {
            let lhs = h.value_int(u) * den;
            let rhs = &h.offset * num;
            if h.is_coordinate() {
                lhs >= rhs
            } else {
                lhs > rhs
            }
        })
    }
}

/// Points of the box `0 ≤ u ≤ bounds` satisfying `member`, reduced to the
/// minimal ones. `member` must be monotone (up-closed).
fn minimal_points(bounds: &[u32], member: impl Fn(&[u32]) -> bool) -> Result<Vec<Monomial>> {
    let d = bounds.len();
    let total: u128 = bounds.iter().map(|&b| b as u128 + 1).product();
    if total > 20_000_000 {
        return Err(Error::ResourceLimit(format!("lattice box of {total} points")));
    }
    let total = total as usize;
    let mut grid = vec![false; total];
    let mut stride = vec![1usize; d];
    for j in 1..d {
        stride[j] = stride[j - 1] * (bounds[j - 1] as usize + 1);
    }
    let mut u = vec![0u32; d];
    for (idx, cell) in grid.iter_mut().enumerate() {
        if idx % 4096 == 0 {
            budget::check_deadline()?;
        }
        let mut rest = idx;
        for j in 0..d {
            u[j] = (rest % (bounds[j] as usize + 1)) as u32;
            rest /= bounds[j] as usize + 1;
        }
        *cell = member(&u);
    }
    let mut out = Vec::new();
    for idx in 0..total {
        if !grid[idx] {
            continue;
        }
        let mut rest = idx;
        for j in 0..d {
            u[j] = (rest % (bounds[j] as usize + 1)) as u32;
            rest /= bounds[j] as usize + 1;
        }
        let minimal = (0..d).all(|j| u[j] == 0 || !grid[idx - stride[j]]);
        if minimal {
            out.push(Monomial::from_exponents(u.iter().copied()));
        }
    }
    Ok(out)
}

/// Integral closure: the monomials whose exponents lie in `Newt(M)`.
pub fn integral_closure(m: &MonomialIdeal) -> Result<MonomialIdeal> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let newt = newton_polyhedron(m)?;
    let bounds: Vec<u32> = m.max_exponents().iter().map(|&e| e + 1).collect();
    let gens = minimal_points(&bounds, |u| newt.contains_lattice_point(u))?;
    MonomialIdeal::new(m.nvars(), gens)
}

/// Multiplier ideal `J(M^t)` of a monomial ideal.
pub fn multiplier_ideal_monomial(m: &MonomialIdeal, t: &BigRational) -> Result<MonomialIdeal> {
    if t.is_negative() {
        return Err(Error::InvalidArgument(format!("negative exponent {t}")));
    }
    if t.denom() > &BigInt::from(1_000_000) {
        return Err(Error::InvalidArgument(format!("denominator of {t} exceeds 10^6")));
    }
    if m.is_zero() {
        return if t.is_zero() {
            Ok(MonomialIdeal::unit(m.nvars()))
        } else {
            Ok(m.clone())
        };
    }
    let newt = newton_polyhedron(m)?;
    // a minimal generator v satisfies v_j ≤ ⌊t·max_j⌋
    let bounds: Vec<u32> = m
        .max_exponents()
        .iter()
        .map(|&e| {
            let b = (t * BigRational::from_integer(BigInt::from(e))).floor().to_integer();
            u32::try_from(b).unwrap_or(u32::MAX)
        })
        .collect();
    let gens = minimal_points(&bounds, |v| {
        let shifted: Vec<u32> = v.iter().map(|&x| x + 1).collect();
        newt.interior_of_scaled(&shifted, t)
    })?;
    MonomialIdeal::new(m.nvars(), gens)
}
