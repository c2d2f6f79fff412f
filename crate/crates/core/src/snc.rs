//! The monomial mixed-characteristic model: test ideals of principal SNC
//! monomials `p^a0 * x1^a1 * ... ` in closed form, and exact checks of the
//! basic properties they satisfy.
//!
//! Only the stabilized test ideal is computed. Whether it agrees with the
//! sharp variant `τ♯` in general is open; on SNC monomials both are given by
//! the same floor formula.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{multiplier_ideal_monomial, MonomialIdeal};
use crate::poly::{is_prime, CoefficientDomain, Monomial, MonomialOrder, PolyRing, Polynomial};

const MAX_DENOMINATOR: u64 = 1_000_000_000;
const MAX_FROBENIUS_POWER: u32 = 40;

/// A ring whose first variable is the distinguished prime `p`.
#[derive(Debug, Clone)]
pub struct MixedModel {
    ring: Arc<PolyRing>,
    p_value: u32,
}

impl MixedModel {
    pub fn new(ring: Arc<PolyRing>, p_value: u32) -> Result<Self> {
        if ring.vars().first().map(String::as_str) != Some("p") {
            return Err(Error::InvalidRing("the first variable must be named p".into()));
        }
        if !is_prime(p_value) {
            return Err(Error::InvalidRing(format!("{p_value} is not prime")));
        }
        Ok(MixedModel { ring, p_value })
    }

    /// `Q[p, x1, ..., x_{d-1}]`.
    pub fn standard(d: usize, p_value: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidRing("a mixed model needs p".into()));
        }
        let names: Vec<String> = std::iter::once("p".to_string())
            .chain((1..d).map(|i| format!("x{i}")))
            .collect();
        let ring = PolyRing::new(names, CoefficientDomain::Rationals, MonomialOrder::GrevLex)?;
        Self::new(ring, p_value)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn p_value(&self) -> u32 {
        self.p_value
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }
}

/// Exponents `(a0, a1, ...)` of `p^a0 x1^a1 ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SncMonomial {
    exponents: Vec<u32>,
}

impl SncMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        SncMonomial { exponents }
    }

    /// Reads a monic monomial of the model ring.
    pub fn from_polynomial(model: &MixedModel, f: &Polynomial) -> Result<Self> {
        if !PolyRing::same(f.ring(), model.ring()) {
            return Err(Error::RingMismatch);
        }
        if !f.is_monomial() || !f.terms()[0].1.is_one() {
            return Err(Error::NotMonomial(f.to_string()));
        }
        Ok(SncMonomial::new(f.terms()[0].0.exponents().to_vec()))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_exponents(self.exponents.iter().copied())
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let exps = self
            .exponents
            .iter()
            .map(|&a| a.checked_mul(n).ok_or_else(|| Error::ResourceLimit("exponent overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SncMonomial::new(exps))
    }

    pub fn divides(&self, other: &SncMonomial) -> bool {
        self.nvars() == other.nvars() && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// The same monomial with the `p` coordinate removed.
    pub fn drop_p(&self) -> Monomial {
        Monomial::from_exponents(self.exponents.iter().skip(1).copied())
    }
}

impl fmt::Display for SncMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = std::iter::once("p".to_string())
            .chain((1..self.nvars()).map(|i| format!("x{i}")))
            .collect();
        crate::monomial::fmt_monomial(f, &self.monomial(), &names)
    }
}

/// A nonnegative rational exponent with denominator at most `10^9`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FormalExponent(BigRational);

impl FormalExponent {
    pub fn new(t: BigRational) -> Result<Self> {
        if t.is_negative() {
            return Err(Error::InvalidArgument(format!("negative exponent {t}")));
        }
        if t.denom() > &BigInt::from(MAX_DENOMINATOR) {
            return Err(Error::InvalidArgument(format!("denominator of {t} exceeds 10^9")));
        }
        Ok(FormalExponent(t))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        FormalExponent(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn add(&self, other: &FormalExponent) -> Result<Self> {
        Self::new(&self.0 + &other.0)
    }

    pub fn scale(&self, n: u32) -> Result<Self> {
        Self::new(&self.0 * BigRational::from_integer(n.into()))
    }

    fn floor_mul(&self, a: u32) -> u32 {
        (&self.0 * BigRational::from_integer(a.into()))
            .floor()
            .to_integer()
            .to_u32()
            .unwrap_or(u32::MAX)
    }
}

impl FromStr for FormalExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = BigRational::from_str(s.trim())
            .map_err(|_| Error::InvalidArgument(format!("not a rational number: {s}")))?;
        Self::new(t)
    }
}

impl TryFrom<String> for FormalExponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FormalExponent> for String {
    fn from(t: FormalExponent) -> String {
        t.to_string()
    }
}

impl fmt::Display for FormalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `τ(f^t) = (p^⌊a0 t⌋ x1^⌊a1 t⌋ ...)`.
pub fn snc_test_ideal(f: &SncMonomial, t: &FormalExponent) -> MonomialIdeal {
    let m = Monomial::from_exponents(f.exponents.iter().map(|&a| t.floor_mul(a)));
    MonomialIdeal::principal(m)
}

/// `⌈t·p^e⌉`, exactly.
pub fn ceil_pe_exponent(t: &FormalExponent, e: u32, p_value: u32) -> Result<BigInt> {
    if e == 0 || e > MAX_FROBENIUS_POWER {
        return Err(Error::ResourceLimit(format!(
            "Frobenius power e = {e} outside 1..={MAX_FROBENIUS_POWER}"
        )));
    }
    if !is_prime(p_value) {
        return Err(Error::InvalidArgument(format!("{p_value} is not prime")));
    }
    let pe = num_traits::pow(BigInt::from(p_value), e as usize);
    let (q, r) = (t.0.numer() * pe).div_rem(t.0.denom());
    Ok(if r.is_zero() { q } else { q + 1 })
}

/// A checkable property of SNC test ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum SncProperty {
    /// `f | g` implies `τ(g^t) ⊆ τ(f^t)`.
    Containment {
        f: SncMonomial,
        g: SncMonomial,
        t: FormalExponent,
    },
    /// `t ≤ t'` implies `τ(f^t') ⊆ τ(f^t)`.
    ExponentMonotone {
        f: SncMonomial,
        t: FormalExponent,
        t2: FormalExponent,
    },
    /// `τ((f^n)^t) = τ(f^{nt})`.
    Unambiguity { f: SncMonomial, n: u32, t: FormalExponent },
    /// `(f) ⊆ τ(f^1)`.
    NotTooSmall { f: SncMonomial },
    /// `τ(f^{s+t}) ⊆ τ(f^s) τ(f^t)`.
    Subadditivity {
        f: SncMonomial,
        s: FormalExponent,
        t: FormalExponent,
    },
}

impl SncProperty {
    pub fn label(&self) -> &'static str {
        match self {
            SncProperty::Containment { .. } => "A-containment",
            SncProperty::ExponentMonotone { .. } => "A-exponent-monotone",
            SncProperty::Unambiguity { .. } => "B-unambiguity",
            SncProperty::NotTooSmall { .. } => "C-not-too-small",
            SncProperty::Subadditivity { .. } => "E-subadditivity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    /// False when the property's hypothesis fails, so it holds vacuously.
    pub applicable: bool,
    pub passed: bool,
    pub lhs: MonomialIdeal,
    pub rhs: MonomialIdeal,
    /// A generator of the smaller side missing from the larger one.
    pub witness: Option<Monomial>,
}

fn containment_report(
    label: &str,
    applicable: bool,
    lhs: MonomialIdeal,
    rhs: MonomialIdeal,
    both_ways: bool,
) -> PropertyReport {
    let mut witness = rhs.first_missing(&lhs).cloned();
    if witness.is_none() && both_ways {
        witness = lhs.first_missing(&rhs).cloned();
    }
    PropertyReport {
        property: label.to_string(),
        applicable,
        passed: !applicable || witness.is_none(),
        lhs,
        rhs,
        witness: if applicable { witness } else { None },
    }
}

fn same_arity(a: &SncMonomial, b: &SncMonomial) -> Result<()> {
    if a.nvars() == b.nvars() {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Evaluates both sides and compares them exactly. `lhs ⊆ rhs` is the claim
/// (equality for unambiguity).
pub fn verify_property(prop: &SncProperty) -> Result<PropertyReport> {
    let label = prop.label();
    Ok(match prop {
        SncProperty::Containment { f, g, t } => {
            same_arity(f, g)?;
            containment_report(label, f.divides(g), snc_test_ideal(g, t), snc_test_ideal(f, t), false)
        }
        SncProperty::ExponentMonotone { f, t, t2 } => {
            containment_report(label, t <= t2, snc_test_ideal(f, t2), snc_test_ideal(f, t), false)
        }
        SncProperty::Unambiguity { f, n, t } => {
            let lhs = snc_test_ideal(&f.pow(*n)?, t);
            let rhs = snc_test_ideal(f, &t.scale(*n)?);
            containment_report(label, true, lhs, rhs, true)
        }
        SncProperty::NotTooSmall { f } => {
            let one = FormalExponent(BigRational::one());
            containment_report(label, true, MonomialIdeal::principal(f.monomial()), snc_test_ideal(f, &one), false)
        }
        SncProperty::Subadditivity { f, s, t } => {
            let lhs = snc_test_ideal(f, &s.add(t)?);
            let rhs = snc_test_ideal(f, s).product(&snc_test_ideal(f, t))?;
            containment_report(label, true, lhs, rhs, false)
        }
    })
}

/// The largest `ε` such that `τ(f^{t+δ}) = τ(f^t)` for all `0 ≤ δ < ε`:
/// the least distance from some `a_i t` up to the next integer, divided by
/// `a_i`. `None` for the unit monomial, where every `ε` works.
pub fn right_continuity_radius(f: &SncMonomial, t: &FormalExponent) -> Option<BigRational> {
    f.exponents
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| {
            let a = BigRational::from_integer(a.into());
            let at = &a * t.value();
            let next = at.floor() + BigRational::one();
            (next - at) / a
        })
        .min()
}

/// Checks `τ(f^t) = τ(f^{t+δ})` for `δ` strictly inside the radius, and
/// that the ideal drops once `δ` reaches it.
pub fn check_right_continuity(f: &SncMonomial, t: &FormalExponent) -> Result<bool> {
    let base = snc_test_ideal(f, t);
    let Some(eps) = right_continuity_radius(f, t) else {
        return Ok(true);
    };
    let half = FormalExponent::new(t.value() + &eps / BigRational::from_integer(2.into()))?;
    let inside = snc_test_ideal(f, &half) == base;
    let edge = FormalExponent::new(t.value() + &eps)?;
    let drops = snc_test_ideal(f, &edge) != base;
    Ok(inside && drops)
}

/// Compares `τ(f^t)` with `J((f)^t)` after inverting `p`: both sides lose
/// the `p` coordinate, and `τ ⊆ J` is the claim.
pub fn compare_with_multiplier(f: &SncMonomial, t: &FormalExponent) -> Result<PropertyReport> {
    let tau = snc_test_ideal(f, t);
    let drop = |m: &Monomial| Monomial::from_exponents(m.exponents().iter().skip(1).copied());
    let d = f.nvars().saturating_sub(1);
    let lhs = MonomialIdeal::new(d, tau.generators().iter().map(drop))?;
    let rhs = if d == 0 {
        MonomialIdeal::unit(0)
    } else {
        multiplier_ideal_monomial(&MonomialIdeal::principal(f.drop_p()), t.value())?
    };
    Ok(containment_report("multiplier-comparison", true, lhs, rhs, false))
}
