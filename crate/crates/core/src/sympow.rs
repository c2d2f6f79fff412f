//! Symbolic powers: exact for squarefree monomial ideals, witness-based
//! saturation for prime ideals, and the containment `I^(hm) ⊆ I^m`.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Primality};
use crate::monomial::{big_height, minimal_primes_squarefree, MonomialIdeal};
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Exact,
    /// Contained in the true symbolic power.
    LowerBound,
}

#[derive(Debug, Clone)]
pub struct SymbolicPowerResult {
    pub ideal: Ideal,
    pub n: u32,
    pub certainty: Certainty,
    pub witness: Option<Polynomial>,
}

/// `P^n` for the prime generated by the variables in `support`.
fn prime_power(nvars: usize, support: &[usize], n: u32) -> MonomialIdeal {
    let sub = MonomialIdeal::maximal_power(support.len(), n);
    let lift = |m: &Monomial| {
        let mut e = vec![0u32; nvars];
        for (k, &i) in support.iter().enumerate() {
            e[i] = m.exponents()[k];
        }
        Monomial::from_exponents(e)
    };
    MonomialIdeal::new(nvars, sub.generators().iter().map(lift)).expect("arity matches")
}

/// `M^(n)` as the intersection of `P^n` over the minimal primes of `M`.
pub fn symbolic_power_monomial(m: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
    let primes = minimal_primes_squarefree(m)?;
    if n == 0 {
        return Ok(MonomialIdeal::unit(m.nvars()));
    }
    if m.is_zero() {
        return Ok(m.clone());
    }
    let mut acc = MonomialIdeal::unit(m.nvars());
    for p in &primes {
        acc = acc.intersect(&prime_power(m.nvars(), p, n))?;
    }
    Ok(acc)
}

pub fn symbolic_power_squarefree(ring: &Arc<PolyRing>, m: &MonomialIdeal, n: u32) -> Result<SymbolicPowerResult> {
    let sym = symbolic_power_monomial(m, n)?;
    Ok(SymbolicPowerResult {
        ideal: sym.to_ideal(ring)?,
        n,
        certainty: Certainty::Exact,
        witness: None,
    })
}

/// `Q^(n)` as `Q^n : s^∞` for a witness `s ∉ Q`. Exact only when the caller
/// vouches that `s` lies in every embedded prime of `Q^n`.
pub fn symbolic_power_prime(q: &Ideal, n: u32, s: &Polynomial, exact: bool) -> Result<SymbolicPowerResult> {
    if q.meta().primality == Primality::Unknown {
        return Err(Error::PrimalityNotAsserted);
    }
    if q.membership(s)? {
        return Err(Error::WitnessInIdeal);
    }
    let ideal = if n <= 1 {
        q.power(n)?
    } else {
        q.power(n)?.saturate(s)?
    };
    let certainty = if exact || n <= 1 || q.meta().primality == Primality::CertifiedMonomialPrime {
        Certainty::Exact
    } else {
        Certainty::LowerBound
    };
    Ok(SymbolicPowerResult {
        ideal,
        n,
        certainty,
        witness: Some(s.clone()),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub h: u32,
    pub m: u32,
    pub holds: bool,
    pub certainty: Certainty,
    /// A generator of `I^(hm)` outside `I^m`.
    pub witness: Option<String>,
    pub elapsed_ms: u128,
}

/// How to obtain the symbolic power of a non-monomial input.
#[derive(Debug, Clone, Default)]
pub struct MainTheoremOptions {
    pub witness: Option<Polynomial>,
    pub exact: bool,
    pub allow_inexact: bool,
}

/// Checks `I^(hm) ⊆ I^m`. Squarefree monomial ideals use the big height
/// (largest height of a minimal prime); primes use their declared height.
pub fn check_main_theorem(ideal: &Ideal, m: u32, opts: &MainTheoremOptions) -> Result<MainTheoremReport> {
    let start = Instant::now();
    if let Some(mono) = squarefree_monomial(ideal)? {
        let h = big_height(&mono)?;
        let sym = symbolic_power_monomial(&mono, h * m)?;
        let pow = mono.power(m);
        let witness = pow.first_missing(&sym).map(|g| {
            let mut s = String::new();
            crate::monomial::fmt_monomial(&mut s, g, ideal.ring().vars()).expect("string write");
            s
        });
        return Ok(MainTheoremReport {
            h,
            m,
            holds: witness.is_none(),
            certainty: Certainty::Exact,
            witness,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
    let meta = ideal.meta();
    let h = meta
        .declared_height
        .ok_or_else(|| Error::InvalidArgument("the ideal has no certified height".into()))?;
    let s = opts
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("a witness outside the prime is required".into()))?;
    let sym = symbolic_power_prime(ideal, h * m, s, opts.exact)?;
    if sym.certainty == Certainty::LowerBound && !opts.allow_inexact {
        return Err(Error::InexactSymbolicPower);
    }
    let pow = ideal.power(m)?;
    let gb = pow.groebner()?;
    let mut witness = None;
    for g in sym.ideal.groebner()?.generators() {
        if !gb.membership(g)? {
            witness = Some(g.to_string());
            break;
        }
    }
    Ok(MainTheoremReport {
        h,
        m,
        holds: witness.is_none(),
        certainty: sym.certainty,
        witness,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The monomial ideal behind `ideal` when it is squarefree monomial.
pub fn squarefree_monomial(ideal: &Ideal) -> Result<Option<MonomialIdeal>> {
    match MonomialIdeal::from_ideal(ideal) {
        Ok(m) if m.is_squarefree() && !m.is_unit() => Ok(Some(m)),
        Ok(_) | Err(Error::NotMonomial(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
