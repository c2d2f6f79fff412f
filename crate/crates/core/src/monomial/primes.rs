//! Minimal primes of squarefree monomial ideals as minimal vertex covers of
//! the hypergraph of generator supports.

use super::MonomialIdeal;
use crate::error::{Error, Result};
use crate::poly::MAX_USER_VARS;

fn edges(m: &MonomialIdeal) -> Result<Vec<u32>> {
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if m.nvars() > MAX_USER_VARS {
        return Err(Error::DimensionLimit {
            dim: m.nvars(),
            max: MAX_USER_VARS,
        });
    }
    Ok(m.generators()
        .iter()
        .map(|g| g.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect())
}

fn branch(edges: &[u32], chosen: u32, out: &mut Vec<u32>) {
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => out.push(chosen),
        Some(&e) => {
            let mut rest = e;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                branch(edges, chosen | (1 << v), out);
            }
        }
    }
}

/// Minimal primes of a squarefree monomial ideal, each given as the sorted
/// list of variable indices generating it. The unit ideal has none; the
/// zero ideal has the single prime `(0)`.
pub fn minimal_primes_squarefree(m: &MonomialIdeal) -> Result<Vec<Vec<usize>>> {
    let edges = edges(m)?;
    if edges.contains(&0) {
        return Ok(Vec::new());
    }
    let mut covers = Vec::new();
    branch(&edges, 0, &mut covers);
    covers.sort_by_key(|c| (c.count_ones(), *c));
    covers.dedup();
    let mut minimal: Vec<u32> = Vec::new();
    for c in covers {
        if !minimal.iter().any(|&k| k & c == k) {
            minimal.push(c);
        }
    }
    let mut primes: Vec<Vec<usize>> = minimal
        .into_iter()
        .map(|c| (0..m.nvars()).filter(|&i| c & (1 << i) != 0).collect())
        .collect();
    primes.sort();
    Ok(primes)
}

/// Height: the smallest size of a minimal prime.
pub fn height(m: &MonomialIdeal) -> Result<u32> {
    let primes = minimal_primes_squarefree(m)?;
    primes
        .iter()
        .map(|p| p.len() as u32)
        .min()
        .ok_or_else(|| Error::InvalidArgument("the unit ideal has no height".into()))
}

/// Big height: the largest size of a minimal prime. This is the bound `h`
/// for which every component has height at most `h`.
pub fn big_height(m: &MonomialIdeal) -> Result<u32> {
    let primes = minimal_primes_squarefree(m)?;
    primes
        .iter()
        .map(|p| p.len() as u32)
        .max()
        .ok_or_else(|| Error::InvalidArgument("the unit ideal has no height".into()))
}
