//! Double description method over the integers.
//!
//! Computes the extreme rays of a pointed polyhedral cone
//! `{ y : a·y ≥ 0 for every row a }`. Rays are kept as primitive integer
//! vectors; adjacency uses the combinatorial test on tight-constraint sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::budget;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_superset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    tight: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Indices of `dim` linearly independent rows, greedily in row order.
fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<usize>> {
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !r[p].is_zero() {
                let f = &r[p] / &b[p];
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            basis.push(r);
            pivots.push(p);
            chosen.push(idx);
            if chosen.len() == dim {
                return Some(chosen);
            }
        }
    }
    None
}

/// Inverse of a square integer matrix, columns returned as primitive
/// integer vectors (scaled by positive factors).
fn inverse_columns(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
            r.extend((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i32))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in &mut a[col] {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..n)
        .map(|k| {
            let col: Vec<BigRational> = (0..n).map(|i| a[i][n + k].clone()).collect();
            let lcm = col.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
            primitive(col.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect())
        })
        .collect()
}

/// Extreme rays of `{ y ∈ R^dim : row·y ≥ 0 }`. Fails when the cone is not
/// pointed (the rows do not span).
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    let init = independent_rows(rows, dim)
        .ok_or_else(|| Error::InvalidArgument("constraint rows do not span; cone is not pointed".into()))?;
    let square: Vec<Vec<BigInt>> = init.iter().map(|&i| rows[i].clone()).collect();
    let cols = inverse_columns(&square);
    let nrows = rows.len();
    let mut rays: Vec<Ray> = cols
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let mut tight = BitSet::new(nrows);
            for (pos, &ri) in init.iter().enumerate() {
                if pos != k {
                    tight.insert(ri);
                }
            }
            Ray { v, tight }
        })
        .collect();

    let mut processed = vec![false; nrows];
    for &i in &init {
        processed[i] = true;
    }
    for (ri, row) in rows.iter().enumerate() {
        if processed[ri] {
            continue;
        }
        processed[ri] = true;
        budget::check_deadline()?;
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    r.tight.insert(ri);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.and(&rays[n].tight);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !r.tight.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let (sp, sn) = (&values[p], &values[n]);
                let v: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[n].v)
                    .map(|(a, b)| sp * b - sn * a)
                    .collect();
                let mut tight = common;
                tight.insert(ri);
                next.push(Ray {
                    v: primitive(v),
                    tight,
                });
            }
        }
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.tight.insert(ri);
            }
            next.push(r);
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}
