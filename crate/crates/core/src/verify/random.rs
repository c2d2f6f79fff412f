use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    AsymptoticCheck, BlowupCheck, CaseInput, CorpusCase, Expected, MultiplierCheck, OracleKind, PropertyName,
    SequenceKind,
};

const MAX_EXP: u32 = 6;
const MAX_DEN: u32 = 60;

/// How many cases of each kind to draw.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RandomCounts {
    pub snc_property: usize,
    pub monomial_multiplier: usize,
    pub main_theorem: usize,
    pub blowup: usize,
    pub asymptotic: usize,
}

impl RandomCounts {
    pub fn uniform(n: usize) -> Self {
        RandomCounts {
            snc_property: n,
            monomial_multiplier: n,
            main_theorem: n,
            blowup: n,
            asymptotic: n,
        }
    }
}

fn monomial_text(names: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn exps(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..=MAX_EXP)).collect()
}

/// A rational in `[0, 3]` with denominator at most 60.
fn rational(rng: &mut ChaCha8Rng) -> (u32, u32) {
    let den = rng.gen_range(1..=MAX_DEN);
    (rng.gen_range(0..=3 * den), den)
}

fn fmt_rational((n, d): (u32, u32)) -> String {
    format!("{n}/{d}")
}

fn ring_text(names: &[&str]) -> String {
    format!("Q[{}]", names.join(","))
}

const SNC_VARS: [&str; 4] = ["p", "x", "y", "z"];
const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn snc_case(rng: &mut ChaCha8Rng, k: usize) -> CorpusCase {
    let names = &SNC_VARS[..rng.gen_range(1..=4)];
    let fe = exps(rng, names.len());
    let f = monomial_text(names, &fe);
    let (mut g, mut t, mut t2, mut s, mut n) = (None, None, None, None, None);
    let property = match k % 5 {
        0 => {
            let ge: Vec<u32> = fe.iter().map(|&a| rng.gen_range(a..=MAX_EXP)).collect();
            g = Some(monomial_text(names, &ge));
            t = Some(fmt_rational(rational(rng)));
            PropertyName::Containment
        }
        1 => {
            let (a, b) = (rational(rng), rational(rng));
            let (lo, hi) = if (a.0 as u64) * (b.1 as u64) <= (b.0 as u64) * (a.1 as u64) {
                (a, b)
            } else {
                (b, a)
            };
            t = Some(fmt_rational(lo));
            t2 = Some(fmt_rational(hi));
            PropertyName::ExponentMonotone
        }
        2 => {
            n = Some(rng.gen_range(1..=4));
            t = Some(fmt_rational(rational(rng)));
            PropertyName::Unambiguity
        }
        3 => PropertyName::NotTooSmall,
        _ => {
            s = Some(fmt_rational(rational(rng)));
            t = Some(fmt_rational(rational(rng)));
            PropertyName::Subadditivity
        }
    };
    CorpusCase {
        id: String::new(),
        ring: ring_text(names),
        input: CaseInput::SncProperty {
            property,
            f,
            g,
            t,
            t2,
            s,
            n,
        },
        expected: Expected::Pass,
    }
}

fn multiplier_case(rng: &mut ChaCha8Rng, k: usize) -> CorpusCase {
    let names = &SNC_VARS[..rng.gen_range(2..=4)];
    let f = monomial_text(names, &exps(rng, names.len()));
    let check = if k % 2 == 0 {
        MultiplierCheck::SncComparison
    } else {
        MultiplierCheck::RightContinuity
    };
    CorpusCase {
        id: String::new(),
        ring: ring_text(names),
        input: CaseInput::MonomialMultiplier {
            check,
            ideal: f,
            t: Some(fmt_rational(rational(rng))),
            value: None,
        },
        expected: Expected::Pass,
    }
}

fn squarefree_ideal(rng: &mut ChaCha8Rng, names: &[&str]) -> String {
    let d = names.len();
    let count = rng.gen_range(1..=4);
    let gens: Vec<String> = (0..count)
        .map(|_| {
            let mask = rng.gen_range(1..(1u32 << d));
            let e: Vec<u32> = (0..d).map(|i| (mask >> i) & 1).collect();
            monomial_text(names, &e)
        })
        .collect();
    gens.join(", ")
}

fn main_case(rng: &mut ChaCha8Rng) -> CorpusCase {
    let names = &VARS[..rng.gen_range(2..=4)];
    CorpusCase {
        id: String::new(),
        ring: ring_text(names),
        input: CaseInput::MainTheorem {
            ideal: squarefree_ideal(rng, names),
            m: rng.gen_range(1..=3),
            symbolic: None,
            prime_height: None,
            witness: None,
            exact: false,
        },
        expected: Expected::Pass,
    }
}

/// Whether `f` lies in the convex hull of `a` and `b` plus the orthant:
/// some `λ ∈ [0,1]` has `f ≥ λa + (1-λ)b` coordinatewise. Each coordinate
/// bounds `λ` on one side; the bounds are compared as exact fractions.
fn above_segment(a: &[u32], b: &[u32], f: &[u32]) -> bool {
    // λ in [lo_n/lo_d, hi_n/hi_d]
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 1i64));
    for i in 0..f.len() {
        let (ai, bi, fi) = (a[i] as i64, b[i] as i64, f[i] as i64);
        let (slope, room) = (ai - bi, fi - bi);
        if slope == 0 {
            if room < 0 {
                return false;
            }
        } else if slope > 0 {
            // λ ≤ room / slope
            if room * hi.1 < hi.0 * slope {
                hi = (room, slope);
            }
        } else if -room * lo.1 > lo.0 * -slope {
            // λ ≥ (-room) / (-slope)
            lo = (-room, -slope);
        }
    }
    lo.0 * hi.1 <= hi.0 * lo.1
}

fn blowup_case(rng: &mut ChaCha8Rng, k: usize) -> CorpusCase {
    if k % 2 == 0 {
        return CorpusCase {
            id: String::new(),
            ring: String::from("Q[x]"),
            input: CaseInput::Blowup {
                check: BlowupCheck::Kcanonical,
                ideal: None,
                d: Some(rng.gen_range(1..=8)),
                f: None,
                charts: Vec::new(),
                value: None,
            },
            expected: Expected::Pass,
        };
    }
    let names = &VARS[..2];
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let e = exps(rng, 2);
        if e.iter().any(|&x| x > 0) {
            return e;
        }
    };
    let (a, b, f) = (nonzero(rng), nonzero(rng), exps(rng, 2));
    let expected = if above_segment(&a, &b, &f) {
        Expected::Pass
    } else {
        Expected::FailWithWitness(monomial_text(names, &f))
    };
    CorpusCase {
        id: String::new(),
        ring: ring_text(names),
        input: CaseInput::Blowup {
            check: BlowupCheck::IntegralChart,
            ideal: Some(format!("{}, {}", monomial_text(names, &a), monomial_text(names, &b))),
            d: None,
            f: Some(monomial_text(names, &f)),
            charts: Vec::new(),
            value: None,
        },
        expected,
    }
}

fn asymptotic_case(rng: &mut ChaCha8Rng, k: usize) -> CorpusCase {
    let names = &VARS[..2];
    let count = rng.gen_range(1..=3);
    let gens: Vec<String> = (0..count)
        .map(|_| {
            let e: Vec<u32> = (0..2).map(|_| rng.gen_range(0..=4)).collect();
            monomial_text(names, &e)
        })
        .collect();
    let (check, m, l_star) = if k % 2 == 0 {
        (AsymptoticCheck::Stabilization, None, Some(1))
    } else {
        (AsymptoticCheck::Subadditivity, Some(2), None)
    };
    CorpusCase {
        id: String::new(),
        ring: ring_text(names),
        input: CaseInput::Asymptotic {
            check,
            ideal: gens.join(", "),
            sequence: SequenceKind::Powers,
            oracle: OracleKind::Multiplier,
            n: Some(1),
            m,
            l_star,
        },
        expected: Expected::Pass,
    }
}

/// Seeded cases over at most four variables with exponents at most 6 and
/// exponents `t` of denominator at most 60. Ids are `rand-<kind>-<k>`.
pub fn generate_random_cases(seed: u64, counts: &RandomCounts) -> Vec<CorpusCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |mut c: CorpusCase, k: usize| {
        c.id = format!("rand-{}-{:04}", c.input.kind(), k + 1);
        out.push(c);
    };
    for k in 0..counts.snc_property {
        push(snc_case(&mut rng, k), k);
    }
    for k in 0..counts.monomial_multiplier {
        push(multiplier_case(&mut rng, k), k);
    }
    for k in 0..counts.main_theorem {
        push(main_case(&mut rng), k);
    }
    for k in 0..counts.blowup {
        push(blowup_case(&mut rng, k), k);
    }
    for k in 0..counts.asymptotic {
        push(asymptotic_case(&mut rng, k), k);
    }
    out
}
