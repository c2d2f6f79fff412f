//! Batch verification over a corpus of self-describing cases.
//!
//! A corpus is line-delimited JSON, one case per line:
//!
//! ```text
//! {"id":"main-001","kind":"main-theorem","ring":"Q[x,y,z]","ideal":"x*y, x*z, y*z","m":2,"expected":"pass"}
//! {"id":"main-sharp","kind":"main-theorem","ring":"Q[x,y,z]","ideal":"x*y, x*z, y*z","m":2,"symbolic":2,
//!  "expected":{"fail-with-witness":"x*y*z"}}
//! ```
//!
//! Blank lines are skipped. Ideals are comma-separated generator lists in the
//! script expression syntax; exponents `t` are rationals such as `"5/6"`.

mod random;

pub use random::{generate_random_cases, RandomCounts};

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotic::{
    asymptotic_ideal, build_generating_sets, main_theorem_pipeline, verify_asymptotic_subadditivity, GradedSequence,
    Oracle,
};
use crate::blowup::{integral_extension_chart, rees_presentation, relative_canonical_maxideal};
use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{fmt_monomial, integral_closure, multiplier_ideal_monomial, MonomialIdeal};
use crate::poly::Monomial;
use crate::poly::PolyRing;
use crate::script::{eval_ideal, eval_poly, eval_rational};
use crate::snc::{check_right_continuity, compare_with_multiplier, verify_property, FormalExponent, MixedModel, SncMonomial, SncProperty};
use crate::sympow::{check_main_theorem, squarefree_monomial, symbolic_power_monomial, symbolic_power_prime, MainTheoremOptions};

pub const DEFAULT_CASE_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    /// Ring declaration, e.g. `Q[x,y,z] grevlex`.
    pub ring: String,
    #[serde(flatten)]
    pub input: CaseInput,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    Pass,
    FailWithWitness(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropertyName {
    #[serde(rename = "A-containment")]
    Containment,
    #[serde(rename = "A-exponent-monotone")]
    ExponentMonotone,
    #[serde(rename = "B-unambiguity")]
    Unambiguity,
    #[serde(rename = "C-not-too-small")]
    NotTooSmall,
    #[serde(rename = "E-subadditivity")]
    Subadditivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplierCheck {
    /// `τ(f^t) ⊆ J((f)^t)` once `p` is dropped.
    SncComparison,
    /// `J(M^t)` equals `value`.
    Multiplier,
    /// The integral closure equals `value`.
    Closure,
    /// The SNC test ideal is constant exactly up to the computed radius.
    RightContinuity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlowupCheck {
    Kcanonical,
    Rees,
    Chart,
    Glue,
    IntegralChart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticCheck {
    Stabilization,
    Subadditivity,
    Pipeline,
    GeneratingSets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    #[default]
    Powers,
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    #[default]
    Multiplier,
    Snc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaseInput {
    SncProperty {
        property: PropertyName,
        f: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t2: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
    },
    MonomialMultiplier {
        check: MultiplierCheck,
        ideal: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<String>,
    },
    MainTheorem {
        ideal: String,
        m: u32,
        /// Compare `I^(symbolic)` with `I^m` instead of `I^(hm)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symbolic: Option<u32>,
        /// Declares the ideal prime of this height.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prime_height: Option<u32>,
        /// An element outside the prime, for the saturation.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        exact: bool,
    },
    Blowup {
        check: BlowupCheck,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ideal: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f: Option<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        charts: Vec<usize>,
        /// Expected generators of the presentation, compared as ideals.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<String>,
    },
    Asymptotic {
        check: AsymptoticCheck,
        ideal: String,
        #[serde(default)]
        sequence: SequenceKind,
        #[serde(default)]
        oracle: OracleKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        l_star: Option<u32>,
    },
}

pub const KINDS: [&str; 5] = ["snc-property", "monomial-multiplier", "main-theorem", "blowup", "asymptotic"];

impl CaseInput {
    pub fn kind(&self) -> &'static str {
        match self {
            CaseInput::SncProperty { .. } => KINDS[0],
            CaseInput::MonomialMultiplier { .. } => KINDS[1],
            CaseInput::MainTheorem { .. } => KINDS[2],
            CaseInput::Blowup { .. } => KINDS[3],
            CaseInput::Asymptotic { .. } => KINDS[4],
        }
    }
}

/// Parses a line-delimited corpus, rejecting duplicate ids.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusCase>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let case: CorpusCase = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: k + 1,
            column: e.column(),
            message: e.to_string(),
        })?;
        if !seen.insert(case.id.clone()) {
            return Err(Error::InvalidArgument(format!("duplicate case id `{}` on line {}", case.id, k + 1)));
        }
        out.push(case);
    }
    Ok(out)
}

/// The corpus shipped with the crate.
pub fn golden_corpus() -> Result<Vec<CorpusCase>> {
    parse_corpus(include_str!("../../corpus/golden.jsonl"))
}

#[derive(Debug, Clone)]
pub enum CaseFilter {
    All,
    Kind(String),
    Id(glob::Pattern),
}

impl CaseFilter {
    /// A kind name (`main-theorem`), an id glob (`snc-B-*`), or either with
    /// an explicit `kind=` / `id=` prefix.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(CaseFilter::All);
        }
        if let Some(k) = s.strip_prefix("kind=") {
            if !KINDS.contains(&k) {
                return Err(Error::InvalidArgument(format!("unknown case kind `{k}`")));
            }
            return Ok(CaseFilter::Kind(k.to_string()));
        }
        if KINDS.contains(&s) {
            return Ok(CaseFilter::Kind(s.to_string()));
        }
        let pat = s.strip_prefix("id=").unwrap_or(s);
        glob::Pattern::new(pat)
            .map(CaseFilter::Id)
            .map_err(|e| Error::InvalidArgument(format!("bad id pattern `{pat}`: {e}")))
    }

    pub fn matches(&self, case: &CorpusCase) -> bool {
        match self {
            CaseFilter::All => true,
            CaseFilter::Kind(k) => case.input.kind() == k,
            CaseFilter::Id(p) => p.matches(&case.id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail { witness: String },
    Error { message: String, resource: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The outcome matches the expectation.
    Ok,
    Mismatch,
    Error,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub kind: String,
    pub expected: Expected,
    pub outcome: Outcome,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub selected: usize,
    pub ok: usize,
    pub mismatched: usize,
    pub errors: usize,
    /// `(ok, selected)` per kind.
    pub by_kind: BTreeMap<String, (usize, usize)>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub os: String,
    pub arch: String,
    pub parallelism: usize,
    pub case_timeout_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.ok == self.summary.selected
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    /// One line per case and a summary line.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.cases {
            let tag = match c.verdict {
                Verdict::Ok => "ok",
                Verdict::Mismatch => "FAIL",
                Verdict::Error => "ERROR",
            };
            let _ = write!(s, "{tag:<5} {:<width$}  {:<19} {:>6} ms", c.id, c.kind, c.elapsed_ms);
            match (&c.verdict, &c.outcome) {
                (Verdict::Ok, _) => {}
                (_, Outcome::Pass) => {
                    let _ = write!(s, "  expected {}, got pass", fmt_expected(&c.expected));
                }
                (_, Outcome::Fail { witness }) => {
                    let _ = write!(s, "  expected {}, got witness {witness}", fmt_expected(&c.expected));
                }
                (_, Outcome::Error { message, .. }) => {
                    let _ = write!(s, "  {message}");
                }
            }
            s.push('\n');
        }
        let sm = &self.summary;
        let _ = writeln!(
            s,
            "{} cases: {} ok, {} failed, {} errors",
            sm.selected, sm.ok, sm.mismatched, sm.errors
        );
        s
    }
}

fn fmt_expected(e: &Expected) -> String {
    match e {
        Expected::Pass => "pass".into(),
        Expected::FailWithWitness(w) => format!("witness {w}"),
    }
}

/// Runs the selected cases on up to `parallelism` threads. Results keep
/// corpus order; each case gets its own deadline (30 s unless given).
pub fn run_corpus(
    cases: &[CorpusCase],
    filter: &CaseFilter,
    parallelism: usize,
    timeout: Option<Duration>,
) -> VerificationReport {
    let timeout = timeout.unwrap_or(DEFAULT_CASE_TIMEOUT);
    let parallelism = parallelism.max(1);
    let selected: Vec<&CorpusCase> = cases.iter().filter(|c| filter.matches(c)).collect();
    let run = || -> Vec<CaseResult> { selected.par_iter().map(|c| run_case(c, timeout)).collect() };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(parallelism).build() {
        Ok(pool) => pool.install(run),
        Err(_) => selected.iter().map(|c| run_case(c, timeout)).collect(),
    };
    let mut summary = Summary {
        selected: results.len(),
        ..Summary::default()
    };
    for r in &results {
        let e = summary.by_kind.entry(r.kind.clone()).or_insert((0, 0));
        e.1 += 1;
        match r.verdict {
            Verdict::Ok => {
                summary.ok += 1;
                e.0 += 1;
            }
            Verdict::Mismatch => summary.mismatched += 1,
            Verdict::Error => summary.errors += 1,
        }
        if r.verdict != Verdict::Ok {
            summary.failures.push(r.id.clone());
        }
    }
    VerificationReport {
        cases: results,
        summary,
        environment: Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            parallelism,
            case_timeout_ms: timeout.as_millis() as u64,
        },
    }
}

/// Evaluates one case under its own deadline.
pub fn run_case(case: &CorpusCase, timeout: Duration) -> CaseResult {
    let start = Instant::now();
    let outcome = match budget::scoped(Budget::with_timeout(timeout), || evaluate(case)) {
        Ok(o) => o,
        Err(e) => Outcome::Error {
            resource: e.exit_code() == 3,
            message: e.to_string(),
        },
    };
    let verdict = match (&outcome, &case.expected) {
        (Outcome::Error { .. }, _) => Verdict::Error,
        (Outcome::Pass, Expected::Pass) => Verdict::Ok,
        (Outcome::Fail { witness }, Expected::FailWithWitness(w)) if witness == w => Verdict::Ok,
        _ => Verdict::Mismatch,
    };
    CaseResult {
        id: case.id.clone(),
        kind: case.input.kind().to_string(),
        expected: case.expected.clone(),
        outcome,
        verdict,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn missing(field: &str) -> Error {
    Error::InvalidArgument(format!("case needs `{field}`"))
}

fn fmt_mono(m: &Monomial, names: &[String]) -> String {
    let mut s = String::new();
    fmt_monomial(&mut s, m, names).expect("string write");
    s
}

/// Minimal generators in descending term order, as the script prints them.
fn fmt_mono_ideal(i: &MonomialIdeal, ring: &Arc<PolyRing>) -> Result<String> {
    let ideal = i.to_ideal(ring)?;
    let gens: Vec<String> = ideal.groebner()?.generators().iter().map(|g| g.to_string()).collect();
    Ok(format!("({})", gens.join(", ")))
}

fn verdict(witness: Option<String>) -> Outcome {
    match witness {
        None => Outcome::Pass,
        Some(witness) => Outcome::Fail { witness },
    }
}

fn exponent(text: Option<&String>, field: &str) -> Result<FormalExponent> {
    FormalExponent::new(eval_rational(text.ok_or_else(|| missing(field))?)?)
}

fn mono_ideal(ring: &Arc<PolyRing>, text: &str) -> Result<MonomialIdeal> {
    MonomialIdeal::from_ideal(&eval_ideal(ring, text)?)
}

fn single_monomial(ring: &Arc<PolyRing>, text: &str) -> Result<Monomial> {
    let m = mono_ideal(ring, text)?;
    match m.generators() {
        [g] => Ok(g.clone()),
        _ => Err(Error::InvalidArgument(format!("`{text}` is not a single monomial"))),
    }
}

fn evaluate(case: &CorpusCase) -> Result<Outcome> {
    let ring = crate::script::parse_ring(&case.ring)?;
    let names = ring.vars().to_vec();
    match &case.input {
        CaseInput::SncProperty {
            property,
            f,
            g,
            t,
            t2,
            s,
            n,
        } => {
            let model = MixedModel::new(ring.clone(), 2)?;
            let snc = |text: &str| SncMonomial::from_polynomial(&model, &eval_poly(&ring, text)?);
            let f = snc(f)?;
            let prop = match property {
                PropertyName::Containment => SncProperty::Containment {
                    g: snc(g.as_ref().ok_or_else(|| missing("g"))?)?,
                    f,
                    t: exponent(t.as_ref(), "t")?,
                },
                PropertyName::ExponentMonotone => SncProperty::ExponentMonotone {
                    f,
                    t: exponent(t.as_ref(), "t")?,
                    t2: exponent(t2.as_ref(), "t2")?,
                },
                PropertyName::Unambiguity => SncProperty::Unambiguity {
                    f,
                    n: n.ok_or_else(|| missing("n"))?,
                    t: exponent(t.as_ref(), "t")?,
                },
                PropertyName::NotTooSmall => SncProperty::NotTooSmall { f },
                PropertyName::Subadditivity => SncProperty::Subadditivity {
                    f,
                    s: exponent(s.as_ref(), "s")?,
                    t: exponent(t.as_ref(), "t")?,
                },
            };
            let rep = verify_property(&prop)?;
            Ok(verdict(rep.witness.map(|w| fmt_mono(&w, &names))))
        }
        CaseInput::MonomialMultiplier { check, ideal, t, value } => match check {
            MultiplierCheck::SncComparison | MultiplierCheck::RightContinuity => {
                let model = MixedModel::new(ring.clone(), 2)?;
                let f = SncMonomial::from_polynomial(&model, &eval_poly(&ring, ideal)?)?;
                let t = exponent(t.as_ref(), "t")?;
                if *check == MultiplierCheck::RightContinuity {
                    return Ok(if check_right_continuity(&f, &t)? {
                        Outcome::Pass
                    } else {
                        Outcome::Fail {
                            witness: fmt_mono(&f.monomial(), &names),
                        }
                    });
                }
                let rep = compare_with_multiplier(&f, &t)?;
                Ok(verdict(rep.witness.map(|w| fmt_mono(&w, &names[1..]))))
            }
            MultiplierCheck::Multiplier | MultiplierCheck::Closure => {
                let m = mono_ideal(&ring, ideal)?;
                let got = if *check == MultiplierCheck::Closure {
                    integral_closure(&m)?
                } else {
                    multiplier_ideal_monomial(&m, &eval_rational(t.as_ref().ok_or_else(|| missing("t"))?)?)?
                };
                let want = mono_ideal(&ring, value.as_ref().ok_or_else(|| missing("value"))?)?;
                Ok(if got == want {
                    Outcome::Pass
                } else {
                    Outcome::Fail {
                        witness: fmt_mono_ideal(&got, &ring)?,
                    }
                })
            }
        },
        CaseInput::MainTheorem {
            ideal,
            m,
            symbolic,
            prime_height,
            witness,
            exact,
        } => {
            let mut i = eval_ideal(&ring, ideal)?;
            if let Some(h) = prime_height {
                i = i.assert_prime(Some(*h));
            }
            let s = witness.as_ref().map(|w| eval_poly(&ring, w)).transpose()?;
            let Some(k) = symbolic else {
                let opts = MainTheoremOptions {
                    witness: s,
                    exact: *exact,
                    allow_inexact: false,
                };
                return Ok(verdict(check_main_theorem(&i, *m, &opts)?.witness));
            };
            let sym = match squarefree_monomial(&i)? {
                Some(mono) => symbolic_power_monomial(&mono, *k)?.to_ideal(&ring)?,
                None => symbolic_power_prime(&i, *k, s.as_ref().ok_or_else(|| missing("witness"))?, *exact)?.ideal,
            };
            let pow = i.power(*m)?;
            let gb = pow.groebner()?;
            for g in sym.groebner()?.generators() {
                if !gb.membership(g)? {
                    return Ok(Outcome::Fail { witness: g.to_string() });
                }
            }
            Ok(Outcome::Pass)
        }
        CaseInput::Blowup {
            check,
            ideal,
            d,
            f,
            charts,
            value,
        } => {
            if *check == BlowupCheck::Kcanonical {
                let d = d.ok_or_else(|| missing("d"))?;
                let k = relative_canonical_maxideal(d)?;
                return Ok(if k as usize + 1 == d {
                    Outcome::Pass
                } else {
                    Outcome::Fail {
                        witness: format!("{k}*E"),
                    }
                });
            }
            let ideal = ideal.as_ref().ok_or_else(|| missing("ideal"))?;
            if *check == BlowupCheck::IntegralChart {
                let j = mono_ideal(&ring, ideal)?;
                let f_text = f.as_ref().ok_or_else(|| missing("f"))?;
                let fm = single_monomial(&ring, f_text)?;
                return Ok(match integral_extension_chart(&ring, &j, &fm) {
                    Ok(eq) if eq.verified() => Outcome::Pass,
                    Ok(eq) => Outcome::Fail {
                        witness: format!("chart {}", eq.charts.iter().find(|c| !c.verified).map_or(0, |c| c.chart)),
                    },
                    Err(Error::NotIntegral(_)) => Outcome::Fail {
                        witness: fmt_mono(&fm, &names),
                    },
                    Err(e) => return Err(e),
                });
            }
            let rees = rees_presentation(&eval_ideal(&ring, ideal)?)?;
            let equal_to = |target: &Arc<PolyRing>, have: &Ideal| -> Result<bool> {
                match value {
                    None => Ok(true),
                    Some(v) => have.equals(&eval_ideal(target, v)?),
                }
            };
            let failure = match check {
                BlowupCheck::Rees => {
                    let have = Ideal::new(rees.ring(), rees.presentation().generators().to_vec())?;
                    if !rees.is_t_homogeneous() {
                        Some("not homogeneous in T")
                    } else if !rees.substitution_check()? {
                        Some("substitution")
                    } else if !rees.matches_kernel()? {
                        Some("kernel")
                    } else if !equal_to(rees.ring(), &have)? {
                        Some("value")
                    } else {
                        None
                    }
                }
                BlowupCheck::Chart => {
                    let c = rees.chart(*charts.first().ok_or_else(|| missing("charts"))?)?;
                    let have = Ideal::new(c.ring(), c.presentation().generators().to_vec())?;
                    if !c.relations_hold()? {
                        Some("relations")
                    } else if !equal_to(c.ring(), &have)? {
                        Some("value")
                    } else {
                        None
                    }
                }
                BlowupCheck::Glue => {
                    let [i, j] = charts[..] else {
                        return Err(missing("charts (two indices)"));
                    };
                    (!rees.charts_glue(i, j)?).then_some("glue")
                }
                BlowupCheck::Kcanonical | BlowupCheck::IntegralChart => unreachable!("handled above"),
            };
            Ok(verdict(failure.map(String::from)))
        }
        CaseInput::Asymptotic {
            check,
            ideal,
            sequence,
            oracle,
            n,
            m,
            l_star,
        } => {
            let mono = mono_ideal(&ring, ideal)?;
            if *check == AsymptoticCheck::Pipeline {
                let rep = main_theorem_pipeline(&ring, &mono, m.ok_or_else(|| missing("m"))?)?;
                let bad = rep.links.iter().find(|l| !l.passed);
                return Ok(match (bad, rep.endpoint_agrees) {
                    (Some(l), _) => Outcome::Fail {
                        witness: l.witness.clone().unwrap_or_else(|| l.statement.clone()),
                    },
                    (None, false) => Outcome::Fail {
                        witness: "endpoint disagrees".into(),
                    },
                    (None, true) => Outcome::Pass,
                });
            }
            let seq = match sequence {
                SequenceKind::Powers => GradedSequence::powers(mono),
                SequenceKind::Symbolic => GradedSequence::symbolic_powers(mono)?,
            };
            let oracle = match oracle {
                OracleKind::Multiplier => Oracle::Multiplier,
                OracleKind::Snc => Oracle::SncTest,
            };
            let n = n.unwrap_or(1);
            match check {
                AsymptoticCheck::Stabilization => {
                    let a = asymptotic_ideal(&seq, n, oracle)?;
                    // the level itself lies in its asymptotic ideal
                    if let Some(w) = a.ideal.first_missing(&seq.level(n)?) {
                        return Ok(Outcome::Fail {
                            witness: fmt_mono(w, &names),
                        });
                    }
                    Ok(match l_star {
                        Some(l) if *l != a.l_star => Outcome::Fail {
                            witness: format!("l* = {}", a.l_star),
                        },
                        _ => Outcome::Pass,
                    })
                }
                AsymptoticCheck::Subadditivity => {
                    let rep = verify_asymptotic_subadditivity(&seq, n, m.ok_or_else(|| missing("m"))?, oracle)?;
                    Ok(verdict(rep.witness.map(|w| fmt_mono(&w, &names))))
                }
                AsymptoticCheck::GeneratingSets => {
                    let sets = build_generating_sets(&seq, n)?;
                    for k in 1..=n {
                        if sets.ideal(k) != seq.level(k)? {
                            return Ok(Outcome::Fail {
                                witness: format!("level {k}"),
                            });
                        }
                    }
                    Ok(Outcome::Pass)
                }
                AsymptoticCheck::Pipeline => unreachable!("handled above"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_serialization_round_trip() {
        let line = r#"{"id":"c1","ring":"Q[x,y,z]","kind":"main-theorem","ideal":"x*y, x*z, y*z","m":2,"symbolic":2,"expected":{"fail-with-witness":"x*y*z"}}"#;
        let cases = parse_corpus(line).unwrap();
        assert_eq!(cases[0].input.kind(), "main-theorem");
        let back = serde_json::to_string(&cases[0]).unwrap();
        assert_eq!(parse_corpus(&back).unwrap(), cases);
    }

    #[test]
    fn duplicate_ids_and_bad_lines() {
        let line = r#"{"id":"a","ring":"Q[p,x]","kind":"snc-property","property":"C-not-too-small","f":"p*x","expected":"pass"}"#;
        assert!(parse_corpus(&format!("{line}\n{line}")).is_err());
        let err = parse_corpus(&format!("{line}\n\n{{oops")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn filters() {
        let cases = golden_corpus().unwrap();
        let f = CaseFilter::parse("snc-B-*").unwrap();
        assert!(cases.iter().filter(|c| f.matches(c)).count() >= 5);
        assert!(matches!(CaseFilter::parse("main-theorem").unwrap(), CaseFilter::Kind(_)));
        assert!(CaseFilter::parse("kind=nope").is_err());
    }

    #[test]
    fn sharpness_witness() {
        let line = r#"{"id":"s","ring":"Q[x,y,z]","kind":"main-theorem","ideal":"x*y, x*z, y*z","m":2,"symbolic":2,"expected":{"fail-with-witness":"x*y*z"}}"#;
        let r = run_corpus(&parse_corpus(line).unwrap(), &CaseFilter::All, 1, None);
        assert!(r.all_passed(), "{}", r.table());
    }

    #[test]
    fn mismatch_is_reported() {
        let line = r#"{"id":"m","ring":"Q[x,y]","kind":"monomial-multiplier","check":"closure","ideal":"x^2, y^2","value":"x^2, y^2","expected":"pass"}"#;
        let r = run_corpus(&parse_corpus(line).unwrap(), &CaseFilter::All, 1, None);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(
            r.cases[0].outcome,
            Outcome::Fail {
                witness: "(x^2, x*y, y^2)".into()
            }
        );
        assert!(r.table().contains("FAIL"));
    }

    #[test]
    fn golden_corpus_passes() {
        let r = run_corpus(&golden_corpus().unwrap(), &CaseFilter::All, 4, None);
        assert!(r.all_passed(), "{}", r.table());
        for kind in KINDS {
            assert!(r.summary.by_kind[kind].1 >= 5, "{kind}");
        }
    }

    #[test]
    fn random_cases_are_reproducible_and_pass() {
        let counts = RandomCounts::uniform(10);
        let a = generate_random_cases(1, &counts);
        assert_eq!(a, generate_random_cases(1, &counts));
        assert_eq!(a.len(), 50);
        assert!(generate_random_cases(1, &RandomCounts::default()).is_empty());
        let text: Vec<String> = a.iter().map(|c| serde_json::to_string(c).unwrap()).collect();
        assert_eq!(parse_corpus(&text.join("\n")).unwrap(), a);
        let r = run_corpus(&a, &CaseFilter::All, 4, None);
        assert!(r.all_passed(), "{}", r.table());
    }

    #[test]
    fn empty_selection() {
        let r = run_corpus(&golden_corpus().unwrap(), &CaseFilter::parse("nothing-*").unwrap(), 2, None);
        assert_eq!(r.summary.selected, 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn timeouts_are_per_case_errors() {
        let line = r#"{"id":"slow","ring":"Q[x,y,z,w]","kind":"main-theorem","ideal":"x^3 - y*z*w + x*y, y^3 - x*z*w + z, z^3 - w*x*y","m":3,"prime_height":2,"witness":"w","exact":true,"expected":"pass"}"#;
        let r = run_corpus(&parse_corpus(line).unwrap(), &CaseFilter::All, 1, Some(Duration::from_millis(50)));
        assert_eq!(r.cases[0].verdict, Verdict::Error);
        assert!(matches!(r.cases[0].outcome, Outcome::Error { resource: true, .. }));
    }
}
