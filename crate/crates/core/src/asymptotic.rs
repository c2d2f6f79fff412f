//! Graded sequences of monomial ideals, their product-closed generating
//! sets, asymptotic multiplier ideals and the containment chain ending in
//! `I^(hm) ⊆ I^m`.
//!
//! The asymptotic ideal at level `n` is the stable value of
//! `oracle(a_{ln}, 1/l)` over `l = 1, 2, 4, ...`. The multiplier oracle is a
//! computable upper bound for the test ideal, and satisfies the same formal
//! chain, so every oracle link is labelled as such in reports.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{big_height, fmt_monomial, multiplier_ideal_monomial, MonomialIdeal};
use crate::poly::{Monomial, PolyRing};
use crate::sympow::{check_main_theorem, symbolic_power_monomial, MainTheoremOptions};

pub const MAX_GENERATING_LEVEL: u32 = 12;
pub const MAX_STABILIZATION: u32 = 64;
const MAX_ENTRIES: usize = 1_000_000;

/// A serializable description of a graded sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "sequence", rename_all = "kebab-case")]
pub enum SequenceSpec {
    /// `a_n = M^n`.
    Powers { ideal: MonomialIdeal },
    /// `a_n = M^(n)` for squarefree `M`.
    SymbolicPowers { ideal: MonomialIdeal },
    /// `a_n = (1)`.
    Trivial { nvars: usize },
}

type Evaluator = Arc<dyn Fn(u32) -> Result<MonomialIdeal> + Send + Sync>;

/// A graded sequence `a_0 = (1), a_1, a_2, ...` with `a_s a_t ⊆ a_{s+t}`,
/// evaluated lazily. Levels are cached; concurrent evaluation of the same
/// level is harmless since evaluation is deterministic.
pub struct GradedSequence {
    nvars: usize,
    name: String,
    eval: Evaluator,
    cache: Mutex<BTreeMap<u32, MonomialIdeal>>,
}

impl fmt::Debug for GradedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSequence")
            .field("nvars", &self.nvars)
            .field("name", &self.name)
            .finish()
    }
}

impl GradedSequence {
    pub fn custom(
        nvars: usize,
        name: impl Into<String>,
        eval: impl Fn(u32) -> Result<MonomialIdeal> + Send + Sync + 'static,
    ) -> Self {
        GradedSequence {
            nvars,
            name: name.into(),
            eval: Arc::new(eval),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn from_spec(spec: &SequenceSpec) -> Result<Self> {
        Ok(match spec {
            SequenceSpec::Powers { ideal } => Self::powers(ideal.clone()),
            SequenceSpec::SymbolicPowers { ideal } => Self::symbolic_powers(ideal.clone())?,
            SequenceSpec::Trivial { nvars } => Self::trivial(*nvars),
        })
    }

    pub fn powers(m: MonomialIdeal) -> Self {
        let name = format!("powers of {m}");
        Self::custom(m.nvars(), name, move |n| Ok(m.power(n)))
    }

    pub fn symbolic_powers(m: MonomialIdeal) -> Result<Self> {
        if !m.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let name = format!("symbolic powers of {m}");
        Ok(Self::custom(m.nvars(), name, move |n| symbolic_power_monomial(&m, n)))
    }

    pub fn trivial(nvars: usize) -> Self {
        Self::custom(nvars, "unit sequence", move |_| Ok(MonomialIdeal::unit(nvars)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level(&self, n: u32) -> Result<MonomialIdeal> {
        if n == 0 {
            return Ok(MonomialIdeal::unit(self.nvars));
        }
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(hit.clone());
        }
        crate::budget::check_deadline()?;
        let value = (self.eval)(n)?;
        if value.nvars() != self.nvars {
            return Err(Error::RingMismatch);
        }
        self.cache.lock().expect("cache lock").insert(n, value.clone());
        Ok(value)
    }

    /// Checks `a_s a_t ⊆ a_{s+t}`.
    pub fn check_axiom(&self, s: u32, t: u32) -> Result<()> {
        let prod = self.level(s)?.product(&self.level(t)?)?;
        if self.level(s + t)?.contains(&prod) {
            Ok(())
        } else {
            Err(Error::AxiomViolation { s, t })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// A minimal generator of its level that is not a product of lower ones.
    Fresh,
    /// Entry `i` of level `s` times entry `j` of level `t`.
    Product { s: u32, i: usize, t: u32, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub monomial: Monomial,
    pub provenance: Provenance,
}

/// Generating sets of levels `1..=N`; each level contains every product of
/// entries from levels `s + t = m`, duplicates included.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratingSets {
    nvars: usize,
    levels: Vec<Vec<GeneratorEntry>>,
}

impl GeneratingSets {
    pub fn up_to(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn level(&self, m: u32) -> &[GeneratorEntry] {
        &self.levels[m as usize - 1]
    }

    /// The ideal generated by the entries of level `m`.
    pub fn ideal(&self, m: u32) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.level(m).iter().map(|e| e.monomial.clone())).expect("arity")
    }
}

pub fn build_generating_sets(seq: &GradedSequence, up_to: u32) -> Result<GeneratingSets> {
    build_generating_sets_with(seq, up_to, |_, _| {})
}

/// As [`build_generating_sets`], letting `order_fresh(m, gens)` reorder the
/// fresh generators of each level before they are numbered.
pub fn build_generating_sets_with(
    seq: &GradedSequence,
    up_to: u32,
    mut order_fresh: impl FnMut(u32, &mut Vec<Monomial>),
) -> Result<GeneratingSets> {
    if up_to > MAX_GENERATING_LEVEL {
        return Err(Error::ResourceLimit(format!(
            "generating sets beyond level {MAX_GENERATING_LEVEL}"
        )));
    }
    let mut levels: Vec<Vec<GeneratorEntry>> = Vec::new();
    let mut total = 0usize;
    for m in 1..=up_to {
        let target = seq.level(m)?;
        let mut entries = Vec::new();
        for s in 1..=m / 2 {
            let t = m - s;
            seq.check_axiom(s, t)?;
            let (ls, lt) = (&levels[s as usize - 1], &levels[t as usize - 1]);
            total += ls.len() * lt.len();
            if total > MAX_ENTRIES {
                return Err(Error::ResourceLimit(format!(
                    "generating sets exceed {MAX_ENTRIES} entries at level {m}"
                )));
            }
            for (i, a) in ls.iter().enumerate() {
                for (j, b) in lt.iter().enumerate() {
                    entries.push(GeneratorEntry {
                        monomial: a.monomial.mul(&b.monomial),
                        provenance: Provenance::Product { s, i, t, j },
                    });
                }
            }
        }
        let products: HashSet<&Monomial> = entries.iter().map(|e| &e.monomial).collect();
        let mut fresh: Vec<Monomial> = target
            .generators()
            .iter()
            .filter(|g| !products.contains(g))
            .cloned()
            .collect();
        order_fresh(m, &mut fresh);
        total += fresh.len();
        entries.extend(fresh.into_iter().map(|g| GeneratorEntry {
            monomial: g,
            provenance: Provenance::Fresh,
        }));
        levels.push(entries);
    }
    Ok(GeneratingSets {
        nvars: seq.nvars(),
        levels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    /// `J(a^t)` by Howald's lattice-point description.
    Multiplier,
    /// The SNC closed form; levels must be principal, first variable `p`.
    SncTest,
}

/// `oracle(a_k, 1/l)`.
pub fn oracle_value(a: &MonomialIdeal, l: u32, oracle: Oracle) -> Result<MonomialIdeal> {
    let t = BigRational::new(BigInt::from(1), BigInt::from(l));
    match oracle {
        Oracle::Multiplier => multiplier_ideal_monomial(a, &t),
        Oracle::SncTest => {
            if a.is_zero() {
                return Ok(a.clone());
            }
            if !a.is_principal() {
                return Err(Error::InvalidArgument(format!(
                    "the SNC oracle needs a principal monomial, got {a}"
                )));
            }
            let g = &a.generators()[0];
            Ok(MonomialIdeal::principal(Monomial::from_exponents(
                g.exponents().iter().map(|&e| e / l),
            )))
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AsymptoticIdeal {
    pub n: u32,
    pub ideal: MonomialIdeal,
    /// Least `l` in the schedule with `value(l) = value(2l)`.
    pub l_star: u32,
    /// The values computed along the schedule.
    pub values: Vec<(u32, MonomialIdeal)>,
}

pub fn asymptotic_ideal(seq: &GradedSequence, n: u32, oracle: Oracle) -> Result<AsymptoticIdeal> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let mut l = 1u32;
    let mut prev = oracle_value(&seq.level(n)?, 1, oracle)?;
    let mut values = vec![(1, prev.clone())];
    while 2 * l <= MAX_STABILIZATION {
        let next = oracle_value(&seq.level(2 * l * n)?, 2 * l, oracle)?;
        values.push((2 * l, next.clone()));
        if next == prev {
            return Ok(AsymptoticIdeal {
                n,
                ideal: prev,
                l_star: l,
                values,
            });
        }
        prev = next;
        l *= 2;
    }
    Err(Error::NoStabilization {
        n,
        max_l: MAX_STABILIZATION,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub passed: bool,
    pub lhs: MonomialIdeal,
    pub rhs: MonomialIdeal,
    /// A generator of `lhs` outside `rhs`.
    pub witness: Option<Monomial>,
}

impl ContainmentReport {
    fn new(lhs: MonomialIdeal, rhs: MonomialIdeal) -> Self {
        let witness = rhs.first_missing(&lhs).cloned();
        ContainmentReport {
            passed: witness.is_none(),
            lhs,
            rhs,
            witness,
        }
    }
}

/// `J∞(a_{mn}) ⊆ J∞(a_n)^m`.
pub fn verify_asymptotic_subadditivity(
    seq: &GradedSequence,
    n: u32,
    m: u32,
    oracle: Oracle,
) -> Result<ContainmentReport> {
    let big = asymptotic_ideal(seq, m * n, oracle)?;
    let small = asymptotic_ideal(seq, n, oracle)?;
    Ok(ContainmentReport::new(big.ideal, small.ideal.power(m)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkLevel {
    /// Checked with the multiplier oracle standing in for the test ideal.
    OracleLevel,
    /// Checked exactly on the ideals themselves.
    EndpointExact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkReport {
    pub statement: String,
    pub level: LinkLevel,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineReport {
    pub h: u32,
    pub m: u32,
    pub links: Vec<LinkReport>,
    /// Whether the endpoint matches the direct symbolic-power check.
    pub endpoint_agrees: bool,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.endpoint_agrees && self.links.iter().all(|l| l.passed)
    }
}

/// Verifies, for squarefree `I` of big height `h`,
///
/// ```text
/// I^(hm) ⊆ J(I^(hm)) ⊆ J∞(hm) ⊆ J∞(h)^m ⊆ I^m
/// ```
///
/// link by link, the last through `J∞(h) ⊆ I`, and then the endpoint
/// `I^(hm) ⊆ I^m` directly by Gröbner containment.
pub fn main_theorem_pipeline(ring: &Arc<PolyRing>, ideal: &MonomialIdeal, m: u32) -> Result<PipelineReport> {
    if ring.nvars() != ideal.nvars() {
        return Err(Error::RingMismatch);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let h = big_height(ideal)?;
    let names = ring.vars();
    let show = |g: &Monomial| {
        let mut s = String::new();
        fmt_monomial(&mut s, g, names).expect("string write");
        s
    };
    let link = |statement: String, report: ContainmentReport| LinkReport {
        statement,
        level: LinkLevel::OracleLevel,
        passed: report.passed,
        witness: report.witness.as_ref().map(show),
    };
    let seq = GradedSequence::symbolic_powers(ideal.clone())?;
    let a_hm = seq.level(h * m)?;
    let j_hm = oracle_value(&a_hm, 1, Oracle::Multiplier)?;
    let inf_hm = asymptotic_ideal(&seq, h * m, Oracle::Multiplier)?;
    let inf_h = asymptotic_ideal(&seq, h, Oracle::Multiplier)?;
    let hm = h * m;
    let mut links = vec![
        link(format!("I^({hm}) ⊆ J(I^({hm}))"), ContainmentReport::new(a_hm.clone(), j_hm.clone())),
        link(format!("J(I^({hm})) ⊆ J∞({hm})"), ContainmentReport::new(j_hm, inf_hm.ideal.clone())),
        link(
            format!("J∞({hm}) ⊆ J∞({h})^{m}"),
            ContainmentReport::new(inf_hm.ideal, inf_h.ideal.power(m)),
        ),
        link(format!("J∞({h}) ⊆ I"), ContainmentReport::new(inf_h.ideal, ideal.clone())),
    ];

    let sym = a_hm.to_ideal(ring)?;
    let base = ideal.to_ideal(ring)?;
    let pow: Ideal = base.power(m)?;
    let gb = pow.groebner()?;
    let mut witness = None;
    for g in sym.generators() {
        if !gb.membership(g)? {
            witness = Some(g.to_string());
            break;
        }
    }
    let endpoint_holds = witness.is_none();
    links.push(LinkReport {
        statement: format!("I^({hm}) ⊆ I^{m}"),
        level: LinkLevel::EndpointExact,
        passed: endpoint_holds,
        witness,
    });
    let direct = check_main_theorem(&base, m, &MainTheoremOptions::default())?;
    Ok(PipelineReport {
        h,
        m,
        links,
        endpoint_agrees: direct.holds == endpoint_holds && direct.h == h,
    })
}
