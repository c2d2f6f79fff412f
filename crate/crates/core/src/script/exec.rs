use std::collections::HashMap;
use std::sync::Arc;
use std::time::Duration;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value as Json};

use super::parser::{BinOp, Expr, Script, Stmt};
use crate::asymptotic::{asymptotic_ideal, main_theorem_pipeline, GradedSequence, LinkLevel, Oracle};
use crate::blowup::{rees_presentation, relative_canonical_maxideal};
use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::monomial::{big_height, height, integral_closure, minimal_primes_squarefree, multiplier_ideal_monomial, MonomialIdeal};
use crate::poly::{Coeff, PolyRing, Polynomial};
use crate::snc::{snc_test_ideal, FormalExponent, MixedModel, SncMonomial};
use crate::sympow::{squarefree_monomial, symbolic_power_monomial, symbolic_power_prime, Certainty};
use crate::verify::{generate_random_cases, golden_corpus, run_corpus, CaseFilter, RandomCounts};

#[derive(Debug, Clone)]
pub struct ExecOptions {
    pub timeout: Option<Duration>,
    pub seed: u64,
    pub parallel: usize,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            timeout: None,
            seed: 0,
            parallel: 1,
        }
    }
}

/// Outcome of running a script: printed lines, one JSON record per command
/// and the process exit code.
#[derive(Debug, Clone, Default)]
pub struct Execution {
    pub exit_code: i32,
    pub lines: Vec<String>,
    pub records: Vec<Json>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
enum Value {
    Num(BigRational),
    Poly(Polynomial),
    Ideal(Ideal),
}

struct Env {
    ring: Option<Arc<PolyRing>>,
    names: HashMap<String, Value>,
    opts: ExecOptions,
}

struct Output {
    lines: Vec<String>,
    data: Json,
    failed: bool,
}

impl Output {
    fn lines(lines: Vec<String>) -> Self {
        Output {
            lines,
            data: Json::Null,
            failed: false,
        }
    }

    fn line(s: String) -> Self {
        Self::lines(vec![s])
    }

    fn with(mut self, data: Json) -> Self {
        self.data = data;
        self
    }
}

pub fn execute(script: &Script, opts: &ExecOptions) -> Execution {
    let mut env = Env {
        ring: None,
        names: HashMap::new(),
        opts: opts.clone(),
    };
    let mut exec = Execution::default();
    for stmt in &script.statements {
        let budget = match opts.timeout {
            Some(t) => Budget::with_timeout(t),
            None => Budget::default(),
        };
        let result = budget::scoped(budget, || env.run(stmt));
        match result {
            Ok(Some((name, out))) => {
                exec.lines.extend(out.lines.iter().cloned());
                exec.records.push(json!({
                    "command": name,
                    "output": out.lines,
                    "data": out.data,
                }));
                if out.failed {
                    exec.exit_code = 1;
                }
            }
            Ok(None) => {}
            Err(e) => {
                let context = match stmt {
                    Stmt::Command { name, pos, .. } => format!("{name} (line {})", pos.line),
                    Stmt::Ideal { name, pos, .. } | Stmt::Poly { name, pos, .. } => {
                        format!("binding {name} (line {})", pos.line)
                    }
                    Stmt::Ring(_, pos) => format!("ring (line {})", pos.line),
                };
                let msg = format!("{context}: {e}");
                exec.records.push(json!({ "error": msg }));
                exec.error = Some(msg);
                exec.exit_code = e.exit_code();
                break;
            }
        }
    }
    exec
}

fn bare_env(ring: Option<&Arc<PolyRing>>) -> Env {
    Env {
        ring: ring.cloned(),
        names: HashMap::new(),
        opts: ExecOptions::default(),
    }
}

pub(super) fn eval_ideal_in(ring: &Arc<PolyRing>, e: &Expr) -> Result<Ideal> {
    bare_env(Some(ring)).eval_ideal(e)
}

pub(super) fn eval_poly_in(ring: &Arc<PolyRing>, e: &Expr) -> Result<Polynomial> {
    bare_env(Some(ring)).eval_poly(e)
}

pub(super) fn eval_rational_in(e: &Expr) -> Result<BigRational> {
    bare_env(None).eval_rational(e)
}

fn type_error(what: &str, e: &Expr) -> Error {
    Error::Type(format!("expected {what} at line {}, column {}", e.pos().line, e.pos().column))
}

/// Reassembles `a-b-c` parsed as a subtraction of names.
fn word(e: &Expr) -> Option<String> {
    match e {
        Expr::Name(n, _) => Some(n.clone()),
        Expr::Bin(BinOp::Sub, a, b, _) => Some(format!("{}-{}", word(a)?, word(b)?)),
        _ => None,
    }
}

fn fmt_gens(gens: &[Polynomial], open: char, close: char) -> String {
    let body: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    if body.is_empty() {
        format!("{open}{}{close}", if open == '(' { "0" } else { "" })
    } else {
        format!("{open}{}{close}", body.join(", "))
    }
}

fn fmt_ideal(i: &Ideal) -> Result<String> {
    Ok(fmt_gens(i.groebner()?.generators(), '(', ')'))
}

fn fmt_basis(gb: &GroebnerBasis) -> String {
    fmt_gens(gb.generators(), '{', '}')
}

impl Env {
    fn ring(&self) -> Result<&Arc<PolyRing>> {
        self.ring.as_ref().ok_or(Error::NoRing)
    }

    fn run(&mut self, stmt: &Stmt) -> Result<Option<(String, Output)>> {
        match stmt {
            Stmt::Ring(decl, _) => {
                self.ring = Some(PolyRing::new(decl.vars.clone(), decl.domain, decl.order)?);
                Ok(None)
            }
            Stmt::Ideal {
                name,
                generators,
                prime,
                ..
            } => {
                let ring = self.ring()?.clone();
                let mut gens = Vec::new();
                for g in generators {
                    match self.eval(g)? {
                        Value::Ideal(i) => gens.extend(i.generators().iter().cloned()),
                        v => gens.push(self.to_poly(v)?),
                    }
                }
                let mut ideal = Ideal::new(&ring, gens)?;
                if let Some(h) = prime {
                    ideal = ideal.assert_prime(*h);
                }
                self.names.insert(name.clone(), Value::Ideal(ideal));
                Ok(None)
            }
            Stmt::Poly { name, expr, .. } => {
                let v = self.eval(expr)?;
                let p = self.to_poly(v)?;
                self.names.insert(name.clone(), Value::Poly(p));
                Ok(None)
            }
            Stmt::Command { name, args, .. } => Ok(Some((name.clone(), self.command(name, args)?))),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        Ok(match e {
            Expr::Num(n, _) => Value::Num(BigRational::from_integer(n.clone())),
            Expr::Name(n, _) => {
                if let Some(v) = self.names.get(n) {
                    v.clone()
                } else if let Some(ring) = &self.ring {
                    match ring.var_index(n) {
                        Some(k) => Value::Poly(ring.var(k)),
                        None if n.chars().next().is_some_and(|c| c.is_uppercase()) => {
                            return Err(Error::UnboundName(n.clone()))
                        }
                        None => return Err(Error::UnknownVariable(n.clone())),
                    }
                } else {
                    return Err(Error::NoRing);
                }
            }
            Expr::Neg(a, _) => match self.eval(a)? {
                Value::Num(x) => Value::Num(-x),
                Value::Poly(p) => Value::Poly(-&p),
                Value::Ideal(_) => return Err(type_error("a polynomial", a)),
            },
            Expr::Bin(op, a, b, _) => self.binary(op, a, b)?,
            Expr::Pow(a, n, _) => match self.eval(a)? {
                Value::Num(x) => Value::Num(num_traits::pow(x, *n as usize)),
                Value::Poly(p) => Value::Poly(p.pow(*n)?),
                Value::Ideal(i) => Value::Ideal(i.power(*n)?),
            },
            Expr::SymPow(a, n, _) => {
                let i = self.eval_ideal(a)?;
                let Some(mono) = squarefree_monomial(&i)? else {
                    return Err(Error::Type(
                        "symbolic powers in expressions need a squarefree monomial ideal; use `sympow` with a witness"
                            .into(),
                    ));
                };
                Value::Ideal(symbolic_power_monomial(&mono, *n)?.to_ideal(i.ring())?)
            }
            Expr::Tuple(items, _) => {
                let ring = self.ring()?.clone();
                let mut gens = Vec::new();
                for it in items {
                    match self.eval(it)? {
                        Value::Ideal(i) => gens.extend(i.generators().iter().cloned()),
                        v => gens.push(self.to_poly(v)?),
                    }
                }
                Value::Ideal(Ideal::new(&ring, gens)?)
            }
        })
    }

    fn binary(&self, op: &BinOp, a: &Expr, b: &Expr) -> Result<Value> {
        let (x, y) = (self.eval(a)?, self.eval(b)?);
        Ok(match (op, x, y) {
            (BinOp::Add, Value::Num(x), Value::Num(y)) => Value::Num(x + y),
            (BinOp::Sub, Value::Num(x), Value::Num(y)) => Value::Num(x - y),
            (BinOp::Mul, Value::Num(x), Value::Num(y)) => Value::Num(x * y),
            (BinOp::Div, Value::Num(x), Value::Num(y)) => {
                if y.is_zero() {
                    return Err(Error::InvalidArgument("division by zero".into()));
                }
                Value::Num(x / y)
            }
            (BinOp::Div, Value::Poly(p), Value::Num(y)) => {
                if y.is_zero() {
                    return Err(Error::InvalidArgument("division by zero".into()));
                }
                let c = p.ring().domain().coerce(&(Coeff::one() / y))?;
                Value::Poly(p.scale(&c))
            }
            (BinOp::Div, _, _) => return Err(type_error("a nonzero number as divisor", b)),
            (BinOp::Add, Value::Ideal(i), Value::Ideal(j)) => Value::Ideal(i.sum(&j)?),
            (BinOp::Mul, Value::Ideal(i), Value::Ideal(j)) => Value::Ideal(i.product(&j)?),
            (BinOp::Mul, Value::Ideal(i), v) | (BinOp::Mul, v, Value::Ideal(i)) => {
                let p = self.to_poly(v)?;
                let pi = Ideal::new(i.ring(), vec![p])?;
                Value::Ideal(i.product(&pi)?)
            }
            (_, Value::Ideal(_), _) => return Err(type_error("a polynomial", a)),
            (_, _, Value::Ideal(_)) => return Err(type_error("a polynomial", b)),
            (op, x, y) => {
                let (p, q) = (self.to_poly(x)?, self.to_poly(y)?);
                Value::Poly(match op {
                    BinOp::Add => p.checked_add(&q)?,
                    BinOp::Sub => p.checked_sub(&q)?,
                    BinOp::Mul => p.checked_mul(&q)?,
                    BinOp::Div => unreachable!("handled above"),
                })
            }
        })
    }

    fn to_poly(&self, v: Value) -> Result<Polynomial> {
        match v {
            Value::Poly(p) => Ok(p),
            Value::Num(x) => {
                let ring = self.ring()?;
                Ok(Polynomial::constant(ring, ring.domain().coerce(&x)?))
            }
            Value::Ideal(_) => Err(Error::Type("expected a polynomial, found an ideal".into())),
        }
    }

    fn eval_poly(&self, e: &Expr) -> Result<Polynomial> {
        let v = self.eval(e)?;
        self.to_poly(v).map_err(|_| type_error("a polynomial", e))
    }

    fn eval_ideal(&self, e: &Expr) -> Result<Ideal> {
        match self.eval(e)? {
            Value::Ideal(i) => Ok(i),
            v => {
                let p = self.to_poly(v)?;
                Ideal::new(self.ring()?, vec![p])
            }
        }
    }

    fn eval_monomial_ideal(&self, e: &Expr) -> Result<MonomialIdeal> {
        MonomialIdeal::from_ideal(&self.eval_ideal(e)?)
    }

    fn eval_rational(&self, e: &Expr) -> Result<BigRational> {
        match self.eval(e)? {
            Value::Num(x) => Ok(x),
            _ => Err(type_error("a number", e)),
        }
    }

    fn eval_u32(&self, e: &Expr) -> Result<u32> {
        let x = self.eval_rational(e)?;
        if !x.is_integer() || x.is_negative() {
            return Err(type_error("a nonnegative integer", e));
        }
        x.to_integer().to_u32().ok_or_else(|| type_error("a small integer", e))
    }

    fn mono_ideal_line(&self, m: &MonomialIdeal) -> Result<String> {
        fmt_ideal(&m.to_ideal(self.ring()?)?)
    }

    fn command(&mut self, name: &str, args: &[Expr]) -> Result<Output> {
        let arity = |lo: usize, hi: usize| -> Result<()> {
            if args.len() < lo || args.len() > hi {
                Err(Error::InvalidArgument(format!(
                    "`{name}` takes {} arguments, got {}",
                    if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") },
                    args.len()
                )))
            } else {
                Ok(())
            }
        };
        match name {
            "print" => {
                arity(1, 1)?;
                let line = match self.eval(&args[0])? {
                    Value::Num(x) => x.to_string(),
                    Value::Poly(p) => p.to_string(),
                    Value::Ideal(i) => fmt_ideal(&i)?,
                };
                Ok(Output::line(line))
            }
            "gb" => {
                arity(1, 1)?;
                let i = self.eval_ideal(&args[0])?;
                let gb = i.groebner()?;
                let gens: Vec<String> = gb.generators().iter().map(|g| g.to_string()).collect();
                Ok(Output::line(fmt_basis(gb)).with(json!({ "basis": gens, "order": gb.order().to_string() })))
            }
            "ideal" => {
                arity(3, 3)?;
                let op = word(&args[0]).ok_or_else(|| type_error("an operation name", &args[0]))?;
                let i = self.eval_ideal(&args[1])?;
                let r = match op.as_str() {
                    "sum" => i.sum(&self.eval_ideal(&args[2])?)?,
                    "product" => i.product(&self.eval_ideal(&args[2])?)?,
                    "intersect" => i.intersect(&self.eval_ideal(&args[2])?)?,
                    "power" => i.power(self.eval_u32(&args[2])?)?,
                    "colon" => i.colon(&self.eval_poly(&args[2])?)?,
                    "saturate" => i.saturate(&self.eval_poly(&args[2])?)?,
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "unknown ideal operation `{other}`; expected sum, product, power, intersect, colon or saturate"
                        )))
                    }
                };
                Ok(Output::line(fmt_ideal(&r)?))
            }
            "sympow" => {
                arity(2, 4)?;
                let i = self.eval_ideal(&args[0])?;
                let n = self.eval_u32(&args[1])?;
                let (ideal, certainty) = if let Some(mono) = squarefree_monomial(&i)? {
                    (symbolic_power_monomial(&mono, n)?.to_ideal(i.ring())?, Certainty::Exact)
                } else {
                    let s = args
                        .get(2)
                        .ok_or_else(|| Error::InvalidArgument("a witness polynomial outside the prime is required".into()))?;
                    let s = self.eval_poly(s)?;
                    let exact = match args.get(3) {
                        None => false,
                        Some(e) if word(e).as_deref() == Some("exact") => true,
                        Some(e) => return Err(type_error("`exact`", e)),
                    };
                    let r = symbolic_power_prime(&i, n, &s, exact)?;
                    (r.ideal, r.certainty)
                };
                let mut line = fmt_ideal(&ideal)?;
                if certainty == Certainty::LowerBound {
                    line.push_str("  [lower bound]");
                }
                Ok(Output::line(line).with(json!({ "certainty": certainty })))
            }
            "contain" => {
                arity(2, 2)?;
                let a = self.eval_ideal(&args[0])?;
                let b = self.eval_ideal(&args[1])?;
                let yes = a.contains(&b)?;
                Ok(Output::line(yes.to_string()).with(json!({ "contains": yes })))
            }
            "closure" => {
                arity(1, 1)?;
                let m = self.eval_monomial_ideal(&args[0])?;
                Ok(Output::line(self.mono_ideal_line(&integral_closure(&m)?)?))
            }
            "multiplier" => {
                arity(2, 2)?;
                let m = self.eval_monomial_ideal(&args[0])?;
                let t = self.eval_rational(&args[1])?;
                Ok(Output::line(self.mono_ideal_line(&multiplier_ideal_monomial(&m, &t)?)?))
            }
            "testideal-snc" => {
                arity(2, 3)?;
                let p_value = match args.get(2) {
                    Some(e) => self.eval_u32(e)?,
                    None => 2,
                };
                let model = MixedModel::new(self.ring()?.clone(), p_value)?;
                let f = SncMonomial::from_polynomial(&model, &self.eval_poly(&args[0])?)?;
                let t = FormalExponent::new(self.eval_rational(&args[1])?)?;
                let tau = snc_test_ideal(&f, &t);
                let g = Polynomial::monomial(model.ring(), tau.generators()[0].clone(), Coeff::one());
                Ok(Output::line(g.to_string()).with(json!({ "exponents": tau.generators()[0].exponents() })))
            }
            "minprimes" => {
                arity(1, 1)?;
                let m = self.eval_monomial_ideal(&args[0])?;
                let ring = self.ring()?.clone();
                let primes = minimal_primes_squarefree(&m)?;
                let lines: Vec<String> = primes
                    .iter()
                    .map(|p| {
                        let names: Vec<&str> = p.iter().map(|&k| ring.vars()[k].as_str()).collect();
                        format!("({})", names.join(", "))
                    })
                    .collect();
                let data = json!({
                    "primes": lines,
                    "height": height(&m).ok(),
                    "big_height": big_height(&m).ok(),
                });
                Ok(Output::lines(lines).with(data))
            }
            "rees" => {
                arity(1, 1)?;
                let rees = rees_presentation(&self.eval_ideal(&args[0])?)?;
                Ok(Output::line(fmt_basis(rees.presentation()))
                    .with(json!({ "ring": rees.ring().to_string(), "t_homogeneous": rees.is_t_homogeneous() })))
            }
            "chart" => {
                arity(2, 2)?;
                let rees = rees_presentation(&self.eval_ideal(&args[0])?)?;
                let c = rees.chart(self.eval_u32(&args[1])? as usize)?;
                Ok(Output::line(fmt_basis(c.presentation())).with(json!({ "ring": c.ring().to_string() })))
            }
            "kcanonical" => {
                arity(1, 1)?;
                let d = self.eval_u32(&args[0])? as usize;
                let k = relative_canonical_maxideal(d)?;
                Ok(Output::line(format!("{k}*E")).with(json!({ "d": d, "coefficient": k })))
            }
            "asymptotic" => {
                arity(2, 4)?;
                let m = self.eval_monomial_ideal(&args[0])?;
                let n = self.eval_u32(&args[1])?;
                let mut symbolic = m.is_squarefree();
                let mut oracle = Oracle::Multiplier;
                for e in &args[2..] {
                    match word(e).as_deref() {
                        Some("powers") => symbolic = false,
                        Some("symbolic") => symbolic = true,
                        Some("multiplier") => oracle = Oracle::Multiplier,
                        Some("snc") => oracle = Oracle::SncTest,
                        _ => return Err(type_error("powers, symbolic, multiplier or snc", e)),
                    }
                }
                let seq = if symbolic {
                    GradedSequence::symbolic_powers(m)?
                } else {
                    GradedSequence::powers(m)
                };
                let a = asymptotic_ideal(&seq, n, oracle)?;
                Ok(Output::lines(vec![self.mono_ideal_line(&a.ideal)?, format!("l* = {}", a.l_star)])
                    .with(json!({ "l_star": a.l_star, "sequence": seq.name() })))
            }
            "pipeline" => {
                arity(2, 2)?;
                let m = self.eval_monomial_ideal(&args[0])?;
                let k = self.eval_u32(&args[1])?;
                let rep = main_theorem_pipeline(self.ring()?, &m, k)?;
                let mut lines: Vec<String> = rep
                    .links
                    .iter()
                    .map(|l| {
                        let level = match l.level {
                            LinkLevel::OracleLevel => "oracle",
                            LinkLevel::EndpointExact => "exact",
                        };
                        let verdict = if l.passed { "pass" } else { "FAIL" };
                        match &l.witness {
                            Some(w) => format!("{verdict}  {}  [{level}]  witness {w}", l.statement),
                            None => format!("{verdict}  {}  [{level}]", l.statement),
                        }
                    })
                    .collect();
                lines.push(format!("h = {}, endpoint agrees with direct check: {}", rep.h, rep.endpoint_agrees));
                let failed = !rep.passed();
                let mut out = Output::lines(lines).with(serde_json::to_value(&rep).unwrap_or(Json::Null));
                out.failed = failed;
                Ok(out)
            }
            "verify" => {
                arity(0, 1)?;
                let selector = match args.first() {
                    None => None,
                    Some(e) => Some(word(e).ok_or_else(|| type_error("a case kind or id", e))?),
                };
                // `verify random` draws seeded cases instead of the shipped corpus
                let (cases, filter) = match selector.as_deref() {
                    Some("random") => (
                        generate_random_cases(self.opts.seed, &RandomCounts::uniform(10)),
                        CaseFilter::All,
                    ),
                    Some(sel) => (golden_corpus()?, CaseFilter::parse(sel)?),
                    None => (golden_corpus()?, CaseFilter::All),
                };
                let report = run_corpus(&cases, &filter, self.opts.parallel.max(1), self.opts.timeout);
                let failed = !report.all_passed();
                let mut out = Output::lines(report.table().lines().map(String::from).collect())
                    .with(serde_json::to_value(&report).unwrap_or(Json::Null));
                out.failed = failed;
                Ok(out)
            }
            other => Err(Error::InvalidArgument(format!("unknown command `{other}`"))),
        }
    }
}
