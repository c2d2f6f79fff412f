//! `symcon`: run ideal-description scripts or single commands.
//!
//! Every flag can also come from the environment with the `SYMCON_` prefix,
//! e.g. `SYMCON_TIMEOUT=10`.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use symcon_core::script::{execute, parse_expr, parse_script, ExecOptions, Expr};
use symcon_core::verify::{generate_random_cases, golden_corpus, parse_corpus, run_corpus, CaseFilter, RandomCounts};

#[derive(Parser, Debug)]
#[command(name = "symcon", version, about = "Symbolic powers, multiplier and test ideals, blowups")]
struct Cli {
    /// Also write machine-readable output to this path.
    #[arg(long, global = true, env = "SYMCON_JSON")]
    json: Option<PathBuf>,
    #[arg(long, global = true, env = "SYMCON_SEED", default_value_t = 0)]
    seed: u64,
    /// Per-command (per-case for `verify`) time limit in seconds.
    #[arg(long, global = true, env = "SYMCON_TIMEOUT")]
    timeout: Option<f64>,
    #[arg(long, global = true, env = "SYMCON_PARALLEL", default_value_t = 1)]
    parallel: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ScriptArgs {
    /// Ring declaration such as `Q[x,y,z] lex`; inferred from the arguments if absent.
    #[arg(long, env = "SYMCON_RING")]
    ring: Option<String>,
    /// Extra statements run first, e.g. `ideal I = x*y, x*z, y*z`.
    #[arg(long = "define", short = 'D')]
    defines: Vec<String>,
    /// Command arguments; write a leading minus as `0 - x` or pass after `--`.
    args: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a script file (`-` for standard input).
    Run { file: PathBuf },
    /// Reduced Groebner basis.
    Gb(ScriptArgs),
    /// `ideal sum|product|power|intersect|colon|saturate A B`.
    Ideal(ScriptArgs),
    /// Symbolic power: `sympow I n [witness [exact]]`.
    Sympow(ScriptArgs),
    /// `contain A B`: whether B is contained in A.
    Contain(ScriptArgs),
    /// Integral closure of a monomial ideal.
    Closure(ScriptArgs),
    /// Multiplier ideal of a monomial ideal: `multiplier I t`.
    Multiplier(ScriptArgs),
    /// SNC test ideal: `testideal-snc f t`.
    #[command(name = "testideal-snc")]
    TestidealSnc {
        #[command(flatten)]
        common: ScriptArgs,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        t: Option<String>,
        /// The residue characteristic represented by `p`.
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Minimal primes of a squarefree monomial ideal.
    Minprimes(ScriptArgs),
    /// Rees algebra presentation.
    Rees(ScriptArgs),
    /// Affine chart of the blowup: `chart I i`.
    Chart(ScriptArgs),
    /// Relative canonical divisor of the blowup of the origin in dimension d.
    Kcanonical(ScriptArgs),
    /// Asymptotic ideal: `asymptotic I n [powers|symbolic] [multiplier|snc]`.
    Asymptotic(ScriptArgs),
    /// Link-by-link containment chain for a squarefree monomial ideal: `pipeline I m`.
    Pipeline(ScriptArgs),
    /// Run the shipped corpus, a file, or seeded random cases.
    Verify {
        /// Case kind or id glob such as `snc-B-*`.
        filter: Option<String>,
        /// Generate this many random cases per kind instead of the corpus.
        #[arg(long, num_args = 0..=1, default_missing_value = "10")]
        random: Option<usize>,
        /// Read cases from this line-delimited file instead.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

const KEYWORDS: &[&str] = &[
    "sum",
    "product",
    "power",
    "intersect",
    "colon",
    "saturate",
    "exact",
    "powers",
    "symbolic",
    "multiplier",
    "snc",
    "random",
];

/// Wraps an argument with a top-level comma in parentheses.
fn as_expression(arg: &str) -> String {
    let mut depth = 0i32;
    for c in arg.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return format!("({arg})"),
            _ => {}
        }
    }
    arg.to_string()
}

fn collect_names(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Name(n, _) => {
            let lower = n.chars().next().is_some_and(|c| c.is_lowercase());
            if lower && !KEYWORDS.contains(&n.as_str()) && !out.contains(n) {
                out.push(n.clone());
            }
        }
        Expr::Neg(a, _) | Expr::Pow(a, _, _) | Expr::SymPow(a, _, _) => collect_names(a, out),
        Expr::Bin(_, a, b, _) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Expr::Tuple(items, _) => items.iter().for_each(|i| collect_names(i, out)),
        Expr::Num(..) => {}
    }
}

/// Variables in order of first appearance, `p` first when `p_first`.
fn infer_ring(exprs: &[String], p_first: bool) -> Result<String, String> {
    let mut names = Vec::new();
    if p_first {
        names.push("p".to_string());
    }
    for text in exprs {
        let e = parse_expr(text).map_err(|e| format!("cannot parse `{text}`: {e}"))?;
        collect_names(&e, &mut names);
    }
    if names.is_empty() {
        names.push("x".into());
    }
    Ok(format!("Q[{}]", names.join(",")))
}

/// The right-hand side of a `--define` statement.
fn define_rhs(stmt: &str) -> Option<String> {
    let rhs = stmt.split_once('=')?.1;
    let rhs = rhs.split_once(':').map_or(rhs, |(a, _)| a);
    Some(as_expression(rhs.trim().trim_end_matches(';')))
}

fn build_script(name: &str, a: &ScriptArgs, p_first: bool) -> Result<String, String> {
    let args: Vec<String> = a.args.iter().map(|s| as_expression(s)).collect();
    let ring = match &a.ring {
        Some(r) => r.clone(),
        None => {
            let mut exprs: Vec<String> = a.defines.iter().filter_map(|d| define_rhs(d)).collect();
            exprs.extend(args.iter().cloned());
            infer_ring(&exprs, p_first)?
        }
    };
    let mut text = format!("ring {ring};\n");
    for d in &a.defines {
        text.push_str(d.trim().trim_end_matches(';'));
        text.push_str(";\n");
    }
    text.push_str(name);
    for arg in &args {
        text.push(' ');
        text.push_str(arg);
    }
    text.push_str(";\n");
    Ok(text)
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), String> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        std::fs::write(p, text + "\n").map_err(|e| format!("cannot write {}: {e}", p.display()))?;
    }
    Ok(())
}

fn usage(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_text(cli: &Cli, text: &str) -> ExitCode {
    let script = match parse_script(text) {
        Ok(s) => s,
        Err(e) => return usage(e.to_string()),
    };
    let opts = ExecOptions {
        timeout: cli.timeout.map(Duration::from_secs_f64),
        seed: cli.seed,
        parallel: cli.parallel,
    };
    let exec = execute(&script, &opts);
    for line in &exec.lines {
        println!("{line}");
    }
    if let Some(err) = &exec.error {
        eprintln!("error: {err}");
    }
    let value = json!({ "exit_code": exec.exit_code, "records": exec.records });
    if let Err(e) = write_json(&cli.json, &value) {
        return usage(e);
    }
    ExitCode::from(exec.exit_code as u8)
}

fn verify(cli: &Cli, filter: &Option<String>, random: Option<usize>, corpus: &Option<PathBuf>) -> ExitCode {
    let cases = match (random, corpus) {
        (Some(n), _) => Ok(generate_random_cases(cli.seed, &RandomCounts::uniform(n))),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))
            .and_then(|t| parse_corpus(&t).map_err(|e| format!("{}: {e}", path.display()))),
        (None, None) => golden_corpus().map_err(|e| e.to_string()),
    };
    let cases = match cases {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let filter = match CaseFilter::parse(filter.as_deref().unwrap_or("")) {
        Ok(f) => f,
        Err(e) => return usage(e.to_string()),
    };
    let report = run_corpus(&cases, &filter, cli.parallel, cli.timeout.map(Duration::from_secs_f64));
    print!("{}", report.table());
    let value = serde_json::to_value(&report).unwrap_or_default();
    if let Err(e) = write_json(&cli.json, &value) {
        return usage(e);
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, p_first) = match &cli.command {
        Command::Run { file } => {
            let mut text = String::new();
            let read = if file.as_os_str() == "-" {
                std::io::stdin().read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(file).map(|t| text = t)
            };
            if let Err(e) = read {
                return usage(format!("cannot read {}: {e}", file.display()));
            }
            return run_text(&cli, &text);
        }
        Command::Verify { filter, random, corpus } => return verify(&cli, filter, *random, corpus),
        Command::TestidealSnc { common, f, t, p } => {
            let mut common = common.clone();
            let mut args: Vec<String> = f.iter().chain(t.iter()).cloned().collect();
            args.append(&mut common.args);
            if *p != 2 {
                args.push(p.to_string());
            }
            common.args = args;
            ("testideal-snc", common, true)
        }
        Command::Gb(a) => ("gb", a.clone(), false),
        Command::Ideal(a) => ("ideal", a.clone(), false),
        Command::Sympow(a) => ("sympow", a.clone(), false),
        Command::Contain(a) => ("contain", a.clone(), false),
        Command::Closure(a) => ("closure", a.clone(), false),
        Command::Multiplier(a) => ("multiplier", a.clone(), false),
        Command::Minprimes(a) => ("minprimes", a.clone(), false),
        Command::Rees(a) => ("rees", a.clone(), false),
        Command::Chart(a) => ("chart", a.clone(), false),
        Command::Kcanonical(a) => ("kcanonical", a.clone(), false),
        Command::Asymptotic(a) => ("asymptotic", a.clone(), false),
        Command::Pipeline(a) => ("pipeline", a.clone(), false),
    };
    match build_script(name, &common, p_first) {
        Ok(text) => run_text(&cli, &text),
        Err(e) => usage(e),
    }
}
