//! A small language for describing rings, ideals and computations.
//!
//! ```text
//! ring Q[x,y,z] grevlex;          # or lex, block(k); GF(q) coefficients
//! ideal I = x*y, x*z, y*z;
//! ideal Q = y^2 - x*z, x^3 - y*z, z^2 - x^2*y : prime height 2;
//! poly f = x^2 + 1/2*y;
//! contain I^2 I_(4);             # I_(n) is the symbolic power
//! ```
//!
//! Statements end with `;`. Command arguments are expressions separated by
//! whitespace; `(a, b)` is the ideal generated by `a` and `b`. Comments run
//! from `#` or `//` to the end of the line.

mod exec;
mod lexer;
mod parser;

pub use exec::{execute, ExecOptions, Execution};
pub use lexer::Pos;
pub use parser::{parse_expr, parse_script, BinOp, Expr, RingDecl, Script, Stmt, COMMANDS};

use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{PolyRing, Polynomial};

/// Builds a ring from a declaration such as `Q[x,y] lex`.
pub fn parse_ring(decl: &str) -> Result<Arc<PolyRing>> {
    let decl = decl.trim().trim_end_matches(';');
    let decl = decl.strip_prefix("ring ").unwrap_or(decl);
    let script = parse_script(&format!("ring {decl};"))?;
    let r = script.ring().ok_or(Error::NoRing)?;
    PolyRing::new(r.vars.clone(), r.domain, r.order)
}

/// Evaluates a comma-separated list of generators in `ring`.
pub fn eval_ideal(ring: &Arc<PolyRing>, text: &str) -> Result<Ideal> {
    exec::eval_ideal_in(ring, &parse_expr(&format!("({text})"))?)
}

pub fn eval_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    exec::eval_poly_in(ring, &parse_expr(text)?)
}

/// Evaluates a numeric expression such as `5/6`.
pub fn eval_rational(text: &str) -> Result<BigRational> {
    exec::eval_rational_in(&parse_expr(text)?)
}
