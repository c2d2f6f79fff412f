use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{parse_error, tokenize, Pos, Tok, Token};
use crate::error::{Error, Result};
use crate::poly::{CoefficientDomain, MonomialOrder};

#[derive(Debug, Clone, PartialEq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigInt, Pos),
    Name(String, Pos),
    Neg(Box<Expr>, Pos),
    Bin(BinOp, Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32, Pos),
    /// `e_(n)`.
    SymPow(Box<Expr>, u32, Pos),
    /// `(a, b, ...)` with at least two entries: the ideal they generate.
    Tuple(Vec<Expr>, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Num(_, p)
            | Expr::Name(_, p)
            | Expr::Neg(_, p)
            | Expr::Bin(_, _, _, p)
            | Expr::Pow(_, _, p)
            | Expr::SymPow(_, _, p)
            | Expr::Tuple(_, p) => *p,
        }
    }

    /// The identifier, if the expression is a bare name.
    pub fn word(&self) -> Option<&str> {
        match self {
            Expr::Name(n, _) => Some(n),
            _ => None,
        }
    }

    fn names<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match self {
            Expr::Num(..) => {}
            Expr::Name(n, p) => out.push((n, *p)),
            Expr::Neg(e, _) | Expr::Pow(e, _, _) | Expr::SymPow(e, _, _) => e.names(out),
            Expr::Bin(_, a, b, _) => {
                a.names(out);
                b.names(out);
            }
            Expr::Tuple(es, _) => es.iter().for_each(|e| e.names(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingDecl {
    pub domain: CoefficientDomain,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Ring(RingDecl, Pos),
    Ideal {
        name: String,
        generators: Vec<Expr>,
        /// `Some(height)` when declared `: prime [height N]`.
        prime: Option<Option<u32>>,
        pos: Pos,
    },
    Poly {
        name: String,
        expr: Expr,
        pos: Pos,
    },
    Command {
        name: String,
        args: Vec<Expr>,
        pos: Pos,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

impl Script {
    pub fn ring(&self) -> Option<&RingDecl> {
        self.statements.iter().find_map(|s| match s {
            Stmt::Ring(r, _) => Some(r),
            _ => None,
        })
    }
}

pub const COMMANDS: &[&str] = &[
    "gb",
    "ideal",
    "sympow",
    "contain",
    "closure",
    "multiplier",
    "testideal-snc",
    "minprimes",
    "rees",
    "chart",
    "kcanonical",
    "asymptotic",
    "pipeline",
    "verify",
    "print",
];

struct Parser {
    toks: Vec<Token>,
    i: usize,
    eof: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.eof, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(parse_error(self.pos(), format!("expected `{c}`{}", self.found())))
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => " at end of input".into(),
            Some(Tok::Ident(s)) => format!(", found `{s}`"),
            Some(Tok::Int(n)) => format!(", found `{n}`"),
            Some(Tok::Sym(c)) => format!(", found `{c}`"),
            Some(Tok::Under) => ", found `_`".into(),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok((s, pos))
            }
            _ => Err(parse_error(pos, format!("expected a name{}", self.found()))),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let pos = self.pos();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Int(n)) => n
                .to_u32()
                .ok_or_else(|| parse_error(pos, format!("integer {n} is too large"))),
            _ => Err(parse_error(pos, "expected an integer")),
        }
    }

    fn statement(&mut self) -> Result<Stmt> {
        let (head, pos) = self.ident()?;
        match head.as_str() {
            "ring" => self.ring(pos),
            "ideal" if self.toks.get(self.i + 1).map(|t| &t.tok) == Some(&Tok::Sym('=')) => {
                let (name, _) = self.ident()?;
                self.expect_sym('=')?;
                let mut generators = vec![self.expr()?];
                while self.is_sym(',') {
                    self.i += 1;
                    generators.push(self.expr()?);
                }
                let mut prime = None;
                if self.is_sym(':') {
                    self.i += 1;
                    let (kw, kpos) = self.ident()?;
                    if kw != "prime" {
                        return Err(parse_error(kpos, format!("expected `prime`, found `{kw}`")));
                    }
                    let mut height = None;
                    if matches!(self.peek(), Some(Tok::Ident(s)) if s == "height") {
                        self.i += 1;
                        height = Some(self.small_int()?);
                    }
                    prime = Some(height);
                }
                Ok(Stmt::Ideal {
                    name,
                    generators,
                    prime,
                    pos,
                })
            }
            "poly" => {
                let (name, _) = self.ident()?;
                self.expect_sym('=')?;
                let expr = self.expr()?;
                Ok(Stmt::Poly { name, expr, pos })
            }
            _ => {
                let name = self.command_name(head, pos)?;
                let mut args = Vec::new();
                while !self.is_sym(';') && self.peek().is_some() {
                    args.push(self.expr()?);
                }
                Ok(Stmt::Command { name, args, pos })
            }
        }
    }

    /// Joins `a-b` written without spaces into one command name.
    fn command_name(&mut self, head: String, pos: Pos) -> Result<String> {
        let mut name = head;
        loop {
            let (Some(dash), Some(next)) = (self.toks.get(self.i), self.toks.get(self.i + 1)) else {
                break;
            };
            let prev_end = self.toks[self.i - 1].end;
            let adjacent = dash.tok == Tok::Sym('-') && dash.start == prev_end && next.start == dash.end;
            match (&next.tok, adjacent) {
                (Tok::Ident(s), true) => {
                    name = format!("{name}-{s}");
                    self.i += 2;
                }
                _ => break,
            }
        }
        if COMMANDS.contains(&name.as_str()) {
            Ok(name)
        } else {
            Err(parse_error(pos, format!("unknown command `{name}`")))
        }
    }

    fn ring(&mut self, pos: Pos) -> Result<Stmt> {
        let (dom, dpos) = self.ident()?;
        let domain = match dom.as_str() {
            "Q" | "QQ" => CoefficientDomain::Rationals,
            "GF" => {
                self.expect_sym('(')?;
                let q = self.small_int()?;
                self.expect_sym(')')?;
                CoefficientDomain::PrimeField(q)
            }
            _ => return Err(parse_error(dpos, format!("unknown coefficient domain `{dom}`"))),
        };
        self.expect_sym('[')?;
        let mut vars = vec![self.ident()?.0];
        while self.is_sym(',') {
            self.i += 1;
            vars.push(self.ident()?.0);
        }
        self.expect_sym(']')?;
        let order = match self.peek() {
            Some(Tok::Ident(_)) => {
                let (o, opos) = self.ident()?;
                match o.as_str() {
                    "lex" => MonomialOrder::Lex,
                    "grevlex" => MonomialOrder::GrevLex,
                    "block" => {
                        self.expect_sym('(')?;
                        let k = self.small_int()? as usize;
                        self.expect_sym(')')?;
                        MonomialOrder::Block(k)
                    }
                    _ => return Err(parse_error(opos, format!("unknown monomial order `{o}`"))),
                }
            }
            _ => MonomialOrder::GrevLex,
        };
        Ok(Stmt::Ring(RingDecl { domain, vars, order }, pos))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.is_sym('+') {
                BinOp::Add
            } else if self.is_sym('-') {
                BinOp::Sub
            } else {
                break;
            };
            let pos = self.pos();
            self.i += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.is_sym('*') {
                BinOp::Mul
            } else if self.is_sym('/') {
                BinOp::Div
            } else {
                break;
            };
            let pos = self.pos();
            self.i += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_sym('-') {
            let pos = self.pos();
            self.i += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.postfix()?;
        if self.is_sym('^') {
            let pos = self.pos();
            self.i += 1;
            let n = if self.is_sym('(') {
                self.i += 1;
                let n = self.small_int()?;
                self.expect_sym(')')?;
                n
            } else {
                self.small_int()?
            };
            return Ok(Expr::Pow(Box::new(base), n, pos));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        while self.peek() == Some(&Tok::Under) {
            let pos = self.pos();
            self.i += 1;
            self.expect_sym('(')?;
            let n = self.small_int()?;
            self.expect_sym(')')?;
            e = Expr::SymPow(Box::new(e), n, pos);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Num(n, pos))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(Expr::Name(s, pos))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let mut items = vec![self.expr()?];
                while self.is_sym(',') {
                    self.i += 1;
                    items.push(self.expr()?);
                }
                self.expect_sym(')')?;
                Ok(if items.len() == 1 {
                    items.pop().expect("one item")
                } else {
                    Expr::Tuple(items, pos)
                })
            }
            _ => Err(parse_error(pos, format!("expected an expression{}", self.found()))),
        }
    }
}

/// Parses a script and checks that every name in a binding is a ring
/// variable or an earlier binding. Command arguments may also be keywords,
/// so they are resolved at execution time.
pub fn parse_script(text: &str) -> Result<Script> {
    let toks = tokenize(text)?;
    let eof = match text.lines().count() {
        0 => Pos { line: 1, column: 1 },
        n => Pos {
            line: n,
            column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
        },
    };
    let mut p = Parser { toks, i: 0, eof };
    let mut statements = Vec::new();
    while p.peek().is_some() {
        if p.is_sym(';') {
            p.i += 1;
            continue;
        }
        let stmt = p.statement()?;
        if p.peek().is_some() {
            p.expect_sym(';')?;
        }
        statements.push(stmt);
    }
    check_names(&statements)?;
    Ok(Script { statements })
}

/// Parses a single expression, e.g. a command-line argument.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        eof: Pos {
            line: 1,
            column: text.chars().count() + 1,
        },
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(parse_error(p.pos(), format!("unexpected input{}", p.found())));
    }
    Ok(e)
}

fn check_names(statements: &[Stmt]) -> Result<()> {
    let mut vars: Option<HashSet<&str>> = None;
    let mut bound: HashSet<&str> = HashSet::new();
    let check = |e: &Expr, vars: &Option<HashSet<&str>>, bound: &HashSet<&str>| -> Result<()> {
        let mut names = Vec::new();
        e.names(&mut names);
        let Some(vars) = vars else {
            return Err(Error::NoRing);
        };
        for (n, _) in names {
            if !vars.contains(n) && !bound.contains(n) {
                return Err(if n.chars().next().is_some_and(|c| c.is_uppercase()) {
                    Error::UnboundName(n.to_string())
                } else {
                    Error::UnknownVariable(n.to_string())
                });
            }
        }
        Ok(())
    };
    for s in statements {
        match s {
            Stmt::Ring(r, pos) => {
                if vars.is_some() {
                    return Err(parse_error(*pos, "only one ring per script"));
                }
                vars = Some(r.vars.iter().map(String::as_str).collect());
            }
            Stmt::Ideal { name, generators, .. } => {
                for g in generators {
                    check(g, &vars, &bound)?;
                }
                bound.insert(name);
            }
            Stmt::Poly { name, expr, .. } => {
                check(expr, &vars, &bound)?;
                bound.insert(name);
            }
            Stmt::Command { .. } => {}
        }
    }
    Ok(())
}
