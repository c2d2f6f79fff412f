use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    /// One of `+ - * / ^ , ; ( ) [ ] = :`.
    Sym(char),
    /// The `_` of a symbolic power `I_(n)`.
    Under,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte offsets, used to detect adjacency in hyphenated names.
    pub start: usize,
    pub end: usize,
}

pub fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let byte_at = |k: usize| chars.get(k).map_or(text.len(), |c| c.0);
    while i < chars.len() {
        let c = chars[i].1;
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1).map(|c| c.1) == Some('/')) {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            let mut end = i;
            // `I_(4)`: the underscore belongs to the symbolic power
            if chars[end - 1].1 == '_' && chars.get(end).map(|c| c.1) == Some('(') {
                end -= 1;
            }
            let name: String = chars[start..end].iter().map(|c| c.1).collect();
            out.push(Token {
                tok: Tok::Ident(name),
                pos,
                start: byte_at(start),
                end: byte_at(end),
            });
            if end < i {
                out.push(Token {
                    tok: Tok::Under,
                    pos: Pos {
                        line,
                        column: col + (end - start),
                    },
                    start: byte_at(end),
                    end: byte_at(i),
                });
            }
            col += i - start;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                pos,
                start: byte_at(start),
                end: byte_at(i),
            });
            col += i - start;
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' | ',' | ';' | '(' | ')' | '[' | ']' | '=' | ':' => Tok::Sym(c),
            '_' if chars.get(i + 1).map(|c| c.1) == Some('(') => Tok::Under,
            _ => return Err(parse_error(pos, format!("unexpected character `{c}`"))),
        };
        out.push(Token {
            tok,
            pos,
            start: byte_at(i),
            end: byte_at(i + 1),
        });
        i += 1;
        col += 1;
    }
    Ok(out)
}
