//! Tokenizer, expression AST and recursive-descent parser. The grammar is
//! published in `docs/grammar.ebnf`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    X,
    Q,
    T,
    S,
    /// The derivation, written `D`.
    Delta,
    /// The automorphism, written `S`.
    Sigma,
}

impl Sym {
    pub const ALL: [Sym; 6] = [Sym::X, Sym::Q, Sym::T, Sym::S, Sym::Delta, Sym::Sigma];

    pub fn name(self) -> &'static str {
        match self {
            Sym::X => "x",
            Sym::Q => "q",
            Sym::T => "t",
            Sym::S => "s",
            Sym::Delta => "D",
            Sym::Sigma => "S",
        }
    }

    fn from_name(s: &str) -> Option<Sym> {
        Sym::ALL.into_iter().find(|v| v.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal.
    Int(BigInt),
    Sym(Sym),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// Explicit `*` or juxtaposition.
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Sym(_) => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{}", s.name()),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(b, e) => {
                b.fmt_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Prints with the fewest brackets that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(Sym),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

fn syntax(position: usize, expected: &[&str]) -> CliError {
    CliError::Syntax { position, expected: expected.iter().map(|s| s.to_string()).collect() }
}

const PRIMARY: [&str; 3] = ["integer", "symbol", "'('"];

fn tokenize(text: &str) -> CliResult<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let sym = Sym::from_name(&text[start..i]).ok_or_else(|| syntax(start, &["x", "q", "t", "s", "D", "S"]))?;
                out.push((Tok::Sym(sym), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            _ => return Err(syntax(start, &["integer", "symbol", "operator", "'('", "')'"])),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, name: &str) -> CliResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), &[name]))
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Int(_) | Tok::Sym(_) | Tok::LParen => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> CliResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> CliResult<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let at = self.offset();
        let Tok::Int(n) = self.bump() else {
            return Err(syntax(at, &["integer exponent"]));
        };
        let e: i64 = i64::try_from(&n).map_err(|_| syntax(at, &["exponent fitting in 64 bits"]))?;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn primary(&mut self) -> CliResult<Expr> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Sym(s) => Ok(Expr::Sym(s)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(syntax(at, &PRIMARY)),
        }
    }

    fn finish(&self) -> CliResult<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(syntax(self.offset(), &["operator", "end of input"])),
        }
    }

    fn bracketed<T>(&mut self, item: impl Fn(&mut Self) -> CliResult<T>) -> CliResult<Vec<T>> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = vec![item(self)?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    out.push(item(self)?);
                }
                Tok::RBracket => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(syntax(self.offset(), &["','", "']'"])),
            }
        }
    }
}

pub fn parse(text: &str) -> CliResult<Expr> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// `[[a, b], [c, d]]`, rows of equal length.
pub fn parse_matrix(text: &str) -> CliResult<Vec<Vec<Expr>>> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let rows = p.bracketed(|p| p.bracketed(|p| p.expr()))?;
    p.finish()?;
    Ok(rows)
}
