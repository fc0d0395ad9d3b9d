//! Recursive-descent parser for observable expressions.
//!
//! ```text
//! expr     := '-'? term (('+' | '-') '-'? term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := 'x' | 'k' | 'q' | 'p' | 'hbar' | 'ℏ' | 'i' | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Products keep their written order; `p*q` and `q*p` are different
//! observables. Juxtaposition (`xq`, `2x`) is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{GaussianRational, Observable};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {}: {msg}", .pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("exponent error at column {}: {msg}", .pos + 1)]
    Exponent { pos: usize, msg: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Exponent { pos, .. } => *pos,
        }
    }

    fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { pos, msg: msg.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    X,
    K,
    Q,
    P,
    Hbar,
    I,
}

impl Symbol {
    fn from_ident(s: &str) -> Option<Self> {
        Some(match s {
            "x" => Symbol::X,
            "k" => Symbol::K,
            "q" => Symbol::Q,
            "p" => Symbol::P,
            "hbar" | "ℏ" => Symbol::Hbar,
            "i" => Symbol::I,
            _ => return None,
        })
    }

    fn observable(self) -> Observable {
        match self {
            Symbol::X => Observable::x(),
            Symbol::K => Observable::k(),
            Symbol::Q => Observable::q(),
            Symbol::P => Observable::p(),
            Symbol::Hbar => Observable::hbar(),
            Symbol::I => Observable::i(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::X => "x",
            Symbol::K => "k",
            Symbol::Q => "q",
            Symbol::P => "p",
            Symbol::Hbar => "hbar",
            Symbol::I => "i",
        })
    }
}

/// Parsed expression. Factor order in `Product` is the written order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Neg(Box<Expr>),
    Symbol(Symbol),
    Rational(BigRational),
}

impl Expr {
    /// Evaluates in the observable algebra; products go through the
    /// normal-ordering multiplication.
    pub fn eval(&self) -> Observable {
        match self {
            Expr::Sum(terms) => terms.iter().fold(Observable::zero(), |acc, t| &acc + &t.eval()),
            Expr::Product(factors) => {
                let mut iter = factors.iter();
                let first = iter.next().map(Expr::eval).unwrap_or_else(|| Observable::from(1));
                iter.fold(first, |acc, f| acc.mul(&f.eval()))
            }
            Expr::Power(base, e) => base.eval().pow(*e),
            Expr::Neg(inner) => -inner.eval(),
            Expr::Symbol(s) => s.observable(),
            Expr::Rational(r) => Observable::from(GaussianRational::real(r.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Tokens with their character column.
fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let start = pos;
        let tok = match c {
            c if c.is_whitespace() => {
                pos += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'ℏ' => Tok::Ident("ℏ".into()),
            c if c.is_ascii_digit() => {
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                out.push((start, Tok::Ident(chars[start..pos].iter().collect())));
                continue;
            }
            '.' => return Err(ParseError::syntax(pos, "decimal literals are not supported; use a fraction like 1/2")),
            other => return Err(ParseError::syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        pos += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.signed_term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.signed_term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.signed_term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn signed_term(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            Ok(Expr::Neg(Box::new(self.term()?)))
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                    return Err(ParseError::syntax(
                        self.pos(),
                        format!("missing `*` before {}; products must be written explicitly, e.g. `x*q`", self.peek()),
                    ));
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        match self.bump().1 {
            Tok::Int(n) => match n.to_u32().filter(|e| *e <= MAX_EXPONENT) {
                Some(e) => Ok(Expr::Power(Box::new(base), e)),
                None => Err(ParseError::Exponent {
                    pos,
                    msg: format!("exponent {n} exceeds the maximum of {MAX_EXPONENT}"),
                }),
            },
            Tok::Minus => Err(ParseError::Exponent {
                pos,
                msg: "negative exponents are not allowed".into(),
            }),
            other => Err(ParseError::syntax(pos, format!("expected an exponent after `^`, found {other}"))),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Ident(name) => match Symbol::from_ident(&name) {
                Some(s) => Ok(Expr::Symbol(s)),
                None => Err(ParseError::syntax(pos, unknown_ident_message(&name))),
            },
            Tok::Int(num) => {
                if !self.eat(&Tok::Slash) {
                    return Ok(Expr::Rational(BigRational::from_integer(num)));
                }
                let den_pos = self.pos();
                match self.bump().1 {
                    Tok::Int(den) if den.is_zero() => Err(ParseError::syntax(den_pos, "zero denominator")),
                    Tok::Int(den) => Ok(Expr::Rational(BigRational::new(num, den))),
                    other => Err(ParseError::syntax(
                        den_pos,
                        format!("expected an integer denominator, found {other}"),
                    )),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::syntax(close, format!("expected `)`, found {}", self.peek())));
                }
                Ok(inner)
            }
            other => Err(ParseError::syntax(pos, format!("expected a symbol, number or `(`, found {other}"))),
        }
    }
}

fn unknown_ident_message(name: &str) -> String {
    let split: Vec<String> = name.chars().map(String::from).collect();
    if split.len() > 1 && split.iter().all(|c| Symbol::from_ident(c).is_some()) {
        format!("unknown symbol `{name}`; products need an explicit `*`, e.g. `{}`", split.join("*"))
    } else {
        format!("unknown symbol `{name}` (expected x, k, q, p, hbar or i)")
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(input)?;
    let mut parser = Parser { toks, at: 0 };
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(ParseError::syntax(parser.pos(), format!("unexpected {}", parser.peek())));
    }
    Ok(e)
}

/// Parses and evaluates an expression to its canonical observable.
pub fn parse(input: &str) -> Result<Observable, ParseError> {
    parse_expr(input).map(|e| e.eval())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QCMonomial;

    #[test]
    fn monomials() {
        assert_eq!(parse("x*q").unwrap(), Observable::monomial(QCMonomial::new(1, 0, 1, 0)));
        assert_eq!(parse("k^2*p").unwrap(), Observable::monomial(QCMonomial::new(0, 2, 0, 1)));
    }

    #[test]
    fn written_order_matters() {
        assert_ne!(parse("p*q").unwrap(), parse("q*p").unwrap());
        assert_eq!(parse("p*q").unwrap(), &parse("q*p").unwrap() - &parse("i*hbar").unwrap());
    }

    #[test]
    fn rationals_and_hbar() {
        let half_hbar2 = parse("(1/2)*hbar^2").unwrap();
        assert_eq!(half_hbar2, parse("1/2*hbar*hbar").unwrap());
        assert_eq!(half_hbar2.num_terms(), 1);
        assert_eq!(half_hbar2.min_hbar_degree(), Some(2));
        assert_eq!(parse("ℏ").unwrap(), parse("hbar").unwrap());
        assert_eq!(parse("2/4").unwrap(), parse("1/2").unwrap());
    }

    #[test]
    fn unary_minus_and_whitespace() {
        assert_eq!(parse(" - x +  q ").unwrap(), parse("q-x").unwrap());
        assert_eq!(parse("x - -q").unwrap(), parse("x+q").unwrap());
        assert_eq!(parse("-(x*q)").unwrap(), parse("-x*q").unwrap());
    }

    #[test]
    fn ast_shape() {
        let e = parse_expr("p*q^2 - 3").unwrap();
        assert_eq!(
            e,
            Expr::Sum(vec![
                Expr::Product(vec![
                    Expr::Symbol(Symbol::P),
                    Expr::Power(Box::new(Expr::Symbol(Symbol::Q)), 2)
                ]),
                Expr::Neg(Box::new(Expr::Rational(BigRational::from_integer(3.into())))),
            ])
        );
    }

    #[test]
    fn juxtaposition_rejected() {
        let err = parse("xq").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { pos: 0, .. }));
        assert!(err.to_string().contains("x*q"), "{err}");
        let err = parse("2x").unwrap_err();
        assert_eq!(err.position(), 1);
        assert!(parse("x (q)").is_err());
    }

    #[test]
    fn exponent_errors() {
        assert!(matches!(parse("x^-1"), Err(ParseError::Exponent { pos: 2, .. })));
        assert!(matches!(parse("x^65"), Err(ParseError::Exponent { .. })));
        assert!(matches!(parse("x^99999999999999999999"), Err(ParseError::Exponent { .. })));
        assert!(parse("x^64").is_ok());
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "x +", "(x", "x)", "1/0", "1.5", "x ** q", "y", "x^q", "1/x", "#"] {
            assert!(matches!(parse(bad), Err(ParseError::Syntax { .. })), "{bad}");
        }
    }
}
