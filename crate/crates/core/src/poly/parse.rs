//! Polynomial expressions: integers, declared variables, `+ - * ^`, parentheses,
//! and `/` by a nonzero constant.

use std::fmt;

use super::{Polynomial, Rational, Ring};

/// A parse failure with the 1-based column where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Int(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(ParseError { position: pos, message: format!("unexpected character `{c}`") });
        }
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return Err(ParseError { position: pos, message: "division only by a nonzero constant".into() }),
                    }
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Op('(') => {
                    return self.err("implicit multiplication is not allowed; use `*`");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Tok::Op('+') => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.at += 1;
        match self.peek().clone() {
            Tok::Int(s) => match s.parse::<u32>() {
                Ok(e) => {
                    self.at += 1;
                    Ok(base.pow(e))
                }
                Err(_) => self.err(format!("exponent `{s}` is too large")),
            },
            _ => self.err("exponent must be a non-negative integer literal"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let c: Rational = match s.parse() {
                    Ok(c) => c,
                    Err(_) => return self.err(format!("bad integer `{s}`")),
                };
                self.at += 1;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.at += 1;
                    Ok(Polynomial::var(self.ring, i))
                }
                None => self.err(format!("unknown identifier `{name}`")),
            },
            Tok::Op('(') => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// Parse `text` as a polynomial in `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let Lexer { toks } = lex(text)?;
    let mut p = Parser { ring, toks, at: 0 };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::Op(')') => p.err("unbalanced `)`"),
        _ => p.err("unexpected token"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_of, variables};
    use proptest::prelude::*;

    #[test]
    fn precedence_and_errors() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        assert_eq!(parse_polynomial("x", &r).unwrap(), v[0]);
        let p = parse_polynomial("-x^2 + 2*(x+y)*y - 1/2", &r).unwrap();
        let q = &(&-&v[0].pow(2) + &(&(&v[0] + &v[1]) * &v[1]).scale(&Rational::from_int(2)))
            - &Polynomial::constant(&r, Rational::new(1, 2));
        assert_eq!(p, q);
        let e = parse_polynomial("x y", &r).unwrap_err();
        assert_eq!(e.position, 3);
        assert!(parse_polynomial("x + z", &r).unwrap_err().message.contains("unknown identifier"));
        assert!(parse_polynomial("x^y", &r).is_err());
        assert!(parse_polynomial("x^-1", &r).is_err());
        assert!(parse_polynomial("(x", &r).is_err());
        assert!(parse_polynomial("x)", &r).is_err());
        assert!(parse_polynomial("x/y", &r).is_err());
        assert!(parse_polynomial("x # y", &r).unwrap_err().position == 3);
    }

    fn small_poly() -> impl Strategy<Value = Vec<(i64, i64, [u8; 3])>> {
        prop::collection::vec((-9i64..10, 1i64..4, [0u8..3, 0u8..3, 0u8..3]), 0..6)
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(terms in small_poly()) {
            let r = ring_of(&["x", "y", "z"]);
            let v = variables(&r);
            let mut p = Polynomial::zero(&r);
            for (n, d, e) in terms {
                let mut t = Polynomial::constant(&r, Rational::new(n, d));
                for (i, &k) in e.iter().enumerate() {
                    t = &t * &v[i].pow(k as u32);
                }
                p = &p + &t;
            }
            let text = p.to_string();
            prop_assert_eq!(parse_polynomial(&text, &r).unwrap(), p);
        }
    }
}
