//! Plain-text expression front end.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | 'q' | 's' | generator | '(' expr ')'
//! ```
//!
//! Generators are `a b c d` (α β γ δ) and `z zs e es` (ζ, ζ* = ζ, η, η*).
//! Negative powers are allowed on scalar atoms only.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rewrite::RawPoly;
use super::Gen;
use crate::error::{Error, Result};
use crate::params::{rational_pow, Params, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push(Tok::Int(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
            }
            out.push(Tok::Ident(s));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(Error::Malformed(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    params: &'a Params,
}

/// Parses an expression into a raw (unreduced) word sum.
pub fn parse_raw(text: &str, params: &Params) -> Result<RawPoly> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        params,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Malformed(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(prune(e))
}

fn prune(e: RawPoly) -> RawPoly {
    e.into_iter().filter(|(c, _)| !c.is_zero()).collect()
}

fn product(x: &RawPoly, y: &RawPoly) -> RawPoly {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (cx, wx) in x {
        for (cy, wy) in y {
            let mut w = wx.clone();
            w.extend_from_slice(wy);
            out.push((cx * cy, w));
        }
    }
    out
}

fn scalar(c: Rational) -> RawPoly {
    vec![(c, vec![])]
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RawPoly> {
        let mut neg = self.eat('-');
        let mut acc = Vec::new();
        loop {
            let mut t = self.term()?;
            if neg {
                for (c, _) in &mut t {
                    *c = -c.clone();
                }
            }
            acc.extend(t);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RawPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = prune(product(&acc, &f));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RawPoly> {
        let (base, is_scalar) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.toks.get(self.pos) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i64::try_from(n.clone())
                    .map_err(|_| Error::Malformed("exponent too large".into()))?
            }
            _ => {
                return Err(Error::Malformed(
                    "expected integer exponent after `^`".into(),
                ))
            }
        };
        let e = if neg { -e } else { e };
        if is_scalar {
            let c = base
                .first()
                .map(|(c, _)| c.clone())
                .unwrap_or_else(Rational::zero);
            if c.is_zero() && e < 0 {
                return Err(Error::Malformed("negative power of zero".into()));
            }
            return Ok(scalar(rational_pow(&c, e)));
        }
        if e < 0 {
            return Err(Error::Malformed(
                "negative powers are only allowed on scalars".into(),
            ));
        }
        let mut acc = scalar(Rational::one());
        for _ in 0..e {
            acc = prune(product(&acc, &base));
        }
        Ok(acc)
    }

    /// Returns the parsed atom and whether it is a pure scalar.
    fn atom(&mut self) -> Result<(RawPoly, bool)> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Malformed("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => {
                let mut v = Rational::from_integer(n);
                if self.eat('/') {
                    match self.toks.get(self.pos) {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            v /= Rational::from_integer(d.clone());
                            self.pos += 1;
                        }
                        _ => {
                            return Err(Error::Malformed(
                                "expected non-zero integer denominator".into(),
                            ))
                        }
                    }
                }
                Ok((scalar(v), true))
            }
            Tok::Ident(name) => {
                let g = match name.as_str() {
                    "q" => return Ok((scalar(self.params.q().clone()), true)),
                    "s" => return Ok((scalar(self.params.s().clone()), true)),
                    "a" => Gen::Alpha,
                    "b" => Gen::Beta,
                    "c" => Gen::Gamma,
                    "d" => Gen::Delta,
                    "z" | "zs" => Gen::Zeta,
                    "e" => Gen::Eta,
                    "es" => Gen::EtaStar,
                    other => return Err(Error::Malformed(format!("unknown generator `{other}`"))),
                };
                Ok((vec![(Rational::one(), vec![g])], false))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Malformed("missing `)`".into()));
                }
                let is_scalar = e.iter().all(|(_, w)| w.is_empty());
                if is_scalar {
                    let total = e.iter().fold(Rational::zero(), |a, (c, _)| a + c);
                    return Ok((scalar(total), true));
                }
                Ok((e, false))
            }
            Tok::Sym(c) => Err(Error::Malformed(format!("unexpected `{c}`"))),
        }
    }
}
