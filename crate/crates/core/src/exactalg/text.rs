//! Textual polynomial format: `coef*var1^e1*var2^e2 + ...` with rational
//! coefficients written `p/q`.
//!
//! Printing always produces the canonical form (terms in ring order, unit
//! coefficients omitted). The parser additionally accepts parentheses and
//! products of sums, so fixtures may be written in factored form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::monomial::{Monomial, PolyRing};
use super::poly::Polynomial;
use super::rational::Rational;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let table = self.table();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(table))?;
            } else {
                write!(f, "{abs}*{}", m.display(table))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        match ch {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            c if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut den = BigInt::from(1);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            den = d;
                        }
                        _ => return self.err("expected a denominator"),
                    }
                }
                let c = Rational::from_big(n, den).or_else(|_| self.err("zero denominator"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => match self.ring.vars.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var_index(self.ring, i))
                }
                None => self.err(format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

impl Polynomial {
    /// Parses the textual format against the variables of `ring`.
    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<Polynomial> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty polynomial".into(),
            });
        }
        let mut p = Parser {
            toks,
            pos: 0,
            ring,
            len: s.len(),
        };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}

/// Parses a monomial such as `c1^2*x` (no coefficient).
pub fn parse_monomial(ring: &Arc<PolyRing>, s: &str) -> Result<Monomial> {
    let p = Polynomial::parse(ring, s)?;
    match p.terms() {
        [(m, c)] if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("`{s}` is not a monomial"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VariableTable;
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::grevlex(VariableTable::new(&[("c1", 2), ("c2", 2), ("a2", 4), ("x", 2)]).unwrap())
    }

    #[test]
    fn canonical_printing() {
        let r = ring();
        let p = Polynomial::parse(&r, "x*c1 - 3/2*c1^2 + 1 - c1*x").unwrap();
        assert_eq!(p.to_string(), "-3/2*c1^2 + 1");
        assert_eq!(
            Polynomial::parse(&r, "(c1 - x)*(c1 + x)")
                .unwrap()
                .to_string(),
            "c1^2 - x^2"
        );
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_position() {
        let r = ring();
        assert!(matches!(
            Polynomial::parse(&r, "c1 + y"),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            Polynomial::parse(&r, "c1 +"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse(&r, "1/0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse(&r, ""),
            Err(Error::Parse { .. })
        ));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(terms in proptest::collection::vec(
            ((0u16..4, 0u16..3, 0u16..2, 0u16..3), -20i64..20, 1i64..7), 0..8)) {
            let r = ring();
            let terms = terms.into_iter().map(|((a, b, c, d), n, den)| {
                (Monomial::from_exponents(&[a, b, c, d]), Rational::new(n, den).unwrap())
            }).collect();
            let p = Polynomial::from_terms(&r, terms);
            let q = Polynomial::parse(&r, &p.to_string()).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), p.to_string());
        }
    }
}
