//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := nat | nat '/' nat | 'i' | 't' | ident | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit over `Q(i)`; the extension generator (named by
//! the field's modulus) is available over `Q[t]/(m)`. Identifiers that are not
//! ring variables are looked up in an optional environment of bindings.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PolyError, Polynomial, Ring};
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_whitespace() {
            pos += 1;
        } else if c.is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            out.push((Tok::Nat(text[start..pos].parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push((Tok::Ident(text[start..pos].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            pos += 1;
        } else {
            return Err(PolyError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    ring: &'a Arc<Ring>,
    env: Option<&'a HashMap<String, Polynomial>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Nat(n)) => {
                    self.at += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::Syntax { pos, msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return Err(PolyError::Syntax { pos, msg: "expected exponent".into() }),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        let pos = self.pos();
        let field = self.ring.field().clone();
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                self.at += 1;
                let mut value = BigRational::from_integer(n);
                if self.eat('/') {
                    let dpos = self.pos();
                    match self.peek().cloned() {
                        Some(Tok::Nat(d)) if !d.is_zero() => {
                            self.at += 1;
                            value /= BigRational::from_integer(d);
                        }
                        Some(Tok::Nat(_)) => {
                            return Err(PolyError::Syntax { pos: dpos, msg: "division by zero".into() })
                        }
                        _ => {
                            return Err(PolyError::Syntax {
                                pos: dpos,
                                msg: "expected a natural number denominator".into(),
                            })
                        }
                    }
                }
                Ok(Polynomial::constant(self.ring, field.from_rational(&value)?)?)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.identifier(&name, pos)
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                Ok(inner)
            }
            Some(t) => Err(PolyError::Syntax { pos, msg: format!("unexpected token {t:?}") }),
            None => Err(PolyError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }

    fn identifier(&self, name: &str, pos: usize) -> Result<Polynomial, PolyError> {
        if let Some(idx) = self.ring.var_index(name) {
            return Ok(Polynomial::var(self.ring, idx));
        }
        let field = self.ring.field();
        match field {
            FieldSpec::GaussianRational if name == "i" => {
                return Polynomial::constant(self.ring, field.imaginary_unit().unwrap());
            }
            FieldSpec::Extension(m) if m.var() == name => {
                return Polynomial::constant(self.ring, field.generator().unwrap());
            }
            _ => {}
        }
        if let Some(p) = self.env.and_then(|env| env.get(name)) {
            return p.to_ring(self.ring);
        }
        if name == "i" {
            return Err(PolyError::Syntax { pos, msg: "`i` is only available over QQi".into() });
        }
        Err(PolyError::UnknownIdentifier { name: name.to_string(), pos })
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
    parse_inner(text, ring, None)
}

/// Like [`parse`], resolving unknown identifiers from `env`.
pub fn parse_with(
    text: &str,
    ring: &Arc<Ring>,
    env: &HashMap<String, Polynomial>,
) -> Result<Polynomial, PolyError> {
    parse_inner(text, ring, Some(env))
}

fn parse_inner(
    text: &str,
    ring: &Arc<Ring>,
    env: Option<&HashMap<String, Polynomial>>,
) -> Result<Polynomial, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), ring, env };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return Err(PolyError::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(field: FieldSpec) -> Arc<Ring> {
        Ring::new(field, &["u0", "u1", "u2"]).unwrap()
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = ring(FieldSpec::Rational);
        assert_eq!(
            parse("u0 + * u1", &r),
            Err(PolyError::Syntax { pos: 5, msg: "unexpected token Sym('*')".into() })
        );
        assert!(matches!(parse("u0 + w", &r), Err(PolyError::UnknownIdentifier { pos: 5, .. })));
        assert!(matches!(parse("(u0", &r), Err(PolyError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("u0 u1", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("u0 # 1", &r), Err(PolyError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn imaginary_unit_only_over_gaussian() {
        let r = ring(FieldSpec::Rational);
        assert!(matches!(parse("i*u0", &r), Err(PolyError::Syntax { .. })));
        let ri = ring(FieldSpec::GaussianRational);
        let p = parse("(1 + i)*(1 - i)", &ri).unwrap();
        assert_eq!(p, parse("2", &ri).unwrap());
    }

    #[test]
    fn extension_generator_and_fractions() {
        let k = FieldSpec::extension_from_ints("t", &[-5, 0, 1]).unwrap();
        let r = ring(k);
        assert_eq!(parse("t*t", &r).unwrap(), parse("5", &r).unwrap());
        assert_eq!(parse("1/2*u0 + 1/3*u0", &r).unwrap(), parse("5/6*u0", &r).unwrap());
    }

    #[test]
    fn environment_bindings() {
        let r = ring(FieldSpec::Rational);
        let mut env = HashMap::new();
        env.insert("H".to_string(), parse("u0 - u1", &r).unwrap());
        assert_eq!(parse_with("H^2", &r, &env).unwrap(), parse("u0^2 - 2*u0*u1 + u1^2", &r).unwrap());
    }

    #[test]
    fn prime_field_literals() {
        let r = ring(FieldSpec::prime(7).unwrap());
        assert_eq!(parse("5/6", &r).unwrap(), parse("2", &r).unwrap());
        assert!(parse("1/7", &r).is_err());
    }
}
