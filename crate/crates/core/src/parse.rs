//! Text syntax for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! coeff  := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and a single leading sign is accepted.
//! Variables must be declared by the caller.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::PolyError;
use crate::field::Field;
use crate::monomial::{ExponentVector, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'/' => out.push((start, Tok::Slash)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(PolyError::Syntax {
                    position: start,
                    message: format!(
                        "unexpected character `{}`",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    field: F,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Vec<(F::Elem, ExponentVector)>, PolyError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, e) = self.term()?;
            terms.push((if negative { self.field.neg(&c) } else { c }, e));
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                None => break,
                Some(_) => return Err(self.err("expected `+`, `-` or end of input")),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(F::Elem, ExponentVector), PolyError> {
        let n = self.vars.len();
        let mut exp = ExponentVector::one(n);
        let coeff = match self.peek() {
            Some(Tok::Int(_)) => {
                let c = self.coeff()?;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    exp = exp.checked_mul(&self.factor()?)?;
                }
                c
            }
            Some(Tok::Ident(_)) => {
                exp = self.factor()?;
                self.field.one()
            }
            _ => return Err(self.err("expected a coefficient or a variable")),
        };
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            exp = exp.checked_mul(&self.factor()?)?;
        }
        Ok((coeff, exp))
    }

    fn coeff(&mut self) -> Result<F::Elem, PolyError> {
        let Some(Tok::Int(num)) = self.peek().cloned() else {
            return Err(self.err("expected an integer"));
        };
        self.pos += 1;
        let mut den = BigInt::one();
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(d)) => {
                    den = d;
                    self.pos += 1;
                }
                _ => return Err(self.err("expected a denominator")),
            }
        }
        self.field.from_fraction(&num, &den)
    }

    fn factor(&mut self) -> Result<ExponentVector, PolyError> {
        let at = self.offset();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.err("expected a variable"));
        };
        let var = self
            .vars
            .iter()
            .position(|v| *v == name)
            .ok_or(PolyError::UnknownVariable { name, position: at })?;
        self.pos += 1;
        let mut power = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    power = u32::try_from(&e).map_err(|_| PolyError::ExponentOverflow)?;
                    self.pos += 1;
                }
                _ => return Err(self.err("expected an exponent")),
            }
        }
        Ok(ExponentVector::pure_power(self.vars.len(), var, power))
    }
}

/// Parses `text` over the declared variables, producing a polynomial under
/// degrevlex.
pub fn parse_polynomial<F: Field>(
    text: &str,
    vars: &[String],
    field: F,
) -> Result<Polynomial<F>, PolyError> {
    parse_polynomial_with_order(text, vars, field, MonomialOrder::DegRevLex)
}

pub fn parse_polynomial_with_order<F: Field>(
    text: &str,
    vars: &[String],
    field: F,
    order: MonomialOrder,
) -> Result<Polynomial<F>, PolyError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(PolyError::Syntax {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
        field: field.clone(),
    };
    let terms = parser.expr()?;
    Polynomial::from_terms(field, vars.len(), order, terms)
}
