//! Sparse multivariate polynomials with terms kept sorted under a monomial
//! order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::PolyError;
use crate::field::Field;
use crate::monomial::{ExponentVector, MonomialOrder};

#[derive(Debug, Clone, PartialEq)]
pub struct Term<E> {
    pub coeff: E,
    pub exp: ExponentVector,
}

/// A polynomial in `num_vars` variables over `F`. Terms are sorted strictly
/// descending under `order`, carry nonzero coefficients, and the zero
/// polynomial has no terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    field: F,
    num_vars: usize,
    order: MonomialOrder,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, num_vars: usize, order: MonomialOrder) -> Self {
        Polynomial {
            field,
            num_vars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: F, num_vars: usize, order: MonomialOrder, c: F::Elem) -> Self {
        let mut p = Self::zero(field, num_vars, order);
        if !p.field.is_zero(&c) {
            p.terms.push(Term {
                coeff: c,
                exp: ExponentVector::one(num_vars),
            });
        }
        p
    }

    pub fn one(field: F, num_vars: usize, order: MonomialOrder) -> Self {
        let one = field.one();
        Self::constant(field, num_vars, order, one)
    }

    /// The variable `x_var`.
    pub fn variable(field: F, num_vars: usize, order: MonomialOrder, var: usize) -> Self {
        assert!(var < num_vars, "variable index out of range");
        let one = field.one();
        Polynomial {
            field,
            num_vars,
            order,
            terms: vec![Term {
                coeff: one,
                exp: ExponentVector::pure_power(num_vars, var, 1),
            }],
        }
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts, collects
    /// like terms, drops zeros.
    pub fn from_terms(
        field: F,
        num_vars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (F::Elem, ExponentVector)>,
    ) -> Result<Self, PolyError> {
        let mut raw = Vec::new();
        for (coeff, exp) in terms {
            if exp.len() != num_vars {
                return Err(PolyError::ArityMismatch {
                    expected: num_vars,
                    found: exp.len(),
                });
            }
            raw.push(Term { coeff, exp });
        }
        Ok(Self::canonicalize(field, num_vars, order, raw))
    }

    fn canonicalize(
        field: F,
        num_vars: usize,
        order: MonomialOrder,
        mut raw: Vec<Term<F::Elem>>,
    ) -> Self {
        raw.sort_by(|a, b| order.cmp(&b.exp, &a.exp));
        let mut terms: Vec<Term<F::Elem>> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.exp == t.exp => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if terms.last().is_some_and(|l| field.is_zero(&l.coeff)) {
                        terms.pop();
                    }
                    terms.push(t);
                }
            }
        }
        if terms.last().is_some_and(|l| field.is_zero(&l.coeff)) {
            terms.pop();
        }
        Polynomial {
            field,
            num_vars,
            order,
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].exp.is_one()
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&ExponentVector> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| t.exp.total_degree());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Whether any term involves one of the first `k` variables.
    pub fn involves_first(&self, k: usize) -> bool {
        self.terms
            .iter()
            .any(|t| t.exp.exponents()[..k].iter().any(|&e| e > 0))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.num_vars != other.num_vars {
            return Err(PolyError::ArityMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        if self.order != other.order {
            return Err(PolyError::OrderMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let one = self.field.one();
        Ok(self.combine(&one, other, &one, &ExponentVector::one(self.num_vars)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        Ok(self.combine(&one, other, &minus_one, &ExponentVector::one(self.num_vars)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push(Term {
                    coeff: self.field.mul(&a.coeff, &b.coeff),
                    exp: a.exp.checked_mul(&b.exp)?,
                });
            }
        }
        Ok(Self::canonicalize(
            self.field.clone(),
            self.num_vars,
            self.order,
            raw,
        ))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.num_vars, self.order);
        }
        self.map_coeffs(|f, x| f.mul(x, c))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|f, x| f.neg(x))
    }

    pub fn pow(&self, e: u32) -> Result<Self, PolyError> {
        let mut acc = Self::one(self.field.clone(), self.num_vars, self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn map_coeffs(&self, f: impl Fn(&F, &F::Elem) -> F::Elem) -> Self {
        Polynomial {
            field: self.field.clone(),
            num_vars: self.num_vars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f(&self.field, &t.coeff),
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }

    /// `a * self + b * mono * other`, merging sorted term lists. Both operands
    /// must be compatible.
    pub(crate) fn combine(
        &self,
        a: &F::Elem,
        other: &Self,
        b: &F::Elem,
        mono: &ExponentVector,
    ) -> Self {
        let field = &self.field;
        let scale_self = !field.is_one(a);
        let shift = !mono.is_one();
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = other.terms.iter().map(|t| Term {
            coeff: field.mul(&t.coeff, b),
            exp: if shift {
                t.exp.mul(mono)
            } else {
                t.exp.clone()
            },
        });
        let mut pending = right.next();
        loop {
            match (left.peek(), pending.take()) {
                (None, None) => break,
                (Some(_), None) => {
                    let l = left.next().unwrap();
                    out.push(scaled(field, l, a, scale_self));
                }
                (None, Some(r)) => {
                    out.push(r);
                    pending = right.next();
                }
                (Some(l), Some(r)) => match self.order.cmp(&l.exp, &r.exp) {
                    Ordering::Greater => {
                        out.push(scaled(field, l, a, scale_self));
                        left.next();
                        pending = Some(r);
                    }
                    Ordering::Less => {
                        out.push(r);
                        pending = right.next();
                    }
                    Ordering::Equal => {
                        let lc = if scale_self {
                            field.mul(&l.coeff, a)
                        } else {
                            l.coeff.clone()
                        };
                        let c = field.add(&lc, &r.coeff);
                        if !field.is_zero(&c) {
                            out.push(Term {
                                coeff: c,
                                exp: r.exp,
                            });
                        }
                        left.next();
                        pending = right.next();
                    }
                },
            }
        }
        out.retain(|t| !field.is_zero(&t.coeff));
        Polynomial {
            field: field.clone(),
            num_vars: self.num_vars,
            order: self.order,
            terms: out,
        }
    }

    /// `c * mono * self`.
    pub(crate) fn mul_term(&self, c: &F::Elem, mono: &ExponentVector) -> Self {
        Polynomial {
            field: self.field.clone(),
            num_vars: self.num_vars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(&t.coeff, c),
                    exp: t.exp.mul(mono),
                })
                .collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !self.field.is_one(lc) => {
                let inv = self.field.inv(lc);
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Rescales to the field's content-free form (primitive integer
    /// coefficients with positive leading coefficient over `Q`).
    pub fn content_free(mut self) -> Self {
        let mut coeffs: Vec<F::Elem> = self.terms.iter().map(|t| t.coeff.clone()).collect();
        self.field.normalize_content(&mut coeffs);
        for (t, c) in self.terms.iter_mut().zip(coeffs) {
            t.coeff = c;
        }
        self
    }

    /// The same polynomial with terms re-sorted for `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        Self::canonicalize(self.field.clone(), self.num_vars, order, self.terms.clone())
    }

    /// Embeds into a ring with `extra` more variables, placed in front when
    /// `front` is set and after the existing ones otherwise.
    pub fn extend_vars(&self, extra: usize, front: bool, order: MonomialOrder) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                exp: t.exp.extended(extra, front),
            })
            .collect();
        Self::canonicalize(self.field.clone(), self.num_vars + extra, order, raw)
    }

    /// Drops the first `k` variables, which must not occur in any term.
    pub fn drop_front_vars(&self, k: usize, order: MonomialOrder) -> Self {
        assert!(!self.involves_first(k), "dropped variables still occur");
        let raw = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                exp: t.exp.drop_front(k),
            })
            .collect();
        Self::canonicalize(self.field.clone(), self.num_vars - k, order, raw)
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not
    /// divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dl = divisor.leading_term()?;
        let inv = self.field.inv(&dl.coeff);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(lt) = rem.leading_term() {
            let mono = dl.exp.quotient_of(&lt.exp)?;
            let c = self.field.mul(&lt.coeff, &inv);
            let neg = self.field.neg(&c);
            let one = self.field.one();
            rem = rem.combine(&one, divisor, &neg, &mono);
            quot.push(Term {
                coeff: c,
                exp: mono,
            });
        }
        Some(Polynomial {
            field: self.field.clone(),
            num_vars: self.num_vars,
            order: self.order,
            terms: quot,
        })
    }

    pub(crate) fn pop_leading(&mut self) -> Option<Term<F::Elem>> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term smaller than every existing term.
    pub(crate) fn push_smallest(&mut self, t: Term<F::Elem>) {
        debug_assert!(self
            .terms
            .last()
            .is_none_or(|l| self.order.cmp(&l.exp, &t.exp) == Ordering::Greater));
        self.terms.push(t);
    }

    pub(crate) fn coeffs_mut(&mut self) -> impl Iterator<Item = &mut F::Elem> {
        self.terms.iter_mut().map(|t| &mut t.coeff)
    }

    /// Renders with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_text(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

fn scaled<F: Field>(field: &F, t: &Term<F::Elem>, a: &F::Elem, scale: bool) -> Term<F::Elem> {
    Term {
        coeff: if scale {
            field.mul(&t.coeff, a)
        } else {
            t.coeff.clone()
        },
        exp: t.exp.clone(),
    }
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a Polynomial<F>,
    names: &'a [String],
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.poly.terms.iter().enumerate() {
            let (neg, mag) = self.poly.field.display_parts(&t.coeff);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (v, &e) in t.exp.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.names[v], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    fn q(s: &str) -> Polynomial<Rationals> {
        parse_polynomial(s, &names(2), Rationals).unwrap()
    }

    #[test]
    fn additive_inverse() {
        assert!(q("x1").add(&q("x1").neg()).unwrap().is_zero());
        assert!(q("x1").sub(&q("x1")).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = q("x1 + 1").mul(&q("x1 - 1")).unwrap();
        assert_eq!(p, q("x1^2 - 1"));
        assert_eq!(p.to_text(&names(2)), "x1^2 - 1");
    }

    #[test]
    fn mod_five_product() {
        let f = PrimeField::with_any_prime(5).unwrap();
        let a = parse_polynomial("2*x1", &names(2), f).unwrap();
        let b = parse_polynomial("3*x1", &names(2), f).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_text(&names(2)), "x1^2");
    }

    #[test]
    fn mismatches_are_errors() {
        let a = q("x1");
        let b = parse_polynomial("x1", &names(3), Rationals).unwrap();
        assert!(matches!(a.add(&b), Err(PolyError::ArityMismatch { .. })));
        let c = a.with_order(MonomialOrder::Lex);
        assert_eq!(a.mul(&c), Err(PolyError::OrderMismatch));
    }

    #[test]
    fn exponent_overflow_on_mul() {
        let big = Polynomial::from_terms(
            Rationals,
            1,
            MonomialOrder::DegRevLex,
            [(Rationals.one(), ExponentVector::new([u32::MAX]).unwrap())],
        )
        .unwrap();
        let x = Polynomial::variable(Rationals, 1, MonomialOrder::DegRevLex, 0);
        assert_eq!(big.mul(&x), Err(PolyError::ExponentOverflow));
    }

    #[test]
    fn exact_division() {
        let p = q("x1^3*x2 - x1*x2^2 + x1^2 - x2");
        let d = q("x1^2 - x2");
        assert_eq!(p.exact_div(&d).unwrap(), q("x1*x2 + 1"));
        assert!(q("x1^2 + 1").exact_div(&q("x1 + 1")).is_none());
    }

    #[test]
    fn content_free_form() {
        let p = q("-1/2*x1^2 + 3/4*x2").content_free();
        assert_eq!(p, q("2*x1^2 - 3*x2"));
    }
}
