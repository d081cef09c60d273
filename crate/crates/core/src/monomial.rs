//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::PolyError;

type Exponents = SmallVec<[u32; 8]>;

/// Exponent vector of a monomial `x_1^e_1 ... x_n^e_n`, with its total degree
/// cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: Exponents,
    degree: u32,
}

impl ExponentVector {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Result<Self, PolyError> {
        let exps: Exponents = exps.into_iter().collect();
        let mut degree = 0u32;
        for &e in &exps {
            degree = degree.checked_add(e).ok_or(PolyError::ExponentOverflow)?;
        }
        Ok(ExponentVector { exps, degree })
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        ExponentVector {
            exps: SmallVec::from_elem(0, n),
            degree: 0,
        }
    }

    /// The monomial `x_var^power`.
    pub fn pure_power(n: usize, var: usize, power: u32) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, n);
        exps[var] = power;
        ExponentVector {
            exps,
            degree: power,
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        debug_assert_eq!(self.len(), other.len());
        let mut exps = Exponents::with_capacity(self.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(PolyError::ExponentOverflow)?);
        }
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or(PolyError::ExponentOverflow)?;
        Ok(ExponentVector { exps, degree })
    }

    /// Product, panicking on overflow. Used on hot paths where exponents are
    /// bounded by the inputs.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exponents = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Some(ExponentVector {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        ExponentVector { exps, degree }
    }

    /// True when the two monomials share no variable.
    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `x_i^e` with `e > 0`, the variable index `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Same exponents with `extra` zero slots appended or, when `front` is
    /// set, prepended.
    pub fn extended(&self, extra: usize, front: bool) -> Self {
        let mut exps = Exponents::with_capacity(self.len() + extra);
        if front {
            exps.extend(std::iter::repeat_n(0, extra));
        }
        exps.extend_from_slice(&self.exps);
        if !front {
            exps.extend(std::iter::repeat_n(0, extra));
        }
        ExponentVector {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `k` slots. Callers ensure those slots are zero.
    pub fn drop_front(&self, k: usize) -> Self {
        debug_assert!(self.exps[..k].iter().all(|&e| e == 0));
        ExponentVector {
            exps: self.exps[k..].iter().copied().collect(),
            degree: self.degree,
        }
    }

    pub(crate) fn with_exponent(&self, var: usize, e: u32) -> Self {
        let mut exps = self.exps.clone();
        let degree = self.degree - exps[var] + e;
        exps[var] = e;
        ExponentVector { exps, degree }
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A monomial order on exponent vectors of a fixed length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Elimination order: degrevlex on the first `k` variables, ties broken
    /// by degrevlex on the rest.
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering, PolyError> {
        if a.len() != b.len() {
            return Err(PolyError::ArityMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        Ok(self.cmp(a, b))
    }

    /// Comparison for vectors known to have equal length.
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a
                .degree
                .cmp(&b.degree)
                .then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let d1 = a1.iter().sum::<u32>().cmp(&b1.iter().sum::<u32>());
                d1.then_with(|| revlex(a1, b1))
                    .then_with(|| a2.iter().sum::<u32>().cmp(&b2.iter().sum::<u32>()))
                    .then_with(|| revlex(a2, b2))
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::DegRevLex => "degrevlex".to_string(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

// Smaller exponent in the last differing slot wins.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
