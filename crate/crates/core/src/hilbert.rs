//! Independent degree oracle from the Hilbert series of the homogenized
//! ideal.
//!
//! A degrevlex Gröbner basis homogenizes to a Gröbner basis of the
//! homogenized ideal, so the leading-term ideal (and with it the Hilbert
//! series) is available combinatorially. Writing the series as
//! `h(t) / (1 - t)^(n + 1)` and cancelling `(1 - t)` factors gives
//! `g(t) / (1 - t)^(d + 1)` with `g(1) != 0`; then `d` is the dimension and
//! `g(1)` the degree.

use serde::Serialize;
use thiserror::Error;

use crate::error::PolyError;
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis, Staircase};
use crate::ideal::IdealPresentation;
use crate::monomial::{ExponentVector, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error("homogenization needs a degree-compatible order, got {0}")]
    NotDegreeCompatible(String),

    #[error("the unit ideal has no Hilbert degree")]
    UnitIdeal,
}

/// Hilbert series data of a homogeneous quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `h(t)`, lowest degree first, for the series `h(t) / (1 - t)^num_vars`.
    pub numerator: Vec<i64>,
    /// `g(t)` with `h(t) = g(t) (1 - t)^(num_vars - d - 1)` and `g(1) != 0`.
    pub reduced_numerator: Vec<i64>,
    pub projective_dimension: usize,
    pub degree: u64,
}

impl HilbertData {
    /// Builds the data from the numerator over `(1 - t)^num_vars`. `None`
    /// when the numerator is zero (the quotient is zero).
    pub fn from_numerator(numerator: Vec<i64>, num_vars: usize) -> Option<Self> {
        if numerator.iter().all(|&c| c == 0) {
            return None;
        }
        let mut g = trim(numerator.clone());
        let mut removed = 0usize;
        while g.iter().sum::<i64>() == 0 {
            g = divide_by_one_minus_t(&g);
            removed += 1;
        }
        let value: i64 = g.iter().sum();
        assert!(value > 0, "Hilbert numerator with negative value at 1");
        Some(HilbertData {
            numerator: trim(numerator),
            reduced_numerator: g,
            projective_dimension: num_vars - removed - 1,
            degree: value as u64,
        })
    }

    /// Dimension of the affine ideal whose homogenization produced this data.
    pub fn affine_dimension(&self) -> usize {
        self.projective_dimension
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

// Exact division by (1 - t); the caller guarantees p(1) = 0.
fn divide_by_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - t) q  =>  q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len());
    let mut acc = 0i64;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    trim(q)
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn shift(a: &[i64], by: usize) -> Vec<i64> {
    let mut out = vec![0i64; by];
    out.extend_from_slice(a);
    out
}

// a(t) * (1 - t^e)
fn times_one_minus_t_to(a: &[i64], e: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    out.resize(a.len() + e, 0);
    for i in (e..out.len()).rev() {
        out[i] -= out[i - e];
    }
    trim(out)
}

// a(t) * (1 - t)^k
#[cfg(test)]
fn times_one_minus_t_power(a: &[i64], k: usize) -> Vec<i64> {
    (0..k).fold(a.to_vec(), |acc, _| times_one_minus_t_to(&acc, 1))
}

fn minimalize(gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    let n = gens.first().map_or(0, |g| g.len());
    Staircase::new(n, gens).generators().to_vec()
}

fn numerator_rec(gens: Vec<ExponentVector>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let n = gens[0].len();
    let mixed: Vec<&ExponentVector> = gens
        .iter()
        .filter(|g| g.pure_power_var().is_none())
        .collect();
    if mixed.is_empty() {
        // Pure powers of distinct variables: a complete intersection.
        return gens.iter().fold(vec![1], |acc, g| {
            times_one_minus_t_to(&acc, g.total_degree() as usize)
        });
    }
    let mut freq = vec![0usize; n];
    for g in &mixed {
        for v in g.support() {
            freq[v] += 1;
        }
    }
    let pivot = (0..n)
        .max_by_key(|&v| (freq[v], std::cmp::Reverse(v)))
        .unwrap();
    let power = mixed
        .iter()
        .map(|g| g.exponents()[pivot])
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let p = ExponentVector::pure_power(n, pivot, power);

    // HN(I) = HN(I + (p)) + t^deg(p) HN(I : p)
    let mut with_p = gens.clone();
    with_p.push(p.clone());
    let quotient: Vec<ExponentVector> = gens
        .iter()
        .map(|g| g.with_exponent(pivot, g.exponents()[pivot].saturating_sub(power)))
        .collect();
    let left = numerator_rec(minimalize(with_p));
    let right = numerator_rec(minimalize(quotient));
    add(&left, &shift(&right, power as usize))
}

/// Numerator `h(t)` of the Hilbert series `h(t) / (1 - t)^num_vars` of the
/// quotient by the monomial ideal, lowest degree first.
pub fn hilbert_numerator(staircase: &Staircase, num_vars: usize) -> Vec<i64> {
    assert_eq!(
        staircase.num_vars(),
        num_vars,
        "staircase lives in a different ring"
    );
    numerator_rec(staircase.generators().to_vec())
}

fn fresh_name(names: &[String]) -> String {
    let mut candidate = "x0".to_string();
    while names.contains(&candidate) {
        candidate.push('_');
    }
    candidate
}

/// Homogenizes each element of a degrevlex basis with a new variable placed
/// after the existing ones. The result is a Gröbner basis of the
/// homogenized ideal under degrevlex.
pub fn homogenize_basis<F: Field>(
    gb: &GroebnerBasis<F>,
    var_names: &[String],
) -> Result<IdealPresentation<F>, HilbertError> {
    if !gb.order().is_degree_compatible() {
        return Err(HilbertError::NotDegreeCompatible(gb.order().name()));
    }
    if var_names.len() != gb.num_vars() {
        return Err(PolyError::ArityMismatch {
            expected: gb.num_vars(),
            found: var_names.len(),
        }
        .into());
    }
    let n = gb.num_vars();
    let order = MonomialOrder::DegRevLex;
    let mut gens = Vec::with_capacity(gb.elements().len().max(1));
    for g in gb.elements() {
        let d = g.total_degree().unwrap_or(0);
        let terms = g.terms().iter().map(|t| {
            let mut e = t.exp.exponents().to_vec();
            e.push(d - t.exp.total_degree());
            (
                t.coeff.clone(),
                ExponentVector::new(e).expect("degree bounded by input"),
            )
        });
        gens.push(Polynomial::from_terms(
            gb.field().clone(),
            n + 1,
            order,
            terms,
        )?);
    }
    if gens.is_empty() {
        gens.push(Polynomial::zero(gb.field().clone(), n + 1, order));
    }
    let mut names = var_names.to_vec();
    names.push(fresh_name(var_names));
    Ok(IdealPresentation::new(names, gens, None)?)
}

/// Dimension and degree of `a` read off the Hilbert series of its
/// homogenization.
pub fn hilbert_degree_oracle<F: Field>(
    a: &IdealPresentation<F>,
) -> Result<HilbertData, HilbertError> {
    let gb = buchberger(a, MonomialOrder::DegRevLex);
    if gb.is_unit() {
        return Err(HilbertError::UnitIdeal);
    }
    let homogenized = homogenize_basis(&gb, a.var_names())?;
    let n1 = homogenized.num_vars();
    let staircase = Staircase::new(
        n1,
        homogenized
            .generators()
            .iter()
            .filter_map(|g| g.leading_monomial().cloned()),
    );
    let numerator = hilbert_numerator(&staircase, n1);
    HilbertData::from_numerator(numerator, n1).ok_or(HilbertError::UnitIdeal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::groebner::groebner_basis;

    fn ideal(vars: &[&str], gens: &[&str]) -> IdealPresentation<Rationals> {
        IdealPresentation::parse(vars, gens, Rationals).unwrap()
    }

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.iter().copied()).unwrap()
    }

    const X: [&str; 2] = ["x1", "x2"];

    fn homogenized_texts(vars: &[&str], gens: &[&str]) -> Vec<String> {
        let a = ideal(vars, gens);
        let gb = buchberger(&a, MonomialOrder::DegRevLex);
        let h = homogenize_basis(&gb, a.var_names()).unwrap();
        h.generator_texts()
    }

    #[test]
    fn homogenization_examples() {
        assert_eq!(homogenized_texts(&X, &["x1^2 - 1"]), vec!["x1^2 - x0^2"]);
        assert_eq!(
            homogenized_texts(&X, &["x1^3", "x1^2*x2"]),
            vec!["x1^2*x2", "x1^3"]
        );
        assert_eq!(homogenized_texts(&X, &["x2 - x1^2"]), vec!["x1^2 - x2*x0"]);
    }

    #[test]
    fn homogenization_needs_degrevlex() {
        let a = ideal(&X, &["x1^2 - x2"]);
        let gb = buchberger(&a, MonomialOrder::Lex);
        assert!(matches!(
            homogenize_basis(&gb, a.var_names()),
            Err(HilbertError::NotDegreeCompatible(_))
        ));
    }

    #[test]
    fn homogenized_basis_is_a_basis() {
        let a = ideal(&["x1", "x2", "x3"], &["x2 - x1^2", "x3 - x1^3"]);
        let gb = buchberger(&a, MonomialOrder::DegRevLex);
        let h = homogenize_basis(&gb, a.var_names()).unwrap();
        let hgb = groebner_basis(h.generators(), &Rationals, 4, MonomialOrder::DegRevLex);
        let lms: Vec<_> = h
            .generators()
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        assert_eq!(hgb.staircase(), Staircase::new(4, lms));
        for g in h.generators() {
            assert!(g.is_homogeneous());
        }
    }

    #[test]
    fn numerator_examples() {
        let s = Staircase::new(3, [ev(&[0, 3, 0]), ev(&[0, 2, 1])]);
        assert_eq!(hilbert_numerator(&s, 3), vec![1, 0, 0, -2, 1]);
        assert_eq!(hilbert_numerator(&Staircase::new(3, []), 3), vec![1]);
        assert_eq!(
            hilbert_numerator(&Staircase::new(2, [ev(&[1, 0])]), 2),
            vec![1, -1]
        );
    }

    /// Brute force: h(t) = (1 - t)^n * sum_k HF(k) t^k, truncated, with HF
    /// counted by enumerating monomials of each degree.
    fn brute_numerator(s: &Staircase, n: usize, max_deg: usize) -> Vec<i64> {
        fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
            if n == 1 {
                return vec![vec![d]];
            }
            (0..=d)
                .flat_map(|k| {
                    monomials(n - 1, d - k).into_iter().map(move |mut rest| {
                        rest.insert(0, k);
                        rest
                    })
                })
                .collect()
        }
        let hf: Vec<i64> = (0..=max_deg as u32)
            .map(|d| {
                monomials(n, d)
                    .into_iter()
                    .filter(|m| !s.contains(&ev(m)))
                    .count() as i64
            })
            .collect();
        let mut series = times_one_minus_t_power(&hf, n);
        series.resize(max_deg + 1 + n, 0);
        series.truncate(max_deg + 1);
        series
    }

    #[test]
    fn numerator_matches_brute_force() {
        let cases: Vec<(usize, Vec<Vec<u32>>)> = vec![
            (3, vec![vec![2, 1, 0], vec![0, 2, 2], vec![1, 0, 3]]),
            (3, vec![vec![1, 1, 1]]),
            (
                4,
                vec![
                    vec![1, 1, 0, 0],
                    vec![0, 1, 1, 0],
                    vec![0, 0, 1, 1],
                    vec![2, 0, 0, 0],
                ],
            ),
            (2, vec![vec![3, 0], vec![1, 2], vec![0, 4]]),
            (
                4,
                vec![
                    vec![1, 0, 1, 0],
                    vec![1, 0, 0, 1],
                    vec![0, 1, 1, 0],
                    vec![0, 1, 0, 1],
                ],
            ),
        ];
        for (n, gens) in cases {
            let s = Staircase::new(n, gens.iter().map(|g| ev(g)));
            let h = hilbert_numerator(&s, n);
            let max_deg = h.len() + 4;
            let expected = brute_numerator(&s, n, max_deg);
            let mut padded = h.clone();
            padded.resize(max_deg + 1, 0);
            assert_eq!(expected, padded, "staircase {gens:?}");
        }
    }

    #[test]
    fn oracle_examples() {
        let d = hilbert_degree_oracle(&ideal(&X, &["x1^2"])).unwrap();
        assert_eq!((d.affine_dimension(), d.degree), (1, 2));
        assert_eq!(d.numerator, vec![1, 0, -1]);
        assert_eq!(d.reduced_numerator, vec![1, 1]);

        let d = hilbert_degree_oracle(&ideal(&X, &["x1^3", "x1^2*x2"])).unwrap();
        assert_eq!((d.affine_dimension(), d.degree), (1, 2));
        assert_eq!(d.reduced_numerator, vec![1, 1, 1, -1]);

        let d = hilbert_degree_oracle(&ideal(&X, &["x1^2 - 1", "x2^2 - 1"])).unwrap();
        assert_eq!((d.affine_dimension(), d.degree), (0, 4));

        assert_eq!(
            hilbert_degree_oracle(&ideal(&X, &["x1", "x1 + 1"])),
            Err(HilbertError::UnitIdeal)
        );
        let z = hilbert_degree_oracle(&ideal(&X, &["0"])).unwrap();
        assert_eq!((z.affine_dimension(), z.degree), (2, 1));
    }

    #[test]
    fn numerator_factorization_invariant() {
        for gens in [
            &["x1^3", "x1^2*x2"][..],
            &["x1*x2"],
            &["x1^2 + x2^2 - 1"],
            &["x1^2", "x2^3"],
        ] {
            let d = hilbert_degree_oracle(&ideal(&X, gens)).unwrap();
            let rebuilt = times_one_minus_t_power(&d.reduced_numerator, 2 - d.projective_dimension);
            assert_eq!(rebuilt, d.numerator);
            assert!(d.reduced_numerator.iter().sum::<i64>() > 0);
            if d.projective_dimension > 0 {
                assert_eq!(d.numerator.iter().sum::<i64>(), 0);
            }
        }
    }
}
