//! Buchberger's algorithm and the leading-term queries built on it:
//! zero-dimensionality, standard monomials, Krull dimension, elimination,
//! ideal quotients and ideal equality.

use std::cmp::Ordering;

use thiserror::Error;

use crate::error::PolyError;
use crate::field::Field;
use crate::ideal::IdealPresentation;
use crate::monomial::{ExponentVector, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error("elimination block size {k} must satisfy 1 <= k < {n}")]
    InvalidBlock { k: usize, n: usize },

    #[error("ideal quotient by the zero polynomial")]
    ZeroDivisor,

    #[error("internal error: intersection generator not divisible by the quotient polynomial")]
    DivisionFailure,
}

/// Dimension of a quotient ring as a vector space over the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl QuotientDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }
}

/// Minimal generators of a monomial ideal; an antichain under divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    num_vars: usize,
    generators: Vec<ExponentVector>,
}

impl Staircase {
    /// Minimalizes the given monomials.
    pub fn new(num_vars: usize, monomials: impl IntoIterator<Item = ExponentVector>) -> Self {
        let mut gens: Vec<ExponentVector> = monomials.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.len() == num_vars));
        gens.sort_by_key(|g| g.total_degree());
        gens.dedup();
        let mut minimal: Vec<ExponentVector> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
        Staircase {
            num_vars,
            generators: minimal,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn contains(&self, m: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_one())
    }

    /// Every variable has a pure power among the generators.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let mut seen = vec![false; self.num_vars];
        for g in &self.generators {
            if let Some(v) = g.pure_power_var() {
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of monomials outside the ideal.
    pub fn standard_monomial_count(&self) -> QuotientDimension {
        if self.is_unit() {
            return QuotientDimension::Finite(0);
        }
        if !self.is_zero_dimensional() {
            return QuotientDimension::Infinite;
        }
        // Standard monomials form an order ideal; walk it once, raising only
        // variables at or after the last one raised.
        let mut count = 0u64;
        let mut stack = vec![(ExponentVector::one(self.num_vars), 0usize)];
        while let Some((m, from)) = stack.pop() {
            count += 1;
            for v in from..self.num_vars {
                let next = m.with_exponent(v, m.exponents()[v] + 1);
                if !self.contains(&next) {
                    stack.push((next, v));
                }
            }
        }
        QuotientDimension::Finite(count)
    }

    /// Krull dimension of the quotient by this monomial ideal: the largest
    /// set of variables containing the support of no generator. `None` for
    /// the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.num_vars;
        assert!(n < 32, "too many variables for subset search");
        let supports: Vec<u64> = self
            .generators
            .iter()
            .map(|g| g.support().fold(0u64, |acc, v| acc | (1 << v)))
            .collect();
        let full: u64 = (1u64 << n) - 1;
        let mut best = 0usize;
        for set in 0..=full {
            let size = set.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Some(best)
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by leading monomial
/// ascending. The unit ideal is `{1}` and the zero ideal has no elements.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    field: F,
    num_vars: usize,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &ExponentVector> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    pub fn staircase(&self) -> Staircase {
        Staircase::new(self.num_vars, self.leading_monomials().cloned())
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.staircase().is_zero_dimensional()
    }

    pub fn standard_monomial_count(&self) -> QuotientDimension {
        self.staircase().standard_monomial_count()
    }

    /// Krull dimension of the quotient ring, `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        self.staircase().dimension()
    }

    /// Remainder of `p` on division by the basis: no term of the result is
    /// divisible by a leading monomial, and `p - result` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>, PolyError> {
        if p.field() != &self.field {
            return Err(PolyError::FieldMismatch);
        }
        if p.num_vars() != self.num_vars {
            return Err(PolyError::ArityMismatch {
                expected: self.num_vars,
                found: p.num_vars(),
            });
        }
        let reducers: Vec<&Polynomial<F>> = self.elements.iter().collect();
        Ok(reduce(p.with_order(self.order), &reducers, false))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool, PolyError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Checks Buchberger's criterion directly: every S-polynomial reduces to
    /// zero.
    pub fn s_polynomials_reduce_to_zero(&self) -> bool {
        let reducers: Vec<&Polynomial<F>> = self.elements.iter().collect();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                if !reduce(s, &reducers, false).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic, inter-reduced, and sorted; the canonical-form invariants.
    pub fn is_reduced(&self) -> bool {
        let field = &self.field;
        for (i, g) in self.elements.iter().enumerate() {
            if !g.leading_coeff().is_some_and(|c| field.is_one(c)) {
                return false;
            }
            for (j, h) in self.elements.iter().enumerate() {
                let lm = h.leading_monomial().unwrap();
                if i != j && g.terms().iter().any(|t| lm.divides(&t.exp)) {
                    return false;
                }
            }
        }
        self.elements.windows(2).all(|w| {
            self.order.cmp(
                w[0].leading_monomial().unwrap(),
                w[1].leading_monomial().unwrap(),
            ) == Ordering::Less
        })
    }

    pub fn element_texts(&self, names: &[String]) -> Vec<String> {
        self.elements.iter().map(|g| g.to_text(names)).collect()
    }
}

/// S-polynomial of two nonzero polynomials, scaled to avoid denominators.
fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (lf, lg) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let lcm = lf.exp.lcm(&lg.exp);
    let uf = lf.exp.quotient_of(&lcm).unwrap();
    let ug = lg.exp.quotient_of(&lcm).unwrap();
    let field = f.field();
    // a * lc(g) == b * lc(f)
    let (a, b) = field.cancel_factors(&lg.coeff, &lf.coeff);
    let one = field.one();
    f.mul_term(&b, &uf).combine(&one, g, &field.neg(&a), &ug)
}

const CONTENT_INTERVAL: usize = 16;

/// Full reduction of `p` by `reducers`. With `fraction_free`, the result is
/// only determined up to a nonzero scalar and is returned content-free;
/// otherwise it is the exact remainder.
fn reduce<F: Field>(
    mut p: Polynomial<F>,
    reducers: &[&Polynomial<F>],
    fraction_free: bool,
) -> Polynomial<F> {
    let field = p.field().clone();
    let one = field.one();
    let mut rem = Polynomial::zero(field.clone(), p.num_vars(), p.order());
    let mut steps = 0usize;
    while let Some(lt) = p.leading_term() {
        let divisor = reducers.iter().find_map(|g| {
            g.leading_monomial()
                .and_then(|lm| lm.quotient_of(&lt.exp))
                .map(|u| (*g, u))
        });
        match divisor {
            Some((g, u)) => {
                let lc_g = g.leading_coeff().unwrap();
                if fraction_free {
                    let (a, b) = field.cancel_factors(&lt.coeff, lc_g);
                    if !field.is_one(&a) {
                        rem = rem.scale(&a);
                    }
                    p = p.combine(&a, g, &field.neg(&b), &u);
                    steps += 1;
                    if steps.is_multiple_of(CONTENT_INTERVAL) {
                        normalize_jointly(&mut rem, &mut p);
                    }
                } else {
                    let b = field.div(&lt.coeff, lc_g);
                    p = p.combine(&one, g, &field.neg(&b), &u);
                }
            }
            None => {
                let t = p.pop_leading().unwrap();
                rem.push_smallest(t);
            }
        }
    }
    if fraction_free {
        rem.content_free()
    } else {
        rem
    }
}

fn normalize_jointly<F: Field>(rem: &mut Polynomial<F>, p: &mut Polynomial<F>) {
    let field = p.field().clone();
    let mut coeffs: Vec<F::Elem> = rem
        .terms()
        .iter()
        .chain(p.terms())
        .map(|t| t.coeff.clone())
        .collect();
    if coeffs.is_empty() {
        return;
    }
    field.normalize_content(&mut coeffs);
    for (slot, c) in rem.coeffs_mut().chain(p.coeffs_mut()).zip(coeffs) {
        *slot = c;
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
    sugar: u32,
}

/// Working state of one Buchberger run.
struct Builder<F: Field> {
    order: MonomialOrder,
    basis: Vec<Polynomial<F>>,
    /// Sugar degree of each basis element.
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> Builder<F> {
    fn reducers(&self) -> Vec<&Polynomial<F>> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(g, _)| g)
            .collect()
    }

    fn lm(&self, i: usize) -> &ExponentVector {
        self.basis[i].leading_monomial().unwrap()
    }

    /// Inserts `h` and updates the pair set with the Gebauer–Möller criteria.
    fn insert(&mut self, h: Polynomial<F>, sugar: u32) {
        let hi = self.basis.len();
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(false);
        let h_lm = self.lm(hi).clone();

        let mut candidates: Vec<(usize, ExponentVector, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lm = self.lm(g);
                (g, h_lm.lcm(lm), h_lm.is_coprime(lm))
            })
            .collect();
        // Keep the earliest of each lcm class; prefer coprime representatives.
        candidates.sort_by(|a, b| {
            self.order
                .cmp(&a.1, &b.1)
                .then(b.2.cmp(&a.2))
                .then(a.0.cmp(&b.0))
        });

        let mut kept: Vec<(usize, ExponentVector, bool)> = Vec::new();
        for (idx, (g, lcm, coprime)) in candidates.iter().enumerate() {
            let later_divides = candidates[idx + 1..]
                .iter()
                .any(|(_, l2, _)| l2.divides(lcm));
            let kept_divides = kept.iter().any(|(_, l2, _)| l2.divides(lcm));
            if *coprime || (!later_divides && !kept_divides) {
                kept.push((*g, lcm.clone(), *coprime));
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|p| {
            let li = basis[p.i].leading_monomial().unwrap();
            let lj = basis[p.j].leading_monomial().unwrap();
            !(h_lm.divides(&p.lcm) && li.lcm(&h_lm) != p.lcm && lj.lcm(&h_lm) != p.lcm)
        });
        self.pairs.extend(
            kept.into_iter()
                .filter(|(_, _, coprime)| !coprime)
                .map(|(g, lcm, _)| {
                    let sugar = self.pair_sugar(g, hi, &lcm);
                    Pair {
                        i: g,
                        j: hi,
                        lcm,
                        sugar,
                    }
                })
                .collect::<Vec<_>>(),
        );

        for g in 0..hi {
            if self.active[g] && h_lm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    /// Sugar degree the S-polynomial of `i` and `j` would have if its
    /// inputs were homogenized.
    fn pair_sugar(&self, i: usize, j: usize, lcm: &ExponentVector) -> u32 {
        let d = lcm.total_degree();
        (self.sugar[i] + d - self.lm(i).total_degree())
            .max(self.sugar[j] + d - self.lm(j).total_degree())
    }

    /// Sugar strategy: smallest sugar, then smallest lcm. For homogeneous
    /// input under a degree order this is the normal strategy.
    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`, all living
/// in the same ring.
pub fn groebner_basis<F: Field>(
    generators: &[Polynomial<F>],
    field: &F,
    num_vars: usize,
    order: MonomialOrder,
) -> GroebnerBasis<F> {
    let unit = || GroebnerBasis {
        order,
        elements: vec![Polynomial::one(field.clone(), num_vars, order)],
        field: field.clone(),
        num_vars,
    };

    let mut gens: Vec<Polynomial<F>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).content_free())
        .collect();
    if gens.iter().any(|g| g.is_constant()) {
        return unit();
    }
    gens.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut b = Builder {
        order,
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let sugar = g.total_degree().unwrap_or(0);
        let h = reduce(g, &b.reducers(), true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        b.insert(h, sugar);
    }
    while let Some(pair) = b.next_pair() {
        let s = s_polynomial(&b.basis[pair.i], &b.basis[pair.j]);
        let h = reduce(s, &b.reducers(), true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        let sugar = pair.sugar.max(h.total_degree().unwrap_or(0));
        b.insert(h, sugar);
    }

    // The active set has pairwise non-dividing leading monomials; inter-reduce
    // the tails and normalize.
    let minimal: Vec<Polynomial<F>> = b
        .basis
        .iter()
        .zip(&b.active)
        .filter(|(_, a)| **a)
        .map(|(g, _)| g.monic())
        .collect();
    let mut elements: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g)
                .collect();
            reduce(minimal[i].clone(), &others, false).monic()
        })
        .collect();
    elements
        .sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    GroebnerBasis {
        order,
        elements,
        field: field.clone(),
        num_vars,
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger<F: Field>(
    ideal: &IdealPresentation<F>,
    order: MonomialOrder,
) -> GroebnerBasis<F> {
    groebner_basis(ideal.generators(), ideal.field(), ideal.num_vars(), order)
}

/// Generators of the intersection of the ideal with the subring in the last
/// `n - k` variables. A trivial intersection is presented by `0`.
pub fn eliminate<F: Field>(
    ideal: &IdealPresentation<F>,
    k: usize,
) -> Result<IdealPresentation<F>, GroebnerError> {
    let n = ideal.num_vars();
    if k == 0 || k >= n {
        return Err(GroebnerError::InvalidBlock { k, n });
    }
    let gb = buchberger(ideal, MonomialOrder::Block(k));
    let mut gens: Vec<Polynomial<F>> = gb
        .elements()
        .iter()
        .filter(|g| !g.involves_first(k))
        .map(|g| g.drop_front_vars(k, MonomialOrder::DegRevLex))
        .collect();
    if gens.is_empty() {
        gens.push(Polynomial::zero(
            ideal.field().clone(),
            n - k,
            MonomialOrder::DegRevLex,
        ));
    }
    Ok(IdealPresentation::new(
        ideal.var_names()[k..].to_vec(),
        gens,
        None,
    )?)
}

/// Generators of `(a : f) = { g : g f ∈ a }`, via `a ∩ (f)` computed by
/// eliminating an auxiliary variable from `t a + (1 - t) f`.
pub fn ideal_quotient<F: Field>(
    a: &IdealPresentation<F>,
    f: &Polynomial<F>,
) -> Result<IdealPresentation<F>, GroebnerError> {
    if f.is_zero() {
        return Err(GroebnerError::ZeroDivisor);
    }
    if f.field() != a.field() {
        return Err(PolyError::FieldMismatch.into());
    }
    let n = a.num_vars();
    if f.num_vars() != n {
        return Err(PolyError::ArityMismatch {
            expected: n,
            found: f.num_vars(),
        }
        .into());
    }
    let field = a.field().clone();
    let f = f.with_order(MonomialOrder::DegRevLex);
    if a.is_zero_ideal() {
        return Ok(a.clone());
    }

    let ord = MonomialOrder::Block(1);
    let t = Polynomial::variable(field.clone(), n + 1, ord, 0);
    let one_minus_t = Polynomial::one(field.clone(), n + 1, ord).sub(&t)?;
    let gb_a = buchberger(a, MonomialOrder::DegRevLex);
    if gb_a.is_unit() {
        return Ok(a.clone());
    }
    let mut aux: Vec<Polynomial<F>> = gb_a
        .elements()
        .iter()
        .map(|g| t.mul(&g.extend_vars(1, true, ord)))
        .collect::<Result<_, _>>()?;
    aux.push(one_minus_t.mul(&f.extend_vars(1, true, ord))?);

    let gb = groebner_basis(&aux, &field, n + 1, ord);
    let mut gens = Vec::new();
    for g in gb.elements().iter().filter(|g| !g.involves_first(1)) {
        let g = g.drop_front_vars(1, MonomialOrder::DegRevLex);
        gens.push(
            g.exact_div(&f)
                .ok_or(GroebnerError::DivisionFailure)?
                .content_free(),
        );
    }
    if gens.is_empty() {
        gens.push(Polynomial::zero(field, n, MonomialOrder::DegRevLex));
    }
    Ok(IdealPresentation::new(a.var_names().to_vec(), gens, None)?)
}

/// Equality of ideals, by comparing reduced degrevlex bases.
pub fn ideal_equal<F: Field>(
    a: &IdealPresentation<F>,
    b: &IdealPresentation<F>,
) -> Result<bool, PolyError> {
    if a.num_vars() != b.num_vars() {
        return Err(PolyError::ArityMismatch {
            expected: a.num_vars(),
            found: b.num_vars(),
        });
    }
    if a.field() != b.field() {
        return Err(PolyError::FieldMismatch);
    }
    let ga = buchberger(a, MonomialOrder::DegRevLex);
    let gb = buchberger(b, MonomialOrder::DegRevLex);
    Ok(ga.elements() == gb.elements())
}
