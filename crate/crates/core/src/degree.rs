//! Degree of an equidimensional ideal by random affine sections.
//!
//! For an ideal of dimension `m`, adding `m` generic degree-one polynomials
//! leaves a zero-dimensional ideal whose quotient has dimension equal to the
//! degree. Generic coefficients are replaced by uniform integers from
//! `[-B, B]`; a degenerate draw can overshoot or undershoot, so the reported
//! value is the strict majority over independent trials, escalating the
//! bound and trial count when no majority emerges.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::PolyError;
use crate::field::{CoefficientField, Field};
use crate::groebner::{buchberger, QuotientDimension};
use crate::ideal::IdealPresentation;
use crate::monomial::{ExponentVector, MonomialOrder};
use crate::poly::Polynomial;

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_COEFFICIENT_BOUND: u64 = 1 << 16;
/// Rounds of doubling both bound and trial count before giving up.
pub const MAX_ESCALATIONS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: asserted {asserted}, computed {}", fmt_dim(.computed))]
    DimensionMismatch {
        asserted: usize,
        computed: Option<usize>,
    },

    #[error("no majority among trial counts after escalation: {tally:?}")]
    NoConsensus { tally: BTreeMap<u64, usize> },

    #[error("no trial produced a zero-dimensional section after escalation")]
    AllTrialsFailed,
}

fn fmt_dim(d: &Option<usize>) -> String {
    match d {
        Some(d) => d.to_string(),
        None => "-1 (unit ideal)".to_string(),
    }
}

/// `a_1 x_1 + ... + a_n x_n + a_0` with not all of `a_1..a_n` zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm<F: Field> {
    coefficients: Vec<F::Elem>,
    constant: F::Elem,
}

impl<F: Field> LinearForm<F> {
    pub fn new(
        field: &F,
        coefficients: Vec<F::Elem>,
        constant: F::Elem,
    ) -> Result<Self, DegreeError> {
        if coefficients.iter().all(|c| field.is_zero(c)) {
            return Err(DegreeError::InvalidParameters(
                "a linear form needs a nonzero homogeneous part".into(),
            ));
        }
        Ok(LinearForm {
            coefficients,
            constant,
        })
    }

    pub fn coefficients(&self) -> &[F::Elem] {
        &self.coefficients
    }

    pub fn constant(&self) -> &F::Elem {
        &self.constant
    }

    pub fn to_polynomial(&self, field: &F, order: MonomialOrder) -> Polynomial<F> {
        let n = self.coefficients.len();
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), ExponentVector::pure_power(n, i, 1)))
            .chain(std::iter::once((
                self.constant.clone(),
                ExponentVector::one(n),
            )));
        Polynomial::from_terms(field.clone(), n, order, terms).expect("arity matches")
    }
}

/// Result of cutting with one set of forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrialResult {
    Count(u64),
    /// The section was not zero-dimensional; `empty_variety` marks the case
    /// where it was the unit ideal.
    NotZeroDimensional {
        empty_variety: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome<F: Field> {
    pub forms: Vec<LinearForm<F>>,
    pub result: TrialResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeConfig {
    pub trials: usize,
    pub seed: u64,
    pub coefficient_bound: u64,
    pub order: MonomialOrder,
}

impl Default for DegreeConfig {
    fn default() -> Self {
        DegreeConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            coefficient_bound: DEFAULT_COEFFICIENT_BOUND,
            order: MonomialOrder::DegRevLex,
        }
    }
}

impl DegreeConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        DegreeConfig { seed, ..self }
    }
}

/// Degree with its supporting evidence. `trials` and `coefficient_bound`
/// describe the final round.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport<F: Field> {
    pub degree: u64,
    pub trials: Vec<TrialOutcome<F>>,
    pub seed: u64,
    pub coefficient_bound: u64,
    pub field: CoefficientField,
    pub escalations: u32,
    agreeing: u64,
    successful: u64,
}

impl<F: Field> DegreeReport<F> {
    /// Trials reporting `degree` over trials that produced a count.
    pub fn agreement_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.agreeing, self.successful)
    }

    pub fn failed_trials(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| matches!(t.result, TrialResult::NotZeroDimensional { .. }))
            .count()
    }

    pub fn to_json(&self) -> DegreeReportJson {
        DegreeReportJson {
            degree: self.degree,
            seed: self.seed,
            coefficient_bound: self.coefficient_bound,
            field: self.field.short_name(),
            prime: self.field.prime(),
            trials: self
                .trials
                .iter()
                .map(|t| match t.result {
                    TrialResult::Count(n) => TrialJson {
                        result: "count",
                        count: Some(n),
                    },
                    TrialResult::NotZeroDimensional { .. } => TrialJson {
                        result: "not_zero_dimensional",
                        count: None,
                    },
                })
                .collect(),
            agreement_ratio: self.agreement_ratio().to_string(),
        }
    }
}

/// Wire form of a [`DegreeReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReportJson {
    pub degree: u64,
    pub seed: u64,
    pub coefficient_bound: u64,
    pub field: &'static str,
    pub prime: Option<u64>,
    pub trials: Vec<TrialJson>,
    pub agreement_ratio: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialJson {
    pub result: &'static str,
    pub count: Option<u64>,
}

/// Seed for trial `index` of escalation round `round`.
pub fn trial_seed(seed: u64, round: u32, index: usize) -> u64 {
    let mut z = splitmix64(seed ^ splitmix64((round as u64) << 32 | index as u64));
    z ^= seed.rotate_left(17);
    splitmix64(z)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `m` affine linear forms in `n` variables with coefficients uniform in
/// `[-bound, bound]`, deterministic in all arguments.
pub fn random_linear_forms<F: Field>(
    n: usize,
    m: usize,
    seed: u64,
    bound: u64,
    field: &F,
) -> Result<Vec<LinearForm<F>>, DegreeError> {
    if m > n {
        return Err(DegreeError::InvalidParameters(format!(
            "cannot cut {n} variables with {m} forms"
        )));
    }
    if bound < 2 || bound > i64::MAX as u64 {
        return Err(DegreeError::InvalidParameters(format!(
            "coefficient bound {bound} out of range"
        )));
    }
    let b = bound as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut forms = Vec::with_capacity(m);
    while forms.len() < m {
        let coefficients: Vec<F::Elem> = (0..n)
            .map(|_| field.from_i64(rng.gen_range(-b..=b)))
            .collect();
        let constant = field.from_i64(rng.gen_range(-b..=b));
        if let Ok(f) = LinearForm::new(field, coefficients, constant) {
            forms.push(f);
        }
    }
    Ok(forms)
}

/// Cuts `a` with the given forms and counts standard monomials of the
/// result.
pub fn degree_trial<F: Field>(
    a: &IdealPresentation<F>,
    m: usize,
    forms: &[LinearForm<F>],
    order: MonomialOrder,
) -> Result<TrialOutcome<F>, DegreeError> {
    if forms.len() != m {
        return Err(DegreeError::InvalidParameters(format!(
            "expected {m} forms, got {}",
            forms.len()
        )));
    }
    if let Some(f) = forms.iter().find(|f| f.coefficients.len() != a.num_vars()) {
        return Err(PolyError::ArityMismatch {
            expected: a.num_vars(),
            found: f.coefficients.len(),
        }
        .into());
    }
    let field = a.field();
    let polys: Vec<Polynomial<F>> = forms
        .iter()
        .map(|f| f.to_polynomial(field, MonomialOrder::DegRevLex))
        .collect();
    let gb = buchberger(&a.plus(&polys)?, order);
    let result = if gb.is_unit() {
        TrialResult::NotZeroDimensional {
            empty_variety: true,
        }
    } else {
        match gb.standard_monomial_count() {
            QuotientDimension::Finite(n) => TrialResult::Count(n),
            QuotientDimension::Infinite => TrialResult::NotZeroDimensional {
                empty_variety: false,
            },
        }
    };
    Ok(TrialOutcome {
        forms: forms.to_vec(),
        result,
    })
}

/// Degree of `a`, asserted equidimensional of dimension `m`. The dimension
/// is verified; equidimensionality is not. On a mixed-dimensional input the
/// result is the degree of the top-dimensional part.
pub fn degree_equidimensional<F: Field>(
    a: &IdealPresentation<F>,
    m: usize,
    config: &DegreeConfig,
) -> Result<DegreeReport<F>, DegreeError> {
    if config.trials == 0 {
        return Err(DegreeError::InvalidParameters(
            "at least one trial is required".into(),
        ));
    }
    if config.coefficient_bound < 2 {
        return Err(DegreeError::InvalidParameters(
            "coefficient bound must be at least 2".into(),
        ));
    }
    let field = a.field().clone();
    let gb = buchberger(a, config.order);
    let computed = gb.dimension();
    if computed != Some(m) {
        return Err(DegreeError::DimensionMismatch {
            asserted: m,
            computed,
        });
    }

    if m == 0 {
        let count = gb
            .standard_monomial_count()
            .finite()
            .expect("dimension zero implies a finite quotient");
        return Ok(DegreeReport {
            degree: count,
            trials: vec![TrialOutcome {
                forms: Vec::new(),
                result: TrialResult::Count(count),
            }],
            seed: config.seed,
            coefficient_bound: config.coefficient_bound,
            field: field.kind(),
            escalations: 0,
            agreeing: 1,
            successful: 1,
        });
    }

    let n = a.num_vars();
    let mut last_tally = BTreeMap::new();
    for round in 0..=MAX_ESCALATIONS {
        let trials = config.trials << round;
        let bound = config
            .coefficient_bound
            .checked_shl(round)
            .filter(|b| *b <= i64::MAX as u64)
            .ok_or_else(|| DegreeError::InvalidParameters("coefficient bound overflow".into()))?;
        let outcomes: Vec<TrialOutcome<F>> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let forms =
                    random_linear_forms(n, m, trial_seed(config.seed, round, i), bound, &field)?;
                degree_trial(a, m, &forms, config.order)
            })
            .collect::<Result<_, _>>()?;

        let mut tally: BTreeMap<u64, usize> = BTreeMap::new();
        for o in &outcomes {
            if let TrialResult::Count(c) = o.result {
                *tally.entry(c).or_default() += 1;
            }
        }
        let successful: usize = tally.values().sum();
        if let Some((&degree, &votes)) = tally.iter().find(|(_, &v)| 2 * v > successful) {
            return Ok(DegreeReport {
                degree,
                trials: outcomes,
                seed: config.seed,
                coefficient_bound: bound,
                field: field.kind(),
                escalations: round,
                agreeing: votes as u64,
                successful: successful as u64,
            });
        }
        last_tally = tally;
    }
    if last_tally.is_empty() {
        Err(DegreeError::AllTrialsFailed)
    } else {
        Err(DegreeError::NoConsensus { tally: last_tally })
    }
}
