//! Secant and regular sequences, and the degree inequalities that hold for
//! them.
//!
//! A sequence `f_1..f_k` is secant for an ideal of dimension `m` when each
//! `f_j` drops the dimension of `a + (f_1..f_j)` to `m - j`, and regular when
//! each `f_j` is a non-zero-divisor modulo `a + (f_1..f_{j-1})` and the final
//! ideal is proper. For regular sequences the degree of the cut ideal is
//! bounded by `deg(a) * prod deg(f_i)`; for secant ones it is not.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::degree::{degree_equidimensional, DegreeConfig, DegreeError};
use crate::error::PolyError;
use crate::field::{Field, Rationals};
use crate::groebner::{buchberger, ideal_equal, ideal_quotient, GroebnerError};
use crate::ideal::IdealPresentation;
use crate::monomial::{ExponentVector, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BezoutError {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Groebner(#[from] GroebnerError),

    #[error(transparent)]
    Degree(#[from] DegreeError),

    #[error("dimension mismatch: asserted {asserted}, computed {computed:?}")]
    DimensionMismatch {
        asserted: usize,
        computed: Option<usize>,
    },

    #[error("sequence is not regular (first failure at position {})", .0.failing_index.unwrap_or(0))]
    NotRegular(SequenceCheckReport),

    #[error("generator degrees must be sorted in descending order")]
    UnsortedDegrees,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    Secant,
    Regular,
}

/// What was observed after adding `f_index` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    /// Krull dimension of `a + (f_1..f_index)`; `None` for the unit ideal.
    pub dimension: Option<usize>,
    pub zero_divisor: bool,
    pub unit_ideal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCheckReport {
    pub kind: SequenceKind,
    pub ok: bool,
    pub failing_index: Option<usize>,
    pub steps: Vec<StepRecord>,
}

impl SequenceCheckReport {
    fn finish(kind: SequenceKind, steps: Vec<StepRecord>, failing_index: Option<usize>) -> Self {
        SequenceCheckReport {
            kind,
            ok: failing_index.is_none(),
            failing_index,
            steps,
        }
    }
}

fn check_ring<F: Field>(a: &IdealPresentation<F>, fs: &[Polynomial<F>]) -> Result<(), PolyError> {
    for f in fs {
        if f.num_vars() != a.num_vars() {
            return Err(PolyError::ArityMismatch {
                expected: a.num_vars(),
                found: f.num_vars(),
            });
        }
        if f.field() != a.field() {
            return Err(PolyError::FieldMismatch);
        }
    }
    Ok(())
}

/// Checks that `dim(a + (f_1..f_j)) = m - j` for every prefix.
pub fn is_secant_sequence<F: Field>(
    a: &IdealPresentation<F>,
    m: usize,
    fs: &[Polynomial<F>],
) -> Result<SequenceCheckReport, BezoutError> {
    check_ring(a, fs)?;
    if fs.len() > m {
        return Err(BezoutError::InvalidParameters(format!(
            "a secant sequence for a dimension-{m} ideal has at most {m} elements"
        )));
    }
    let computed = buchberger(a, MonomialOrder::DegRevLex).dimension();
    if computed != Some(m) {
        return Err(BezoutError::DimensionMismatch {
            asserted: m,
            computed,
        });
    }
    let mut steps = Vec::with_capacity(fs.len());
    for j in 1..=fs.len() {
        let cut = a.plus(&fs[..j])?;
        let dimension = buchberger(&cut, MonomialOrder::DegRevLex).dimension();
        steps.push(StepRecord {
            index: j,
            dimension,
            zero_divisor: false,
            unit_ideal: dimension.is_none(),
        });
        if dimension != Some(m - j) {
            return Ok(SequenceCheckReport::finish(
                SequenceKind::Secant,
                steps,
                Some(j),
            ));
        }
    }
    Ok(SequenceCheckReport::finish(
        SequenceKind::Secant,
        steps,
        None,
    ))
}

/// Checks that each `f_j` is a non-zero-divisor modulo `a + (f_1..f_{j-1})`,
/// by comparing that ideal with its quotient by `f_j`, and that the final
/// ideal is proper.
pub fn is_regular_sequence<F: Field>(
    a: &IdealPresentation<F>,
    fs: &[Polynomial<F>],
) -> Result<SequenceCheckReport, BezoutError> {
    check_ring(a, fs)?;
    if buchberger(a, MonomialOrder::DegRevLex).is_unit() {
        return Err(BezoutError::InvalidParameters(
            "the base ideal is the unit ideal".into(),
        ));
    }
    let mut steps = Vec::with_capacity(fs.len());
    let mut current = a.clone();
    for (i, f) in fs.iter().enumerate() {
        let j = i + 1;
        let zero_divisor = f.is_zero() || !ideal_equal(&ideal_quotient(&current, f)?, &current)?;
        current = current.plus(std::slice::from_ref(f))?;
        let dimension = buchberger(&current, MonomialOrder::DegRevLex).dimension();
        steps.push(StepRecord {
            index: j,
            dimension,
            zero_divisor,
            unit_ideal: dimension.is_none(),
        });
        if zero_divisor {
            return Ok(SequenceCheckReport::finish(
                SequenceKind::Regular,
                steps,
                Some(j),
            ));
        }
        if dimension.is_none() {
            // Once the unit ideal is reached the final ideal cannot be proper.
            return Ok(SequenceCheckReport::finish(
                SequenceKind::Regular,
                steps,
                Some(j),
            ));
        }
    }
    Ok(SequenceCheckReport::finish(
        SequenceKind::Regular,
        steps,
        None,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BezoutCheckReport {
    /// Degree of `a + (f_1..f_k)`.
    pub lhs: u64,
    /// `deg(a) * prod deg(f_i)`.
    pub rhs: u64,
    pub holds: bool,
    pub regularity: SequenceCheckReport,
}

/// Verifies `deg(a + (f_1..f_k)) <= deg(a) * prod deg(f_i)` for a regular
/// sequence. Runs over the rationals only; non-regular sequences are refused
/// with [`BezoutError::NotRegular`].
pub fn check_bezout_regular(
    a: &IdealPresentation<Rationals>,
    m: usize,
    fs: &[Polynomial<Rationals>],
    config: &DegreeConfig,
) -> Result<BezoutCheckReport, BezoutError> {
    let k = fs.len();
    if k == 0 || k > m {
        return Err(BezoutError::InvalidParameters(format!(
            "need 1 <= k <= m, got k = {k}, m = {m}"
        )));
    }
    let regularity = is_regular_sequence(a, fs)?;
    if !regularity.ok {
        return Err(BezoutError::NotRegular(regularity));
    }
    let deg_a = degree_equidimensional(a, m, config)?.degree;
    let lhs = degree_equidimensional(&a.plus(fs)?, m - k, config)?.degree;
    let rhs = fs
        .iter()
        .map(|f| u64::from(f.total_degree().unwrap_or(0)))
        .fold(deg_a, |acc, d| acc.saturating_mul(d));
    Ok(BezoutCheckReport {
        lhs,
        rhs,
        holds: lhs <= rhs,
        regularity,
    })
}

/// Degree of the union of isolated components of one height against
/// `D_1 ... D_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightCheck {
    pub height: usize,
    pub degree: u64,
    pub bound: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasserWustholzReport {
    pub generator_degrees: Vec<u64>,
    pub heights: Vec<HeightCheck>,
    pub total_degree: u64,
    pub total_bound: u64,
    pub total_holds: bool,
    pub holds: bool,
}

/// Checks `deg(Q_k) <= D_1 ... D_k` for each height `k` present, and
/// `sum_k deg(Q_k) <= sum_k D_1 ... D_k`. Component degrees sharing a height
/// are summed, since `Q_k` collects all isolated components of height `k`.
pub fn masser_wustholz_check(
    component_data: &[(usize, u64)],
    generator_degrees: &[u64],
) -> Result<MasserWustholzReport, BezoutError> {
    if generator_degrees.windows(2).any(|w| w[0] < w[1]) {
        return Err(BezoutError::UnsortedDegrees);
    }
    let mut by_height: BTreeMap<usize, u64> = BTreeMap::new();
    for &(k, d) in component_data {
        if k == 0 || k > generator_degrees.len() {
            return Err(BezoutError::InvalidParameters(format!(
                "height {k} outside 1..={}",
                generator_degrees.len()
            )));
        }
        *by_height.entry(k).or_default() += d;
    }
    let heights: Vec<HeightCheck> = by_height
        .into_iter()
        .map(|(height, degree)| {
            let bound = generator_degrees[..height]
                .iter()
                .fold(1u64, |acc, d| acc.saturating_mul(*d));
            HeightCheck {
                height,
                degree,
                bound,
                holds: degree <= bound,
            }
        })
        .collect();
    let total_degree = heights.iter().map(|h| h.degree).sum();
    let total_bound = heights
        .iter()
        .fold(0u64, |acc, h| acc.saturating_add(h.bound));
    let total_holds = total_degree <= total_bound;
    Ok(MasserWustholzReport {
        generator_degrees: generator_degrees.to_vec(),
        holds: total_holds && heights.iter().all(|h| h.holds),
        heights,
        total_degree,
        total_bound,
        total_holds,
    })
}

/// A randomly built equidimensional ideal with a sequence of cuts.
#[derive(Debug, Clone, PartialEq)]
pub struct BezoutInstance {
    pub ideal: IdealPresentation<Rationals>,
    pub dimension: usize,
    pub cuts: Vec<Polynomial<Rationals>>,
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    n: usize,
    vars: &[usize],
    degree: u32,
    coeff: i64,
) -> Polynomial<Rationals> {
    let f = Rationals;
    let ord = MonomialOrder::DegRevLex;
    loop {
        let mut terms = Vec::new();
        // Every monomial of degree <= `degree` in `vars`.
        let mut stack = vec![(ExponentVector::one(n), 0usize)];
        while let Some((m, from)) = stack.pop() {
            let c = rng.gen_range(-coeff..=coeff);
            terms.push((f.from_i64(c), m.clone()));
            if m.total_degree() < degree {
                for &v in vars.iter().filter(|&&v| v >= from) {
                    let e = m.exponents()[v];
                    let mut exps = m.exponents().to_vec();
                    exps[v] = e + 1;
                    stack.push((ExponentVector::new(exps).unwrap(), v));
                }
            }
        }
        let p = Polynomial::from_terms(f, n, ord, terms).unwrap();
        if p.total_degree() == Some(degree) {
            return p;
        }
    }
}

/// Builds an instance from `seed`: the base ideal is generated by products
/// and powers of random linear or quadratic polynomials, one generator per
/// block of a partition of some of the variables. Generators in disjoint
/// variables form a complete intersection, which is equidimensional.
/// Cuts are random polynomials of degree one or two in all variables.
pub fn random_instance(seed: u64) -> BezoutInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=4usize);
    let c = rng.gen_range(1..n);
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(&mut rng);
    let mut blocks: Vec<Vec<usize>> = vars[..c].iter().map(|&v| vec![v]).collect();
    for &v in &vars[c..] {
        if rng.gen_bool(0.4) {
            let b = rng.gen_range(0..c);
            blocks[b].push(v);
        }
    }
    let mut gens = Vec::with_capacity(c);
    for block in &blocks {
        let g = match rng.gen_range(0..5) {
            0 => random_poly(&mut rng, n, block, 1, 3),
            1 => random_poly(&mut rng, n, block, 1, 3).pow(2).unwrap(),
            2 => random_poly(&mut rng, n, block, 1, 3).pow(3).unwrap(),
            3 => random_poly(&mut rng, n, block, 2, 3),
            _ => {
                let l1 = random_poly(&mut rng, n, block, 1, 3);
                let l2 = random_poly(&mut rng, n, block, 1, 3);
                l1.mul(&l2).unwrap()
            }
        };
        gens.push(g);
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let m = n - c;
    let ideal = IdealPresentation::new(names, gens, Some(m)).unwrap();
    let k = rng.gen_range(1..=m);
    let all: Vec<usize> = (0..n).collect();
    let cuts = (0..k)
        .map(|_| {
            let d = if rng.gen_bool(0.6) { 1 } else { 2 };
            random_poly(&mut rng, n, &all, d, 2)
        })
        .collect();
    BezoutInstance {
        ideal,
        dimension: m,
        cuts,
    }
}

/// One harness record, emitted as a JSON line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessLine {
    pub ideal: HarnessIdeal,
    pub sequence: Vec<String>,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub regularity: SequenceCheckReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessIdeal {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub dim: usize,
}

/// Runs the Bézout check on `count` accepted random instances. Instances
/// whose cuts are not regular are skipped and redrawn. Draws are checked in
/// parallel batches and accepted in draw order, so the output depends only
/// on `seed`.
pub fn run_harness(
    count: usize,
    seed: u64,
    config: &DegreeConfig,
) -> Result<Vec<HarnessLine>, BezoutError> {
    let batch = 2 * rayon::current_num_threads().max(1) as u64;
    let mut lines = Vec::with_capacity(count);
    let mut draw = 0u64;
    while lines.len() < count {
        let checked: Vec<_> = (draw..draw + batch)
            .into_par_iter()
            .map(|d| {
                let inst = random_instance(seed.wrapping_mul(0x1000_0000_01b3).wrapping_add(d));
                let report = check_bezout_regular(&inst.ideal, inst.dimension, &inst.cuts, config);
                (inst, report)
            })
            .collect();
        draw += batch;
        for (inst, report) in checked {
            if lines.len() == count {
                break;
            }
            match report {
                Ok(report) => lines.push(HarnessLine {
                    ideal: HarnessIdeal {
                        vars: inst.ideal.var_names().to_vec(),
                        generators: inst.ideal.generator_texts(),
                        dim: inst.dimension,
                    },
                    sequence: inst
                        .cuts
                        .iter()
                        .map(|f| f.to_text(inst.ideal.var_names()))
                        .collect(),
                    lhs: report.lhs,
                    rhs: report.rhs,
                    holds: report.holds,
                    regularity: report.regularity,
                }),
                Err(BezoutError::NotRegular(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::degree_equidimensional;

    fn ideal(vars: &[&str], gens: &[&str]) -> IdealPresentation<Rationals> {
        IdealPresentation::parse(vars, gens, Rationals).unwrap()
    }

    fn polys(a: &IdealPresentation<Rationals>, fs: &[&str]) -> Vec<Polynomial<Rationals>> {
        fs.iter().map(|f| a.parse_poly(f).unwrap()).collect()
    }

    const X: [&str; 2] = ["x1", "x2"];

    #[test]
    fn secant_examples() {
        let a = ideal(&X, &["x1^3", "x1^2*x2"]);
        assert!(is_secant_sequence(&a, 1, &polys(&a, &["x2"])).unwrap().ok);
        let r = is_secant_sequence(&a, 1, &polys(&a, &["x1"])).unwrap();
        assert!(!r.ok);
        assert_eq!(r.failing_index, Some(1));
        assert_eq!(r.steps[0].dimension, Some(1));
        assert!(
            is_secant_sequence(&a, 1, &polys(&a, &["x1 + x2 + 1"]))
                .unwrap()
                .ok
        );
        assert!(matches!(
            is_secant_sequence(&a, 0, &[]),
            Err(BezoutError::DimensionMismatch { .. })
        ));
        assert!(is_secant_sequence(&a, 1, &polys(&a, &["x1", "x2"])).is_err());
    }

    #[test]
    fn regular_examples() {
        let a = ideal(&X, &["x1^3", "x1^2*x2"]);
        let r = is_regular_sequence(&a, &polys(&a, &["x2"])).unwrap();
        assert!(!r.ok);
        assert!(r.steps[0].zero_divisor);
        assert_eq!(r.failing_index, Some(1));

        let b = ideal(&X, &["x1^2"]);
        assert!(is_regular_sequence(&b, &polys(&b, &["x2 - 1"])).unwrap().ok);

        let r = is_regular_sequence(&b, &polys(&b, &["x1 + 1"])).unwrap();
        assert!(!r.ok);
        assert!(!r.steps[0].zero_divisor);
        assert!(r.steps[0].unit_ideal);

        let r = is_regular_sequence(&b, &polys(&b, &["0"])).unwrap();
        assert!(r.steps[0].zero_divisor);
    }

    #[test]
    fn bezout_examples() {
        let cfg = DegreeConfig::default();
        let a = ideal(&X, &["x1^2"]);
        let r = check_bezout_regular(&a, 1, &polys(&a, &["x2 - 1"]), &cfg).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (2, 2, true));

        let a = ideal(&X, &["x1"]);
        let r = check_bezout_regular(&a, 1, &polys(&a, &["x2^2 - x1"]), &cfg).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (2, 2, true));

        for k in 1..=6 {
            let a = ideal(&X, &[&format!("x1^{k}"), "x1*x2"]);
            let fs = polys(&a, &["x2"]);
            let refused = check_bezout_regular(&a, 1, &fs, &cfg);
            if k == 1 {
                // (x1) is prime and x2 is regular on it.
                assert!(refused.unwrap().holds);
                continue;
            }
            assert!(matches!(refused, Err(BezoutError::NotRegular(_))));
            let direct = degree_equidimensional(&a.plus(&fs).unwrap(), 0, &cfg)
                .unwrap()
                .degree;
            assert_eq!(direct, k);
            assert!(direct > degree_equidimensional(&a, 1, &cfg).unwrap().degree);
        }
    }

    #[test]
    fn masser_wustholz_examples() {
        let r = masser_wustholz_check(&[(1, 2)], &[3, 3]).unwrap();
        assert!(r.holds);
        assert_eq!(r.heights[0].bound, 3);

        let r = masser_wustholz_check(&[(1, 2)], &[2]).unwrap();
        assert!(r.holds);
        assert_eq!(r.heights[0].bound, 2);

        let r = masser_wustholz_check(&[(1, 1), (2, 1)], &[2, 2]).unwrap();
        assert!(r.holds);
        assert_eq!((r.heights[0].bound, r.heights[1].bound), (2, 4));
        assert_eq!((r.total_degree, r.total_bound), (2, 6));

        assert_eq!(
            masser_wustholz_check(&[(1, 1)], &[2, 3]),
            Err(BezoutError::UnsortedDegrees)
        );
        assert!(masser_wustholz_check(&[(3, 1)], &[2, 2]).is_err());
        assert!(!masser_wustholz_check(&[(1, 5)], &[4, 1]).unwrap().holds);
    }

    #[test]
    fn random_instances_are_well_formed() {
        for seed in 0..20 {
            let inst = random_instance(seed);
            let gb = buchberger(&inst.ideal, MonomialOrder::DegRevLex);
            assert_eq!(gb.dimension(), Some(inst.dimension));
            assert!(!inst.cuts.is_empty() && inst.cuts.len() <= inst.dimension);
            assert_eq!(random_instance(seed), inst);
        }
    }

    #[test]
    fn regular_sequences_are_secant() {
        let mut accepted = 0;
        let mut seed = 100;
        while accepted < 50 {
            let inst = random_instance(seed);
            seed += 1;
            let regular = is_regular_sequence(&inst.ideal, &inst.cuts).unwrap();
            if !regular.ok {
                continue;
            }
            accepted += 1;
            let secant = is_secant_sequence(&inst.ideal, inst.dimension, &inst.cuts).unwrap();
            assert!(secant.ok, "seed {}: regular but not secant", seed - 1);
        }
    }

    #[test]
    fn secant_does_not_imply_regular() {
        let a = ideal(&X, &["x1^3", "x1^2*x2"]);
        let fs = polys(&a, &["x2"]);
        assert!(is_secant_sequence(&a, 1, &fs).unwrap().ok);
        assert!(!is_regular_sequence(&a, &fs).unwrap().ok);
    }

    #[test]
    fn harness_lines_serialize() {
        let lines = run_harness(2, 3, &DegreeConfig::default()).unwrap();
        assert_eq!(lines.len(), 2);
        for l in &lines {
            assert!(l.holds);
            let v: serde_json::Value = serde_json::to_value(l).unwrap();
            for key in ["ideal", "sequence", "lhs", "rhs", "holds", "regularity"] {
                assert!(v.get(key).is_some(), "missing {key}");
            }
        }
    }
}
