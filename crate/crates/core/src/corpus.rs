//! Hand-annotated fixture ideals and the suite that checks every engine
//! against them.
//!
//! Degrees and dimensions were worked out by hand: for primary ideals from
//! the length of the local ring at the prime, for complete intersections of
//! generic hypersurfaces from the product of degrees. Component data lists
//! the isolated components by height as `(height, degree)` pairs.

use serde::Serialize;

use crate::bezout::{check_bezout_regular, masser_wustholz_check, BezoutError};
use crate::degree::{degree_equidimensional, DegreeConfig};
use crate::error::PolyError;
use crate::field::{Field, Rationals};
use crate::groebner::buchberger;
use crate::hilbert::hilbert_degree_oracle;
use crate::ideal::{IdealFile, IdealPresentation};
use crate::monomial::MonomialOrder;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    /// Krull dimension.
    pub dimension: usize,
    /// Sum of `deg V(p) * length` over the isolated components.
    pub degree: u64,
    pub equidimensional: bool,
    /// Isolated components as `(height, degree)`.
    pub components: Vec<(usize, u64)>,
}

impl CorpusEntry {
    fn new(
        name: impl Into<String>,
        n: usize,
        generators: &[&str],
        dimension: usize,
        degree: u64,
        components: &[(usize, u64)],
    ) -> Self {
        let equidimensional = components.iter().all(|&(k, _)| k == n - dimension);
        CorpusEntry {
            name: name.into(),
            vars: (1..=n).map(|i| format!("x{i}")).collect(),
            generators: generators.iter().map(|g| g.to_string()).collect(),
            dimension,
            degree,
            equidimensional,
            components: components.to_vec(),
        }
    }

    /// A single isolated component, so the ideal is equidimensional.
    fn unmixed(
        name: impl Into<String>,
        n: usize,
        generators: &[&str],
        dimension: usize,
        degree: u64,
    ) -> Self {
        Self::new(
            name,
            n,
            generators,
            dimension,
            degree,
            &[(n - dimension, degree)],
        )
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// The ideal over `field`, with its dimension asserted.
    pub fn ideal<F: Field>(&self, field: F) -> Result<IdealPresentation<F>, PolyError> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        Ok(IdealPresentation::parse(&vars, &gens, field)?
            .with_asserted_dimension(Some(self.dimension)))
    }

    /// The entry in ideal-file format.
    pub fn file_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.vars.join(", "));
        if self.equidimensional {
            out.push_str(&format!("dim: {}\n", self.dimension));
        }
        for g in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }

    /// Parses an ideal file back into the generator texts it carries.
    pub fn matches_file(&self, text: &str) -> bool {
        IdealFile::parse(text).is_ok_and(|f| {
            f.var_names == self.vars
                && f.generators
                    .iter()
                    .map(|(_, g)| g.as_str())
                    .eq(self.generators.iter().map(String::as_str))
                && (!self.equidimensional || f.dim == Some(self.dimension))
        })
    }
}

/// All fixture ideals, in a fixed order.
pub fn entries() -> Vec<CorpusEntry> {
    let mut out = vec![
        CorpusEntry::unmixed("cex", 2, &["x1^3", "x1^2*x2"], 1, 2),
        CorpusEntry::unmixed("cex_plus_x2", 2, &["x1^3", "x2"], 0, 3),
    ];
    for k in 1..=6u64 {
        let power = format!("x1^{k}");
        out.push(CorpusEntry::unmixed(
            format!("line_k{k}"),
            2,
            &[&power, "x1*x2"],
            1,
            1,
        ));
        out.push(CorpusEntry::unmixed(
            format!("point_k{k}"),
            2,
            &[&power, "x2"],
            0,
            k,
        ));
    }
    out.extend([
        CorpusEntry::unmixed("linear", 2, &["x1 - x2", "x2 - 1"], 0, 1),
        CorpusEntry::unmixed("circle", 2, &["x1^2 + x2^2 - 1"], 1, 2),
        CorpusEntry::unmixed("cusp", 2, &["x2^2 - x1^3"], 1, 3),
        CorpusEntry::unmixed("double_line", 2, &["x1^2"], 1, 2),
        CorpusEntry::new("cross", 2, &["x1*x2"], 1, 2, &[(1, 1), (1, 1)]),
        CorpusEntry::unmixed("four_points", 2, &["x1^2 - 1", "x2^2 - 1"], 0, 4),
        CorpusEntry::unmixed("tangent_point", 2, &["x1^2 + x2^2 - 1", "x1 - 1"], 0, 2),
        CorpusEntry::unmixed("twisted_cubic", 3, &["x2 - x1^2", "x3 - x1^3"], 1, 3),
        CorpusEntry::unmixed("sphere", 3, &["x1^2 + x2^2 + x3^2 - 1"], 2, 2),
        CorpusEntry::unmixed("double_plane", 3, &["x1^2"], 2, 2),
        CorpusEntry::new(
            "coordinate_planes",
            3,
            &["x1*x2*x3"],
            2,
            3,
            &[(1, 1), (1, 1), (1, 1)],
        ),
        CorpusEntry::unmixed("fat_line", 3, &["x1^2", "x2^2"], 1, 4),
        CorpusEntry::unmixed("fat_point_3", 3, &["x1^2", "x2 - x1", "x3^3"], 0, 6),
        CorpusEntry::new(
            "plane_and_line",
            3,
            &["x1*x2", "x1*x3"],
            2,
            2,
            &[(1, 1), (2, 1)],
        ),
        CorpusEntry::unmixed("two_parabolas", 4, &["x1^2 - x2", "x3^2 - x4"], 2, 4),
        CorpusEntry::new(
            "two_planes",
            4,
            &["x1*x3", "x1*x4", "x2*x3", "x2*x4"],
            2,
            2,
            &[(2, 1), (2, 1)],
        ),
        CorpusEntry::unmixed(
            "double_parabola",
            4,
            &["x1^2 - x2", "x3 - x1", "x4^2"],
            1,
            4,
        ),
        CorpusEntry::unmixed(
            "fat_point_4",
            4,
            &["x1^2", "x2^2", "x3 - x1", "x4 - 1"],
            0,
            4,
        ),
    ]);
    out
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// Pairs `(a, b)` of corpus names with `a` contained in `b` and both
/// equidimensional of the same dimension.
pub fn nested_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("cex", "double_line"),
        ("line_k6", "line_k1"),
        ("line_k4", "line_k2"),
        ("point_k6", "point_k3"),
        ("point_k3", "point_k1"),
        ("cex_plus_x2", "point_k2"),
    ]
}

/// Outcome of the full suite on one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub num_vars: usize,
    pub expected_dimension: usize,
    pub dimension: Option<usize>,
    pub expected_degree: u64,
    /// From the random-section pipeline; equidimensional entries only.
    pub degree: Option<u64>,
    pub hilbert_degree: Option<u64>,
    pub hilbert_dimension: Option<usize>,
    pub groebner_sound: bool,
    pub masser_wustholz: bool,
    pub pass: bool,
}

/// The Bézout checker refusing a secant but non-regular cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefusalResult {
    pub name: String,
    pub sequence: Vec<String>,
    pub refused: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
    pub refusals: Vec<RefusalResult>,
    pub pass: bool,
}

fn run_entry(entry: &CorpusEntry, config: &DegreeConfig) -> Result<EntryResult, PolyError> {
    let ideal = entry.ideal(Rationals)?;
    let gb = buchberger(&ideal, MonomialOrder::DegRevLex);
    let dimension = gb.dimension();
    let groebner_sound = gb.s_polynomials_reduce_to_zero() && gb.is_reduced();
    let degree = if entry.equidimensional {
        degree_equidimensional(&ideal, entry.dimension, config)
            .ok()
            .map(|r| r.degree)
    } else {
        None
    };
    let hilbert = hilbert_degree_oracle(&ideal).ok();
    let masser_wustholz =
        masser_wustholz_check(&entry.components, &ideal.generator_degrees()).is_ok_and(|r| r.holds);
    let pass = dimension == Some(entry.dimension)
        && groebner_sound
        && masser_wustholz
        && (!entry.equidimensional
            || (degree == Some(entry.degree)
                && hilbert.as_ref().map(|h| (h.degree, h.affine_dimension()))
                    == Some((entry.degree, entry.dimension))));
    Ok(EntryResult {
        name: entry.name.clone(),
        num_vars: entry.num_vars(),
        expected_dimension: entry.dimension,
        dimension,
        expected_degree: entry.degree,
        degree,
        hilbert_degree: hilbert.as_ref().map(|h| h.degree),
        hilbert_dimension: hilbert.as_ref().map(|h| h.affine_dimension()),
        groebner_sound,
        masser_wustholz,
        pass,
    })
}

/// Runs every engine on every entry, plus the Bézout refusals on the
/// `line_k` family cut by `x2`.
pub fn run_corpus(config: &DegreeConfig) -> Result<CorpusReport, PolyError> {
    let all = entries();
    let results = all
        .iter()
        .map(|e| run_entry(e, config))
        .collect::<Result<Vec<_>, _>>()?;
    let mut refusals = Vec::new();
    for e in all
        .iter()
        .filter(|e| e.name.starts_with("line_k") && e.name != "line_k1")
    {
        let ideal = e.ideal(Rationals)?;
        let cut = vec![ideal.parse_poly("x2")?];
        let refused = matches!(
            check_bezout_regular(&ideal, e.dimension, &cut, config),
            Err(BezoutError::NotRegular(_))
        );
        refusals.push(RefusalResult {
            name: e.name.clone(),
            sequence: vec!["x2".into()],
            refused,
        });
    }
    let pass = results.iter().all(|r| r.pass) && refusals.iter().all(|r| r.refused);
    Ok(CorpusReport {
        entries: results,
        refusals,
        pass,
    })
}
