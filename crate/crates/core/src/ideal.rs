//! Ideal presentations and the plain-text ideal file format.
//!
//! ```text
//! # optional comments anywhere
//! vars: x1, x2
//! dim: 1
//! x1^3
//! x1^2*x2
//! ```

use std::collections::HashSet;

use crate::error::PolyError;
use crate::field::Field;
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial_with_order;
use crate::poly::Polynomial;

/// An ideal given by generators over named variables, with an optional
/// asserted Krull dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPresentation<F: Field> {
    var_names: Vec<String>,
    generators: Vec<Polynomial<F>>,
    asserted_dimension: Option<usize>,
}

impl<F: Field> IdealPresentation<F> {
    /// Validates that names are distinct and generators share one ring. An
    /// all-zero generator list presents the zero ideal.
    pub fn new(
        var_names: Vec<String>,
        generators: Vec<Polynomial<F>>,
        asserted_dimension: Option<usize>,
    ) -> Result<Self, PolyError> {
        if var_names.is_empty() {
            return Err(PolyError::InvalidIdeal("no variables declared".into()));
        }
        let mut seen = HashSet::new();
        for v in &var_names {
            if !seen.insert(v.as_str()) {
                return Err(PolyError::InvalidIdeal(format!("duplicate variable `{v}`")));
            }
        }
        let Some(first) = generators.first() else {
            return Err(PolyError::InvalidIdeal("no generators".into()));
        };
        for g in &generators {
            if g.num_vars() != var_names.len() {
                return Err(PolyError::ArityMismatch {
                    expected: var_names.len(),
                    found: g.num_vars(),
                });
            }
            if g.field() != first.field() {
                return Err(PolyError::FieldMismatch);
            }
        }
        if let Some(m) = asserted_dimension {
            if m > var_names.len() {
                return Err(PolyError::InvalidIdeal(format!(
                    "asserted dimension {m} exceeds the number of variables"
                )));
            }
        }
        Ok(IdealPresentation {
            var_names,
            generators,
            asserted_dimension,
        })
    }

    /// Parses each generator over `var_names`.
    pub fn parse(var_names: &[&str], generators: &[&str], field: F) -> Result<Self, PolyError> {
        let names: Vec<String> = var_names.iter().map(|s| s.to_string()).collect();
        let gens = generators
            .iter()
            .map(|g| {
                parse_polynomial_with_order(g, &names, field.clone(), MonomialOrder::DegRevLex)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, gens, None)
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn asserted_dimension(&self) -> Option<usize> {
        self.asserted_dimension
    }

    pub fn with_asserted_dimension(mut self, m: Option<usize>) -> Self {
        self.asserted_dimension = m;
        self
    }

    pub fn field(&self) -> &F {
        self.generators[0].field()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// Parses a polynomial over this ideal's variables and field.
    pub fn parse_poly(&self, text: &str) -> Result<Polynomial<F>, PolyError> {
        parse_polynomial_with_order(
            text,
            &self.var_names,
            self.field().clone(),
            MonomialOrder::DegRevLex,
        )
    }

    /// The sum `self + (extra)`. The asserted dimension is dropped.
    pub fn plus(&self, extra: &[Polynomial<F>]) -> Result<Self, PolyError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::new(self.var_names.clone(), gens, None)
    }

    /// Maximum total degree of each nonzero generator, sorted descending.
    pub fn generator_degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self
            .generators
            .iter()
            .filter_map(|g| g.total_degree())
            .map(u64::from)
            .collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn generator_texts(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.to_text(&self.var_names))
            .collect()
    }
}

/// Text-level content of an ideal file, before choosing a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub var_names: Vec<String>,
    pub dim: Option<usize>,
    /// Generator text with its 1-based line number.
    pub generators: Vec<(usize, String)>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines.next().ok_or(PolyError::IdealFile {
            line: 1,
            message: "missing `vars:` header".into(),
        })?;
        let rest = header.strip_prefix("vars:").ok_or(PolyError::IdealFile {
            line: line_no,
            message: "expected `vars: x1, x2, ...`".into(),
        })?;
        let var_names: Vec<String> = rest.split(',').map(|v| v.trim().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &var_names {
            let valid = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::IdealFile {
                    line: line_no,
                    message: format!("invalid variable name `{v}`"),
                });
            }
            if !seen.insert(v.clone()) {
                return Err(PolyError::IdealFile {
                    line: line_no,
                    message: format!("duplicate variable `{v}`"),
                });
            }
        }

        let mut dim = None;
        let mut generators = Vec::new();
        for (n, line) in lines {
            if let Some(d) = line.strip_prefix("dim:") {
                if dim.is_some() || !generators.is_empty() {
                    return Err(PolyError::IdealFile {
                        line: n,
                        message: "`dim:` must directly follow the `vars:` header".into(),
                    });
                }
                dim = Some(
                    d.trim()
                        .parse::<usize>()
                        .map_err(|_| PolyError::IdealFile {
                            line: n,
                            message: format!("invalid dimension `{}`", d.trim()),
                        })?,
                );
            } else {
                generators.push((n, line.to_string()));
            }
        }
        if generators.is_empty() {
            return Err(PolyError::IdealFile {
                line: 1,
                message: "no generators".into(),
            });
        }
        Ok(IdealFile {
            var_names,
            dim,
            generators,
        })
    }

    /// Parses the generators over `field`.
    pub fn to_ideal<F: Field>(&self, field: F) -> Result<IdealPresentation<F>, PolyError> {
        let gens = self
            .generators
            .iter()
            .map(|(line, text)| {
                parse_polynomial_with_order(
                    text,
                    &self.var_names,
                    field.clone(),
                    MonomialOrder::DegRevLex,
                )
                .map_err(|e| PolyError::IdealFile {
                    line: *line,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        IdealPresentation::new(self.var_names.clone(), gens, self.dim)
    }

    /// Renders in the file format.
    pub fn render<F: Field>(ideal: &IdealPresentation<F>) -> String {
        let mut out = format!("vars: {}\n", ideal.var_names().join(", "));
        if let Some(m) = ideal.asserted_dimension() {
            out.push_str(&format!("dim: {m}\n"));
        }
        for g in ideal.generator_texts() {
            out.push_str(&g);
            out.push('\n');
        }
        out
    }
}
