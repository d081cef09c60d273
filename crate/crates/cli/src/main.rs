//! `eqdeg`: Gröbner bases, dimensions and degrees of polynomial ideals
//! read from ideal files.
//!
//! Exit status is 0 on success, 1 when the answer is a mathematical refusal
//! or a failed check, and 2 on malformed input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use eqdeg::bezout::{
    check_bezout_regular, is_regular_sequence, is_secant_sequence, masser_wustholz_check,
    run_harness, BezoutError, SequenceCheckReport,
};
use eqdeg::corpus::run_corpus;
use eqdeg::degree::{degree_equidimensional, DegreeConfig, DegreeError};
use eqdeg::groebner::{ideal_quotient, GroebnerError};
use eqdeg::hilbert::{hilbert_degree_oracle, HilbertError};
use eqdeg::{
    buchberger, CoefficientField, Field, IdealFile, IdealPresentation, MonomialOrder, PolyError,
    Polynomial, PrimeField, QuotientDimension, Rationals,
};

#[derive(Debug, Parser)]
#[command(
    name = "eqdeg",
    version,
    about = "Degrees of equidimensional polynomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Degrevlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Degrevlex => MonomialOrder::DegRevLex,
        }
    }
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Work over F_p instead of the rationals (p prime, p > 2^20).
    #[arg(long)]
    prime: Option<u64>,

    /// Print JSON on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct OrderArgs {
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: OrderArg,
}

#[derive(Debug, Args)]
struct TrialArgs {
    /// Trials per round.
    #[arg(long, default_value_t = 5)]
    trials: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Coefficients of the random linear forms are drawn from [-B, B].
    #[arg(long = "coeff-bound", value_name = "B", default_value_t = 65536)]
    coeff_bound: u64,
}

impl TrialArgs {
    fn config(&self, order: MonomialOrder) -> DegreeConfig {
        DegreeConfig {
            trials: self.trials,
            seed: self.seed,
            coefficient_bound: self.coeff_bound,
            order,
        }
    }
}

#[derive(Debug, Args)]
struct SequenceArgs {
    /// A polynomial of the sequence; repeat for each element, in order.
    #[arg(
        long = "seq",
        value_name = "POLY",
        required = true,
        allow_hyphen_values = true
    )]
    seq: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
struct Component {
    height: usize,
    degree: u64,
}

fn parse_component(s: &str) -> Result<Component, String> {
    let (k, d) = s.split_once(':').ok_or("expected HEIGHT:DEGREE")?;
    Ok(Component {
        height: k
            .trim()
            .parse()
            .map_err(|_| format!("invalid height `{k}`"))?,
        degree: d
            .trim()
            .parse()
            .map_err(|_| format!("invalid degree `{d}`"))?,
    })
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced Gröbner basis.
    Gb {
        file: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Krull dimension, and the quotient dimension when it is finite.
    Dim {
        file: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Degree of an equidimensional ideal by random linear sections.
    Degree {
        file: PathBuf,
        /// Dimension of the ideal; overrides the file's `dim:` line.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Ideal quotient by a single polynomial.
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
        by: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Decide whether a sequence is regular for the ideal.
    RegularCheck {
        file: PathBuf,
        #[command(flatten)]
        seq: SequenceArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Decide whether a sequence is secant for the ideal.
    SecantCheck {
        file: PathBuf,
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Check deg(a + (f)) <= deg(a) * prod deg(f_i) for a regular sequence,
    /// or run the check on random instances.
    BezoutCheck {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        #[arg(
            long = "seq",
            value_name = "POLY",
            allow_hyphen_values = true,
            required_unless_present = "random"
        )]
        seq: Vec<String>,
        #[arg(long)]
        dim: Option<usize>,
        /// Run on this many random regular instances, one JSON line each.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long)]
        json: bool,
    },
    /// Masser–Wüstholz bound for isolated components of given heights.
    MwBound {
        file: PathBuf,
        /// Isolated components of height K and total degree D. Without any,
        /// the ideal is treated as equidimensional of dimension `--dim`.
        #[arg(long = "component", value_name = "K:D", value_parser = parse_component)]
        component: Vec<Component>,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Degree and dimension from the Hilbert series of the homogenization.
    HilbertDegree {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Run every engine on the built-in fixture corpus.
    Corpus {
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long)]
        json: bool,
    },
}

/// Text for stdout and whether the command's check succeeded.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

enum Failure {
    Input(String),
    Refusal {
        message: String,
        json: Option<serde_json::Value>,
    },
}

type CmdResult = Result<Output, Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn refusal(kind: &str, message: String, json: bool) -> Failure {
    Failure::Refusal {
        json: json.then(|| json!({ "refusal": kind, "message": message })),
        message,
    }
}

fn degree_failure(e: DegreeError, json: bool) -> Failure {
    match e {
        DegreeError::Poly(_) | DegreeError::InvalidParameters(_) => input(e),
        DegreeError::DimensionMismatch { .. } => refusal("dimension_mismatch", e.to_string(), json),
        DegreeError::NoConsensus { .. } => refusal("no_consensus", e.to_string(), json),
        DegreeError::AllTrialsFailed => refusal("all_trials_failed", e.to_string(), json),
    }
}

fn bezout_failure(e: BezoutError, json: bool) -> Failure {
    let message = e.to_string();
    match e {
        BezoutError::Degree(d) => degree_failure(d, json),
        BezoutError::DimensionMismatch { .. } => refusal("dimension_mismatch", message, json),
        BezoutError::NotRegular(report) => Failure::Refusal {
            message,
            json: json.then(|| json!({ "refusal": "not_regular", "regularity": report })),
        },
        BezoutError::Poly(_)
        | BezoutError::Groebner(_)
        | BezoutError::UnsortedDegrees
        | BezoutError::InvalidParameters(_) => Failure::Input(message),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable output");
    s.push('\n');
    s
}

fn load<F: Field>(
    path: &Path,
    field: F,
    dim: Option<usize>,
) -> Result<IdealPresentation<F>, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let file = IdealFile::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let ideal = file
        .to_ideal(field)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(match dim {
        Some(m) => ideal.with_asserted_dimension(Some(m)),
        None => ideal,
    })
}

fn required_dim<F: Field>(ideal: &IdealPresentation<F>) -> Result<usize, Failure> {
    ideal
        .asserted_dimension()
        .ok_or_else(|| input("no dimension given: pass --dim or add a `dim:` line to the file"))
}

fn parse_sequence<F: Field>(
    ideal: &IdealPresentation<F>,
    seq: &[String],
) -> Result<Vec<Polynomial<F>>, Failure> {
    seq.iter()
        .map(|s| {
            ideal
                .parse_poly(s)
                .map_err(|e| input(format!("`{s}`: {e}")))
        })
        .collect()
}

fn field_json(field: CoefficientField) -> serde_json::Value {
    json!({ "field": field.short_name(), "prime": field.prime() })
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}\n", items.join(", "))
}

/// Runs `$body` with `$f` bound to the field selected by `--prime`.
macro_rules! with_field {
    ($prime:expr, $f:ident => $body:expr) => {
        match $prime {
            None => {
                let $f = Rationals;
                $body
            }
            Some(p) => {
                let $f = PrimeField::new(p).map_err(input)?;
                $body
            }
        }
    };
}

fn gb<F: Field>(file: &Path, field: F, order: MonomialOrder, json: bool) -> CmdResult {
    let ideal = load(file, field, None)?;
    let gb = buchberger(&ideal, order);
    let mut basis = gb.element_texts(ideal.var_names());
    basis.reverse();
    Ok(Output::ok(if json {
        let mut v = field_json(ideal.field().kind());
        v["order"] = json!(order.name());
        v["basis"] = json!(basis);
        to_json(&v)
    } else {
        braces(&basis)
    }))
}

fn dim<F: Field>(file: &Path, field: F, order: MonomialOrder, json: bool) -> CmdResult {
    let ideal = load(file, field, None)?;
    let gb = buchberger(&ideal, order);
    let dimension = gb.dimension().map_or(-1, |d| d as i64);
    let count = match gb.standard_monomial_count() {
        QuotientDimension::Finite(n) => Some(n),
        QuotientDimension::Infinite => None,
    };
    Ok(Output::ok(if json {
        to_json(
            &json!({ "dimension": dimension, "unit_ideal": gb.is_unit(), "standard_monomials": count }),
        )
    } else {
        let mut s = format!("dimension {dimension}\n");
        if let Some(n) = count {
            let _ = writeln!(s, "standard monomials {n}");
        }
        s
    }))
}

fn degree<F: Field>(
    file: &Path,
    field: F,
    dim: Option<usize>,
    config: DegreeConfig,
    json: bool,
) -> CmdResult {
    let ideal = load(file, field, dim)?;
    let m = required_dim(&ideal)?;
    let report = degree_equidimensional(&ideal, m, &config).map_err(|e| degree_failure(e, json))?;
    Ok(Output::ok(if json {
        to_json(&report.to_json())
    } else {
        format!(
            "degree {}\nagreement {} over {} trials (seed {}, bound {}, field {})\n",
            report.degree,
            report.agreement_ratio(),
            report.trials.len(),
            report.seed,
            report.coefficient_bound,
            report.field,
        )
    }))
}

fn quotient<F: Field>(file: &Path, field: F, by: &str, json: bool) -> CmdResult {
    let ideal = load(file, field, None)?;
    let f = ideal
        .parse_poly(by)
        .map_err(|e| input(format!("`{by}`: {e}")))?;
    let q = ideal_quotient(&ideal, &f).map_err(|e| match e {
        GroebnerError::ZeroDivisor => input("quotient by the zero polynomial is the unit ideal"),
        other => input(other),
    })?;
    let gens = q.generator_texts();
    Ok(Output::ok(if json {
        to_json(&json!({ "generators": gens }))
    } else {
        braces(&gens)
    }))
}

fn sequence_text(report: &SequenceCheckReport, label: &str) -> String {
    let mut s = String::new();
    for step in &report.steps {
        let dim = step.dimension.map_or("-1".to_string(), |d| d.to_string());
        let _ = write!(s, "f{}: dimension {dim}", step.index);
        if step.zero_divisor {
            s.push_str(", zero divisor");
        }
        if step.unit_ideal {
            s.push_str(", unit ideal");
        }
        s.push('\n');
    }
    match report.failing_index {
        None => {
            let _ = writeln!(s, "{label}: yes");
        }
        Some(j) => {
            let _ = writeln!(s, "{label}: no (fails at f{j})");
        }
    }
    s
}

fn sequence_output(report: SequenceCheckReport, label: &str, json: bool) -> CmdResult {
    Ok(Output {
        text: if json {
            to_json(&report)
        } else {
            sequence_text(&report, label)
        },
        ok: report.ok,
    })
}

fn regular_check<F: Field>(file: &Path, field: F, seq: &[String], json: bool) -> CmdResult {
    let ideal = load(file, field, None)?;
    let fs = parse_sequence(&ideal, seq)?;
    let report = is_regular_sequence(&ideal, &fs).map_err(|e| bezout_failure(e, json))?;
    sequence_output(report, "regular", json)
}

fn secant_check<F: Field>(
    file: &Path,
    field: F,
    seq: &[String],
    dim: Option<usize>,
    json: bool,
) -> CmdResult {
    let ideal = load(file, field, dim)?;
    let m = required_dim(&ideal)?;
    let fs = parse_sequence(&ideal, seq)?;
    let report = is_secant_sequence(&ideal, m, &fs).map_err(|e| bezout_failure(e, json))?;
    sequence_output(report, "secant", json)
}

fn bezout_check(
    file: &Path,
    seq: &[String],
    dim: Option<usize>,
    config: DegreeConfig,
    json: bool,
) -> CmdResult {
    let ideal = load(file, Rationals, dim)?;
    let m = required_dim(&ideal)?;
    let fs = parse_sequence(&ideal, seq)?;
    let report =
        check_bezout_regular(&ideal, m, &fs, &config).map_err(|e| bezout_failure(e, json))?;
    Ok(Output {
        text: if json {
            to_json(&report)
        } else {
            let rel = if report.holds { "<=" } else { ">" };
            format!(
                "deg(a + (f)) = {} {rel} {} = deg(a) * prod deg(f_i)\nholds: {}\n",
                report.lhs,
                report.rhs,
                if report.holds { "yes" } else { "no" }
            )
        },
        ok: report.holds,
    })
}

fn bezout_random(count: usize, config: DegreeConfig) -> CmdResult {
    let lines = run_harness(count, config.seed, &config).map_err(|e| bezout_failure(e, true))?;
    Ok(Output {
        ok: lines.iter().all(|l| l.holds),
        text: lines.iter().map(to_json).collect(),
    })
}

fn mw_bound<F: Field>(
    file: &Path,
    field: F,
    components: &[Component],
    dim: Option<usize>,
    config: DegreeConfig,
    json: bool,
) -> CmdResult {
    let ideal = load(file, field, dim)?;
    let data: Vec<(usize, u64)> = if components.is_empty() {
        let m = required_dim(&ideal)?;
        let report =
            degree_equidimensional(&ideal, m, &config).map_err(|e| degree_failure(e, json))?;
        vec![(ideal.num_vars() - m, report.degree)]
    } else {
        components.iter().map(|c| (c.height, c.degree)).collect()
    };
    let report = masser_wustholz_check(&data, &ideal.generator_degrees())
        .map_err(|e| bezout_failure(e, json))?;
    Ok(Output {
        ok: report.holds,
        text: if json {
            to_json(&report)
        } else {
            let mut s = String::new();
            for h in &report.heights {
                let _ = writeln!(
                    s,
                    "height {}: degree {} bound {} {}",
                    h.height,
                    h.degree,
                    h.bound,
                    if h.holds { "holds" } else { "fails" }
                );
            }
            let _ = writeln!(
                s,
                "total: degree {} bound {} {}",
                report.total_degree,
                report.total_bound,
                if report.total_holds { "holds" } else { "fails" }
            );
            s
        },
    })
}

fn hilbert_degree<F: Field>(file: &Path, field: F, json: bool) -> CmdResult {
    let ideal = load(file, field, None)?;
    let data = hilbert_degree_oracle(&ideal).map_err(|e| match e {
        HilbertError::UnitIdeal => refusal("unit_ideal", e.to_string(), json),
        other => input(other),
    })?;
    Ok(Output::ok(if json {
        to_json(&json!({
            "degree": data.degree,
            "dimension": data.affine_dimension(),
            "numerator": data.numerator,
            "reduced_numerator": data.reduced_numerator,
        }))
    } else {
        format!(
            "degree {}\ndimension {}\nnumerator {:?}\n",
            data.degree,
            data.affine_dimension(),
            data.reduced_numerator
        )
    }))
}

fn corpus(config: DegreeConfig, json: bool) -> CmdResult {
    let report = run_corpus(&config).map_err(|e: PolyError| input(e))?;
    let text = if json {
        to_json(&report)
    } else {
        let show = |v: Option<u64>| v.map_or("-".to_string(), |d| d.to_string());
        let mut s = String::new();
        for r in &report.entries {
            let _ = writeln!(
                s,
                "{:<18} n={} dim={} deg={} expected={} hilbert={} gb={} mw={} {}",
                r.name,
                r.num_vars,
                r.dimension.map_or("-1".to_string(), |d| d.to_string()),
                show(r.degree),
                r.expected_degree,
                show(r.hilbert_degree),
                if r.groebner_sound { "ok" } else { "FAIL" },
                if r.masser_wustholz { "ok" } else { "FAIL" },
                if r.pass { "PASS" } else { "FAIL" },
            );
        }
        for r in &report.refusals {
            let _ = writeln!(
                s,
                "{:<18} bezout-check --seq {} {}",
                r.name,
                r.sequence.join(" --seq "),
                if r.refused {
                    "refused (not regular) PASS"
                } else {
                    "not refused FAIL"
                },
            );
        }
        let _ = writeln!(
            s,
            "{}",
            if report.pass {
                "corpus: PASS"
            } else {
                "corpus: FAIL"
            }
        );
        s
    };
    Ok(Output {
        text,
        ok: report.pass,
    })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gb { file, order, field } => {
            with_field!(field.prime, f => gb(&file, f, order.order.into(), field.json))
        }
        Command::Dim { file, order, field } => {
            with_field!(field.prime, f => dim(&file, f, order.order.into(), field.json))
        }
        Command::Degree {
            file,
            dim,
            order,
            trials,
            field,
        } => {
            let config = trials.config(order.order.into());
            with_field!(field.prime, f => degree(&file, f, dim, config, field.json))
        }
        Command::Quotient { file, by, field } => {
            with_field!(field.prime, f => quotient(&file, f, &by, field.json))
        }
        Command::RegularCheck { file, seq, field } => {
            with_field!(field.prime, f => regular_check(&file, f, &seq.seq, field.json))
        }
        Command::SecantCheck {
            file,
            seq,
            dim,
            field,
        } => {
            with_field!(field.prime, f => secant_check(&file, f, &seq.seq, dim, field.json))
        }
        Command::BezoutCheck {
            file,
            seq,
            dim,
            random,
            trials,
            json,
        } => {
            let config = trials.config(MonomialOrder::DegRevLex);
            match (random, file) {
                (Some(n), _) => bezout_random(n, config),
                (None, Some(file)) => bezout_check(&file, &seq, dim, config, json),
                (None, None) => Err(input("an ideal file or --random is required")),
            }
        }
        Command::MwBound {
            file,
            component,
            dim,
            trials,
            field,
        } => {
            let config = trials.config(MonomialOrder::DegRevLex);
            with_field!(field.prime, f => mw_bound(&file, f, &component, dim, config, field.json))
        }
        Command::HilbertDegree { file, field } => {
            with_field!(field.prime, f => hilbert_degree(&file, f, field.json))
        }
        Command::Corpus { trials, json } => corpus(trials.config(MonomialOrder::DegRevLex), json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Refusal { message, json }) => {
            if let Some(v) = json {
                print!("{}", to_json(&v));
            }
            eprintln!("refused: {message}");
            ExitCode::from(1)
        }
    }
}
