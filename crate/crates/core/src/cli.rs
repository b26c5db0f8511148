//! Command-line front end. The binary only parses arguments and calls [`run`].
//!
//! Exit codes: 0 biframe or success, 1 pair frame only (or a failing fixture
//! row), 2 neither / not a biframe, 3 unreadable input, 4 invalid input,
//! 5 numerical failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::biframes::{
    analyze_biframe, biframe_coefficients, construct_from_onb, gdual_partner, reconstruct,
    riesz_partner, transform_biframe, verify_bounds, Classification, ExponentQuadruple,
};
use crate::briesz::briesz_partner;
use crate::error::Error;
use crate::fixtures::{self, DEFAULT_TRUNCATION};
use crate::frames::VectorFamily;
use crate::io::{
    encode_coefficients, encode_operator, encode_vector, ConstructionSummary, Entry, FamilyFile,
    FileError, ReportDocument, StatedBounds,
};
use crate::linalg::{invert, Field, Operator, Tolerances, Vector};
use crate::random;

#[derive(Debug, Parser)]
#[command(name = "biframe", version, about = "Classify and construct biframes in finite dimensions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Family file to read
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub tol_herm: Option<f64>,
    #[arg(long, global = true)]
    pub tol_pd: Option<f64>,
    #[arg(long, global = true)]
    pub tol_inv: Option<f64>,
    #[arg(long, global = true)]
    pub tol_recon: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a pair and report its biframe operator, spectrum and bounds
    Analyze {
        #[command(flatten)]
        pair: PairNames,
        /// Stated bounds to check for validity
        #[arg(long, num_args = 2, value_names = ["LOWER", "UPPER"], allow_negative_numbers = true)]
        stated: Option<Vec<f64>>,
        /// Evaluate the form at this many random unit vectors
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Reconstruct a vector from biframe coefficients
    Reconstruct {
        #[command(flatten)]
        pair: PairNames,
        /// Vector as a JSON array; entries are numbers or [re, im] pairs.
        /// A seeded random vector is used when omitted.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Build a biframe from operators and families in a parameter file
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// Parameter file (family-file format with `operators` and
        /// `exponents`); defaults to --input
        #[arg(long)]
        params: Option<PathBuf>,
        /// Write the constructed families here
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run the embedded fixture corpus
    Fixtures {
        /// List fixtures without running them
        #[arg(long)]
        list: bool,
        /// Dimension for truncated fixtures
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        dim_override: usize,
        /// Write the families of one fixture as a family file
        #[arg(long, value_name = "ID")]
        export: Option<String>,
    },
    /// Eigenvalues of the Hermitian part of S_{F,G}
    Spectrum {
        #[command(flatten)]
        pair: PairNames,
    },
}

#[derive(Debug, Args)]
pub struct PairNames {
    /// Name of the analysis family
    #[arg(default_value = "F")]
    pub first: String,
    /// Name of the synthesis family
    #[arg(default_value = "G")]
    pub second: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    /// F, G, Q, W, T, exponents p q r t
    Transform,
    /// E, Q, W, T, exponents r t
    FromOnb,
    /// F, H, Q
    Gdual,
    /// F, Q
    RieszPartner,
    /// E, U, Q
    BrieszPartner,
}

impl ConstructKind {
    fn name(self) -> &'static str {
        match self {
            ConstructKind::Transform => "transform",
            ConstructKind::FromOnb => "from-onb",
            ConstructKind::Gdual => "gdual",
            ConstructKind::RieszPartner => "riesz-partner",
            ConstructKind::BrieszPartner => "briesz-partner",
        }
    }
}

/// Why a command stopped; each maps to one exit code.
#[derive(Debug)]
pub enum Failure {
    File(FileError),
    Domain(Error),
    Usage(String),
    Output(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::File(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::File(e) => write!(f, "{e}"),
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Output(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

pub fn classification_exit_code(c: Classification) -> i32 {
    match c {
        Classification::Biframe => 0,
        Classification::PairFrameOnly => 1,
        Classification::Neither => 2,
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::NotABiframe { .. }
        | Error::NotAFrame { .. }
        | Error::NotARieszBasis
        | Error::MembershipNotEstablished { .. } => 2,
        Error::DimensionMismatch { .. }
        | Error::FieldMismatch { .. }
        | Error::BadCoupling { .. }
        | Error::NotOrthonormal { .. }
        | Error::InvalidExponents(_)
        | Error::InvalidInput(_) => 4,
        Error::NotHermitian { .. } | Error::NotPositiveDefinite { .. } | Error::Singular { .. } => 5,
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::File(FileError::Io { .. } | FileError::Parse { .. }) => 3,
            Failure::File(FileError::Invalid { error, .. }) => error_exit_code(error),
            Failure::Domain(e) => error_exit_code(e),
            Failure::Usage(_) => 4,
            Failure::Output(_) => 3,
        }
    }
}

/// Text to emit and the exit code it carries.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Cli {
    fn tolerances(&self) -> Result<Tolerances, Failure> {
        let d = Tolerances::default();
        let g = &self.global;
        let tol = Tolerances {
            eps_herm: g.tol_herm.unwrap_or(d.eps_herm),
            eps_pd: g.tol_pd.unwrap_or(d.eps_pd),
            eps_inv: g.tol_inv.unwrap_or(d.eps_inv),
            eps_recon: g.tol_recon.unwrap_or(d.eps_recon),
        };
        tol.validate()?;
        Ok(tol)
    }

    fn input(&self) -> Result<FamilyFile, Failure> {
        let path = self
            .global
            .input
            .as_deref()
            .ok_or_else(|| Failure::Usage("--input is required for this command".into()))?;
        Ok(FamilyFile::read(path)?)
    }
}

/// Runs a parsed command and writes its output; returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(outcome) => match emit(cli.global.output.as_deref(), &outcome.text, stdout) {
            Ok(()) => outcome.code,
            Err(e) => report_failure(&Failure::Output(e), stderr),
        },
        Err(failure) => report_failure(&failure, stderr),
    }
}

fn report_failure(failure: &Failure, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {failure}");
    failure.exit_code()
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let tol = cli.tolerances()?;
    let format = cli.global.format;
    if format == Format::Csv && !matches!(cli.command, Command::Spectrum { .. }) {
        return Err(Failure::Usage("--format csv is only available for spectrum".into()));
    }
    match &cli.command {
        Command::Analyze { pair, stated, samples } => {
            cmd_analyze(&cli.input()?, pair, stated.as_deref(), *samples, cli.global.seed, &tol, format)
        }
        Command::Reconstruct { pair, vector } => {
            cmd_reconstruct(&cli.input()?, pair, vector.as_deref(), cli.global.seed, &tol, format)
        }
        Command::Construct { kind, params, emit } => {
            let params = match params {
                Some(p) => FamilyFile::read(p)?,
                None => cli.input()?,
            };
            cmd_construct(*kind, &params, emit.as_deref(), &tol, format)
        }
        Command::Fixtures {
            list,
            dim_override,
            export,
        } => cmd_fixtures(*list, *dim_override, export.as_deref(), &tol, format),
        Command::Spectrum { pair } => cmd_spectrum(&cli.input()?, pair, &tol, format),
    }
}

fn pair<'a>(file: &'a FamilyFile, names: &PairNames) -> Result<(&'a VectorFamily, &'a VectorFamily), Failure> {
    Ok((file.family(&names.first)?, file.family(&names.second)?))
}

fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        _ => render_text(doc),
    }
}

pub fn cmd_analyze(
    file: &FamilyFile,
    names: &PairNames,
    stated: Option<&[f64]>,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
    format: Format,
) -> Result<Outcome, Failure> {
    let (f, g) = pair(file, names)?;
    let report = analyze_biframe(f, g, tol)?;
    let mut doc = ReportDocument::new("analyze", vec![names.first.clone(), names.second.clone()], *tol);
    doc.classification = Some(report.classification);
    doc.pair_frame = Some(report.min_singular_value > tol.eps_inv);
    doc.operator = Some(encode_operator(&report.operator));
    doc.bounds = report.bounds;
    doc.spectrum = report.spectrum.clone();
    doc.hermitian_deviation = Some(report.hermitian_deviation);
    doc.min_singular_value = Some(report.min_singular_value);
    doc.witness = report.witness.as_ref().map(encode_vector);
    if let Some(&[lower, upper]) = stated {
        let valid = match verify_bounds(f, g, lower, upper, tol) {
            Ok(v) => v,
            Err(Error::NotABiframe { .. }) => false,
            Err(e) => return Err(e.into()),
        };
        doc.stated_bounds = Some(StatedBounds { lower, upper, valid });
    }
    if samples > 0 {
        let mut rng = random::seeded(seed);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..samples {
            let x = random::unit_vector(file.dim, file.field, &mut rng);
            let v = report.operator.quadratic_form(&x)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        doc.sampled_form = Some([lo, hi]);
    }
    Ok(Outcome {
        text: render(&doc, format),
        code: classification_exit_code(report.classification),
    })
}

fn parse_vector(text: &str, field: Field) -> Result<Vector, Failure> {
    let entries: Vec<Entry> = serde_json::from_str(text).map_err(|e| {
        Failure::File(FileError::Parse {
            origin: "--vector".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    })?;
    let values: Vec<Complex64> = entries
        .iter()
        .map(|e| match (field, e) {
            (Field::Real, Entry::Complex(_)) => {
                Err(Error::InvalidInput("complex entry in a real vector".into()))
            }
            _ => Ok(e.value()),
        })
        .collect::<Result<_, _>>()?;
    Ok(Vector::new(field, nalgebra::DVector::from_vec(values))?)
}

pub fn cmd_reconstruct(
    file: &FamilyFile,
    names: &PairNames,
    vector: Option<&str>,
    seed: u64,
    tol: &Tolerances,
    format: Format,
) -> Result<Outcome, Failure> {
    let (f, g) = pair(file, names)?;
    let x = match vector {
        Some(text) => parse_vector(text, file.field)?,
        None => random::vector(file.dim, file.field, &mut random::seeded(seed)),
    };
    let rec = reconstruct(f, g, &x, tol)?;
    let coefficients = biframe_coefficients(f, g, &x, tol)?;
    let mut doc = ReportDocument::new("reconstruct", vec![names.first.clone(), names.second.clone()], *tol);
    doc.classification = Some(Classification::Biframe);
    doc.residuals = Some(rec.residuals);
    doc.condition = Some(rec.condition);
    doc.coefficients = Some(encode_coefficients(&coefficients, file.field));
    let code = if rec.within(tol) { 0 } else { 5 };
    Ok(Outcome {
        text: render(&doc, format),
        code,
    })
}

struct Params<'a> {
    file: &'a FamilyFile,
}

impl<'a> Params<'a> {
    fn family(&self, name: &str) -> Result<VectorFamily, Failure> {
        Ok(self.file.family(name)?.clone())
    }

    fn family_or(&self, name: &str, default: impl FnOnce() -> VectorFamily) -> VectorFamily {
        self.file.families.get(name).cloned().unwrap_or_else(default)
    }

    fn operator(&self, name: &str) -> Result<Operator, Failure> {
        self.file
            .operators
            .get(name)
            .cloned()
            .ok_or_else(|| Failure::Domain(Error::InvalidInput(format!("parameter file has no operator `{name}`"))))
    }

    fn operator_or_identity(&self, name: &str) -> Operator {
        self.file
            .operators
            .get(name)
            .cloned()
            .unwrap_or_else(|| Operator::identity(self.file.dim, self.file.field))
    }

    fn exponent(&self, name: &str, default: f64) -> f64 {
        self.file.exponents.get(name).copied().unwrap_or(default)
    }

    fn standard_basis(&self) -> VectorFamily {
        VectorFamily::standard_basis(self.file.dim, self.file.field)
    }
}

pub fn cmd_construct(
    kind: ConstructKind,
    file: &FamilyFile,
    emit_path: Option<&Path>,
    tol: &Tolerances,
    format: Format,
) -> Result<Outcome, Failure> {
    let p = Params { file };
    let (f, g, predicted) = match kind {
        ConstructKind::Transform => {
            let (f, g) = (p.family("F")?, p.family("G")?);
            let q = p.operator("Q")?;
            let (w, t) = (p.operator_or_identity("W"), p.operator_or_identity("T"));
            let exps = ExponentQuadruple::new(
                p.exponent("p", 0.5),
                p.exponent("q", 0.5),
                p.exponent("r", 0.5),
                p.exponent("t", 0.5),
            )?;
            let out = transform_biframe(&f, &g, &q, &w, &t, &exps, tol)?;
            (out.f, out.g, q)
        }
        ConstructKind::FromOnb => {
            let e = p.family_or("E", || p.standard_basis());
            let q = p.operator_or_identity("Q");
            let (w, t) = (p.operator_or_identity("W"), p.operator_or_identity("T"));
            let (f, g) = construct_from_onb(&e, &q, &w, &t, p.exponent("r", 0.5), p.exponent("t", 0.5), tol)?;
            (f, g, q)
        }
        ConstructKind::Gdual => {
            let f = p.family("F")?;
            let h = p.family_or("H", || {
                VectorFamily::from_raw(f.field(), DMatrix::zeros(f.dim(), f.len()))
            });
            let q = p.operator_or_identity("Q");
            let g = gdual_partner(&f, &q, &h, tol)?;
            (f, g, invert(&q, tol)?)
        }
        ConstructKind::RieszPartner => {
            let f = p.family("F")?;
            let q = p.operator_or_identity("Q");
            let g = riesz_partner(&f, &q, tol)?;
            (f, g, invert(&q, tol)?)
        }
        ConstructKind::BrieszPartner => {
            let e = p.family_or("E", || p.standard_basis());
            let u = p.operator("U")?;
            let q = p.operator_or_identity("Q");
            let (f, g) = briesz_partner(&e, &u, &q, tol)?;
            (f, g, q)
        }
    };

    let report = analyze_biframe(&f, &g, tol)?;
    let deviation = report.operator.distance(&predicted)?;
    let mut doc = ReportDocument::new(
        "construct",
        vec![kind.name().to_owned()],
        *tol,
    );
    doc.classification = Some(report.classification);
    doc.operator = Some(encode_operator(&report.operator));
    doc.bounds = report.bounds;
    doc.spectrum = report.spectrum.clone();
    doc.hermitian_deviation = Some(report.hermitian_deviation);
    doc.construction = Some(ConstructionSummary {
        kind: kind.name().to_owned(),
        operator_deviation: deviation,
        parseval: report.is_parseval(tol),
    });

    let mut out = FamilyFile::new(f.field(), f.dim())
        .with_family("F", f)
        .with_family("G", g);
    out.metadata.source = Some(kind.name().to_owned());
    let mut text = render(&doc, format);
    match emit_path {
        Some(path) => out.write(path)?,
        None if format == Format::Text => {
            text.push('\n');
            text.push_str(&out.to_json());
        }
        None => {}
    }
    Ok(Outcome {
        text,
        code: classification_exit_code(report.classification),
    })
}

pub fn cmd_fixtures(
    list: bool,
    dim: usize,
    export: Option<&str>,
    tol: &Tolerances,
    format: Format,
) -> Result<Outcome, Failure> {
    if dim < 2 {
        return Err(Failure::Usage("--dim-override must be at least 2".into()));
    }
    if let Some(id) = export {
        let fixture = fixtures::find(id).ok_or_else(|| Failure::Usage(format!("unknown fixture `{id}`")))?;
        return Ok(Outcome {
            text: fixture.families(dim).to_json(),
            code: 0,
        });
    }
    if list {
        let mut text = String::new();
        for (i, f) in fixtures::corpus().iter().enumerate() {
            let size = if f.truncated { "truncated" } else { "fixed" };
            let _ = writeln!(text, "{:>2}  {:<32} {:<9} {:<9} {}", i + 1, f.id, origin_name(f.origin), size, f.summary);
        }
        return Ok(Outcome { text, code: 0 });
    }
    let rows = fixtures::run_all(dim, tol);
    let all_pass = rows.iter().all(|r| r.passed);
    let mut doc = ReportDocument::new("fixtures", vec![format!("dim={dim}")], *tol);
    doc.fixtures = Some(rows);
    Ok(Outcome {
        text: render(&doc, format),
        code: if all_pass { 0 } else { 1 },
    })
}

fn origin_name(o: fixtures::Origin) -> &'static str {
    match o {
        fixtures::Origin::Stated => "stated",
        fixtures::Origin::Computed => "computed",
    }
}

pub fn cmd_spectrum(file: &FamilyFile, names: &PairNames, tol: &Tolerances, format: Format) -> Result<Outcome, Failure> {
    let (f, g) = pair(file, names)?;
    let report = analyze_biframe(f, g, tol)?;
    let text = match format {
        Format::Csv => spectrum_csv(&report.spectrum),
        _ => {
            let mut doc = ReportDocument::new("spectrum", vec![names.first.clone(), names.second.clone()], *tol);
            doc.classification = Some(report.classification);
            doc.spectrum = report.spectrum;
            doc.hermitian_deviation = Some(report.hermitian_deviation);
            render(&doc, format)
        }
    };
    Ok(Outcome { text, code: 0 })
}

pub fn spectrum_csv(values: &[f64]) -> String {
    let mut out = String::from("index,value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{i},{v:?}");
    }
    out
}

/// At most 12 decimals, trailing zeros dropped; JSON output keeps full precision.
fn short(x: f64) -> String {
    let text = format!("{x:.12}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" {
        "0".to_owned()
    } else {
        text.to_owned()
    }
}

fn fmt_entries(entries: &[Entry]) -> String {
    let parts: Vec<String> = entries
        .iter()
        .map(|e| match e {
            Entry::Real(x) => short(*x),
            Entry::Complex([re, im]) if *im < 0.0 => format!("{}-{}i", short(*re), short(-im)),
            Entry::Complex([re, im]) => format!("{}+{}i", short(*re), short(*im)),
        })
        .collect();
    format!("({})", parts.join(", "))
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", doc.command, doc.inputs.join(" "));
    if let Some(c) = doc.classification {
        let _ = writeln!(out, "classification: {c}");
    }
    if let Some(p) = doc.pair_frame {
        let _ = writeln!(out, "pair frame: {}", if p { "yes" } else { "no" });
    }
    if let Some(rows) = &doc.operator {
        let _ = writeln!(out, "operator S:");
        for row in rows {
            let _ = writeln!(out, "  {}", fmt_entries(row));
        }
    }
    if let Some(d) = doc.hermitian_deviation {
        let _ = writeln!(out, "hermitian deviation: {d:.3e}");
    }
    if let Some(s) = doc.min_singular_value {
        let _ = writeln!(out, "smallest singular value: {s:.6}");
    }
    if !doc.spectrum.is_empty() {
        let values: Vec<String> = doc.spectrum.iter().map(|v| format!("{v:.10}")).collect();
        let _ = writeln!(out, "spectrum: {}", values.join(", "));
    }
    if let Some(b) = doc.bounds {
        let _ = writeln!(out, "optimal bounds: {:.10} .. {:.10}", b.lower, b.upper);
    }
    if let Some(s) = doc.stated_bounds {
        let verdict = if s.valid { "valid" } else { "not valid" };
        let _ = writeln!(out, "stated bounds: {} .. {} ({verdict})", s.lower, s.upper);
    }
    if let Some([lo, hi]) = doc.sampled_form {
        let _ = writeln!(out, "sampled form range: {lo:.10} .. {hi:.10}");
    }
    if let Some(w) = &doc.witness {
        let _ = writeln!(out, "witness: {}", fmt_entries(w));
    }
    if let Some([a, b]) = doc.residuals {
        let _ = writeln!(out, "residuals: {a:.3e} (coefficients), {b:.3e} (inverse synthesis)");
    }
    if let Some(c) = doc.condition {
        let _ = writeln!(out, "condition number: {c:.6}");
    }
    if let Some(c) = &doc.coefficients {
        let _ = writeln!(out, "coefficients: {}", fmt_entries(c));
    }
    if let Some(c) = &doc.construction {
        let _ = writeln!(out, "operator deviation: {:.3e}", c.operator_deviation);
        let _ = writeln!(out, "Parseval: {}", if c.parseval { "yes" } else { "no" });
    }
    if let Some(rows) = &doc.fixtures {
        for r in rows {
            let mark = if r.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{:>2} {mark} {:<30} n={:<4} {}", r.index, r.id, r.dim, r.observed);
            if !r.passed {
                let _ = writeln!(out, "        expected {}", r.expected);
            }
        }
        let passed = rows.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{passed}/{} rows pass", rows.len());
    }
    out
}
