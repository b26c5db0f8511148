//! Embedded corpus of worked pairs, each with the outcome it must produce.
//!
//! Families that are infinite in their natural setting are truncated to a
//! configurable dimension (default [`DEFAULT_TRUNCATION`]); the expected
//! bounds are the exact bounds of the truncation.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::biframes::{
    analyze_biframe, biframe_operator, construct_from_onb, gdual_partner, is_pair_frame,
    riesz_partner, transform_biframe, verify_bounds, BiframeReport, Classification,
    ExponentQuadruple,
};
use crate::briesz::{
    briesz_partner, canonical_dual_is_briesz, class_membership, find_generating_onb,
    generating_operator, is_b_riesz, pair_class_membership, vu_biframe,
};
use crate::error::{Error, Result};
use crate::frames::{frame_bounds, is_bessel, is_frame, is_orthonormal_basis, is_riesz_basis, VectorFamily};
use crate::io::FamilyFile;
use crate::linalg::{fractional_power, invert, Field, Operator, Tolerances, Vector};

pub const DEFAULT_TRUNCATION: usize = 64;

/// Where a row's expectation comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Values stated for the worked pair itself.
    Stated,
    /// Values computed independently for the pair (closed forms, diagonal
    /// arithmetic).
    Computed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub index: usize,
    pub id: String,
    pub origin: Origin,
    pub dim: usize,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

pub struct Fixture {
    pub id: &'static str,
    pub summary: &'static str,
    pub origin: Origin,
    /// Whether the dimension follows the truncation setting.
    pub truncated: bool,
    build: fn(usize) -> FamilyFile,
    check: fn(&FamilyFile, &Tolerances, &mut Checker) -> Result<()>,
}

impl Fixture {
    /// The families of this fixture at truncation `n` (ignored for fixed-size
    /// fixtures).
    pub fn families(&self, n: usize) -> FamilyFile {
        let mut file = (self.build)(n.max(2));
        file.metadata.source = Some(self.id.to_owned());
        if self.truncated {
            file.metadata.truncation = Some(file.dim);
        }
        file
    }

    pub fn run(&self, index: usize, n: usize, tol: &Tolerances) -> FixtureRow {
        let file = self.families(n);
        let mut checker = Checker::default();
        let outcome = (self.check)(&file, tol, &mut checker);
        if let Err(e) = outcome {
            checker.passed = false;
            checker.observed.push(format!("error: {e}"));
        }
        FixtureRow {
            index,
            id: self.id.to_owned(),
            origin: self.origin,
            dim: file.dim,
            expected: checker.expected.join("; "),
            observed: checker.observed.join("; "),
            passed: checker.passed,
        }
    }
}

pub fn find(id: &str) -> Option<&'static Fixture> {
    CORPUS.iter().find(|f| f.id == id)
}

pub fn corpus() -> &'static [Fixture] {
    CORPUS
}

/// Runs every fixture in corpus order.
pub fn run_all(n: usize, tol: &Tolerances) -> Vec<FixtureRow> {
    CORPUS.iter().enumerate().map(|(i, f)| f.run(i + 1, n, tol)).collect()
}

/// Accumulates `label=value` pairs for the expected and observed columns.
pub struct Checker {
    expected: Vec<String>,
    observed: Vec<String>,
    passed: bool,
}

impl Default for Checker {
    fn default() -> Self {
        Self {
            expected: Vec::new(),
            observed: Vec::new(),
            passed: true,
        }
    }
}

const CLOSE: f64 = 1e-10;

impl Checker {
    fn record(&mut self, label: &str, expected: String, observed: String, ok: bool) {
        self.expected.push(format!("{label}={expected}"));
        self.observed.push(format!("{label}={observed}"));
        self.passed &= ok;
    }

    fn class(&mut self, label: &str, report: &BiframeReport, expected: Classification) {
        self.record(
            label,
            expected.to_string(),
            report.classification.to_string(),
            report.classification == expected,
        );
    }

    fn not_biframe(&mut self, label: &str, report: &BiframeReport) {
        self.record(
            label,
            "not biframe".into(),
            report.classification.to_string(),
            report.classification != Classification::Biframe,
        );
    }

    fn close(&mut self, label: &str, observed: f64, expected: f64, tol: f64) {
        self.record(
            label,
            fmt_num(expected),
            fmt_num(observed),
            (observed - expected).abs() <= tol * expected.abs().max(1.0),
        );
    }

    fn at_most(&mut self, label: &str, observed: f64, bound: f64) {
        self.record(label, format!("<={}", fmt_num(bound)), fmt_num(observed), observed <= bound);
    }

    fn flag(&mut self, label: &str, observed: bool, expected: bool) {
        self.record(label, yes_no(expected), yes_no(observed), observed == expected);
    }

    fn bounds(&mut self, report: &BiframeReport, lower: f64, upper: f64) {
        match report.bounds {
            Some(b) => {
                self.close("lower", b.lower, lower, CLOSE);
                self.close("upper", b.upper, upper, CLOSE);
            }
            None => self.record(
                "bounds",
                format!("({}, {})", fmt_num(lower), fmt_num(upper)),
                "none".into(),
                false,
            ),
        }
    }

    fn stated(&mut self, f: &VectorFamily, g: &VectorFamily, lower: f64, upper: f64, tol: &Tolerances) -> Result<()> {
        let valid = verify_bounds(f, g, lower, upper, tol)?;
        let label = format!("stated({}, {})", fmt_num(lower), fmt_num(upper));
        self.flag(&label, valid, true);
        Ok(())
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

/// Fixed precision keeps the rows byte-stable and readable.
fn fmt_num(x: f64) -> String {
    let mut s = String::new();
    let _ = write!(s, "{x:.10}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    if trimmed == "-0" {
        "0".into()
    } else {
        trimmed.into()
    }
}

fn fam<'a>(file: &'a FamilyFile, name: &str) -> Result<&'a VectorFamily> {
    file.family(name)
}

/// Family whose `k`-th vector is `c·e_j` for `(j, c)`, or zero for `None`.
fn sparse(n: usize, field: Field, entries: &[Option<(usize, f64)>]) -> VectorFamily {
    let mut columns = DMatrix::zeros(n, entries.len());
    for (k, entry) in entries.iter().enumerate() {
        if let Some((j, c)) = entry {
            columns[(*j, k)] = Complex64::from(*c);
        }
    }
    VectorFamily::from_raw(field, columns)
}

fn real2(vectors: &[[f64; 2]]) -> VectorFamily {
    let rows: Vec<&[f64]> = vectors.iter().map(|v| v.as_slice()).collect();
    VectorFamily::real(&rows).expect("finite fixture entries")
}

fn file(field: Field, dim: usize, families: Vec<(&str, VectorFamily)>) -> FamilyFile {
    families
        .into_iter()
        .fold(FamilyFile::new(field, dim), |acc, (name, f)| acc.with_family(name, f))
}

fn std_basis(n: usize, field: Field) -> VectorFamily {
    VectorFamily::standard_basis(n, field)
}

fn form_at(s: &Operator, v: &Vector) -> Result<f64> {
    s.quadratic_form(v)
}

// --- builders ----------------------------------------------------------------

fn even(n: usize) -> usize {
    (n / 2).max(1) * 2
}

fn build_non_bessel(n: usize) -> FamilyFile {
    let n = even(n);
    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    for j in 1..=n / 2 {
        let (odd, even) = (2 * j - 2, 2 * j - 1);
        let a = 1.0 / (2 * j - 1) as f64;
        let b = (2 * j) as f64;
        f.push(Some((odd, a)));
        f.push(Some((even, b)));
        g.push(Some((odd, b)));
        g.push(Some((even, a)));
    }
    file(Field::Real, n, vec![("F", sparse(n, Field::Real, &f)), ("G", sparse(n, Field::Real, &g))])
}

fn build_bessel_pair(n: usize) -> FamilyFile {
    let f: Vec<_> = (0..n).map(|k| Some((k, 1.0 / (k + 1) as f64))).collect();
    let g: Vec<_> = (1..=n)
        .map(|k| (k % 2 == 0).then(|| (k / 2 - 1, 2.0 / k as f64)))
        .collect();
    file(Field::Real, n, vec![("F", sparse(n, Field::Real, &f)), ("G", sparse(n, Field::Real, &g))])
}

fn build_two_frames(n: usize) -> FamilyFile {
    let mut f = vec![Some((0, -0.5)), Some((0, 0.5))];
    let mut g = vec![Some((0, 1.0)), Some((0, 1.0))];
    for j in 1..n {
        f.push(Some((j, 1.0)));
        g.push(Some((j, 1.0)));
    }
    file(Field::Real, n, vec![("F", sparse(n, Field::Real, &f)), ("G", sparse(n, Field::Real, &g))])
}

fn build_shifted(n: usize) -> FamilyFile {
    let g: Vec<_> = (0..n).map(|k| Some(((k + 1) % n, 1.0))).collect();
    file(
        Field::Complex,
        n,
        vec![("F", std_basis(n, Field::Complex)), ("G", sparse(n, Field::Complex, &g))],
    )
}

fn build_permuted(n: usize) -> FamilyFile {
    let g: Vec<_> = (0..n)
        .map(|k| Some((match k { 0 => 1, 1 => 0, k => k }, 1.0)))
        .collect();
    file(Field::Real, n, vec![("E", std_basis(n, Field::Real)), ("G", sparse(n, Field::Real, &g))])
}

fn build_pair_frame(_: usize) -> FamilyFile {
    file(
        Field::Real,
        2,
        vec![
            ("F", real2(&[[1.0, 2.0], [8.0 / 7.0, 4.0]])),
            ("G", real2(&[[-1.0, 175.0 / 21.0], [7.0 / 4.0, -14.0 / 3.0]])),
        ],
    )
}

fn build_asymmetric(field: Field) -> FamilyFile {
    let g = real2(&[[1.0, 2.0], [3.0, 8.0]]);
    let g = match field {
        Field::Real => g,
        Field::Complex => VectorFamily::from_raw(Field::Complex, g.columns().clone()),
    };
    file(field, 2, vec![("E", std_basis(2, field)), ("G", g)])
}

fn build_frame_non_frame(n: usize) -> FamilyFile {
    let mut f = Vec::with_capacity(3 * n);
    let mut g = Vec::with_capacity(3 * n);
    for j in 0..n {
        f.extend([Some((j, 1.0)); 3]);
        g.push(Some((j, (j + 2) as f64 / (j + 1) as f64)));
        g.push(Some((0, 1.0)));
        g.push(Some((0, -1.0)));
    }
    file(Field::Real, n, vec![("F", sparse(n, Field::Real, &f)), ("G", sparse(n, Field::Real, &g))])
}

fn build_parseval_bessel(n: usize) -> FamilyFile {
    let scale = |k: usize| if (k + 1).is_multiple_of(2) { (k + 1) as f64 } else { 1.0 };
    let f: Vec<_> = (0..n).map(|k| Some((k, 1.0 / scale(k)))).collect();
    let g: Vec<_> = (0..n).map(|k| Some((k, scale(k)))).collect();
    file(Field::Real, n, vec![("F", sparse(n, Field::Real, &f)), ("G", sparse(n, Field::Real, &g))])
}

fn op(rows: &[&[f64]]) -> Operator {
    Operator::real(rows).expect("finite fixture entries")
}

fn rotation(theta: f64) -> Operator {
    let (c, s) = (theta.cos(), theta.sin());
    op(&[&[c, -s], &[s, c]])
}

fn with_operators(mut file: FamilyFile, ops: Vec<(&str, Operator)>, exps: &[(&str, f64)]) -> FamilyFile {
    for (name, o) in ops {
        file.operators.insert(name.to_owned(), o);
    }
    for (name, x) in exps {
        file.exponents.insert((*name).to_owned(), *x);
    }
    file
}

fn build_onb_construction(_: usize) -> FamilyFile {
    let i = Complex64::i();
    let one = Complex64::from(1.0);
    let q = Operator::complex(&[
        &[Complex64::from(3.0), one + i, Complex64::from(0.0)],
        &[one - i, Complex64::from(2.0), 0.5 * i],
        &[Complex64::from(0.0), -0.5 * i, Complex64::from(1.5)],
    ])
    .expect("finite");
    let s = 0.5f64.sqrt();
    let w = Operator::complex(&[
        &[Complex64::from(s), Complex64::from(s), Complex64::from(0.0)],
        &[s * i, -s * i, Complex64::from(0.0)],
        &[Complex64::from(0.0), Complex64::from(0.0), i],
    ])
    .expect("finite");
    with_operators(
        file(Field::Complex, 3, vec![("E", std_basis(3, Field::Complex))]),
        vec![("Q", q), ("W", w.clone()), ("T", w)],
        &[("r", 0.25), ("t", 0.75)],
    )
}

fn build_gdual(_: usize) -> FamilyFile {
    with_operators(
        file(
            Field::Real,
            2,
            vec![
                ("F", real2(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])),
                ("H", real2(&[[0.5, 0.1], [-0.3, 0.9], [2.0, -1.0]])),
            ],
        ),
        vec![("Q", op(&[&[2.0, 0.5], &[0.5, 1.0]]))],
        &[],
    )
}

fn build_riesz_partner(_: usize) -> FamilyFile {
    with_operators(
        file(Field::Real, 2, vec![("F", real2(&[[-1.0, 2.0], [1.0, 0.0]]))]),
        vec![("Q", op(&[&[2.0, 0.0], &[0.0, 1.0]]))],
        &[],
    )
}

fn build_transform(_: usize) -> FamilyFile {
    with_operators(
        file(
            Field::Real,
            2,
            vec![("F", std_basis(2, Field::Real)), ("G", real2(&[[3.0, -1.0], [-1.0, 2.0]]))],
        ),
        vec![
            ("Q", op(&[&[1.0, 0.0], &[0.0, 3.0]])),
            ("W", rotation(0.4)),
            ("T", rotation(0.4)),
        ],
        &[("p", 0.3), ("q", 0.7), ("r", 1.5), ("t", -0.5)],
    )
}

fn build_onb_member(_: usize) -> FamilyFile {
    file(
        Field::Real,
        2,
        vec![("E", std_basis(2, Field::Real)), ("F", real2(&[[3.0, -1.0], [-1.0, 2.0]]))],
    )
}

fn build_polar(_: usize) -> FamilyFile {
    file(Field::Real, 2, vec![("F", real2(&[[-1.0, 2.0], [1.0, 0.0]]))])
}

fn build_overlap(_: usize) -> FamilyFile {
    file(
        Field::Real,
        2,
        vec![
            ("E", std_basis(2, Field::Real)),
            ("D", real2(&[[0.0, 1.0], [1.0, 0.0]])),
            ("F", real2(&[[0.0, 1.0], [1.0, 1.0]])),
        ],
    )
}

fn build_two_members(_: usize) -> FamilyFile {
    file(
        Field::Real,
        2,
        vec![
            ("E", std_basis(2, Field::Real)),
            ("F", real2(&[[3.0, 1.0], [1.0, 1.0]])),
            ("G", real2(&[[2.0, -1.0], [-1.0, 1.0]])),
        ],
    )
}

fn build_vu(_: usize) -> FamilyFile {
    with_operators(
        file(Field::Real, 2, vec![("E", std_basis(2, Field::Real))]),
        vec![
            ("U", op(&[&[2.0, 0.0], &[0.0, 1.0]])),
            ("V", op(&[&[1.0, 0.0], &[0.0, 3.0]])),
        ],
        &[],
    )
}

fn build_member_partner(_: usize) -> FamilyFile {
    file(
        Field::Real,
        2,
        vec![
            ("E", std_basis(2, Field::Real)),
            ("F", real2(&[[3.0, -1.0], [-1.0, 2.0]])),
            ("G", real2(&[[0.0, 0.2], [-1.0, 2.6]])),
        ],
    )
}

fn build_parseval_scaled(n: usize) -> FamilyFile {
    let k: Vec<f64> = (1..=n).map(|k| k as f64).collect();
    let inv: Vec<f64> = k.iter().map(|k| 1.0 / k).collect();
    file(
        Field::Real,
        n,
        vec![
            ("E", std_basis(n, Field::Real)),
            ("F", VectorFamily::scaled_basis(&k, Field::Real)),
            ("G", VectorFamily::scaled_basis(&inv, Field::Real)),
        ],
    )
}

fn build_briesz_partner(_: usize) -> FamilyFile {
    with_operators(
        file(Field::Real, 2, vec![("E", std_basis(2, Field::Real))]),
        vec![
            ("S", op(&[&[2.0, -2.0], &[-2.0, 4.0]])),
            ("Q", op(&[&[1.0, 0.0], &[0.0, 2.0]])),
        ],
        &[],
    )
}

fn build_canonical_dual(_: usize) -> FamilyFile {
    file(Field::Real, 2, vec![("F", real2(&[[-1.0, 2.0], [1.0, 0.0]]))])
}

// --- checks ------------------------------------------------------------------

fn check_non_bessel(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    let report = analyze_biframe(f, g, tol)?;
    c.class("class", &report, Classification::Biframe);
    let m = (file.dim / 2) as f64;
    c.bounds(&report, 2.0 * m / (2.0 * m - 1.0), 2.0);
    c.stated(f, g, 1.0, 2.0, tol)?;
    // the largest entries grow with the truncation
    c.flag("F Bessel bound >= n", is_bessel(f, tol).1 >= file.dim as f64, true);
    Ok(())
}

fn check_bessel_pair(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    c.at_most("F Bessel bound", is_bessel(f, tol).1, 1.0 + 1e-12);
    c.at_most("G Bessel bound", is_bessel(g, tol).1, 1.0 + 1e-12);
    let report = analyze_biframe(f, g, tol)?;
    c.class("class", &report, Classification::Neither);
    let e1 = Vector::unit(file.dim, 0, Field::Real);
    c.close("form(e1)", form_at(&report.operator, &e1)?, 0.0, CLOSE);
    Ok(())
}

fn check_two_frames(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    let bf = frame_bounds(f, tol)?;
    let bg = frame_bounds(g, tol)?;
    c.close("F lower", bf.lower, 0.5, CLOSE);
    c.close("F upper", bf.upper, 1.0, CLOSE);
    c.close("G lower", bg.lower, 1.0, CLOSE);
    c.close("G upper", bg.upper, 2.0, CLOSE);
    let report = analyze_biframe(f, g, tol)?;
    c.class("class", &report, Classification::Neither);
    let e1 = Vector::unit(file.dim, 0, Field::Real);
    c.close("form(e1)", form_at(&report.operator, &e1)?, 0.0, CLOSE);
    Ok(())
}

fn check_riesz_pair(names: [&str; 2], file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, names[0])?, fam(file, names[1])?);
    c.flag("both orthonormal", is_orthonormal_basis(f, tol) && is_orthonormal_basis(g, tol), true);
    let report = analyze_biframe(f, g, tol)?;
    c.class("class", &report, Classification::PairFrameOnly);
    let e1 = Vector::unit(file.dim, 0, file.field);
    c.close("form(e1)", form_at(&report.operator, &e1)?, 0.0, CLOSE);
    Ok(())
}

fn check_shifted(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    check_riesz_pair(["F", "G"], file, tol, c)
}

fn check_permuted(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    check_riesz_pair(["E", "G"], file, tol, c)
}

fn check_pair_frame(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    let report = analyze_biframe(f, g, tol)?;
    let expected = op(&[&[1.0, 5.0], &[3.0, -2.0]]);
    c.at_most("|S - [[1,5],[3,-2]]|", report.operator.distance(&expected)?, 1e-12);
    let m = report.operator.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    c.close("det", det, -17.0, 1e-12);
    c.class("class", &report, Classification::PairFrameOnly);
    let w = report.witness.as_ref().ok_or(Error::InvalidInput("no witness".into()))?;
    c.at_most("form(witness)", form_at(&report.operator, w)?, 0.0);
    Ok(())
}

fn check_real_asymmetric(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let report = analyze_biframe(fam(file, "E")?, fam(file, "G")?, tol)?;
    c.class("class", &report, Classification::Biframe);
    c.close("hermitian deviation", report.hermitian_deviation, 2f64.sqrt(), CLOSE);
    let seven_quarters = 7f64 / 4.0;
    // x² + 5xy + 8y² = (x + 5y/2)² + 7y²/4; the symmetric part has
    // eigenvalues (9 ± √74)/2
    let root = 74f64.sqrt();
    c.bounds(&report, (9.0 - root) / 2.0, (9.0 + root) / 2.0);
    let y = Vector::real(&[-2.5, 1.0])?;
    c.close("form(-5/2, 1)", form_at(&report.operator, &y)?, seven_quarters, CLOSE);
    Ok(())
}

fn check_complex_asymmetric(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let report = analyze_biframe(fam(file, "E")?, fam(file, "G")?, tol)?;
    c.class("class", &report, Classification::PairFrameOnly);
    c.flag("hermitian", report.operator.is_hermitian(tol), false);
    Ok(())
}

fn check_frame_non_frame(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    let n = file.dim as f64;
    let report = analyze_biframe(f, g, tol)?;
    c.class("class", &report, Classification::Biframe);
    c.bounds(&report, (n + 1.0) / n, 2.0);
    c.stated(f, g, 1.0, 2.0, tol)?;
    let bf = frame_bounds(f, tol)?;
    c.close("F frame lower", bf.lower, 3.0, CLOSE);
    c.close("F frame upper", bf.upper, 3.0, CLOSE);
    // ‖S_G e_1‖ collects 2n unit contributions: no uniform upper bound
    c.close("G frame upper", frame_bounds(g, tol)?.upper, 2.0 * n + 4.0, CLOSE);
    Ok(())
}

fn check_parseval_bessel(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    let report = analyze_biframe(f, g, tol)?;
    c.flag("parseval", report.is_parseval(tol), true);
    c.at_most("F Bessel bound", is_bessel(f, tol).1, 1.0 + 1e-12);
    let top = even(file.dim) as f64;
    c.close("G upper frame bound", is_bessel(g, tol).1, top * top, CLOSE);
    Ok(())
}

fn check_onb_construction(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let e = fam(file, "E")?;
    let q = &file.operators["Q"];
    let (f, g) = construct_from_onb(
        e,
        q,
        &file.operators["W"],
        &file.operators["T"],
        file.exponents["r"],
        file.exponents["t"],
        tol,
    )?;
    let report = analyze_biframe(&f, &g, tol)?;
    c.class("class", &report, Classification::Biframe);
    c.at_most("|S - Q|", report.operator.distance(q)?, 1e-12);
    Ok(())
}

fn check_gdual(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, h) = (fam(file, "F")?, fam(file, "H")?);
    let q = &file.operators["Q"];
    let g = gdual_partner(f, q, h, tol)?;
    let report = analyze_biframe(f, &g, tol)?;
    c.class("class", &report, Classification::Biframe);
    c.at_most("|S - Q^-1|", report.operator.distance(&invert(q, tol)?)?, 1e-12);
    c.flag("G frame", is_frame(&g, tol), true);
    Ok(())
}

fn check_riesz_partner(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let f = fam(file, "F")?;
    let q = &file.operators["Q"];
    let g = riesz_partner(f, q, tol)?;
    let report = analyze_biframe(f, &g, tol)?;
    c.class("class", &report, Classification::Biframe);
    c.at_most("|S - Q^-1|", report.operator.distance(&invert(q, tol)?)?, 1e-12);
    c.flag("G Riesz", is_riesz_basis(&g, tol), true);
    Ok(())
}

fn check_transform(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (f, g) = (fam(file, "F")?, fam(file, "G")?);
    let x = &file.exponents;
    let exps = ExponentQuadruple::new(x["p"], x["q"], x["r"], x["t"])?;
    let (q, w, t) = (&file.operators["Q"], &file.operators["W"], &file.operators["T"]);
    let out = transform_biframe(f, g, q, w, t, &exps, tol)?;
    c.class("class", &out.report, Classification::Biframe);
    c.at_most("|S - Q|", out.report.operator.distance(q)?, 1e-12);

    let id = Operator::identity(2, Field::Real);
    let parseval = transform_biframe(f, g, &id, w, t, &exps, tol)?;
    c.flag("parseval with Q = I", parseval.report.is_parseval(tol), true);
    Ok(())
}

fn check_onb_member(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (e, f) = (fam(file, "E")?, fam(file, "F")?);
    let report = analyze_biframe(e, f, tol)?;
    c.class("class", &report, Classification::Biframe);
    let r5 = 5f64.sqrt();
    c.bounds(&report, (5.0 - r5) / 2.0, (5.0 + r5) / 2.0);
    c.stated(e, f, 1.0, 4.0, tol)?;
    c.flag("member", class_membership(e, f, tol)?.member, true);
    c.flag("orthonormal", is_orthonormal_basis(f, tol), false);
    Ok(())
}

fn check_polar(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let f = fam(file, "F")?;
    let basis = find_generating_onb(f, tol)?;
    c.at_most("gram deviation", basis.orthonormality_deviation, 1e-10);
    let s = op(&[&[2.0, -2.0], &[-2.0, 4.0]]);
    let root = fractional_power(&s, 0.5, tol)?;
    c.at_most("|U - S^1/2|", basis.generator.distance(&root)?, 1e-12);
    let membership = class_membership(&basis.delta, f, tol)?;
    c.flag("member", membership.member, true);
    c.flag("b-Riesz", is_b_riesz(f, tol), true);
    Ok(())
}

fn check_overlap(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (e, d, f) = (fam(file, "E")?, fam(file, "D")?, fam(file, "F")?);
    c.flag("pair frame with E", pair_class_membership(e, f, tol)?, true);
    c.flag("pair frame with D", pair_class_membership(d, f, tol)?, true);
    let u = generating_operator(d, f, tol)?;
    c.at_most("|U_D - [[1,0],[1,1]]|", u.distance(&op(&[&[1.0, 0.0], &[1.0, 1.0]]))?, 0.0);
    c.flag("biframe with E", analyze_biframe(e, f, tol)?.is_biframe(), false);
    Ok(())
}

fn check_two_members(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (e, f, g) = (fam(file, "E")?, fam(file, "F")?, fam(file, "G")?);
    c.stated(e, f, 0.5, 4.0, tol)?;
    c.stated(e, g, 0.25, 3.0, tol)?;
    let report = analyze_biframe(f, g, tol)?;
    c.not_biframe("(F,G)", &report);
    let v = Vector::real(&[1.0, 5.0])?;
    c.close("form(1, 5)", form_at(&report.operator, &v)?, 0.0, CLOSE);
    Ok(())
}

fn check_vu(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let report = vu_biframe(fam(file, "E")?, &file.operators["U"], &file.operators["V"], tol)?;
    c.class("class", &report, Classification::Biframe);
    c.bounds(&report, 2.0, 3.0);
    Ok(())
}

fn check_member_partner(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (e, f, g) = (fam(file, "E")?, fam(file, "F")?, fam(file, "G")?);
    let report = analyze_biframe(f, g, tol)?;
    c.class("(F,G)", &report, Classification::Biframe);
    let r2 = 2f64.sqrt();
    c.bounds(&report, 3.0 - 2.0 * r2, 3.0 + 2.0 * r2);
    c.stated(f, g, 1.0 / 6.0, 7.0, tol)?;
    c.not_biframe("(E,G)", &analyze_biframe(e, g, tol)?);
    c.flag("G member", class_membership(e, g, tol)?.member, false);
    Ok(())
}

fn check_parseval_scaled(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let (e, f, g) = (fam(file, "E")?, fam(file, "F")?, fam(file, "G")?);
    let n = file.dim as f64;
    let s = biframe_operator(f, g)?;
    c.at_most("|S - I|", s.distance_to_identity(), 1e-12);
    let ef = analyze_biframe(e, f, tol)?;
    let eg = analyze_biframe(e, g, tol)?;
    let upper = ef.bounds.map_or(f64::NAN, |b| b.upper);
    let lower = eg.bounds.map_or(f64::NAN, |b| b.lower);
    c.close("(E,F) upper", upper, n, CLOSE);
    c.close("(E,G) lower", lower, 1.0 / n, CLOSE);
    Ok(())
}

fn check_briesz_partner(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let e = fam(file, "E")?;
    let u = fractional_power(&file.operators["S"], 0.5, tol)?;
    let q = &file.operators["Q"];
    let (f, g) = briesz_partner(e, &u, q, tol)?;
    let report = analyze_biframe(&f, &g, tol)?;
    c.class("class", &report, Classification::Biframe);
    c.at_most("|S - Q|", report.operator.distance(q)?, 1e-12);
    c.bounds(&report, 1.0, 2.0);
    Ok(())
}

fn check_canonical_dual(file: &FamilyFile, tol: &Tolerances, c: &mut Checker) -> Result<()> {
    let f = fam(file, "F")?;
    c.flag("dual b-Riesz", canonical_dual_is_briesz(f, tol)?, true);
    c.flag("pair frame with dual", is_pair_frame(f, &crate::frames::canonical_dual(f, tol)?, tol)?, true);
    Ok(())
}

static CORPUS: &[Fixture] = &[
    Fixture {
        id: "non-bessel-biframe",
        summary: "two non-Bessel families forming a biframe with bounds 1 and 2",
        origin: Origin::Stated,
        truncated: true,
        build: build_non_bessel,
        check: check_non_bessel,
    },
    Fixture {
        id: "bessel-pair-not-biframe",
        summary: "two Bessel families whose form vanishes at e1",
        origin: Origin::Stated,
        truncated: true,
        build: build_bessel_pair,
        check: check_bessel_pair,
    },
    Fixture {
        id: "two-frames-not-biframe",
        summary: "frames with bounds (1/2, 1) and (1, 2) that do not form a biframe",
        origin: Origin::Stated,
        truncated: true,
        build: build_two_frames,
        check: check_two_frames,
    },
    Fixture {
        id: "shifted-riesz-pair",
        summary: "orthonormal basis against its cyclic shift in a complex space",
        origin: Origin::Computed,
        truncated: true,
        build: build_shifted,
        check: check_shifted,
    },
    Fixture {
        id: "permuted-onb-pair",
        summary: "orthonormal basis against a permutation of itself",
        origin: Origin::Stated,
        truncated: true,
        build: build_permuted,
        check: check_permuted,
    },
    Fixture {
        id: "pair-frame-not-biframe",
        summary: "invertible S = [[1,5],[3,-2]] with an indefinite form",
        origin: Origin::Stated,
        truncated: false,
        build: build_pair_frame,
        check: check_pair_frame,
    },
    Fixture {
        id: "real-asymmetric-positive",
        summary: "non-symmetric S = [[1,3],[2,8]] with a positive form in a real space",
        origin: Origin::Stated,
        truncated: false,
        build: |_| build_asymmetric(Field::Real),
        check: check_real_asymmetric,
    },
    Fixture {
        id: "complex-asymmetric-pair-frame",
        summary: "the same S in a complex space is not Hermitian, hence no biframe",
        origin: Origin::Computed,
        truncated: false,
        build: |_| build_asymmetric(Field::Complex),
        check: check_complex_asymmetric,
    },
    Fixture {
        id: "frame-with-non-frame",
        summary: "a frame and a family without upper frame bound forming a biframe",
        origin: Origin::Stated,
        truncated: true,
        build: build_frame_non_frame,
        check: check_frame_non_frame,
    },
    Fixture {
        id: "parseval-bessel-non-bessel",
        summary: "Parseval biframe of a Bessel and a non-Bessel family",
        origin: Origin::Stated,
        truncated: true,
        build: build_parseval_bessel,
        check: check_parseval_bessel,
    },
    Fixture {
        id: "onb-construction",
        summary: "f_k = Q^r W e_k, g_k = Q^t T e_k has biframe operator Q",
        origin: Origin::Computed,
        truncated: false,
        build: build_onb_construction,
        check: check_onb_construction,
    },
    Fixture {
        id: "gdual-partner",
        summary: "partner of an overcomplete frame with S = Q^-1",
        origin: Origin::Computed,
        truncated: false,
        build: build_gdual,
        check: check_gdual,
    },
    Fixture {
        id: "riesz-partner",
        summary: "g_k = (S_F Q)^-1 f_k for a Riesz basis",
        origin: Origin::Computed,
        truncated: false,
        build: build_riesz_partner,
        check: check_riesz_partner,
    },
    Fixture {
        id: "operator-transform",
        summary: "U = Q^r W S^-p, V = Q^t T S^-q maps a biframe to one with operator Q",
        origin: Origin::Computed,
        truncated: false,
        build: build_transform,
        check: check_transform,
    },
    Fixture {
        id: "onb-member-biframe",
        summary: "{(3,-1),(-1,2)} with the standard basis, bounds 1 and 4",
        origin: Origin::Stated,
        truncated: false,
        build: build_onb_member,
        check: check_onb_member,
    },
    Fixture {
        id: "polar-generating-basis",
        summary: "{(-1,2),(1,0)} is generated from S^-1/2 F by S^1/2",
        origin: Origin::Computed,
        truncated: false,
        build: build_polar,
        check: check_polar,
    },
    Fixture {
        id: "real-pair-classes-overlap",
        summary: "{(0,1),(1,1)} is a pair frame with two different orthonormal bases",
        origin: Origin::Stated,
        truncated: false,
        build: build_overlap,
        check: check_overlap,
    },
    Fixture {
        id: "two-members-not-biframe",
        summary: "two members of the class of E that do not form a biframe",
        origin: Origin::Stated,
        truncated: false,
        build: build_two_members,
        check: check_two_members,
    },
    Fixture {
        id: "vu-positive",
        summary: "({U e_k}, {V e_k}) with VU positive definite",
        origin: Origin::Computed,
        truncated: false,
        build: build_vu,
        check: check_vu,
    },
    Fixture {
        id: "member-with-non-member",
        summary: "a member and a non-member forming a biframe with bounds 1/6 and 7",
        origin: Origin::Stated,
        truncated: false,
        build: build_member_partner,
        check: check_member_partner,
    },
    Fixture {
        id: "parseval-scaled-basis",
        summary: "({k e_k}, {e_k / k}) is Parseval though neither is in the class of E",
        origin: Origin::Stated,
        truncated: true,
        build: build_parseval_scaled,
        check: check_parseval_scaled,
    },
    Fixture {
        id: "briesz-partner",
        summary: "f_k = U e_k, g_k = Q U^-1 e_k with U = [[2,-2],[-2,4]]^1/2",
        origin: Origin::Computed,
        truncated: false,
        build: build_briesz_partner,
        check: check_briesz_partner,
    },
    Fixture {
        id: "canonical-dual-briesz",
        summary: "the canonical dual of a b-Riesz basis is b-Riesz",
        origin: Origin::Computed,
        truncated: false,
        build: build_canonical_dual,
        check: check_canonical_dual,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_passes_at_default_truncation() {
        let rows = run_all(DEFAULT_TRUNCATION, &Tolerances::default());
        let failed: Vec<_> = rows.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn every_row_passes_at_small_and_large_truncation() {
        for n in [2, 3, 4, 7, 128] {
            let rows = run_all(n, &Tolerances::default());
            let failed: Vec<_> = rows.iter().filter(|r| !r.passed).collect();
            assert!(failed.is_empty(), "n = {n}: {failed:#?}");
        }
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = corpus().iter().map(|f| f.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), corpus().len());
        assert!(find("pair-frame-not-biframe").is_some());
        assert!(find("nope").is_none());
    }

    #[test]
    fn runs_are_deterministic() {
        let t = Tolerances::default();
        assert_eq!(run_all(16, &t), run_all(16, &t));
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(2.0), "2");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0 / 3.0), "0.3333333333");
        assert_eq!(fmt_num(-17.0), "-17");
    }
}
