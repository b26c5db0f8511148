//! On-disk formats: family files and report documents.
//!
//! A family file is a JSON object
//!
//! ```json
//! {
//!   "field": "complex",
//!   "dim": 2,
//!   "families": {
//!     "E": [[1, 0], [0, 1]],
//!     "F": [[[1, 0], [0, 1]], [[0, -1], [2, 0]]]
//!   },
//!   "operators": { "Q": [[2, 0], [0, 1]] },
//!   "exponents": { "r": 1, "t": 0 },
//!   "metadata": { "truncation": 64, "source": "hand-made" }
//! }
//! ```
//!
//! Entries are plain numbers or `[re, im]` pairs. Families are lists of
//! vectors; operators are lists of rows. `operators` and `exponents` are only
//! read by the construction commands.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::marker::PhantomData;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::biframes::Classification;
use crate::error::Error;
use crate::fixtures::FixtureRow;
use crate::frames::{BoundsCertificate, VectorFamily};
use crate::linalg::{Field, Operator, Tolerances, Vector};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: {error}")]
    Invalid { origin: String, error: Error },
}

impl FileError {
    fn invalid(origin: &str, error: Error) -> Self {
        FileError::Invalid {
            origin: origin.to_owned(),
            error,
        }
    }
}

/// A matrix or vector entry: a number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    pub fn encode(z: Complex64, field: Field) -> Self {
        match field {
            Field::Real => Entry::Real(z.re),
            Field::Complex => Entry::Complex([z.re, z.im]),
        }
    }

    pub fn value(self) -> Complex64 {
        match self {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

pub fn encode_vector(v: &Vector) -> Vec<Entry> {
    v.entries().iter().map(|z| Entry::encode(*z, v.field())).collect()
}

pub fn encode_coefficients(c: &[Complex64], field: Field) -> Vec<Entry> {
    c.iter().map(|z| Entry::encode(*z, field)).collect()
}

pub fn encode_operator(op: &Operator) -> Vec<Vec<Entry>> {
    let m = op.matrix();
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| Entry::encode(m[(i, j)], op.field())).collect())
        .collect()
}

fn encode_family(f: &VectorFamily) -> Vec<Vec<Entry>> {
    f.vectors().map(|v| encode_vector(&v)).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// Rejects repeated keys instead of keeping the last one.
fn unique_map<'de, D, V>(deserializer: D) -> Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct UniqueVisitor<V>(PhantomData<V>);

    impl<'de, V: Deserialize<'de>> Visitor<'de> for UniqueVisitor<V> {
        type Value = BTreeMap<String, V>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map with unique names")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((key, value)) = access.next_entry::<String, V>()? {
                if out.contains_key(&key) {
                    return Err(serde::de::Error::custom(format!("duplicate name `{key}`")));
                }
                out.insert(key, value);
            }
            Ok(out)
        }
    }

    deserializer.deserialize_map(UniqueVisitor(PhantomData))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamilyFile {
    field: Field,
    dim: usize,
    #[serde(deserialize_with = "unique_map")]
    families: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default, deserialize_with = "unique_map")]
    operators: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default, deserialize_with = "unique_map")]
    exponents: BTreeMap<String, f64>,
    #[serde(default)]
    metadata: Metadata,
}

/// Validated contents of a family file.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyFile {
    pub field: Field,
    pub dim: usize,
    pub families: BTreeMap<String, VectorFamily>,
    pub operators: BTreeMap<String, Operator>,
    pub exponents: BTreeMap<String, f64>,
    pub metadata: Metadata,
}

fn decode_entries(entries: &[Entry], field: Field, what: &dyn Fn() -> String) -> crate::Result<Vec<Complex64>> {
    entries
        .iter()
        .map(|e| match (field, e) {
            (Field::Real, Entry::Complex(_)) => Err(Error::InvalidInput(format!(
                "{}: complex entry in a real file",
                what()
            ))),
            _ => Ok(e.value()),
        })
        .collect()
}

impl FamilyFile {
    pub fn new(field: Field, dim: usize) -> Self {
        Self {
            field,
            dim,
            families: BTreeMap::new(),
            operators: BTreeMap::new(),
            exponents: BTreeMap::new(),
            metadata: Metadata::default(),
        }
    }

    pub fn with_family(mut self, name: &str, family: VectorFamily) -> Self {
        self.families.insert(name.to_owned(), family);
        self
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, FileError> {
        let raw: RawFamilyFile = serde_json::from_str(text).map_err(|e| FileError::Parse {
            origin: origin.to_owned(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::validate(raw).map_err(|e| FileError::invalid(origin, e))
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    fn validate(raw: RawFamilyFile) -> crate::Result<Self> {
        let (field, dim) = (raw.field, raw.dim);
        if dim == 0 {
            return Err(Error::InvalidInput("dim must be positive".into()));
        }
        let mut families = BTreeMap::new();
        for (name, vectors) in raw.families {
            if vectors.is_empty() {
                return Err(Error::InvalidInput(format!("family `{name}` is empty")));
            }
            let mut columns = DMatrix::zeros(dim, vectors.len());
            for (k, v) in vectors.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::InvalidInput(format!(
                        "family `{name}` vector {k}: length {} but dim is {dim}",
                        v.len()
                    )));
                }
                let entries = decode_entries(v, field, &|| format!("family `{name}` vector {k}"))?;
                for (i, z) in entries.into_iter().enumerate() {
                    columns[(i, k)] = z;
                }
            }
            let family = VectorFamily::from_columns(field, columns)
                .map_err(|e| annotate(e, &format!("family `{name}`")))?;
            families.insert(name, family);
        }
        let mut operators = BTreeMap::new();
        for (name, rows) in raw.operators {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidInput(format!(
                    "operator `{name}` is not {dim}x{dim}"
                )));
            }
            let mut m = DMatrix::zeros(dim, dim);
            for (i, row) in rows.iter().enumerate() {
                let entries = decode_entries(row, field, &|| format!("operator `{name}` row {i}"))?;
                for (j, z) in entries.into_iter().enumerate() {
                    m[(i, j)] = z;
                }
            }
            let op = Operator::new(field, m).map_err(|e| annotate(e, &format!("operator `{name}`")))?;
            operators.insert(name, op);
        }
        for (name, value) in &raw.exponents {
            if !value.is_finite() {
                return Err(Error::InvalidExponents(format!("exponent `{name}` is not finite")));
            }
        }
        Ok(Self {
            field,
            dim,
            families,
            operators,
            exponents: raw.exponents,
            metadata: raw.metadata,
        })
    }

    pub fn family(&self, name: &str) -> crate::Result<&VectorFamily> {
        self.families.get(name).ok_or_else(|| {
            Error::InvalidInput(format!(
                "no family named `{name}` (available: {})",
                self.families.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    /// JSON text with one vector (or operator row) per line. Numbers are
    /// written in shortest round-trip form, so reading the text back gives
    /// identical bits.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let field = serde_json::to_string(&self.field).expect("field serializes");
        let _ = writeln!(out, "{{\n  \"field\": {field},\n  \"dim\": {},", self.dim);
        out.push_str("  \"families\": {");
        write_blocks(&mut out, self.families.iter().map(|(k, f)| (k, encode_family(f))));
        out.push('}');
        if !self.operators.is_empty() {
            out.push_str(",\n  \"operators\": {");
            write_blocks(&mut out, self.operators.iter().map(|(k, o)| (k, encode_operator(o))));
            out.push('}');
        }
        if !self.exponents.is_empty() {
            let text = serde_json::to_string(&self.exponents).expect("finite exponents");
            let _ = write!(out, ",\n  \"exponents\": {text}");
        }
        if self.metadata != Metadata::default() {
            let text = serde_json::to_string(&self.metadata).expect("metadata serializes");
            let _ = write!(out, ",\n  \"metadata\": {text}");
        }
        out.push_str("\n}\n");
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        std::fs::write(path, self.to_json()).map_err(|source| FileError::Io {
            path: path.to_owned(),
            source,
        })
    }
}

fn write_blocks<'a>(out: &mut String, blocks: impl Iterator<Item = (&'a String, Vec<Vec<Entry>>)>) {
    let mut first = true;
    for (name, rows) in blocks {
        out.push_str(if first { "\n" } else { ",\n" });
        first = false;
        let key = serde_json::to_string(name).expect("string key");
        let _ = write!(out, "    {key}: [");
        for (i, row) in rows.iter().enumerate() {
            let line = serde_json::to_string(row).expect("finite entries");
            let sep = if i + 1 < rows.len() { "," } else { "" };
            let _ = write!(out, "\n      {line}{sep}");
        }
        out.push_str("\n    ]");
    }
    if !first {
        out.push_str("\n  ");
    }
}

fn annotate(error: Error, location: &str) -> Error {
    match error {
        Error::InvalidInput(msg) => Error::InvalidInput(format!("{location}: {msg}")),
        other => other,
    }
}

/// Stated bounds and whether they are valid for the pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatedBounds {
    pub lower: f64,
    pub upper: f64,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSummary {
    pub kind: String,
    /// `‖S_{F,G} − predicted‖_F`.
    pub operator_deviation: f64,
    pub parseval: bool,
}

/// Machine-readable report. Every key is always present; absent values are
/// `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<String>,
    pub tolerances: Tolerances,
    pub classification: Option<Classification>,
    pub pair_frame: Option<bool>,
    pub operator: Option<Vec<Vec<Entry>>>,
    pub bounds: Option<BoundsCertificate>,
    pub stated_bounds: Option<StatedBounds>,
    /// Smallest and largest form value over random unit vectors.
    pub sampled_form: Option<[f64; 2]>,
    pub spectrum: Vec<f64>,
    pub hermitian_deviation: Option<f64>,
    pub min_singular_value: Option<f64>,
    pub witness: Option<Vec<Entry>>,
    pub residuals: Option<[f64; 2]>,
    pub condition: Option<f64>,
    pub coefficients: Option<Vec<Entry>>,
    pub construction: Option<ConstructionSummary>,
    pub fixtures: Option<Vec<FixtureRow>>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: Vec<String>, tolerances: Tolerances) -> Self {
        Self {
            command: command.to_owned(),
            inputs,
            tolerances,
            classification: None,
            pair_frame: None,
            operator: None,
            bounds: None,
            stated_bounds: None,
            sampled_form: None,
            spectrum: Vec::new(),
            hermitian_deviation: None,
            min_singular_value: None,
            witness: None,
            residuals: None,
            condition: None,
            coefficients: None,
            construction: None,
            fixtures: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report values are finite");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "field": "real",
  "dim": 2,
  "families": {
    "F": [[1, 2], [1.1428571428571428, 4]],
    "G": [[-1, 8.333333333333334], [1.75, -4.666666666666667]]
  },
  "metadata": {"source": "sample"}
}"#;

    #[test]
    fn parses_real_file() {
        let file = FamilyFile::parse(SAMPLE, "sample.json").unwrap();
        assert_eq!(file.field, Field::Real);
        assert_eq!(file.families.len(), 2);
        assert_eq!(file.family("F").unwrap().vector(1).entries()[0].re, 8.0 / 7.0);
        assert_eq!(file.metadata.source.as_deref(), Some("sample"));
        assert!(file.family("H").is_err());
    }

    #[test]
    fn parses_complex_pairs_and_operators() {
        let text = r#"{"field": "complex", "dim": 2,
            "families": {"F": [[[1, 0], [0, 1]], [[0, -1], 2]]},
            "operators": {"Q": [[2, 0], [0, [1, 0]]]},
            "exponents": {"r": 1, "t": 0}}"#;
        let file = FamilyFile::parse(text, "c.json").unwrap();
        let f = file.family("F").unwrap();
        assert_eq!(f.vector(0).entries()[1], Complex64::new(0.0, 1.0));
        assert_eq!(f.vector(1).entries()[1], Complex64::new(2.0, 0.0));
        assert_eq!(file.operators["Q"].entry(0, 0), Complex64::new(2.0, 0.0));
        assert_eq!(file.exponents["r"], 1.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "{\n  \"field\": \"real\",\n  \"dim\": 2,\n  \"families\": {\"F\": [[1, 2],, ]}\n}";
        match FamilyFile::parse(text, "bad.json") {
            Err(FileError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let dup = r#"{"field": "real", "dim": 1, "families": {"F": [[1]], "F": [[2]]}}"#;
        match FamilyFile::parse(dup, "dup.json") {
            Err(FileError::Parse { message, .. }) => assert!(message.contains("duplicate name `F`")),
            other => panic!("expected a duplicate-name error, got {other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        let wrong_len = r#"{"field": "real", "dim": 2, "families": {"F": [[1, 2], [3]]}}"#;
        match FamilyFile::parse(wrong_len, "w.json") {
            Err(FileError::Invalid { error, .. }) => {
                assert!(error.to_string().contains("family `F` vector 1"))
            }
            other => panic!("{other:?}"),
        }
        let complex_in_real = r#"{"field": "real", "dim": 1, "families": {"F": [[[1, 1]]]}}"#;
        assert!(matches!(
            FamilyFile::parse(complex_in_real, "x.json"),
            Err(FileError::Invalid { .. })
        ));
        let empty = r#"{"field": "real", "dim": 1, "families": {"F": []}}"#;
        assert!(matches!(FamilyFile::parse(empty, "e.json"), Err(FileError::Invalid { .. })));
    }

    #[test]
    fn write_then_read_is_bit_exact() {
        let mut file = FamilyFile::parse(SAMPLE, "sample.json").unwrap();
        file.operators.insert(
            "Q".into(),
            Operator::real(&[&[0.1 + 0.2, 1.0 / 3.0], &[-0.0, 1e-300]]).unwrap(),
        );
        file.exponents.insert("p".into(), 1.0 / 3.0);
        let text = file.to_json();
        let back = FamilyFile::parse(&text, "roundtrip").unwrap();
        assert_eq!(back, file);
        assert!(text.lines().any(|l| l.trim() == "[1.0,2.0],"));
    }

    #[test]
    fn report_round_trip() {
        let mut doc = ReportDocument::new("analyze", vec!["F".into(), "G".into()], Tolerances::default());
        doc.classification = Some(Classification::PairFrameOnly);
        doc.spectrum = vec![(-1.0 - 73f64.sqrt()) / 2.0, (-1.0 + 73f64.sqrt()) / 2.0];
        doc.hermitian_deviation = Some(2f64.sqrt());
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let value: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(value["classification"], "pair-frame-only");
        assert!(value["bounds"].is_null());
    }
}
