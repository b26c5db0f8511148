//! Dense linear algebra over the real or complex field.
//!
//! Every [`Vector`] and [`Operator`] carries a [`Field`] tag. Entries are
//! stored as `Complex64` in both cases; real-field values keep a zero
//! imaginary part, and the decompositions below run on an `f64` copy for
//! real-field inputs so their eigenvectors and polar factors stay real.
//! Mixing fields in one operation is an error.

use std::fmt;

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar field of the underlying Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

pub(crate) fn same_field(left: Field, right: Field) -> Result<Field> {
    if left == right {
        Ok(left)
    } else {
        Err(Error::FieldMismatch { left, right })
    }
}

/// Numerical thresholds standing in for exact equalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative Hermitian deviation: `‖M − M*‖_F ≤ eps_herm·max(1, ‖M‖_F)`.
    pub eps_herm: f64,
    /// Relative zero band for eigenvalues: `|λ| ≤ eps_pd·max(1, ‖M‖₂)`.
    pub eps_pd: f64,
    /// Smallest singular value at or below which an operator is singular.
    pub eps_inv: f64,
    /// Residual threshold for reconstructions and operator identities.
    pub eps_recon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_herm: 1e-10,
            eps_pd: 1e-9,
            eps_inv: 1e-12,
            eps_recon: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_herm, self.eps_pd, self.eps_inv, self.eps_recon];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "tolerances must be finite and strictly positive: {self:?}"
            )))
        }
    }

    /// Zero band for eigenvalues of an operator with spectral norm `norm2`.
    pub fn pd_band(&self, norm2: f64) -> f64 {
        self.eps_pd * norm2.max(1.0)
    }
}

fn check_entries<'a>(entries: impl IntoIterator<Item = &'a Complex64>, field: Field) -> Result<()> {
    for z in entries {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite entry {z}")));
        }
        if field == Field::Real && z.im != 0.0 {
            return Err(Error::InvalidInput(format!(
                "entry {z} has a nonzero imaginary part in a real space"
            )));
        }
    }
    Ok(())
}

/// An element of an n-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: DVector<Complex64>,
    field: Field,
}

impl Vector {
    pub fn new(field: Field, data: DVector<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidInput("vector must have at least one entry".into()));
        }
        check_entries(data.iter(), field)?;
        Ok(Self { data, field })
    }

    pub fn real(entries: &[f64]) -> Result<Self> {
        Self::new(
            Field::Real,
            DVector::from_iterator(entries.len(), entries.iter().map(|&x| Complex64::from(x))),
        )
    }

    pub fn complex(entries: &[Complex64]) -> Result<Self> {
        Self::new(Field::Complex, DVector::from_column_slice(entries))
    }

    pub fn zeros(n: usize, field: Field) -> Self {
        Self {
            data: DVector::zeros(n),
            field,
        }
    }

    /// The k-th standard basis vector (0-based).
    pub fn unit(n: usize, k: usize, field: Field) -> Self {
        let mut data = DVector::zeros(n);
        data[k] = Complex64::from(1.0);
        Self { data, field }
    }

    pub(crate) fn from_raw(field: Field, data: DVector<Complex64>) -> Self {
        Self { data, field }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Complex64] {
        self.data.as_slice()
    }

    pub fn data(&self) -> &DVector<Complex64> {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    /// `⟨self, other⟩`, linear in the first argument.
    pub fn inner(&self, other: &Vector) -> Result<Complex64> {
        same_field(self.field, other.field)?;
        check_dims("inner product", self.dim(), other.dim())?;
        Ok(other.data.dotc(&self.data))
    }

    pub fn distance(&self, other: &Vector) -> Result<f64> {
        same_field(self.field, other.field)?;
        check_dims("vector distance", self.dim(), other.dim())?;
        Ok((&self.data - &other.data).norm())
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Self {
            data: &self.data * Complex64::from(factor),
            field: self.field,
        }
    }

    pub fn normalized(&self) -> Vector {
        let n = self.norm();
        if n == 0.0 {
            self.clone()
        } else {
            self.scaled(1.0 / n)
        }
    }
}

pub(crate) fn check_dims(context: &'static str, left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { context, left, right })
    }
}

/// A linear operator on an n-dimensional Hilbert space, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: DMatrix<Complex64>,
    field: Field,
}

impl Operator {
    pub fn new(field: Field, mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() == 0 || mat.nrows() != mat.ncols() {
            return Err(Error::InvalidInput(format!(
                "operator must be square and nonempty, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        check_entries(mat.iter(), field)?;
        Ok(Self { mat, field })
    }

    /// Builds a real operator from its rows.
    pub fn real(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("operator rows must form a square matrix".into()));
        }
        Self::new(
            Field::Real,
            DMatrix::from_fn(n, n, |i, j| Complex64::from(rows[i][j])),
        )
    }

    /// Builds a complex operator from its rows.
    pub fn complex(rows: &[&[Complex64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("operator rows must form a square matrix".into()));
        }
        Self::new(Field::Complex, DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Self {
            mat: DMatrix::identity(n, n),
            field,
        }
    }

    pub fn diagonal(diag: &[f64], field: Field) -> Result<Self> {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::from(x)));
        Self::new(field, DMatrix::from_diagonal(&d))
    }

    pub(crate) fn from_raw(field: Field, mat: DMatrix<Complex64>) -> Self {
        Self { mat, field }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn adjoint(&self) -> Operator {
        adjoint(self)
    }

    /// `(M + M*)/2`: the part of `M` seen by the quadratic form `Re⟨Mf, f⟩`.
    pub fn hermitian_part(&self) -> Operator {
        Self {
            mat: (&self.mat + self.mat.adjoint()) * Complex64::from(0.5),
            field: self.field,
        }
    }

    /// `‖M − M*‖_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        (&self.mat - self.mat.adjoint()).norm()
    }

    pub fn is_hermitian(&self, tol: &Tolerances) -> bool {
        self.hermitian_deviation() <= tol.eps_herm * self.frobenius_norm().max(1.0)
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        let field = same_field(self.field, rhs.field)?;
        check_dims("operator product", self.dim(), rhs.dim())?;
        Ok(Self {
            mat: &self.mat * &rhs.mat,
            field,
        })
    }

    pub fn add(&self, rhs: &Operator) -> Result<Operator> {
        let field = same_field(self.field, rhs.field)?;
        check_dims("operator sum", self.dim(), rhs.dim())?;
        Ok(Self {
            mat: &self.mat + &rhs.mat,
            field,
        })
    }

    pub fn sub(&self, rhs: &Operator) -> Result<Operator> {
        let field = same_field(self.field, rhs.field)?;
        check_dims("operator difference", self.dim(), rhs.dim())?;
        Ok(Self {
            mat: &self.mat - &rhs.mat,
            field,
        })
    }

    pub fn scaled(&self, factor: f64) -> Operator {
        Self {
            mat: &self.mat * Complex64::from(factor),
            field: self.field,
        }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        let field = same_field(self.field, v.field())?;
        check_dims("operator application", self.dim(), v.dim())?;
        Ok(Vector::from_raw(field, &self.mat * v.data()))
    }

    /// `‖self − rhs‖_F`.
    pub fn distance(&self, rhs: &Operator) -> Result<f64> {
        Ok(self.sub(rhs)?.frobenius_norm())
    }

    /// `‖self − I‖_F`.
    pub fn distance_to_identity(&self) -> f64 {
        (&self.mat - DMatrix::<Complex64>::identity(self.dim(), self.dim())).norm()
    }

    /// `Re⟨M x, x⟩`.
    pub fn quadratic_form(&self, x: &Vector) -> Result<f64> {
        Ok(self.apply(x)?.inner(x)?.re)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = match self.field {
            Field::Real => real_copy(&self.mat).singular_values().iter().copied().collect(),
            Field::Complex => self.mat.singular_values().iter().copied().collect(),
        };
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn min_singular_value(&self) -> f64 {
        self.singular_values().last().copied().unwrap_or(0.0)
    }

    /// `σ_max / σ_min`; infinite for singular operators.
    pub fn condition_number(&self) -> f64 {
        let s = self.singular_values();
        let (max, min) = (s[0], s[s.len() - 1]);
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }
}

pub(crate) fn real_copy(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    m.map(|z| z.re)
}

pub(crate) fn complex_copy(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(Complex64::from)
}

/// Conjugate transpose.
pub fn adjoint(m: &Operator) -> Operator {
    Operator {
        mat: m.mat.adjoint(),
        field: m.field,
    }
}

/// Hermitian eigendecomposition with eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
    field: Field,
}

impl EigenSystem {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Largest eigenvalue magnitude, which is the spectral norm.
    pub fn spectral_norm(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    pub fn vector(&self, i: usize) -> Vector {
        Vector::from_raw(self.field, self.vectors.column(i).into_owned())
    }

    pub fn vectors(&self) -> Vec<Vector> {
        (0..self.values.len()).map(|i| self.vector(i)).collect()
    }

    /// Eigenvectors as the columns of a unitary matrix.
    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    /// `Σ φ(λ_i) v_i v_i*`.
    pub fn map_spectrum(&self, phi: impl Fn(f64) -> f64) -> Operator {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(phi(lambda));
        }
        let mat = &scaled * self.vectors.adjoint();
        // exact Hermitian symmetry; rounding in the product can break it slightly
        let mat = (&mat + mat.adjoint()) * Complex64::from(0.5);
        Operator::from_raw(self.field, mat)
    }

    pub fn reconstruct(&self) -> Operator {
        self.map_spectrum(|l| l)
    }
}

fn sorted_eigen<T>(m: DMatrix<T>) -> (Vec<f64>, DMatrix<T>)
where
    T: ComplexField<RealField = f64>,
{
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])].clone());
    (values, vectors)
}

fn require_hermitian(m: &Operator, tol: &Tolerances) -> Result<()> {
    let deviation = m.hermitian_deviation();
    let threshold = tol.eps_herm * m.frobenius_norm().max(1.0);
    if deviation <= threshold {
        Ok(())
    } else {
        Err(Error::NotHermitian { deviation, threshold })
    }
}

/// Eigendecomposition of a Hermitian operator via Householder
/// tridiagonalization and implicit symmetric QR.
pub fn hermitian_eigen(m: &Operator, tol: &Tolerances) -> Result<EigenSystem> {
    require_hermitian(m, tol)?;
    let h = m.hermitian_part();
    let (values, vectors) = match m.field {
        Field::Real => {
            let (values, vectors) = sorted_eigen(real_copy(&h.mat));
            (values, complex_copy(&vectors))
        }
        Field::Complex => sorted_eigen(h.mat),
    };
    Ok(EigenSystem {
        values,
        vectors,
        field: m.field,
    })
}

/// Sign pattern of the spectrum of a Hermitian operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NegativeSemidefinite,
    NegativeDefinite,
}

impl Definiteness {
    /// Classifies an ascending spectrum with the given zero band.
    pub fn from_spectrum(values: &[f64], band: f64) -> Self {
        let min = values[0];
        let max = values[values.len() - 1];
        if min > band {
            Definiteness::PositiveDefinite
        } else if min >= -band {
            Definiteness::PositiveSemidefinite
        } else if max < -band {
            Definiteness::NegativeDefinite
        } else if max <= band {
            Definiteness::NegativeSemidefinite
        } else {
            Definiteness::Indefinite
        }
    }
}

/// Classifies a Hermitian operator. Real-field callers that want the
/// definiteness of the quadratic form of a non-symmetric matrix must pass
/// its symmetric part themselves.
pub fn classify_definiteness(m: &Operator, tol: &Tolerances) -> Result<Definiteness> {
    let eig = hermitian_eigen(m, tol)?;
    Ok(Definiteness::from_spectrum(
        eig.values(),
        tol.pd_band(eig.spectral_norm()),
    ))
}

/// Requires `m` Hermitian positive definite and returns its eigensystem.
pub(crate) fn require_positive_definite(m: &Operator, tol: &Tolerances) -> Result<EigenSystem> {
    let eig = hermitian_eigen(m, tol)?;
    let band = tol.pd_band(eig.spectral_norm());
    if eig.min() > band {
        Ok(eig)
    } else {
        Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.min(),
            band,
        })
    }
}

/// `M^s = Σ λ_i^s v_i v_i*` for Hermitian `M`.
///
/// Non-negative integer powers are defined for every Hermitian input; any
/// other exponent needs `M` positive definite.
pub fn fractional_power(m: &Operator, s: f64, tol: &Tolerances) -> Result<Operator> {
    if !s.is_finite() {
        return Err(Error::InvalidInput(format!("exponent {s} is not finite")));
    }
    require_hermitian(m, tol)?;
    if s == 0.0 {
        return Ok(Operator::identity(m.dim(), m.field));
    }
    if s == 1.0 {
        return Ok(m.clone());
    }
    if s > 0.0 && s.fract() == 0.0 {
        let eig = hermitian_eigen(m, tol)?;
        let k = s as i32;
        return Ok(eig.map_spectrum(|l| l.powi(k)));
    }
    let eig = require_positive_definite(m, tol)?;
    Ok(eig.map_spectrum(|l| l.powf(s)))
}

/// Polar factors `M = W·P`, `W` unitary and `P = (M*M)^{1/2}`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub unitary: Operator,
    pub positive: Operator,
}

fn polar_generic<T>(m: DMatrix<T>) -> (DMatrix<T>, DMatrix<T>, Vec<f64>)
where
    T: ComplexField<RealField = f64>,
{
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let w = &u * &v_t;
    let mut v_sigma = v_t.adjoint();
    for (j, &s) in sigma.iter().enumerate() {
        v_sigma.column_mut(j).scale_mut(s);
    }
    let p = &v_sigma * &v_t;
    let p = (&p + p.adjoint()) * T::from_real(0.5);
    (w, p, sigma)
}

pub fn polar_decompose(m: &Operator, tol: &Tolerances) -> Result<PolarDecomposition> {
    let (w, p, sigma) = match m.field {
        Field::Real => {
            let (w, p, s) = polar_generic(real_copy(&m.mat));
            (complex_copy(&w), complex_copy(&p), s)
        }
        Field::Complex => polar_generic(m.mat.clone()),
    };
    let min = sigma.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= tol.eps_inv {
        return Err(Error::Singular {
            min_singular_value: min,
            threshold: tol.eps_inv,
        });
    }
    Ok(PolarDecomposition {
        unitary: Operator::from_raw(m.field, w),
        positive: Operator::from_raw(m.field, p),
    })
}

pub fn invert(m: &Operator, tol: &Tolerances) -> Result<Operator> {
    let min = m.min_singular_value();
    if min <= tol.eps_inv {
        return Err(Error::Singular {
            min_singular_value: min,
            threshold: tol.eps_inv,
        });
    }
    let inverse = match m.field {
        Field::Real => real_copy(&m.mat).try_inverse().map(|i| complex_copy(&i)),
        Field::Complex => m.mat.clone().try_inverse(),
    };
    inverse
        .map(|mat| Operator::from_raw(m.field, mat))
        .ok_or(Error::Singular {
            min_singular_value: min,
            threshold: tol.eps_inv,
        })
}

/// Whether `S2 = V·S1·U*` holds to relative accuracy `eps_recon`.
pub fn factorization_check(
    s1: &Operator,
    s2: &Operator,
    u: &Operator,
    v: &Operator,
    tol: &Tolerances,
) -> Result<bool> {
    let product = v.compose(s1)?.compose(&u.adjoint())?;
    let residual = s2.distance(&product)?;
    Ok(residual <= tol.eps_recon * s2.frobenius_norm())
}
