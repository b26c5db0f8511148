//! Vector families and the classical frame predicates built on them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_dims, hermitian_eigen, invert, real_copy, same_field, Field, Operator, Tolerances,
    Vector,
};

/// An ordered family `{f_k}` of `m` vectors in an `n`-dimensional space.
///
/// Stored as the `n × m` matrix whose k-th column is `f_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    columns: DMatrix<Complex64>,
    field: Field,
}

impl VectorFamily {
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::InvalidInput("a family needs at least one vector".into()))?;
        let (n, field) = (first.dim(), first.field());
        for v in &vectors {
            same_field(field, v.field())?;
            check_dims("family vector length", n, v.dim())?;
        }
        let columns = DMatrix::from_fn(n, vectors.len(), |i, k| vectors[k].entries()[i]);
        Ok(Self { columns, field })
    }

    pub fn real(vectors: &[&[f64]]) -> Result<Self> {
        Self::new(vectors.iter().map(|v| Vector::real(v)).collect::<Result<_>>()?)
    }

    pub fn complex(vectors: &[&[Complex64]]) -> Result<Self> {
        Self::new(vectors.iter().map(|v| Vector::complex(v)).collect::<Result<_>>()?)
    }

    /// Builds a family from its `n × m` synthesis matrix.
    pub fn from_columns(field: Field, columns: DMatrix<Complex64>) -> Result<Self> {
        if columns.nrows() == 0 || columns.ncols() == 0 {
            return Err(Error::InvalidInput("a family needs at least one nonempty vector".into()));
        }
        let vectors = (0..columns.ncols())
            .map(|k| Vector::new(field, columns.column(k).into_owned()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    pub(crate) fn from_raw(field: Field, columns: DMatrix<Complex64>) -> Self {
        Self { columns, field }
    }

    pub fn standard_basis(n: usize, field: Field) -> Self {
        Self {
            columns: DMatrix::identity(n, n),
            field,
        }
    }

    /// `{c_k e_k}` for the standard basis, one scale per vector.
    pub fn scaled_basis(scales: &[f64], field: Field) -> Self {
        let n = scales.len();
        Self {
            columns: DMatrix::from_fn(n, n, |i, k| {
                if i == k {
                    Complex64::from(scales[k])
                } else {
                    Complex64::from(0.0)
                }
            }),
            field,
        }
    }

    /// Number of vectors, `m`.
    pub fn len(&self) -> usize {
        self.columns.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.ncols() == 0
    }

    /// Ambient dimension, `n`.
    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vector(&self, k: usize) -> Vector {
        Vector::from_raw(self.field, self.columns.column(k).into_owned())
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.len()).map(|k| self.vector(k))
    }

    pub fn columns(&self) -> &DMatrix<Complex64> {
        &self.columns
    }

    /// `{U f_k}`.
    pub fn mapped(&self, op: &Operator) -> Result<VectorFamily> {
        let field = same_field(self.field, op.field())?;
        check_dims("operator on family", op.dim(), self.dim())?;
        Ok(Self {
            columns: op.matrix() * &self.columns,
            field,
        })
    }

    /// `Σ c_k f_k`.
    pub fn synthesize(&self, coefficients: &[Complex64]) -> Result<Vector> {
        check_dims("synthesis coefficients", self.len(), coefficients.len())?;
        let c = nalgebra::DVector::from_column_slice(coefficients);
        Ok(Vector::from_raw(self.field, &self.columns * c))
    }

    /// `(⟨x, f_k⟩)_k`.
    pub fn analyze(&self, x: &Vector) -> Result<Vec<Complex64>> {
        same_field(self.field, x.field())?;
        check_dims("analysis vector", self.dim(), x.dim())?;
        Ok((self.columns.adjoint() * x.data()).iter().copied().collect())
    }

    /// Largest vector-by-vector distance, index aligned.
    pub fn max_distance(&self, other: &VectorFamily) -> Result<f64> {
        check_same_shape(self, other)?;
        Ok((0..self.len())
            .map(|k| (self.columns.column(k) - other.columns.column(k)).norm())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn check_same_shape(f: &VectorFamily, g: &VectorFamily) -> Result<Field> {
    let field = same_field(f.field, g.field)?;
    check_dims("family dimension", f.dim(), g.dim())?;
    check_dims("family length", f.len(), g.len())?;
    Ok(field)
}

/// `Σ_k g_k f_k*`, accumulated in index order.
///
/// Swapping the arguments produces the exact conjugate transpose: every
/// term `g_k[i]·conj(f_k[j])` is the conjugate of `f_k[j]·conj(g_k[i])` in
/// floating point and both sums run over `k` in the same order.
pub(crate) fn cross_synthesis(f: &VectorFamily, g: &VectorFamily) -> DMatrix<Complex64> {
    let n = f.dim();
    let mut s = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..f.len() {
        let fk = f.columns.column(k);
        let gk = g.columns.column(k);
        for j in 0..n {
            let fj = fk[j].conj();
            for i in 0..n {
                s[(i, j)] += gk[i] * fj;
            }
        }
    }
    s
}

/// The synthesis map `c ↦ Σ c_k f_k`, an `n × m` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisMap {
    matrix: DMatrix<Complex64>,
    field: Field,
}

impl SynthesisMap {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn is_square(&self) -> bool {
        self.matrix.nrows() == self.matrix.ncols()
    }

    /// The operator `V` with `V e_k = f_k`, for `m = n`.
    pub fn to_operator(&self) -> Option<Operator> {
        self.is_square()
            .then(|| Operator::from_raw(self.field, self.matrix.clone()))
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = match self.field {
            Field::Real => real_copy(&self.matrix).singular_values().iter().copied().collect(),
            Field::Complex => self.matrix.singular_values().iter().copied().collect(),
        };
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

pub fn synthesis_operator(f: &VectorFamily) -> SynthesisMap {
    SynthesisMap {
        matrix: f.columns.clone(),
        field: f.field,
    }
}

/// `S_F = Σ f_k f_k*`.
pub fn frame_operator(f: &VectorFamily) -> Operator {
    let s = cross_synthesis(f, f);
    Operator::from_raw(f.field, s)
}

/// Lower and upper bounds `0 < A ≤ B` of a frame or biframe inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsCertificate {
    pub lower: f64,
    pub upper: f64,
    /// Set when the bounds are the extreme eigenvalues of the governing operator.
    pub optimal: bool,
}

impl BoundsCertificate {
    /// A stated pair `(A, B)`, not claimed optimal.
    pub fn stated(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "bounds must satisfy 0 < A <= B, got ({lower}, {upper})"
            )));
        }
        Ok(Self {
            lower,
            upper,
            optimal: false,
        })
    }

    /// Whether `[lower, upper]` contains `inner` up to `slack`.
    pub fn contains(&self, inner: &BoundsCertificate, slack: f64) -> bool {
        self.lower <= inner.lower + slack && inner.upper <= self.upper + slack
    }
}

/// Optimal frame bounds: the extreme eigenvalues of `S_F`.
pub fn frame_bounds(f: &VectorFamily, tol: &Tolerances) -> Result<BoundsCertificate> {
    let eig = hermitian_eigen(&frame_operator(f), tol)?;
    if eig.min() <= tol.pd_band(eig.spectral_norm()) {
        return Err(Error::NotAFrame {
            min_eigenvalue: eig.min(),
        });
    }
    Ok(BoundsCertificate {
        lower: eig.min(),
        upper: eig.max(),
        optimal: true,
    })
}

/// Always Bessel in finite dimension; returns the optimal Bessel bound `λ_max(S_F)`.
pub fn is_bessel(f: &VectorFamily, tol: &Tolerances) -> (bool, f64) {
    let upper = hermitian_eigen(&frame_operator(f), tol)
        .map(|e| e.max())
        .unwrap_or(f64::NAN);
    (true, upper)
}

pub fn is_frame(f: &VectorFamily, tol: &Tolerances) -> bool {
    frame_bounds(f, tol).is_ok()
}

/// `m = n` and the synthesis operator is invertible.
pub fn is_riesz_basis(f: &VectorFamily, tol: &Tolerances) -> bool {
    if f.len() != f.dim() {
        return false;
    }
    let s = synthesis_operator(f).singular_values();
    s[s.len() - 1] > tol.eps_inv
}

/// Deviation `‖V*V − I‖_F` of the Gram matrix from the identity.
pub fn gram_deviation(f: &VectorFamily) -> f64 {
    let gram = f.columns.adjoint() * &f.columns;
    (gram - DMatrix::<Complex64>::identity(f.len(), f.len())).norm()
}

pub fn is_orthonormal_basis(f: &VectorFamily, tol: &Tolerances) -> bool {
    f.len() == f.dim() && gram_deviation(f) <= tol.eps_recon
}

pub(crate) fn require_orthonormal(e: &VectorFamily, tol: &Tolerances) -> Result<()> {
    let deviation = gram_deviation(e);
    if e.len() == e.dim() && deviation <= tol.eps_recon {
        Ok(())
    } else {
        Err(Error::NotOrthonormal { deviation })
    }
}

/// `{S_F^{-1} f_k}`.
pub fn canonical_dual(f: &VectorFamily, tol: &Tolerances) -> Result<VectorFamily> {
    frame_bounds(f, tol)?;
    let inv = invert(&frame_operator(f), tol)?;
    f.mapped(&inv)
}

/// Dual frames: `Σ g_k f_k* = I`.
pub fn are_dual_frames(f: &VectorFamily, g: &VectorFamily, tol: &Tolerances) -> Result<bool> {
    check_same_shape(f, g)?;
    let mixed = Operator::from_raw(f.field, cross_synthesis(f, g));
    Ok(mixed.distance_to_identity() <= tol.eps_recon)
}

/// Biorthogonality: `⟨f_k, g_j⟩ = δ_kj`.
pub fn are_biorthogonal(f: &VectorFamily, g: &VectorFamily, tol: &Tolerances) -> Result<bool> {
    check_same_shape(f, g)?;
    // entry (j, k) is ⟨f_k, g_j⟩
    let cross_gram = g.columns.adjoint() * &f.columns;
    let m = f.len();
    Ok((cross_gram - DMatrix::<Complex64>::identity(m, m)).norm() <= tol.eps_recon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn e(n: usize) -> VectorFamily {
        VectorFamily::standard_basis(n, Field::Real)
    }

    #[test]
    fn synthesis_columns_are_the_vectors() {
        assert_eq!(
            synthesis_operator(&e(2)).to_operator().unwrap(),
            Operator::identity(2, Field::Real)
        );
        let f = VectorFamily::real(&[&[-1.0, 2.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(
            synthesis_operator(&f).to_operator().unwrap(),
            Operator::real(&[&[-1.0, 1.0], &[2.0, 0.0]]).unwrap()
        );
        let f = VectorFamily::real(&[&[3.0, -1.0], &[-1.0, 2.0]]).unwrap();
        assert_eq!(
            synthesis_operator(&f).to_operator().unwrap(),
            Operator::real(&[&[3.0, -1.0], &[-1.0, 2.0]]).unwrap()
        );
        let over = VectorFamily::real(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(synthesis_operator(&over).to_operator().is_none());
    }

    #[test]
    fn frame_operator_examples() {
        assert_eq!(frame_operator(&e(3)), Operator::identity(3, Field::Real));
        let f = VectorFamily::real(&[&[-1.0, 2.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(
            frame_operator(&f),
            Operator::real(&[&[2.0, -2.0], &[-2.0, 4.0]]).unwrap()
        );
        let k = VectorFamily::scaled_basis(&[1.0, 2.0, 3.0, 4.0], Field::Real);
        assert_eq!(
            frame_operator(&k),
            Operator::diagonal(&[1.0, 4.0, 9.0, 16.0], Field::Real).unwrap()
        );
    }

    #[test]
    fn frame_bounds_examples() {
        let b = frame_bounds(&e(4), &tol()).unwrap();
        assert_eq!((b.lower, b.upper, b.optimal), (1.0, 1.0, true));

        let half = VectorFamily::real(&[
            &[-0.5, 0.0, 0.0],
            &[0.5, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
        ])
        .unwrap();
        let b = frame_bounds(&half, &tol()).unwrap();
        assert_abs_diff_eq!(b.lower, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b.upper, 1.0, epsilon = 1e-15);

        let doubled = VectorFamily::real(&[
            &[1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
        ])
        .unwrap();
        let b = frame_bounds(&doubled, &tol()).unwrap();
        assert_abs_diff_eq!(b.lower, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.upper, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn predicates() {
        let t = tol();
        let std = e(2);
        assert!(is_bessel(&std, &t).0);
        assert!(is_frame(&std, &t) && is_riesz_basis(&std, &t) && is_orthonormal_basis(&std, &t));

        let skew = VectorFamily::real(&[&[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(is_riesz_basis(&skew, &t));
        assert!(!is_orthonormal_basis(&skew, &t));

        let repeated = VectorFamily::real(&[&[1.0, 0.0], &[1.0, 0.0]]).unwrap();
        assert!(!is_frame(&repeated, &t));
        assert!(!is_riesz_basis(&repeated, &t));
        let (bessel, upper) = is_bessel(&repeated, &t);
        assert!(bessel);
        assert_abs_diff_eq!(upper, 2.0, epsilon = 1e-15);
        assert!(matches!(
            frame_bounds(&repeated, &t),
            Err(Error::NotAFrame { .. })
        ));

        let over = VectorFamily::real(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(is_frame(&over, &t));
        assert!(!is_riesz_basis(&over, &t));
        assert!(!is_orthonormal_basis(&over, &t));
    }

    #[test]
    fn canonical_dual_examples() {
        let t = tol();
        assert!(canonical_dual(&e(3), &t).unwrap().max_distance(&e(3)).unwrap() < 1e-15);

        let k = VectorFamily::scaled_basis(&[1.0, 2.0, 3.0, 4.0], Field::Real);
        let dual = canonical_dual(&k, &t).unwrap();
        let expected = VectorFamily::scaled_basis(&[1.0, 0.5, 1.0 / 3.0, 0.25], Field::Real);
        assert!(dual.max_distance(&expected).unwrap() < 1e-15);
        assert!(are_dual_frames(&k, &dual, &t).unwrap());

        // S = [[2,-2],[-2,4]], S^{-1} = [[1, 1/2],[1/2, 1/2]]
        let f = VectorFamily::real(&[&[-1.0, 2.0], &[1.0, 0.0]]).unwrap();
        let dual = canonical_dual(&f, &t).unwrap();
        let expected = VectorFamily::real(&[&[0.0, 0.5], &[1.0, 0.5]]).unwrap();
        assert!(dual.max_distance(&expected).unwrap() < 1e-15);

        let repeated = VectorFamily::real(&[&[1.0, 0.0], &[1.0, 0.0]]).unwrap();
        assert!(matches!(
            canonical_dual(&repeated, &t),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn duality_and_biorthogonality() {
        let t = tol();
        assert!(are_dual_frames(&e(3), &e(3), &t).unwrap());
        let k = VectorFamily::scaled_basis(&[1.0, 2.0, 3.0, 4.0], Field::Real);
        let inv = VectorFamily::scaled_basis(&[1.0, 0.5, 1.0 / 3.0, 0.25], Field::Real);
        assert!(are_dual_frames(&k, &inv, &t).unwrap());
        let swapped = VectorFamily::real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(!are_dual_frames(&e(2), &swapped, &t).unwrap());

        assert!(are_biorthogonal(&e(2), &e(2), &t).unwrap());
        let f = VectorFamily::real(&[&[1.0, 0.0], &[1.0, 1.0]]).unwrap();
        let g = VectorFamily::real(&[&[1.0, -1.0], &[0.0, 1.0]]).unwrap();
        assert!(are_biorthogonal(&f, &g, &t).unwrap());
        let g2 = VectorFamily::real(&[&[2.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(!are_biorthogonal(&e(2), &g2, &t).unwrap());

        assert!(matches!(
            are_dual_frames(&e(2), &e(3), &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn family_validation() {
        assert!(VectorFamily::new(vec![]).is_err());
        assert!(VectorFamily::real(&[&[1.0, 0.0], &[1.0]]).is_err());
        let r = Vector::real(&[1.0]).unwrap();
        let z = Vector::complex(&[Complex64::new(0.0, 1.0)]).unwrap();
        assert!(matches!(
            VectorFamily::new(vec![r, z]),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn swapped_cross_synthesis_is_exact_adjoint() {
        let f = VectorFamily::complex(&[
            &[Complex64::new(0.3, -1.7), Complex64::new(2.1, 0.4)],
            &[Complex64::new(-0.9, 0.2), Complex64::new(1.1, 3.3)],
            &[Complex64::new(0.1, 0.0), Complex64::new(-2.2, -0.6)],
        ])
        .unwrap();
        let g = VectorFamily::complex(&[
            &[Complex64::new(1.3, 0.7), Complex64::new(-0.1, 0.9)],
            &[Complex64::new(0.5, -0.5), Complex64::new(0.7, 1.3)],
            &[Complex64::new(-1.9, 0.3), Complex64::new(0.2, 0.8)],
        ])
        .unwrap();
        assert_eq!(cross_synthesis(&f, &g).adjoint(), cross_synthesis(&g, &f));
    }
}
