//! Seeded generators for randomized checks. Every function takes the RNG
//! explicitly; there is no global state.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::briesz::briesz_partner;
use crate::error::Result;
use crate::frames::VectorFamily;
use crate::linalg::{Field, Operator, Tolerances, Vector};

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng, field: Field) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    match field {
        Field::Real => Complex64::new(re, 0.0),
        Field::Complex => Complex64::new(re, rng.sample(StandardNormal)),
    }
}

pub fn gaussian_matrix(rows: usize, cols: usize, field: Field, rng: &mut impl Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng, field))
}

/// Haar-distributed unitary (orthogonal in the real field): QR of a Gaussian
/// matrix with the phases of `diag(R)` moved into `Q`.
pub fn unitary(n: usize, field: Field, rng: &mut impl Rng) -> Operator {
    let qr = gaussian_matrix(n, n, field, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::from(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    Operator::from_raw(field, q)
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

/// `W diag(λ) W*` with `λ` log-uniform in `[lo, hi]`.
pub fn positive_definite(n: usize, field: Field, lo: f64, hi: f64, rng: &mut impl Rng) -> Operator {
    let w = unitary(n, field, rng);
    let lambda: Vec<f64> = (0..n).map(|_| log_uniform(rng, lo, hi)).collect();
    let d = Operator::diagonal(&lambda, field).expect("finite spectrum");
    let m = w.matrix() * d.matrix() * w.matrix().adjoint();
    // exact Hermitian symmetry
    let m = (&m + m.adjoint()) * Complex64::from(0.5);
    Operator::from_raw(field, m)
}

/// Riesz basis `W_1 diag(σ) W_2` with singular values log-uniform in `[lo, hi]`.
pub fn riesz_basis(n: usize, field: Field, lo: f64, hi: f64, rng: &mut impl Rng) -> VectorFamily {
    let w1 = unitary(n, field, rng);
    let w2 = unitary(n, field, rng);
    let sigma: Vec<f64> = (0..n).map(|_| log_uniform(rng, lo, hi)).collect();
    let d = Operator::diagonal(&sigma, field).expect("finite singular values");
    VectorFamily::from_raw(field, w1.matrix() * d.matrix() * w2.matrix())
}

pub fn orthonormal_basis(n: usize, field: Field, rng: &mut impl Rng) -> VectorFamily {
    VectorFamily::from_raw(field, unitary(n, field, rng).matrix().clone())
}

/// Gaussian family of `m` vectors in dimension `n`.
pub fn family(n: usize, m: usize, field: Field, rng: &mut impl Rng) -> VectorFamily {
    VectorFamily::from_raw(field, gaussian_matrix(n, m, field, rng))
}

pub fn unit_vector(n: usize, field: Field, rng: &mut impl Rng) -> Vector {
    loop {
        let v = Vector::from_raw(field, gaussian_matrix(n, 1, field, rng).column(0).into_owned());
        if v.norm() > 1e-8 {
            return v.normalized();
        }
    }
}

pub fn vector(n: usize, field: Field, rng: &mut impl Rng) -> Vector {
    Vector::from_raw(field, gaussian_matrix(n, 1, field, rng).column(0).into_owned())
}

/// A random biframe with known operator `Q`.
#[derive(Debug, Clone)]
pub struct RandomBiframe {
    pub f: VectorFamily,
    pub g: VectorFamily,
    pub u: Operator,
    pub q: Operator,
}

/// `F = {U e_k}`, `G = {Q U^{-1} e_k}` for a random orthonormal basis and
/// random positive definite `U`, `Q` with spectra in `[lo, hi]`.
pub fn biframe(
    n: usize,
    field: Field,
    lo: f64,
    hi: f64,
    rng: &mut impl Rng,
    tol: &Tolerances,
) -> Result<RandomBiframe> {
    let e = orthonormal_basis(n, field, rng);
    let u = positive_definite(n, field, lo, hi, rng);
    let q = positive_definite(n, field, lo, hi, rng);
    let (f, g) = briesz_partner(&e, &u, &q, tol)?;
    Ok(RandomBiframe { f, g, u, q })
}
