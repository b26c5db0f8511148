//! Biframes, pair frames and the class of b-Riesz bases in finite dimensions.
//!
//! A biframe is a pair of families `F = {f_k}`, `G = {g_k}` for which
//! `Σ⟨f, f_k⟩⟨g_k, f⟩` is squeezed between `A‖f‖²` and `B‖f‖²`. The crate
//! classifies pairs, computes optimal bounds, reconstructs vectors,
//! transforms biframes by operators and builds them from orthonormal bases.

pub mod biframes;
pub mod briesz;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod frames;
pub mod io;
pub mod linalg;
pub mod random;

pub use biframes::{
    analyze_biframe, biframe_coefficients, biframe_operator, construct_from_onb, gdual_partner,
    is_pair_frame, is_tu_controlled, is_u_controlled, optimal_biframe_bounds,
    parseval_transform_check, reconstruct, riesz_partner, transform_biframe, transform_pair,
    verify_bounds, BiframeReport, Classification, ExponentQuadruple, Reconstruction,
    TransformedPair,
};
pub use error::{Error, Result};
pub use frames::{BoundsCertificate, VectorFamily};
pub use linalg::{Field, Operator, Tolerances, Vector};
pub use num_complex::Complex64;
