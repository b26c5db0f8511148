//! The classes `[E]` of families generated from an orthonormal basis `E` by a
//! positive definite operator, and b-Riesz bases.
//!
//! `F ∈ [E]` when `f_k = U e_k` for a single Hermitian positive definite `U`.
//! A b-Riesz basis is a family lying in some class `[E]`. Every Riesz basis
//! `F` is one: with `S` the frame operator of `F`, the vectors
//! `δ_k = S^{-1/2} f_k` are orthonormal and `f_k = S^{1/2} δ_k`.

use crate::biframes::{analyze_biframe, BiframeReport};
use crate::error::{Error, Result};
use crate::frames::{
    canonical_dual, check_same_shape, frame_operator, is_orthonormal_basis, is_riesz_basis,
    require_orthonormal, VectorFamily,
};
use crate::linalg::{
    fractional_power, invert, polar_decompose, require_positive_definite, Field, Operator,
    Tolerances,
};

#[derive(Debug, Clone)]
pub struct ClassMembership {
    pub member: bool,
    /// The `U` with `f_k = U e_k`, present when `F ∈ [E]`.
    pub generator: Option<Operator>,
    /// The unique linear map with `U e_k = f_k`, whether or not it qualifies.
    pub candidate: Operator,
    /// `‖U − U*‖_F` of the candidate.
    pub deviation: f64,
}

/// The unique linear `U` with `U e_k = f_k`, namely `V_F V_E*`.
pub fn generating_operator(e: &VectorFamily, f: &VectorFamily, tol: &Tolerances) -> Result<Operator> {
    require_orthonormal(e, tol)?;
    let field = check_same_shape(e, f)?;
    if e.len() != e.dim() {
        return Err(Error::DimensionMismatch {
            context: "generating operator (family length vs dimension)",
            left: e.len(),
            right: e.dim(),
        });
    }
    Ok(Operator::from_raw(field, f.columns() * e.columns().adjoint()))
}

/// Whether `F ∈ [E]`.
pub fn class_membership(e: &VectorFamily, f: &VectorFamily, tol: &Tolerances) -> Result<ClassMembership> {
    let u = generating_operator(e, f, tol)?;
    let deviation = u.hermitian_deviation();
    let reproduces = e
        .mapped(&u)?
        .max_distance(f)
        .map(|d| d <= tol.eps_recon)?;
    let member = reproduces && u.is_hermitian(tol) && require_positive_definite(&u, tol).is_ok();
    Ok(ClassMembership {
        member,
        generator: member.then(|| u.clone()),
        candidate: u,
        deviation,
    })
}

/// Whether `(E, F)` is a pair frame, i.e. `F` lies in the class of `E`
/// relaxed to invertible generators. Unlike `[E]`, these classes overlap in
/// real spaces.
pub fn pair_class_membership(e: &VectorFamily, f: &VectorFamily, tol: &Tolerances) -> Result<bool> {
    let u = generating_operator(e, f, tol)?;
    Ok(u.min_singular_value() > tol.eps_inv)
}

#[derive(Debug, Clone)]
pub struct GeneratingBasis {
    /// `δ_k = S^{-1/2} f_k`.
    pub delta: VectorFamily,
    /// `S^{1/2}`, with `f_k = U δ_k`.
    pub generator: Operator,
    /// Gram deviation `‖V_Δ* V_Δ − I‖_F`.
    pub orthonormality_deviation: f64,
}

/// Recovers the orthonormal basis whose class contains the Riesz basis `F`.
pub fn find_generating_onb(f: &VectorFamily, tol: &Tolerances) -> Result<GeneratingBasis> {
    if !is_riesz_basis(f, tol) {
        return Err(Error::NotARieszBasis);
    }
    let s = frame_operator(f);
    let generator = fractional_power(&s, 0.5, tol)?;
    let delta = f.mapped(&invert(&generator, tol)?)?;
    let orthonormality_deviation = crate::frames::gram_deviation(&delta);
    Ok(GeneratingBasis {
        delta,
        generator,
        orthonormality_deviation,
    })
}

/// The same basis through the polar factor of `V_F*`. Used to cross-check [`find_generating_onb`].
pub fn generating_onb_by_polar(f: &VectorFamily, tol: &Tolerances) -> Result<VectorFamily> {
    if !is_riesz_basis(f, tol) {
        return Err(Error::NotARieszBasis);
    }
    // V_F* = W S^{1/2}, so V_F = S^{1/2} W* and δ_k = W* e_k.
    let v = Operator::from_raw(f.field(), f.columns().clone());
    let polar = polar_decompose(&v.adjoint(), tol)?;
    let delta = polar.unitary.adjoint();
    Ok(VectorFamily::from_raw(f.field(), delta.matrix().clone()))
}

/// Whether `F` lies in some class `[E]`.
///
/// In a complex space this is the Riesz-basis test, cross-checked by actually
/// recovering the generating basis. In a real space only the constructive
/// recovery decides.
pub fn is_b_riesz(f: &VectorFamily, tol: &Tolerances) -> bool {
    if f.len() != f.dim() {
        return false;
    }
    let constructive = find_generating_onb(f, tol)
        .ok()
        .filter(|g| is_orthonormal_basis(&g.delta, tol))
        .and_then(|g| class_membership(&g.delta, f, tol).ok())
        .is_some_and(|m| m.member);
    match f.field() {
        Field::Complex => {
            let riesz = is_riesz_basis(f, tol);
            debug_assert!(
                !riesz || constructive,
                "a complex Riesz basis must have a generating orthonormal basis"
            );
            riesz && constructive
        }
        Field::Real => constructive,
    }
}

/// Whether two orthonormal bases that both generate `F` coincide vector by
/// vector.
pub fn generating_onb_is_unique(
    f: &VectorFamily,
    e1: &VectorFamily,
    e2: &VectorFamily,
    tol: &Tolerances,
) -> Result<bool> {
    if !class_membership(e1, f, tol)?.member {
        return Err(Error::MembershipNotEstablished { which: "first basis" });
    }
    if !class_membership(e2, f, tol)?.member {
        return Err(Error::MembershipNotEstablished { which: "second basis" });
    }
    Ok(e1.max_distance(e2)? <= tol.eps_recon)
}

/// Analyzes `({U e_k}, {V e_k})` for positive definite `U`, `V`. Its biframe
/// operator is `V U`.
pub fn vu_biframe(
    e: &VectorFamily,
    u: &Operator,
    v: &Operator,
    tol: &Tolerances,
) -> Result<BiframeReport> {
    require_orthonormal(e, tol)?;
    require_positive_definite(u, tol)?;
    require_positive_definite(v, tol)?;
    analyze_biframe(&e.mapped(u)?, &e.mapped(v)?, tol)
}

/// `F = {U e_k}` and `G = {Q U^{-1} e_k}`; `(F, G)` is a biframe with
/// operator `Q`, Parseval when `Q = I`.
pub fn briesz_partner(
    e: &VectorFamily,
    u: &Operator,
    q: &Operator,
    tol: &Tolerances,
) -> Result<(VectorFamily, VectorFamily)> {
    require_orthonormal(e, tol)?;
    require_positive_definite(u, tol)?;
    require_positive_definite(q, tol)?;
    let f = e.mapped(u)?;
    let g = e.mapped(&q.compose(&invert(u, tol)?)?)?;
    Ok((f, g))
}

/// Whether the canonical dual of the Riesz basis `F` is again b-Riesz.
pub fn canonical_dual_is_briesz(f: &VectorFamily, tol: &Tolerances) -> Result<bool> {
    if !is_riesz_basis(f, tol) {
        return Err(Error::NotARieszBasis);
    }
    Ok(is_b_riesz(&canonical_dual(f, tol)?, tol))
}
