//! Biframes: pairs `(F, G)` with `A‖f‖² ≤ Σ⟨f,f_k⟩⟨g_k,f⟩ ≤ B‖f‖²`.
//!
//! Everything here is driven by the biframe operator
//! `S_{F,G} f = Σ⟨f, f_k⟩ g_k`, whose quadratic form is the middle term of
//! the inequality. In a complex space the pair is a biframe exactly when
//! `S_{F,G}` is Hermitian positive definite. In a real space only the
//! symmetric part of `S_{F,G}` enters the quadratic form, so the symmetric
//! part decides, and `S_{F,G}` itself may be non-symmetric.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{
    check_same_shape, cross_synthesis, frame_bounds, frame_operator, is_riesz_basis,
    require_orthonormal, BoundsCertificate, VectorFamily,
};
use crate::linalg::{
    fractional_power, hermitian_eigen, invert, require_positive_definite, same_field, Field,
    Operator, Tolerances, Vector,
};

/// Outcome of classifying a pair of families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Biframe,
    /// `S_{F,G}` invertible but its quadratic form is not bounded below.
    PairFrameOnly,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Biframe => "biframe",
            Classification::PairFrameOnly => "pair-frame-only",
            Classification::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BiframeReport {
    pub classification: Classification,
    /// `S_{F,G}`.
    pub operator: Operator,
    /// `‖S − S*‖_F`.
    pub hermitian_deviation: f64,
    /// Ascending spectrum of `(S + S*)/2`; equals the spectrum of `S` when
    /// `S` is Hermitian.
    pub spectrum: Vec<f64>,
    pub bounds: Option<BoundsCertificate>,
    /// Unit vector with `Re⟨S w, w⟩` inside the zero band, when one exists.
    pub witness: Option<Vector>,
    pub min_singular_value: f64,
    /// Zero band used for the positivity decision.
    pub band: f64,
}

impl BiframeReport {
    pub fn is_biframe(&self) -> bool {
        self.classification == Classification::Biframe
    }

    pub fn is_parseval(&self, tol: &Tolerances) -> bool {
        self.is_biframe() && self.operator.distance_to_identity() <= tol.eps_recon
    }

    fn require_biframe(&self) -> Result<BoundsCertificate> {
        match (self.classification, self.bounds) {
            (Classification::Biframe, Some(b)) => Ok(b),
            (classification, _) => Err(Error::NotABiframe { classification }),
        }
    }
}

/// `S_{F,G} = Σ_k g_k f_k*`, so that `S_{F,G} f = Σ⟨f, f_k⟩ g_k`.
pub fn biframe_operator(f: &VectorFamily, g: &VectorFamily) -> Result<Operator> {
    let field = check_same_shape(f, g)?;
    Ok(Operator::from_raw(field, cross_synthesis(f, g)))
}

pub fn analyze_biframe(f: &VectorFamily, g: &VectorFamily, tol: &Tolerances) -> Result<BiframeReport> {
    let s = biframe_operator(f, g)?;
    Ok(classify_operator(s, tol))
}

/// Classifies a pair through its biframe operator alone.
pub(crate) fn classify_operator(s: Operator, tol: &Tolerances) -> BiframeReport {
    let hermitian_deviation = s.hermitian_deviation();
    let hermitian = s.is_hermitian(tol);
    let sigma = s.singular_values();
    let (sigma_max, sigma_min) = (sigma[0], sigma[sigma.len() - 1]);
    let band = tol.pd_band(sigma_max);

    let eig = hermitian_eigen(&s.hermitian_part(), tol)
        .expect("the Hermitian part is Hermitian by construction");
    let positive = eig.min() > band;
    let biframe = match s.field() {
        Field::Complex => hermitian && positive,
        Field::Real => positive,
    };
    let classification = if biframe {
        Classification::Biframe
    } else if sigma_min > tol.eps_inv {
        Classification::PairFrameOnly
    } else {
        Classification::Neither
    };
    let bounds = biframe.then(|| BoundsCertificate {
        lower: eig.min(),
        upper: eig.max(),
        optimal: true,
    });
    let witness = (!biframe && eig.min() <= band).then(|| eig.vector(0));
    BiframeReport {
        classification,
        operator: s,
        hermitian_deviation,
        spectrum: eig.values().to_vec(),
        bounds,
        witness,
        min_singular_value: sigma_min,
        band,
    }
}

pub fn optimal_biframe_bounds(
    f: &VectorFamily,
    g: &VectorFamily,
    tol: &Tolerances,
) -> Result<BoundsCertificate> {
    analyze_biframe(f, g, tol)?.require_biframe()
}

/// Whether the stated bounds `(A, B)` are valid, i.e. `[A, B]` contains the
/// optimal interval up to the zero band.
pub fn verify_bounds(
    f: &VectorFamily,
    g: &VectorFamily,
    lower: f64,
    upper: f64,
    tol: &Tolerances,
) -> Result<bool> {
    let stated = BoundsCertificate::stated(lower, upper)?;
    let report = analyze_biframe(f, g, tol)?;
    let optimal = report.require_biframe()?;
    Ok(stated.contains(&optimal, report.band))
}

/// `S_{F,G}` invertible.
pub fn is_pair_frame(f: &VectorFamily, g: &VectorFamily, tol: &Tolerances) -> Result<bool> {
    Ok(biframe_operator(f, g)?.min_singular_value() > tol.eps_inv)
}

fn require_invertible(op: &Operator, tol: &Tolerances) -> Result<()> {
    let min = op.min_singular_value();
    if min > tol.eps_inv {
        Ok(())
    } else {
        Err(Error::Singular {
            min_singular_value: min,
            threshold: tol.eps_inv,
        })
    }
}

/// `F` is U-controlled when `(F, UF)` is a biframe.
pub fn is_u_controlled(f: &VectorFamily, u: &Operator, tol: &Tolerances) -> Result<bool> {
    require_invertible(u, tol)?;
    Ok(analyze_biframe(f, &f.mapped(u)?, tol)?.is_biframe())
}

/// `F` is (T,U)-controlled when `(TF, UF)` is a biframe.
pub fn is_tu_controlled(
    f: &VectorFamily,
    t: &Operator,
    u: &Operator,
    tol: &Tolerances,
) -> Result<bool> {
    require_invertible(t, tol)?;
    require_invertible(u, tol)?;
    Ok(analyze_biframe(&f.mapped(t)?, &f.mapped(u)?, tol)?.is_biframe())
}

/// Both reconstructions of `f` from biframe coefficients.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// `Σ⟨f, S_{G,F}^{-1} f_k⟩ g_k`.
    pub from_coefficients: Vector,
    /// `Σ⟨f, f_k⟩ S_{F,G}^{-1} g_k`.
    pub from_inverse_synthesis: Vector,
    /// `‖f̂ − f‖ / max(1, ‖f‖)` for the two reconstructions, in order.
    pub residuals: [f64; 2],
    /// `cond(S_{F,G})`.
    pub condition: f64,
}

impl Reconstruction {
    pub fn max_residual(&self) -> f64 {
        self.residuals[0].max(self.residuals[1])
    }

    /// Residual allowance `eps_recon · cond(S)`.
    pub fn within(&self, tol: &Tolerances) -> bool {
        self.max_residual() <= tol.eps_recon * self.condition
    }
}

fn require_biframe_pair(f: &VectorFamily, g: &VectorFamily, tol: &Tolerances) -> Result<BiframeReport> {
    let report = analyze_biframe(f, g, tol)?;
    report.require_biframe()?;
    Ok(report)
}

fn coefficients_with(
    f: &VectorFamily,
    s: &Operator,
    x: &Vector,
    tol: &Tolerances,
) -> Result<Vec<Complex64>> {
    // S_{G,F}^{-1} = (S_{F,G}^{-1})*
    let inv_adjoint = invert(s, tol)?.adjoint();
    f.mapped(&inv_adjoint)?.analyze(x)
}

pub fn reconstruct(
    f: &VectorFamily,
    g: &VectorFamily,
    x: &Vector,
    tol: &Tolerances,
) -> Result<Reconstruction> {
    let report = require_biframe_pair(f, g, tol)?;
    let s = &report.operator;
    same_field(s.field(), x.field())?;

    let coefficients = coefficients_with(f, s, x, tol)?;
    let first = g.synthesize(&coefficients)?;

    let analysis = f.analyze(x)?;
    let second = g.mapped(&invert(s, tol)?)?.synthesize(&analysis)?;

    let scale = x.norm().max(1.0);
    let residuals = [first.distance(x)? / scale, second.distance(x)? / scale];
    Ok(Reconstruction {
        from_coefficients: first,
        from_inverse_synthesis: second,
        residuals,
        condition: s.condition_number(),
    })
}

/// Biframe coefficients `⟨f, S_{G,F}^{-1} f_k⟩`; synthesizing them with `G`
/// returns `f`. For a complex biframe `S_{G,F} = S_{F,G}` and these are the
/// usual `⟨f, S_{F,G}^{-1} f_k⟩`.
pub fn biframe_coefficients(
    f: &VectorFamily,
    g: &VectorFamily,
    x: &Vector,
    tol: &Tolerances,
) -> Result<Vec<Complex64>> {
    let report = require_biframe_pair(f, g, tol)?;
    coefficients_with(f, &report.operator, x, tol)
}

/// Exponents `p, q, r, t` with `p + q = 1` and `r + t = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentQuadruple {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub t: f64,
}

const EXPONENT_SUM_TOL: f64 = 1e-12;

pub(crate) fn check_unit_sum(a: f64, b: f64, names: &str) -> Result<()> {
    if a.is_finite() && b.is_finite() && (a + b - 1.0).abs() <= EXPONENT_SUM_TOL {
        Ok(())
    } else {
        Err(Error::InvalidExponents(format!("{names} = {a} + {b} != 1")))
    }
}

impl ExponentQuadruple {
    pub fn new(p: f64, q: f64, r: f64, t: f64) -> Result<Self> {
        check_unit_sum(p, q, "p + q")?;
        check_unit_sum(r, t, "r + t")?;
        Ok(Self { p, q, r, t })
    }

    pub fn halves() -> Self {
        Self {
            p: 0.5,
            q: 0.5,
            r: 0.5,
            t: 0.5,
        }
    }
}

pub(crate) fn require_coupling(t: &Operator, w: &Operator, tol: &Tolerances) -> Result<()> {
    let deviation = t.compose(&w.adjoint())?.distance_to_identity();
    if deviation <= tol.eps_recon {
        Ok(())
    } else {
        Err(Error::BadCoupling { deviation })
    }
}

/// Result of mapping a pair by `(U, V)`.
#[derive(Debug, Clone)]
pub struct TransformedPair {
    pub f: VectorFamily,
    pub g: VectorFamily,
    pub u: Operator,
    pub v: Operator,
    pub report: BiframeReport,
}

/// `({U f_k}, {V g_k})` for arbitrary `U`, `V`; its biframe operator is `V S_{F,G} U*`.
pub fn transform_pair(
    f: &VectorFamily,
    g: &VectorFamily,
    u: &Operator,
    v: &Operator,
    tol: &Tolerances,
) -> Result<TransformedPair> {
    let f2 = f.mapped(u)?;
    let g2 = g.mapped(v)?;
    let report = analyze_biframe(&f2, &g2, tol)?;
    Ok(TransformedPair {
        f: f2,
        g: g2,
        u: u.clone(),
        v: v.clone(),
        report,
    })
}

/// Maps a biframe by `U = Q^r W S^{-p}` and `V = Q^t T S^{-q}` with
/// `T W* = I`; the new biframe operator is `Q`.
pub fn transform_biframe(
    f: &VectorFamily,
    g: &VectorFamily,
    q: &Operator,
    w: &Operator,
    t: &Operator,
    exps: &ExponentQuadruple,
    tol: &Tolerances,
) -> Result<TransformedPair> {
    let report = require_biframe_pair(f, g, tol)?;
    let s = &report.operator;
    require_positive_definite(q, tol)?;
    require_coupling(t, w, tol)?;
    ExponentQuadruple::new(exps.p, exps.q, exps.r, exps.t)?;

    let u = fractional_power(q, exps.r, tol)?
        .compose(w)?
        .compose(&fractional_power(s, -exps.p, tol)?)?;
    let v = fractional_power(q, exps.t, tol)?
        .compose(t)?
        .compose(&fractional_power(s, -exps.q, tol)?)?;
    transform_pair(f, g, &u, &v, tol)
}

/// A Parseval biframe stays Parseval under `(U, V)` iff `V U* = I`.
pub fn parseval_transform_check(u: &Operator, v: &Operator, tol: &Tolerances) -> Result<bool> {
    Ok(v.compose(&u.adjoint())?.distance_to_identity() <= tol.eps_recon)
}

/// `f_k = Q^r W e_k`, `g_k = Q^t T e_k`: a biframe with operator `Q`.
pub fn construct_from_onb(
    e: &VectorFamily,
    q: &Operator,
    w: &Operator,
    t: &Operator,
    r: f64,
    t_exp: f64,
    tol: &Tolerances,
) -> Result<(VectorFamily, VectorFamily)> {
    require_orthonormal(e, tol)?;
    check_unit_sum(r, t_exp, "r + t")?;
    require_positive_definite(q, tol)?;
    require_coupling(t, w, tol)?;
    let f = e.mapped(&fractional_power(q, r, tol)?.compose(w)?)?;
    let g = e.mapped(&fractional_power(q, t_exp, tol)?.compose(t)?)?;
    Ok((f, g))
}

/// `g_k = (S_F Q)^{-1} f_k + h_k − Σ_j ⟨S_F^{-1} f_k, f_j⟩ h_j`; then
/// `S_{F,G} = Q^{-1}`.
pub fn gdual_partner(
    f: &VectorFamily,
    q: &Operator,
    h: &VectorFamily,
    tol: &Tolerances,
) -> Result<VectorFamily> {
    frame_bounds(f, tol)?;
    check_same_shape(f, h)?;
    require_positive_definite(q, tol)?;
    let s_f = frame_operator(f);
    let s_inv = invert(&s_f, tol)?;
    let leading = f.mapped(&invert(&s_f.compose(q)?, tol)?)?;
    // mixing[j, k] = ⟨S_F^{-1} f_k, f_j⟩
    let mixing = f.columns().adjoint() * s_inv.matrix() * f.columns();
    let correction = h.columns() * mixing;
    let columns = leading.columns() + h.columns() - correction;
    Ok(VectorFamily::from_raw(f.field(), columns))
}

/// `g_k = (S_F Q)^{-1} f_k` for a Riesz basis `F`; `S_{F,G} = Q^{-1}`.
pub fn riesz_partner(f: &VectorFamily, q: &Operator, tol: &Tolerances) -> Result<VectorFamily> {
    if !is_riesz_basis(f, tol) {
        return Err(Error::NotARieszBasis);
    }
    require_positive_definite(q, tol)?;
    let s_f = frame_operator(f);
    f.mapped(&invert(&s_f.compose(q)?, tol)?)
}
