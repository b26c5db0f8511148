//! Randomized invariants. Each case draws a seed and builds its inputs from the
//! crate's seeded generators, so failures shrink to a reproducible seed.

use biframe::briesz::{
    briesz_partner, class_membership, find_generating_onb, generating_onb_is_unique, is_b_riesz,
};
use biframe::frames::{
    are_dual_frames, canonical_dual, frame_bounds, frame_operator, is_bessel, is_frame,
    is_orthonormal_basis, is_riesz_basis,
};
use biframe::linalg::{
    classify_definiteness, fractional_power, invert, polar_decompose, Definiteness,
};
use biframe::random::{
    self, gaussian_matrix, orthonormal_basis, positive_definite, riesz_basis, seeded, unitary,
    unit_vector, TestRng,
};
use biframe::{
    analyze_biframe, biframe_operator, gdual_partner, is_pair_frame, riesz_partner,
    transform_biframe, Classification, Complex64, ExponentQuadruple, Field, Operator, Tolerances,
    VectorFamily,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn field_of(complex: bool) -> Field {
    if complex {
        Field::Complex
    } else {
        Field::Real
    }
}

/// A pair that is a biframe roughly half the time: `G = (P + s·N) F` for a
/// positive `P` and a random `N`.
fn random_pair(n: usize, m: usize, field: Field, rng: &mut TestRng) -> (VectorFamily, VectorFamily) {
    let f = random::family(n, m, field, rng);
    let p = positive_definite(n, field, 0.5, 2.0, rng);
    let s: f64 = rng.random_range(0.0..2.0);
    let noise = gaussian_matrix(n, n, field, rng) * Complex64::from(s);
    let mix = Operator::new(field, p.matrix() + noise).unwrap();
    let g = f.mapped(&mix).unwrap();
    (f, g)
}

/// `Σ_k g_k f_k*` by explicit outer products.
fn outer_sum(f: &VectorFamily, g: &VectorFamily) -> DMatrix<Complex64> {
    let n = f.dim();
    let mut s = DMatrix::zeros(n, n);
    for k in 0..f.len() {
        let (fk, gk) = (f.vector(k), g.vector(k));
        for i in 0..n {
            for j in 0..n {
                s[(i, j)] += gk.entries()[i] * fk.entries()[j].conj();
            }
        }
    }
    s
}

fn form_range(s: &Operator, samples: usize, rng: &mut TestRng) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..samples {
        let x = unit_vector(s.dim(), s.field(), rng);
        let v = s.quadratic_form(&x).unwrap();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_is_an_involution(seed: u64, n in 1usize..10, complex: bool) {
        let mut rng = seeded(seed);
        let field = field_of(complex);
        let m = Operator::new(field, gaussian_matrix(n, n, field, &mut rng)).unwrap();
        prop_assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn fractional_powers_add(seed: u64, n in 2usize..=32, a in -1.0f64..1.0, b in -1.0f64..1.0) {
        let t = tol();
        let m = positive_definite(n, Field::Complex, 0.25, 4.0, &mut seeded(seed));
        let lhs = fractional_power(&m, a, &t).unwrap().compose(&fractional_power(&m, b, &t).unwrap()).unwrap();
        let rhs = fractional_power(&m, a + b, &t).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() <= t.eps_recon * m.frobenius_norm().powf(a + b));
    }

    #[test]
    fn polar_factors_reproduce(seed: u64, n in 2usize..=16, complex: bool) {
        let t = tol();
        let field = field_of(complex);
        let m = Operator::new(field, gaussian_matrix(n, n, field, &mut seeded(seed))).unwrap();
        prop_assume!(m.min_singular_value() > 1e-6);
        let polar = polar_decompose(&m, &t).unwrap();
        prop_assert!(polar.unitary.compose(&polar.positive).unwrap().distance(&m).unwrap() <= 1e-10 * m.frobenius_norm());
        prop_assert!(polar.unitary.adjoint().compose(&polar.unitary).unwrap().distance_to_identity() <= 1e-10);
        prop_assert!(polar.positive.is_hermitian(&t));
        prop_assert_eq!(classify_definiteness(&polar.positive, &t).unwrap(), Definiteness::PositiveDefinite);
    }

    #[test]
    fn definiteness_matches_sampled_signs(seed: u64, n in 2usize..=3, shift in -3.0f64..3.0) {
        let t = tol();
        let mut rng = seeded(seed);
        let h = positive_definite(n, Field::Real, 0.5, 2.0, &mut rng)
            .sub(&Operator::identity(n, Field::Real).scaled(shift.abs().min(1.5) * shift.signum()))
            .unwrap();
        let class = classify_definiteness(&h, &t).unwrap();
        let (lo, hi) = form_range(&h, 10_000, &mut rng);
        match class {
            Definiteness::PositiveDefinite => prop_assert!(lo > 0.0),
            Definiteness::NegativeDefinite => prop_assert!(hi < 0.0),
            Definiteness::PositiveSemidefinite => prop_assert!(lo > -1e-9),
            Definiteness::NegativeSemidefinite => prop_assert!(hi < 1e-9),
            Definiteness::Indefinite => {}
        }
    }

    #[test]
    fn frame_operator_matches_outer_products(seed: u64, n in 1usize..8, extra in 0usize..6, complex: bool) {
        let field = field_of(complex);
        let f = random::family(n, n + extra, field, &mut seeded(seed));
        let diff = (frame_operator(&f).matrix() - outer_sum(&f, &f)).norm();
        prop_assert!(diff <= 1e-12 * (1.0 + frame_operator(&f).frobenius_norm()));
    }

    #[test]
    fn frame_bounds_are_squared_singular_values(seed: u64, n in 2usize..=32, complex: bool) {
        let t = tol();
        let field = field_of(complex);
        let f = riesz_basis(n, field, 0.3, 3.0, &mut seeded(seed));
        let u = Operator::new(field, f.columns().clone()).unwrap();
        let sv = u.singular_values();
        let b = frame_bounds(&f, &t).unwrap();
        let (smin, smax) = (sv[n - 1], sv[0]);
        prop_assert!((b.lower - smin * smin).abs() <= t.eps_pd * smax * smax);
        prop_assert!((b.upper - smax * smax).abs() <= t.eps_pd * smax * smax);
    }

    #[test]
    fn family_predicates_form_a_chain(seed: u64, n in 1usize..6, m in 1usize..9, kind in 0u8..4) {
        let t = tol();
        let mut rng = seeded(seed);
        let f = match kind {
            0 => orthonormal_basis(n, Field::Complex, &mut rng),
            1 => riesz_basis(n, Field::Real, 0.5, 2.0, &mut rng),
            // rank deficient: repeat one vector
            2 => {
                let v = random::family(n, 1, Field::Real, &mut rng);
                VectorFamily::from_columns(Field::Real, DMatrix::from_fn(n, m, |i, _| v.columns()[(i, 0)])).unwrap()
            }
            _ => random::family(n, m, Field::Complex, &mut rng),
        };
        let (onb, riesz, frame, bessel) =
            (is_orthonormal_basis(&f, &t), is_riesz_basis(&f, &t), is_frame(&f, &t), is_bessel(&f, &t).0);
        prop_assert!(!onb || riesz);
        prop_assert!(!riesz || frame);
        prop_assert!(!frame || bessel);
    }

    #[test]
    fn canonical_dual_is_dual(seed: u64, n in 1usize..8, extra in 0usize..6, complex: bool) {
        let t = tol();
        let f = random::family(n, n + extra, field_of(complex), &mut seeded(seed));
        prop_assume!(frame_bounds(&f, &t).map(|b| b.lower > 1e-3).unwrap_or(false));
        let dual = canonical_dual(&f, &t).unwrap();
        prop_assert!(are_dual_frames(&f, &dual, &t).unwrap());
    }

    #[test]
    fn biframe_is_symmetric_in_its_families(seed: u64, n in 2usize..7, extra in 0usize..4, complex: bool) {
        let t = tol();
        let mut rng = seeded(seed);
        let (f, g) = if complex {
            let b = random::biframe(n, Field::Complex, 0.5, 2.0, &mut rng, &t).unwrap();
            (b.f, b.g)
        } else {
            random_pair(n, n + extra, Field::Real, &mut rng)
        };
        let fg = analyze_biframe(&f, &g, &t).unwrap();
        let gf = analyze_biframe(&g, &f, &t).unwrap();
        prop_assert_eq!(fg.is_biframe(), gf.is_biframe());
        if let (Some(a), Some(b)) = (fg.bounds, gf.bounds) {
            prop_assert!((a.lower - b.lower).abs() <= 1e-12 * a.upper);
            prop_assert!((a.upper - b.upper).abs() <= 1e-12 * a.upper);
        }
    }

    #[test]
    fn operator_adjoint_swaps_families(seed: u64, n in 1usize..7, extra in 0usize..4, complex: bool) {
        let (f, g) = random_pair(n, n + extra, field_of(complex), &mut seeded(seed));
        prop_assert_eq!(
            biframe_operator(&f, &g).unwrap().adjoint(),
            biframe_operator(&g, &f).unwrap()
        );
    }

    #[test]
    fn biframe_implies_pair_frame(seed: u64, n in 2usize..7, extra in 0usize..4, complex: bool) {
        let t = tol();
        let (f, g) = random_pair(n, n + extra, field_of(complex), &mut seeded(seed));
        if analyze_biframe(&f, &g, &t).unwrap().is_biframe() {
            prop_assert!(is_pair_frame(&f, &g, &t).unwrap());
        }
    }

    #[test]
    fn self_pair_is_the_frame_case(seed: u64, n in 1usize..7, extra in 0usize..4, complex: bool) {
        let t = tol();
        let f = random::family(n, n + extra, field_of(complex), &mut seeded(seed));
        let report = analyze_biframe(&f, &f, &t).unwrap();
        prop_assert_eq!(report.is_biframe(), is_frame(&f, &t));
        if let (Some(b), Ok(fb)) = (report.bounds, frame_bounds(&f, &t)) {
            prop_assert!((b.lower - fb.lower).abs() <= 1e-12 * fb.upper);
            prop_assert!((b.upper - fb.upper).abs() <= 1e-12 * fb.upper);
        }
    }

    #[test]
    fn riesz_property_transfers_between_partners(seed: u64, n in 2usize..8, extra in 0usize..4, complex: bool) {
        let t = tol();
        let mut rng = seeded(seed);
        let field = field_of(complex);
        let f = if extra == 0 {
            riesz_basis(n, field, 0.5, 2.0, &mut rng)
        } else {
            random::family(n, n + extra, field, &mut rng)
        };
        prop_assume!(frame_bounds(&f, &t).map(|b| b.lower > 1e-3).unwrap_or(false));
        let q = positive_definite(n, field, 0.5, 2.0, &mut rng);
        let h = random::family(n, n + extra, field, &mut rng);
        let g = gdual_partner(&f, &q, &h, &t).unwrap();
        prop_assert!(analyze_biframe(&f, &g, &t).unwrap().is_biframe());
        prop_assert_eq!(is_riesz_basis(&f, &t), is_riesz_basis(&g, &t));
    }

    #[test]
    fn transform_lands_on_q(seed: u64, n in 2usize..10, p in 0.0f64..1.0, r in -0.5f64..1.5) {
        let t = tol();
        let mut rng = seeded(seed);
        let b = random::biframe(n, Field::Complex, 0.5, 2.0, &mut rng, &t).unwrap();
        let q = positive_definite(n, Field::Complex, 0.5, 2.0, &mut rng);
        let w = unitary(n, Field::Complex, &mut rng);
        let exps = ExponentQuadruple::new(p, 1.0 - p, r, 1.0 - r).unwrap();
        let out = transform_biframe(&b.f, &b.g, &q, &w, &w, &exps, &t).unwrap();
        let s = biframe_operator(&b.f, &b.g).unwrap();
        let allowance = t.eps_recon * s.condition_number() * q.condition_number();
        prop_assert_eq!(out.report.classification, Classification::Biframe);
        prop_assert!(out.report.operator.distance(&q).unwrap() <= allowance);
    }

    #[test]
    fn partners_have_inverse_operator(seed: u64, n in 2usize..10, extra in 0usize..5, complex: bool) {
        let t = tol();
        let mut rng = seeded(seed);
        let field = field_of(complex);
        let q = positive_definite(n, field, 0.5, 2.0, &mut rng);
        let q_inv = invert(&q, &t).unwrap();
        let frame = random::family(n, n + extra, field, &mut rng);
        prop_assume!(frame_bounds(&frame, &t).map(|b| b.lower > 1e-3).unwrap_or(false));
        let h = random::family(n, n + extra, field, &mut rng);
        let g = gdual_partner(&frame, &q, &h, &t).unwrap();
        let cond = frame_operator(&frame).condition_number() * q.condition_number();
        prop_assert!(biframe_operator(&frame, &g).unwrap().distance(&q_inv).unwrap() <= t.eps_recon * cond);

        let basis = riesz_basis(n, field, 0.5, 2.0, &mut rng);
        let g = riesz_partner(&basis, &q, &t).unwrap();
        prop_assert!(biframe_operator(&basis, &g).unwrap().distance(&q_inv).unwrap() <= t.eps_recon * 16.0 * q.condition_number());
    }

    #[test]
    fn membership_recovers_generator(seed: u64, n in 2usize..=32, complex: bool) {
        let t = tol();
        let mut rng = seeded(seed);
        let field = field_of(complex);
        let e = orthonormal_basis(n, field, &mut rng);
        let u = positive_definite(n, field, 0.3, 3.0, &mut rng);
        let m = class_membership(&e, &e.mapped(&u).unwrap(), &t).unwrap();
        prop_assert!(m.member);
        prop_assert!(m.generator.unwrap().distance(&u).unwrap() <= t.eps_recon * u.condition_number());
    }

    #[test]
    fn riesz_bases_are_b_riesz(seed: u64, n in 2usize..=32) {
        let t = tol();
        let f = riesz_basis(n, Field::Complex, 0.2, 5.0, &mut seeded(seed));
        let basis = find_generating_onb(&f, &t).unwrap();
        prop_assert!(is_orthonormal_basis(&basis.delta, &t));
        prop_assert!(class_membership(&basis.delta, &f, &t).unwrap().member);
        prop_assert!(is_b_riesz(&f, &t));
    }

    #[test]
    fn generating_basis_is_unique(seed: u64, n in 2usize..12, eps in 1e-4f64..0.3) {
        let t = tol();
        let mut rng = seeded(seed);
        let f = riesz_basis(n, Field::Complex, 0.5, 2.0, &mut rng);
        let delta = find_generating_onb(&f, &t).unwrap().delta;
        prop_assert!(generating_onb_is_unique(&f, &delta, &delta, &t).unwrap());
        let noisy = delta.columns() + gaussian_matrix(n, n, Field::Complex, &mut rng) * Complex64::from(eps);
        let (q, _) = noisy.qr().unpack();
        let candidate = VectorFamily::from_columns(Field::Complex, q).unwrap();
        prop_assert!(!class_membership(&candidate, &f, &t).unwrap().member);
        prop_assert!(generating_onb_is_unique(&f, &delta, &candidate, &t).is_err());
    }

    #[test]
    fn briesz_partner_has_operator_q(seed: u64, n in 2usize..=32, complex: bool) {
        let t = tol();
        let mut rng = seeded(seed);
        let field = field_of(complex);
        let e = orthonormal_basis(n, field, &mut rng);
        let u = positive_definite(n, field, 0.3, 3.0, &mut rng);
        let q = positive_definite(n, field, 0.3, 3.0, &mut rng);
        let (f, g) = briesz_partner(&e, &u, &q, &t).unwrap();
        let allowance = t.eps_recon * u.condition_number().powi(2) * q.condition_number();
        prop_assert!(biframe_operator(&f, &g).unwrap().distance(&q).unwrap() <= allowance);
    }

    #[test]
    fn generating_bases_partition_riesz_bases(seed: u64, n in 2usize..10) {
        let t = tol();
        let mut rng = seeded(seed);
        let f = riesz_basis(n, Field::Complex, 0.5, 2.0, &mut rng);
        let delta_f = find_generating_onb(&f, &t).unwrap().delta;

        // same generating basis: same class
        let u = positive_definite(n, Field::Complex, 0.5, 2.0, &mut rng);
        let g = delta_f.mapped(&u).unwrap();
        let delta_g = find_generating_onb(&g, &t).unwrap().delta;
        prop_assert!(delta_f.max_distance(&delta_g).unwrap() <= 1e-8);
        prop_assert!(class_membership(&delta_g, &f, &t).unwrap().member);

        // an unrelated basis: different generating basis, no membership
        let h = riesz_basis(n, Field::Complex, 0.5, 2.0, &mut rng);
        let delta_h = find_generating_onb(&h, &t).unwrap().delta;
        prop_assume!(delta_f.max_distance(&delta_h).unwrap() > 1e-3);
        prop_assert!(!class_membership(&delta_h, &f, &t).unwrap().member);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampled_form_stays_inside_optimal_bounds(seed: u64, n in 2usize..=3, extra in 0usize..3) {
        let t = tol();
        let mut rng = seeded(seed);
        let (f, g) = random_pair(n, n + extra, Field::Real, &mut rng);
        let report = analyze_biframe(&f, &g, &t).unwrap();
        prop_assume!(report.is_biframe());
        let b = report.bounds.unwrap();
        let (lo, hi) = form_range(&report.operator, 100_000, &mut rng);
        prop_assert!(lo >= b.lower - 1e-6 && hi <= b.upper + 1e-6);
        // the extremes are approached, not just bracketed
        prop_assert!(lo - b.lower <= 1e-2 * b.upper && b.upper - hi <= 1e-2 * b.upper);
    }
}
