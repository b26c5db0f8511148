//! Move a random biframe onto a prescribed operator `Q`, then show that a
//! Parseval biframe stays Parseval exactly when `V U* = I`.

use biframe::random::{biframe, positive_definite, seeded, unitary};
use biframe::{
    parseval_transform_check, transform_biframe, transform_pair, ExponentQuadruple, Field,
    Operator, Tolerances,
};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let mut rng = seeded(3);
    let n = 4;
    let pair = biframe(n, Field::Complex, 0.5, 2.0, &mut rng, &tol)?;
    let q = positive_definite(n, Field::Complex, 1.0, 3.0, &mut rng);
    let w = unitary(n, Field::Complex, &mut rng);
    for exps in [ExponentQuadruple::halves(), ExponentQuadruple::new(0.2, 0.8, 1.0, 0.0)?] {
        let out = transform_biframe(&pair.f, &pair.g, &q, &w, &w, &exps, &tol)?;
        println!(
            "p={} q={} r={} t={}: {}, |S' - Q| = {:.2e}",
            exps.p,
            exps.q,
            exps.r,
            exps.t,
            out.report.classification,
            out.report.operator.distance(&q)?
        );
    }

    let identity = Operator::identity(n, Field::Complex);
    let parseval = biframe(n, Field::Complex, 0.5, 2.0, &mut rng, &tol)?;
    let parseval = transform_biframe(&parseval.f, &parseval.g, &identity, &w, &w, &ExponentQuadruple::halves(), &tol)?;
    let u = positive_definite(n, Field::Complex, 0.5, 2.0, &mut rng);
    for (label, v) in [("V = U^-*", biframe::linalg::invert(&u, &tol)?.adjoint()), ("V = U", u.clone())] {
        let out = transform_pair(&parseval.f, &parseval.g, &u, &v, &tol)?;
        println!(
            "{label}: predicted Parseval {}, observed Parseval {}",
            parseval_transform_check(&u, &v, &tol)?,
            out.report.is_parseval(&tol)
        );
    }
    Ok(())
}
