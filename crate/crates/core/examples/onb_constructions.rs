//! Biframes built from an orthonormal basis, from a frame with a g-dual
//! partner, from a Riesz basis, and from a positive generator.

use biframe::briesz::briesz_partner;
use biframe::random::{family, positive_definite, riesz_basis, seeded};
use biframe::{
    analyze_biframe, construct_from_onb, gdual_partner, riesz_partner, Field, Operator,
    Tolerances, VectorFamily,
};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let mut rng = seeded(5);
    let n = 3;
    let e = VectorFamily::standard_basis(n, Field::Real);
    let q = positive_definite(n, Field::Real, 0.5, 2.0, &mut rng);
    let q_inv = biframe::linalg::invert(&q, &tol)?;
    let id = Operator::identity(n, Field::Real);

    let (f, g) = construct_from_onb(&e, &q, &id, &id, 0.5, 0.5, &tol)?;
    report("from onb", &f, &g, &q, &tol)?;

    let frame = family(n, 6, Field::Real, &mut rng);
    let h = family(n, 6, Field::Real, &mut rng);
    let g = gdual_partner(&frame, &q, &h, &tol)?;
    report("g-dual", &frame, &g, &q_inv, &tol)?;

    let basis = riesz_basis(n, Field::Real, 0.5, 2.0, &mut rng);
    let g = riesz_partner(&basis, &q, &tol)?;
    report("riesz partner", &basis, &g, &q_inv, &tol)?;

    let u = Operator::diagonal(&[1.0, 2.0, 3.0], Field::Real)?;
    let (f, g) = briesz_partner(&e, &u, &id, &tol)?;
    report("b-riesz partner", &f, &g, &id, &tol)?;
    Ok(())
}

fn report(
    label: &str,
    f: &VectorFamily,
    g: &VectorFamily,
    predicted: &Operator,
    tol: &Tolerances,
) -> biframe::Result<()> {
    let r = analyze_biframe(f, g, tol)?;
    println!(
        "{label:<16} {}  |S - predicted| = {:.2e}  Parseval: {}",
        r.classification,
        r.operator.distance(predicted)?,
        if r.is_parseval(tol) { "yes" } else { "no" }
    );
    Ok(())
}
