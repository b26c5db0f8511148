//! Optimal bounds of a biframe, checked against stated bounds and against the
//! form sampled at random unit vectors.

use biframe::random::{seeded, unit_vector};
use biframe::{analyze_biframe, verify_bounds, Tolerances, VectorFamily};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let e = VectorFamily::standard_basis(2, biframe::Field::Real);
    let g = VectorFamily::real(&[&[3.0, 1.0], &[1.0, 2.0]])?;
    let report = analyze_biframe(&e, &g, &tol)?;
    let b = report.bounds.expect("biframe");
    println!("optimal bounds: {:.12} .. {:.12}", b.lower, b.upper);
    println!("closed form:    {:.12} .. {:.12}", (5.0 - 5f64.sqrt()) / 2.0, (5.0 + 5f64.sqrt()) / 2.0);
    for (lo, hi) in [(1.0, 4.0), (1.5, 4.0), (1.0, 3.5)] {
        println!("bounds ({lo}, {hi}) valid: {}", verify_bounds(&e, &g, lo, hi, &tol)?);
    }

    let mut rng = seeded(7);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..10_000 {
        let x = unit_vector(2, e.field(), &mut rng);
        let v = report.operator.quadratic_form(&x)?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    println!("sampled range:  {lo:.12} .. {hi:.12}");
    Ok(())
}
