//! Reconstruct a vector from its biframe coefficients in both forms of the
//! reconstruction formula.

use biframe::random::{biframe, seeded, vector};
use biframe::{biframe_coefficients, reconstruct, Field, Tolerances};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let mut rng = seeded(11);
    for n in [2, 8, 32] {
        let pair = biframe(n, Field::Complex, 0.25, 4.0, &mut rng, &tol)?;
        let x = vector(n, Field::Complex, &mut rng);
        let rec = reconstruct(&pair.f, &pair.g, &x, &tol)?;
        let c = biframe_coefficients(&pair.f, &pair.g, &x, &tol)?;
        println!(
            "n = {n:>2}: residuals {:.2e} / {:.2e}, cond(S) = {:.2}, |c| = {:.4}",
            rec.residuals[0],
            rec.residuals[1],
            rec.condition,
            c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        );
    }
    Ok(())
}
