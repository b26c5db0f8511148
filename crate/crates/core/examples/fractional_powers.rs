//! Fractional powers and the polar decomposition of small operators.

use biframe::linalg::{fractional_power, polar_decompose};
use biframe::{Operator, Tolerances};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let s = Operator::real(&[&[2.0, -2.0], &[-2.0, 4.0]])?;
    for p in [0.5, -0.5, 1.0 / 3.0] {
        let root = fractional_power(&s, p, &tol)?;
        println!("S^{p:.3} =\n{:.6}", root.matrix().map(|z| z.re));
    }
    let half = fractional_power(&s, 0.5, &tol)?;
    println!("|S^0.5 S^0.5 - S| = {:.2e}", half.compose(&half)?.distance(&s)?);

    let m = Operator::real(&[&[1.0, 2.0], &[-1.0, 3.0]])?;
    let polar = polar_decompose(&m, &tol)?;
    println!("unitary factor =\n{:.6}", polar.unitary.matrix().map(|z| z.re));
    println!("positive factor =\n{:.6}", polar.positive.matrix().map(|z| z.re));
    println!("|W P - M| = {:.2e}", polar.unitary.compose(&polar.positive)?.distance(&m)?);
    Ok(())
}
