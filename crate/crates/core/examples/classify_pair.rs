//! Classify three pairs: a biframe, a pair frame that is not a biframe, and a
//! pair whose operator is singular.

use biframe::{analyze_biframe, Tolerances, VectorFamily};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let f = VectorFamily::real(&[&[1.0, 2.0], &[8.0 / 7.0, 4.0]])?;
    let pairs = [
        ("diagonal", VectorFamily::real(&[&[2.0, 0.0], &[0.0, 3.0]])?, VectorFamily::real(&[&[1.0, 0.0], &[0.0, 1.0]])?),
        (
            "indefinite",
            f.clone(),
            VectorFamily::real(&[&[-1.0, 175.0 / 21.0], &[7.0 / 4.0, -14.0 / 3.0]])?,
        ),
        ("singular", f.clone(), VectorFamily::real(&[&[1.0, 1.0], &[1.0, 1.0]])?),
    ];
    for (name, f, g) in &pairs {
        let report = analyze_biframe(f, g, &tol)?;
        println!("{name}: {}", report.classification);
        println!("  S = {:.4}", report.operator.matrix().map(|z| z.re));
        println!("  spectrum of the symmetric part: {:?}", report.spectrum);
        if let Some(w) = &report.witness {
            let w: Vec<f64> = w.entries().iter().map(|z| z.re).collect();
            println!("  form is not positive along {w:.4?}");
        }
    }
    Ok(())
}
