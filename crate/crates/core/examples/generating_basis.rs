//! Recover the orthonormal basis that generates a Riesz basis through a
//! positive operator, by the square root of the frame operator and by the
//! polar decomposition.

use biframe::briesz::{class_membership, find_generating_onb, generating_onb_by_polar, is_b_riesz};
use biframe::frames::frame_operator;
use biframe::random::{riesz_basis, seeded};
use biframe::{Field, Tolerances, VectorFamily};

fn main() -> biframe::Result<()> {
    let tol = Tolerances::default();
    let f = VectorFamily::real(&[&[-1.0, 2.0], &[1.0, 0.0]])?;
    println!("S_F = {}", frame_operator(&f).matrix().map(|z| z.re));
    let basis = find_generating_onb(&f, &tol)?;
    for (k, d) in basis.delta.vectors().enumerate() {
        let d: Vec<f64> = d.entries().iter().map(|z| z.re).collect();
        println!("delta_{} = {d:.6?}", k + 1);
    }
    println!("S^(1/2) = {:.6}", basis.generator.matrix().map(|z| z.re));
    println!("member of its class: {}", class_membership(&basis.delta, &f, &tol)?.member);

    let mut rng = seeded(13);
    let g = riesz_basis(6, Field::Complex, 0.2, 5.0, &mut rng);
    let by_root = find_generating_onb(&g, &tol)?.delta;
    let by_polar = generating_onb_by_polar(&g, &tol)?;
    println!(
        "complex n=6: b-Riesz {}, methods agree to {:.2e}",
        is_b_riesz(&g, &tol),
        by_root.max_distance(&by_polar)?
    );
    Ok(())
}
