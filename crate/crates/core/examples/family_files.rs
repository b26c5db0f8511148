//! Write a family file, read it back and analyze the pair it holds.

use biframe::io::FamilyFile;
use biframe::{analyze_biframe, Field, Tolerances, VectorFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let n = 4;
    let scales: Vec<f64> = (1..=n).map(|k| k as f64).collect();
    let inverse: Vec<f64> = scales.iter().map(|k| 1.0 / k).collect();
    let file = FamilyFile::new(Field::Real, n)
        .with_family("F", VectorFamily::scaled_basis(&scales, Field::Real))
        .with_family("G", VectorFamily::scaled_basis(&inverse, Field::Real));
    let text = file.to_json();
    println!("{text}");

    let dir = std::env::temp_dir().join("biframe-family-file-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("parseval.json");
    file.write(&path)?;
    let back = FamilyFile::read(&path)?;
    assert_eq!(back.to_json(), text);

    let report = analyze_biframe(back.family("F")?, back.family("G")?, &tol)?;
    println!("{} (Parseval: {})", report.classification, report.is_parseval(&tol));
    Ok(())
}
