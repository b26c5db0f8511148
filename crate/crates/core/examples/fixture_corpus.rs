//! Run the fixture corpus at a few truncation orders.

use biframe::fixtures::{corpus, run_all};
use biframe::Tolerances;

fn main() {
    let tol = Tolerances::default();
    for n in [8, 64, 256] {
        let rows = run_all(n, &tol);
        let failed: Vec<_> = rows.iter().filter(|r| !r.passed).map(|r| r.id.clone()).collect();
        println!("n = {n:>3}: {}/{} rows pass {failed:?}", rows.len() - failed.len(), corpus().len());
    }
    for row in run_all(64, &tol) {
        println!("{:>2} {:<30} {}", row.index, row.id, row.observed);
    }
}
