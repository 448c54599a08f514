//! Non-cyclic SU(2) representations of 1/n fillings of the trefoil and the
//! boundary eigenvalues they restrict to.
//!
//! ```text
//! cargo run --release --example su2_fillings
//! ```

use apoly::knotio::{filled_presentation, parse_dt, wirtinger, FillingSpec};
use apoly::su2::{boundary_point, find_su2, min_cross_distance, DEFAULT_ATTEMPTS};

fn main() {
    let (pres, periph) = wirtinger(&parse_dt("4 6 2").unwrap());
    let mut points = Vec::new();
    for n in 1..=4 {
        let f = FillingSpec::one_over(n);
        let filled = filled_presentation(&pres, &periph, f).unwrap();
        let reps: Vec<_> = find_su2(&filled, DEFAULT_ATTEMPTS, 1e-10, 7).into_iter().filter(|r| r.non_cyclic).collect();
        println!("filling {f}: {} non-cyclic representations", reps.len());
        for r in &reps {
            let b = boundary_point(r, &periph, f).unwrap();
            println!(
                "  residual {:.1e}  m = {:.6}  l = {:.6}  |m l^n - 1| = {:.1e}",
                r.residual,
                b.m_eigenvalue,
                b.l_eigenvalue,
                b.filling_defect()
            );
            points.push(b);
        }
    }
    if let Some((d, i, j)) = min_cross_distance(&points) {
        println!("closest points from different fillings: {d:.3e} ({} vs {})", points[i].filling, points[j].filling);
    }
}
