//! Subgroups of Z^2 covering an affine line: exact membership and the count
//! of uncovered points as the window grows.
//!
//! ```text
//! cargo run --example lattice_lemma
//! ```

use apoly::su2::{lattice_lemma_check, LatticeFamily, Subgroup};

fn report(label: &str, f: &LatticeFamily, window: u32) {
    let r = lattice_lemma_check(f, window).unwrap();
    println!("{label}");
    println!("  covered points       {}", r.covered.len());
    println!("  uncovered {window:>3} / {:>3}    {} / {}", 2 * window, r.uncovered_count, r.uncovered_count_doubled);
    println!("  v0 excluded          {}", r.excluded_point_excluded);
    println!("  ranks                {:?}", r.ranks);
    println!("  H step               {:?}", r.h_step);
    println!("  growth verified      {:?}", r.growth_verified);
}

fn main() {
    let line =
        |subgroups: Vec<Subgroup>, v0| LatticeFamily { base: (1, 0), direction: (0, 1), subgroups, excluded_point: v0 };
    report("<(1, n)>, n = 1..5", &line((1..=5).map(|n| Subgroup::new((1, n), (0, 0))).collect(), (1, 0)), 10);
    report("Z^2", &line(vec![Subgroup::new((1, 0), (0, 1))], (1, 3)), 10);
    report(
        "<(1,1),(0,2)> and <(1,2),(0,3)>",
        &line(vec![Subgroup::new((1, 1), (0, 2)), Subgroup::new((1, 2), (0, 3))], (1, 0)),
        50,
    );
    match lattice_lemma_check(
        &LatticeFamily { base: (2, 2), direction: (1, 1), subgroups: vec![], excluded_point: (2, 2) },
        5,
    ) {
        Ok(_) => unreachable!(),
        Err(e) => println!("line through 0: {e}"),
    }
}
