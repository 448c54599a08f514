//! Presentations of Dehn fillings and their first homology.
//!
//! ```text
//! cargo run --example dehn_filling -- "4 6 8 2"
//! ```

use apoly::knotio::{filled_presentation, parse_dt, wirtinger, FillingSpec};

fn main() {
    let code = std::env::args().nth(1).unwrap_or_else(|| "4 6 2".to_string());
    let (pres, periph) = wirtinger(&parse_dt(&code).unwrap());
    for (p, q) in [(1, 0), (0, 1), (1, 1), (1, -2), (5, 2), (-7, 3)] {
        let f = FillingSpec::new(p, q).unwrap();
        let filled = filled_presentation(&pres, &periph, f).unwrap();
        println!("{f:>5}: {} relators, H1 = {:?}", filled.relators.len(), filled.abelianization());
    }
}
