//! The SL(2, C) representation system of a knot group: unknowns,
//! equations, the reducible-locus check and the (M, L) involution.
//!
//! ```text
//! cargo run --example rep_system -- "4 6 2"
//! ```

use apoly::charvar::{build_rep_system, involution_image, reducible_locus_check};
use apoly::knotio::{parse_dt, wirtinger};
use apoly::mpoly::SparsePoly;

fn main() {
    let code = std::env::args().nth(1).unwrap_or_else(|| "4 6 2".to_string());
    let (pres, periph) = wirtinger(&parse_dt(&code).unwrap());
    let sys = build_rep_system(&pres, &periph).unwrap();
    println!("unknowns: {:?}", sys.unknowns);
    for (eq, kind) in sys.equations.iter().zip(&sys.kinds) {
        println!("  {kind:?}: {eq}");
    }
    println!("reducible locus present: {}", reducible_locus_check(&sys));
    for p in ["L*M^6 + 1", "L^2*M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + M^4", "L*M^2 + 3"] {
        let p = SparsePoly::parse(p, &["M", "L"]).unwrap();
        println!("involution of {p}: {}", involution_image(&p));
    }
}
