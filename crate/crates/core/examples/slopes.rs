//! Newton polygon and boundary slopes of a polynomial in M and L.
//!
//! ```text
//! cargo run --example slopes -- "L^2*M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + M^4"
//! ```

use apoly::mpoly::SparsePoly;
use apoly::newton::{boundary_slopes, newton_polygon, SlopeReport};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(L - 1)*(L*M^6 + 1)".to_string());
    let p = SparsePoly::parse(&text, &["M", "L"]).unwrap();
    let poly = newton_polygon(&p).unwrap();
    println!("vertices: {:?}", poly.vertices);
    for s in &poly.sides {
        println!("  side {:?} x {}", s.direction, s.lattice_length);
    }
    let slopes: Vec<String> = boundary_slopes(&poly).iter().map(|s| s.to_string()).collect();
    println!("slopes: {}", slopes.join(", "));
    println!("{}", serde_json::to_string(&SlopeReport::from(&poly)).unwrap());
}
