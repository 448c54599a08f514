//! q-difference operators: products in the quantum plane, specialization
//! at q = 1 and comparison with a classical A-polynomial.
//!
//! ```text
//! cargo run --example aj_check -- "Q^3*E + 1" "(L - 1)*(L*M^6 + 1)"
//! ```

use apoly::ajspec::{aj_compare, op_mul, parse_operator, specialize_q1};
use apoly::elim::strip_reducible;
use apoly::mpoly::SparsePoly;

fn main() {
    let mut args = std::env::args().skip(1);
    let op = args.next().unwrap_or_else(|| "Q^3*E + 1".to_string());
    let classical = args.next().unwrap_or_else(|| "(L - 1)*(L*M^6 + 1)".to_string());
    let (e, q) = (parse_operator("E").unwrap(), parse_operator("Q").unwrap());
    println!("E*Q = {}", op_mul(&e, &q));
    let op = parse_operator(&op).unwrap();
    let s = specialize_q1(&op).unwrap();
    println!("{op} at q = 1: {}", s.poly);
    let a = strip_reducible(&SparsePoly::parse(&classical, &["M", "L"]).unwrap()).unwrap();
    let report = aj_compare(&s.poly, &a);
    println!("against {classical}: {:?}", report.verdict);
    for row in &report.factors {
        println!("  {row:?}");
    }
}
