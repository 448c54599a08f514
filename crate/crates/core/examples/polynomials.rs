//! Exact multivariate polynomials: parsing, resultants, gcd and a
//! Groebner basis elimination.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use apoly::mpoly::{buchberger, gcd, resultant, MonomialOrder, SparsePoly};

fn main() {
    let vars = ["x", "M", "L"];
    let p = |s: &str| SparsePoly::parse(s, &vars).unwrap();
    let (a, b) = (p("x^2 - M"), p("x^3 - L"));
    println!("res_x({a}, {b}) = {}", resultant(&a, &b, "x").unwrap());
    let basis = buchberger(&[a, b], MonomialOrder::Block { elim: 1 });
    let elim: Vec<String> = basis.iter().filter(|g| !g.involves(0)).map(|g| g.to_string()).collect();
    println!("elimination ideal: {elim:?}");
    let (f, g) = (p("(x - L)*(x*M + 2)^2"), p("(x - L)*(x*M + 2)*(x + 1)"));
    println!("gcd = {}", gcd(&f, &g));
    let (c, prim) = p("6*x*M/4 + 9/2").content_primitive().unwrap();
    println!("content {c}, primitive part {prim}");
    println!("{}", serde_json::to_string(&p("L - 1").with_vars(&["M", "L"]).unwrap()).unwrap());
}
