//! A-polynomial of a knot given as a DT code, with its certified factors.
//!
//! ```text
//! cargo run --release --example a_polynomial -- "4 6 8 2"
//! ```

use std::time::Duration;

use apoly::cli::KnotInput;
use apoly::elim::{a_polynomial, CertifyOptions, Strategy};

fn main() {
    let code = std::env::args().nth(1).unwrap_or_else(|| "4 6 2".to_string());
    let sys = KnotInput::dt(&code).rep_system().expect("valid DT code");
    let r = a_polynomial(&sys, Strategy::Auto, Duration::from_secs(300), CertifyOptions::default())
        .expect("elimination within budget");
    println!("A(M, L)         = {}", r.full);
    println!("(L - 1) power   = {}", r.l_minus_one_power);
    println!("nontrivial part = {}", r.nontrivial_part);
    println!("verdict         = {:?}", r.verdict);
    for f in &r.certificates {
        let best = f
            .certificates
            .iter()
            .map(|c| c.residual.clone())
            .min_by(|a, b| a.parse::<f64>().unwrap().total_cmp(&b.parse::<f64>().unwrap()));
        println!("  {:?}  {}  (best residual {})", f.status, f.factor, best.unwrap_or_default());
    }
}
