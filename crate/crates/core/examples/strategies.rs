//! Raw eliminants from the Groebner and resultant-tower strategies, and the
//! numerical certification of their factors.
//!
//! ```text
//! cargo run --release --example strategies -- "4 6 8 2"
//! ```

use std::time::{Duration, Instant};

use apoly::cli::KnotInput;
use apoly::elim::{certify_factors, eliminate, Strategy};

fn main() {
    let code = std::env::args().nth(1).unwrap_or_else(|| "4 6 2".to_string());
    let sys = KnotInput::dt(&code).rep_system().unwrap();
    for strategy in [Strategy::Groebner, Strategy::ResultantTower] {
        let t = Instant::now();
        match eliminate(&sys, strategy, Duration::from_secs(120)) {
            Ok(p) => {
                println!("{strategy:?} ({:.2?}): {p}", t.elapsed());
                for f in certify_factors(&p, &sys, 5, 1e-10) {
                    println!("  {:?}  {}", f.status, f.factor);
                }
            }
            Err(e) => println!("{strategy:?}: {e}"),
        }
    }
}
