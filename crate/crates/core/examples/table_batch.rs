//! The bundled table of prime knots through 8 crossings, run as a batch
//! with a per-knot budget.
//!
//! ```text
//! cargo run --release --example table_batch -- 30
//! ```

use apoly::cli::{run_batch, table_jobs, JobOptions};

fn main() {
    let budget = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let jobs = table_jobs(&JobOptions { budget_seconds: budget, ..JobOptions::default() });
    let r = run_batch(&jobs, rayon::current_num_threads(), None);
    for j in &r.jobs {
        let detail = match &j.nontrivial_part {
            Some(p) => format!("{:?}, {} terms", j.verdict.unwrap(), p.len()),
            None => j.message.clone().unwrap_or_default(),
        };
        println!("{:>5}  {:?}  {detail}", j.name, j.status);
    }
    println!("finished {}, timeouts {}, errors {}", r.finished, r.timeouts, r.errors);
}
