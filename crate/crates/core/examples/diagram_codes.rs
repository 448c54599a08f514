//! The same knot from DT, PD and braid input: crossings, writhe, the
//! Wirtinger presentation and its peripheral words.
//!
//! ```text
//! cargo run --example diagram_codes
//! ```

use apoly::knotio::{parse_braid, parse_dt, parse_pd, wirtinger, KnotDiagram};

fn show(label: &str, d: &KnotDiagram) {
    let (pres, periph) = wirtinger(d);
    println!("{label}: {} crossings, writhe {}", d.crossing_count(), d.writhe());
    println!("  PD          {:?}", d.to_pd());
    println!("  relators    {:?}", pres.relators);
    println!("  meridian    {:?}", periph.meridian);
    println!("  longitude   {:?}", periph.longitude);
    println!("  H1          {:?}", pres.abelianization());
}

fn main() {
    show("DT 4 6 2", &parse_dt("4 6 2").unwrap());
    show("PD", &parse_pd("X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]").unwrap());
    show("braid 1 1 1", &parse_braid("1 1 1").unwrap());
    show("mirror", &parse_braid("1 1 1").unwrap().mirror());
    match parse_dt("4 6") {
        Ok(_) => unreachable!(),
        Err(e) => println!("DT 4 6: {e}"),
    }
}
