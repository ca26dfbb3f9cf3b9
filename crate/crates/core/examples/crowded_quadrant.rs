//! A quadrant holding six terminals: link some pairs inside, escape the
//! rest to the boundary lines with at most one exit off A.

use gridlink::grid::{Corner, Quadrant};
use gridlink::lemmas::{crowded_escape, CrowdedConfig, CrowdedVariant};

fn main() {
    let q = Quadrant::standard(Corner::LowerRight);
    let g = |r, c| q.local(r, c);
    let config = CrowdedConfig {
        pairs: vec![(g(1, 1), g(2, 3)), (g(1, 3), g(2, 1))],
        singletons: vec![g(1, 2), g(3, 3)],
    };
    let variant = CrowdedVariant::from_terminal_count(config.terminal_count()).unwrap();
    let out = crowded_escape(&q, &config, variant).unwrap();
    println!(
        "{variant:?}: linked pairs {:?}, escaping {:?}",
        out.linked, out.escaping
    );
    for p in &out.certificate.paths.paths {
        println!("  {p:?}");
    }
    println!("exits off A: {}", out.exits_off_a(&q));
}
