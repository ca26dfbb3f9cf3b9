//! Samples four-pair instances on the 6x6 grid and links each one.

use gridlink::verifier::{burnside_count, pairability_check, PairabilityStrategy};

fn main() {
    let report = pairability_check(PairabilityStrategy::Random { samples: 200, seed: 7 }, 2);
    print!("{}", report.body());
    println!("orbits of two pairs on the 4x4 grid: {}", burnside_count(4, 2));
}
