//! Links a pair inside a quadrant and escorts two singletons to distinct
//! vertices of the boundary lines, reporting the clamp matchings used.

use gridlink::grid::{v, Corner, Line, Quadrant};
use gridlink::lemmas::link_pair_escort_singletons;

fn main() {
    let q = Quadrant::standard(Corner::UpperLeft);
    let out = link_pair_escort_singletons(&q, v(1, 1), v(3, 3), v(1, 2), v(2, 1), [Line::A, Line::B]).unwrap();
    println!("case: {}", out.case);
    for (k, p) in out.certificate.paths.paths.iter().enumerate() {
        println!("path {k}: {p:?}");
    }
    for r in &out.records {
        println!("clamps for {:?}: {:?}", r.pi0, r.matching);
    }
}
