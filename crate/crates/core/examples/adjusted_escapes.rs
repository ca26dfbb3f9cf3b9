//! Escapes three terminals of the adjusted quadrants to the line A.

use gridlink::grid::{adjusted_quadrant, v, AdjustedKind};
use gridlink::lemmas::{escape_three_distinct, escape_three_shared, link_and_escape};

fn main() {
    let q1 = adjusted_quadrant(AdjustedKind::Q1);
    let t: Vec<_> = q1.vertices().into_iter().filter(|x| !q1.in_a(*x)).take(3).collect();
    let c = escape_three_shared(&q1, [t[0], t[1], t[2]]).unwrap();
    println!("Q1 shared exits: {:?}", c.paths.paths);

    let q0 = adjusted_quadrant(AdjustedKind::Q0);
    let c = link_and_escape(&q0, v(1, 1), v(2, 2), v(1, 1)).unwrap();
    println!("Q0 link and escape: {:?}", c.paths.paths);
    let c = escape_three_distinct(&q0, [v(1, 1), v(1, 2), v(1, 3)]).unwrap();
    println!("Q0 distinct exits: {:?}", c.paths.paths);
}
