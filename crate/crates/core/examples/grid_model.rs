//! Builds the 6x6 host grid, cuts out a quadrant and prints its landmarks.

use gridlink::grid::{make_grid, v, Corner, Quadrant};

fn main() {
    let mut g = make_grid(3, 4).unwrap();
    println!("3x4 grid: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    g.contract(v(1, 1), v(1, 2)).unwrap();
    println!(
        "after contracting (1,1) into (1,2): degree of (1,2) is {}",
        g.degree(v(1, 2))
    );

    for corner in Corner::ALL {
        let q = Quadrant::standard(corner);
        let l = q.landmarks();
        println!(
            "{corner:?}: A = {:?}, B = {:?}, x0 = {}, x2 = {}, b = {}",
            l.a, l.b_line, l.x0, l.x2, l.b
        );
    }
}
