//! Routes a mixed instance with the exact solver and re-checks the paths
//! with the independent checker.

use gridlink::grid::{make_grid, v};
use gridlink::routing::{solve, verify, Demand, Instance, Outcome};

fn main() {
    let g = make_grid(3, 3).unwrap();
    let bottom = [v(3, 1), v(3, 2), v(3, 3)];
    let inst = Instance::new(
        g,
        vec![
            Demand::pair(v(1, 1), v(1, 3)),
            Demand::escape_distinct(v(1, 2), bottom, 0),
            Demand::escape_distinct(v(2, 2), bottom, 0),
        ],
    );
    match solve(&inst).unwrap() {
        Outcome::Routed(paths) => {
            for (k, p) in paths.paths.iter().enumerate() {
                println!("path {k}: {p:?}");
            }
            println!("checker: {:?}", verify(&inst, &paths));
        }
        Outcome::Infeasible => println!("infeasible"),
    }

    // Two pairs that must cross through a single cut edge.
    let mut path = make_grid(1, 3).unwrap();
    path.remove_vertex(v(1, 3)).unwrap();
    let crossing = Instance::new(
        path,
        vec![Demand::pair(v(1, 1), v(1, 2)), Demand::pair(v(1, 2), v(1, 1))],
    );
    println!("two pairs over one edge: {:?}", solve(&crossing).unwrap());
}
