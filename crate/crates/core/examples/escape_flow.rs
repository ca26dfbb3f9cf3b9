//! All-escape instances reduce to unit-capacity max flow; compare with the
//! backtracking solver.

use std::collections::BTreeSet;

use gridlink::grid::{adjusted_quadrant, v, AdjustedKind};
use gridlink::routing::{escape_flow, solve, Demand, Instance};

fn main() {
    let q0 = adjusted_quadrant(AdjustedKind::Q0);
    let exits: BTreeSet<_> = q0.a.iter().copied().collect();
    for sources in [vec![v(1, 1), v(2, 1), v(3, 1)], vec![v(1, 1), v(1, 1), v(1, 2)]] {
        let flow = escape_flow(&q0.graph, &sources, &exits, true, &BTreeSet::new()).unwrap();
        let inst = Instance::new(
            q0.graph.clone(),
            sources
                .iter()
                .map(|&s| Demand::escape_distinct(s, exits.clone(), 0))
                .collect(),
        );
        let search = solve(&inst).unwrap();
        println!(
            "{sources:?}: flow {} / search {}",
            flow.is_feasible(),
            search.is_feasible()
        );
    }
}
