use rayon::prelude::*;

use crate::grid::{GridGraph, Vertex};

use super::{solve, Demand, Instance};

/// True if every two vertex pairs (not necessarily distinct) can be joined
/// by edge-disjoint paths. Disconnected graphs are not weakly 2-linked.
pub fn is_weakly_2_linked(graph: &GridGraph) -> bool {
    graph.is_connected() && weak_2_linkage_counterexample(graph).is_none()
}

/// The first quadruple `[u1, v1, u2, v2]` (in vertex order) whose two pairs
/// cannot be linked, if any.
///
/// The search skips orderings that are equivalent by symmetry of the pair
/// demands: `u1 <= v1`, `u2 <= v2` and `(u1, v1) <= (u2, v2)`.
pub fn weak_2_linkage_counterexample(graph: &GridGraph) -> Option<[Vertex; 4]> {
    let vs: Vec<Vertex> = graph.vertices().collect();
    let pairs: Vec<(Vertex, Vertex)> = vs
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| vs[i..].iter().map(move |&b| (a, b)))
        .collect();
    let quads: Vec<(usize, usize)> = (0..pairs.len())
        .flat_map(|i| (i..pairs.len()).map(move |j| (i, j)))
        .collect();
    quads.par_iter().find_map_first(|&(i, j)| {
        let ((u1, v1), (u2, v2)) = (pairs[i], pairs[j]);
        let inst = Instance::new(graph.clone(), vec![Demand::pair(u1, v1), Demand::pair(u2, v2)]);
        let feasible = solve(&inst).map(|o| o.is_feasible()).unwrap_or(false);
        (!feasible).then_some([u1, v1, u2, v2])
    })
}
