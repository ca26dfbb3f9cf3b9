//! Certificate checker. Deliberately shares no code with the solver: it
//! reads adjacency and multiplicities straight from the [`GridGraph`].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::grid::{Edge, Vertex};

use super::{Demand, Instance, PathSystem};

/// The first clause a certificate violates.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("expected {expected} paths, found {found}")]
    PathCount { expected: usize, found: usize },
    #[error("empty path at demand {demand}")]
    EmptyPath { demand: usize },
    #[error("unknown vertex {vertex} at demand {demand}")]
    UnknownVertex { demand: usize, vertex: Vertex },
    #[error("path {demand} starts at {found}, expected {expected}")]
    WrongStart {
        demand: usize,
        expected: Vertex,
        found: Vertex,
    },
    #[error("non-adjacent step {from} -> {to} at demand {demand}")]
    NotAdjacent { demand: usize, from: Vertex, to: Vertex },
    #[error("forbidden edge {edge:?} at demand {demand}")]
    ForbiddenEdge { demand: usize, edge: Edge },
    #[error("edge reuse at demand {demand}: {edge:?}")]
    EdgeReuse { demand: usize, edge: Edge },
    #[error("path {demand} ends at {found}, which does not satisfy the demand")]
    WrongEnd { demand: usize, found: Vertex },
    #[error("exit collision at {exit} between demands {first} and {second}")]
    ExitCollision { first: usize, second: usize, exit: Vertex },
}

/// Checks `cert` against every path-system clause of `inst`. Vertices in
/// paths may be given by any member of their contraction class.
pub fn verify(inst: &Instance, cert: &PathSystem) -> Result<(), Violation> {
    let g = &inst.graph;
    if cert.len() != inst.demands.len() {
        return Err(Violation::PathCount {
            expected: inst.demands.len(),
            found: cert.len(),
        });
    }
    let mut load: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut exits: BTreeMap<(u32, Vertex), usize> = BTreeMap::new();
    for (k, (demand, path)) in inst.demands.iter().zip(&cert.paths).enumerate() {
        let Some(&first) = path.first() else {
            return Err(Violation::EmptyPath { demand: k });
        };
        if let Some(&x) = path.iter().find(|&&x| !g.contains(g.representative(x))) {
            return Err(Violation::UnknownVertex { demand: k, vertex: x });
        }
        let path: Vec<Vertex> = path.iter().map(|&x| g.representative(x)).collect();
        let start = g.representative(demand.source());
        if path[0] != start {
            return Err(Violation::WrongStart {
                demand: k,
                expected: demand.source(),
                found: first,
            });
        }
        for w in path.windows(2) {
            let cap = g.multiplicity(w[0], w[1]);
            if cap == 0 {
                return Err(Violation::NotAdjacent {
                    demand: k,
                    from: w[0],
                    to: w[1],
                });
            }
            let edge = Edge::new(w[0], w[1]);
            if inst.forbidden.contains(&edge) {
                return Err(Violation::ForbiddenEdge { demand: k, edge });
            }
            let used = load.entry(edge).or_insert(0);
            *used += 1;
            if *used > cap {
                return Err(Violation::EdgeReuse { demand: k, edge });
            }
        }
        let end = *path.last().expect("non-empty");
        let satisfied = match demand {
            Demand::Pair { target, .. } => g.representative(*target) == end,
            Demand::Escape { exits, .. } => exits.iter().any(|&x| g.representative(x) == end),
        };
        if !satisfied {
            return Err(Violation::WrongEnd { demand: k, found: end });
        }
        if let Some(group) = demand.group() {
            if let Some(&first) = exits.get(&(group, end)) {
                return Err(Violation::ExitCollision {
                    first,
                    second: k,
                    exit: end,
                });
            }
            exits.insert((group, end), k);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, v};

    fn line3() -> Instance {
        Instance::new(
            make_grid(1, 3).unwrap(),
            vec![Demand::pair(v(1, 1), v(1, 3)), Demand::pair(v(1, 2), v(1, 3))],
        )
    }

    #[test]
    fn reports_path_count() {
        let err = verify(&line3(), &PathSystem::new(vec![vec![v(1, 1)]])).unwrap_err();
        assert_eq!(err.to_string(), "expected 2 paths, found 1");
    }

    #[test]
    fn reports_edge_reuse() {
        let cert = PathSystem::new(vec![vec![v(1, 1), v(1, 2), v(1, 3)], vec![v(1, 2), v(1, 3)]]);
        let err = verify(&line3(), &cert).unwrap_err();
        assert!(err.to_string().starts_with("edge reuse at demand 1"), "{err}");
    }

    #[test]
    fn reports_exit_collision() {
        let g = make_grid(2, 2).unwrap();
        let exits = [v(2, 1), v(2, 2)];
        let inst = Instance::new(
            g,
            vec![
                Demand::escape_distinct(v(1, 1), exits, 1),
                Demand::escape_distinct(v(1, 2), exits, 1),
            ],
        );
        let cert = PathSystem::new(vec![vec![v(1, 1), v(2, 1)], vec![v(1, 2), v(2, 2), v(2, 1)]]);
        let err = verify(&inst, &cert).unwrap_err();
        assert!(err.to_string().starts_with("exit collision"), "{err}");
        // Without the group the same endpoints are fine.
        let shared = Instance::new(
            make_grid(2, 2).unwrap(),
            vec![Demand::escape(v(1, 1), exits), Demand::escape(v(1, 2), exits)],
        );
        assert_eq!(verify(&shared, &cert), Ok(()));
    }

    #[test]
    fn rejects_jumps_forbidden_edges_and_wrong_ends() {
        let inst = Instance::new(make_grid(1, 3).unwrap(), vec![Demand::pair(v(1, 1), v(1, 3))]);
        let jump = PathSystem::new(vec![vec![v(1, 1), v(1, 3)]]);
        assert!(matches!(verify(&inst, &jump), Err(Violation::NotAdjacent { .. })));
        let short = PathSystem::new(vec![vec![v(1, 1), v(1, 2)]]);
        assert!(matches!(verify(&inst, &short), Err(Violation::WrongEnd { .. })));
        let forb = inst.clone().with_forbidden([Edge::new(v(1, 1), v(1, 2))]);
        let ok = PathSystem::new(vec![vec![v(1, 1), v(1, 2), v(1, 3)]]);
        assert_eq!(verify(&inst, &ok), Ok(()));
        assert!(matches!(verify(&forb, &ok), Err(Violation::ForbiddenEdge { .. })));
        let off = PathSystem::new(vec![vec![v(1, 1), v(2, 1)]]);
        assert!(matches!(verify(&inst, &off), Err(Violation::UnknownVertex { .. })));
        let back = PathSystem::new(vec![vec![v(1, 2), v(1, 3)]]);
        assert!(matches!(verify(&inst, &back), Err(Violation::WrongStart { .. })));
    }

    #[test]
    fn parallel_edges_may_be_used_once_each() {
        let mut g = make_grid(2, 2).unwrap();
        g.contract(v(1, 2), v(1, 1)).unwrap();
        g.contract(v(2, 2), v(2, 1)).unwrap();
        let inst = Instance::new(
            g,
            vec![
                Demand::pair(v(1, 1), v(2, 1)),
                Demand::pair(v(1, 1), v(2, 1)),
                Demand::pair(v(1, 1), v(2, 1)),
            ],
        );
        let one = vec![v(1, 1), v(2, 1)];
        let two = PathSystem::new(vec![one.clone(), one.clone(), vec![v(1, 1)]]);
        assert!(matches!(
            verify(&inst, &two),
            Err(Violation::WrongEnd { demand: 2, .. })
        ));
        let three = PathSystem::new(vec![one.clone(), one.clone(), one]);
        assert!(matches!(
            verify(&inst, &three),
            Err(Violation::EdgeReuse { demand: 2, .. })
        ));
    }
}
