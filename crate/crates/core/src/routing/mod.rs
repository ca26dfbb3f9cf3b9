//! Exact edge-disjoint routing on small graphs.
//!
//! An [`Instance`] is a graph, a set of forbidden edges and an ordered list
//! of [`Demand`]s. A pair demand asks for a path between two vertices; an
//! escape demand asks for a path from a source into a set of exit vertices.
//! Escape demands that share a group id must end on pairwise distinct
//! exits; without a group, exits may be shared.
//!
//! [`solve`] is a complete backtracking search, [`escape_flow`] a max-flow
//! reduction for instances made only of escape demands, and [`verify`] an
//! independent certificate checker that reads the [`GridGraph`] directly.

mod check;
mod compact;
mod flow;
mod linkage;
mod solver;

pub use check::{verify, Violation};
pub use flow::{escape_flow, escape_flow_for, EscapeProblem};
pub use linkage::{is_weakly_2_linked, weak_2_linkage_counterexample};
pub use solver::solve;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::grid::{Edge, GridGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Demand {
    Pair {
        source: Vertex,
        target: Vertex,
    },
    Escape {
        source: Vertex,
        exits: BTreeSet<Vertex>,
        group: Option<u32>,
    },
}

impl Demand {
    pub fn pair(source: Vertex, target: Vertex) -> Demand {
        Demand::Pair { source, target }
    }

    /// Escape into `exits`, sharing exits with other demands.
    pub fn escape(source: Vertex, exits: impl IntoIterator<Item = Vertex>) -> Demand {
        Demand::Escape {
            source,
            exits: exits.into_iter().collect(),
            group: None,
        }
    }

    /// Escape into `exits`, ending on an exit no other member of `group` uses.
    pub fn escape_distinct(source: Vertex, exits: impl IntoIterator<Item = Vertex>, group: u32) -> Demand {
        Demand::Escape {
            source,
            exits: exits.into_iter().collect(),
            group: Some(group),
        }
    }

    pub fn source(&self) -> Vertex {
        match self {
            Demand::Pair { source, .. } | Demand::Escape { source, .. } => *source,
        }
    }

    pub fn is_escape(&self) -> bool {
        matches!(self, Demand::Escape { .. })
    }

    /// Whether a path for this demand may end at `x`.
    pub fn accepts_end(&self, x: Vertex) -> bool {
        match self {
            Demand::Pair { target, .. } => *target == x,
            Demand::Escape { exits, .. } => exits.contains(&x),
        }
    }

    pub fn group(&self) -> Option<u32> {
        match self {
            Demand::Pair { .. } => None,
            Demand::Escape { group, .. } => *group,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: GridGraph,
    pub forbidden: BTreeSet<Edge>,
    pub demands: Vec<Demand>,
}

impl Instance {
    pub fn new(graph: GridGraph, demands: Vec<Demand>) -> Instance {
        Instance {
            graph,
            forbidden: BTreeSet::new(),
            demands,
        }
    }

    pub fn with_forbidden(mut self, edges: impl IntoIterator<Item = Edge>) -> Instance {
        self.forbidden.extend(edges);
        self
    }

    /// Checks the instance invariants: endpoints present, exits non-empty
    /// and present, forbidden edges inside the graph.
    pub fn validate(&self) -> Result<(), InstanceError> {
        for e in &self.forbidden {
            if !self.graph.has_edge(e.a, e.b) {
                return Err(InstanceError::ForbiddenOutsideGraph(*e));
            }
        }
        for (k, d) in self.demands.iter().enumerate() {
            let mut ends = vec![d.source()];
            match d {
                Demand::Pair { target, .. } => ends.push(*target),
                Demand::Escape { exits, .. } => {
                    if exits.is_empty() {
                        return Err(InstanceError::EmptyExits { demand: k });
                    }
                    ends.extend(exits.iter().copied());
                }
            }
            if let Some(&x) = ends.iter().find(|&&x| !self.graph.contains(x)) {
                return Err(InstanceError::MissingEndpoint { demand: k, vertex: x });
            }
        }
        Ok(())
    }

    /// True if every demand is an escape demand.
    pub fn is_all_escape(&self) -> bool {
        self.demands.iter().all(Demand::is_escape)
    }
}

/// One path (vertex sequence) per demand, in demand order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathSystem {
    pub paths: Vec<Vec<Vertex>>,
}

impl PathSystem {
    pub fn new(paths: Vec<Vec<Vertex>>) -> PathSystem {
        PathSystem { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// All edges used, with repetition.
    pub fn edges(&self) -> Vec<Edge> {
        self.paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1])))
            .collect()
    }
}

/// Result of a routing query. Infeasibility is an answer, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Routed(PathSystem),
    Infeasible,
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Routed(_))
    }

    pub fn paths(&self) -> Option<&PathSystem> {
        match self {
            Outcome::Routed(p) => Some(p),
            Outcome::Infeasible => None,
        }
    }

    pub fn into_paths(self) -> Option<PathSystem> {
        match self {
            Outcome::Routed(p) => Some(p),
            Outcome::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("demand {demand}: vertex {vertex} is not in the graph")]
    MissingEndpoint { demand: usize, vertex: Vertex },
    #[error("forbidden edge {0:?} is not an edge of the graph")]
    ForbiddenOutsideGraph(Edge),
    #[error("demand {demand}: escape with an empty exit set")]
    EmptyExits { demand: usize },
    #[error("graph too large for the exact router ({vertices} vertices, {edges} edges; limit 128 each)")]
    TooLarge { vertices: usize, edges: usize },
    #[error("escape problem needs at least one source")]
    NoSources,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, v};

    #[test]
    fn validate_catches_bad_instances() {
        let g = make_grid(3, 3).unwrap();
        let bad = Instance::new(g.clone(), vec![Demand::pair(v(1, 1), v(4, 4))]);
        assert_eq!(
            bad.validate(),
            Err(InstanceError::MissingEndpoint {
                demand: 0,
                vertex: v(4, 4)
            })
        );
        let bad = Instance::new(g.clone(), vec![]).with_forbidden([Edge::new(v(1, 1), v(2, 2))]);
        assert!(matches!(bad.validate(), Err(InstanceError::ForbiddenOutsideGraph(_))));
        let bad = Instance::new(g, vec![Demand::escape(v(1, 1), [])]);
        assert_eq!(bad.validate(), Err(InstanceError::EmptyExits { demand: 0 }));
    }
}
