use std::collections::{BTreeMap, BTreeSet};

use crate::grid::{Edge, GridGraph, Vertex};

use super::InstanceError;

/// Index-based view of a graph with forbidden edges removed. Nodes are in
/// `(row, col)` order, edges in lexicographic order with one entry per
/// parallel copy.
pub(crate) struct RoutingGraph {
    pub nodes: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    pub edges: Vec<(usize, usize)>,
    /// `(neighbour, edge id)`, sorted by neighbour then edge id.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl RoutingGraph {
    pub fn build(graph: &GridGraph, forbidden: &BTreeSet<Edge>) -> RoutingGraph {
        let nodes: Vec<Vertex> = graph.vertices().collect();
        let index: BTreeMap<Vertex, usize> = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let edges: Vec<(usize, usize)> = graph
            .edges()
            .into_iter()
            .filter(|e| !forbidden.contains(e))
            .map(|e| (index[&e.a], index[&e.b]))
            .collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for (id, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        RoutingGraph {
            nodes,
            index,
            edges,
            adj,
        }
    }

    /// Fails if node or edge sets do not fit in a `u128` mask.
    pub fn ensure_small(&self) -> Result<(), InstanceError> {
        if self.nodes.len() > 128 || self.edges.len() > 128 {
            return Err(InstanceError::TooLarge {
                vertices: self.nodes.len(),
                edges: self.edges.len(),
            });
        }
        Ok(())
    }

    pub fn idx(&self, x: Vertex) -> usize {
        self.index[&x]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }
}
