//! Adjusted quadrants `Q0`–`Q4`: the upper-left quadrant with the edges of
//! its horizontal boundary line `A` removed, and four reduced variants
//! obtained from `Q0` by removing edges and contracting edges.
//!
//! The reduced variants are transcribed from a drawing, so the table below
//! is data, not derivation. It is validated by the exhaustive three-terminal
//! escape check in the lemma suite rather than trusted.

use std::collections::BTreeSet;

use super::{v, Corner, GridGraph, Quadrant, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdjustedKind {
    Q0,
    Q1,
    Q2,
    Q3,
    Q4,
}

impl AdjustedKind {
    pub const ALL: [AdjustedKind; 5] = [
        AdjustedKind::Q0,
        AdjustedKind::Q1,
        AdjustedKind::Q2,
        AdjustedKind::Q3,
        AdjustedKind::Q4,
    ];
    pub const REDUCED: [AdjustedKind; 4] = [AdjustedKind::Q1, AdjustedKind::Q2, AdjustedKind::Q3, AdjustedKind::Q4];

    pub fn label(self) -> &'static str {
        match self {
            AdjustedKind::Q0 => "Q0",
            AdjustedKind::Q1 => "Q1",
            AdjustedKind::Q2 => "Q2",
            AdjustedKind::Q3 => "Q3",
            AdjustedKind::Q4 => "Q4",
        }
    }
}

enum Step {
    RemoveEdge(Vertex, Vertex),
    RemoveVertex(Vertex),
    /// Contract the edge, merging the first vertex into the second.
    Contract(Vertex, Vertex),
}

/// Reductions applied to `Q0`, in upper-left coordinates.
fn reductions(kind: AdjustedKind) -> Vec<Step> {
    use Step::*;
    match kind {
        AdjustedKind::Q0 => vec![],
        // Corner c dropped, top-right edge of row 1 cut.
        AdjustedKind::Q1 => vec![RemoveVertex(v(1, 1)), RemoveEdge(v(1, 2), v(1, 3))],
        // (1,2) merged into the corner, which then hangs on (2,1) and (2,2).
        AdjustedKind::Q2 => vec![RemoveEdge(v(1, 2), v(1, 3)), Contract(v(1, 2), v(1, 1))],
        // Row 2 cut; (2,1) merged into A so the corner becomes a neighbour of A.
        AdjustedKind::Q3 => vec![
            RemoveEdge(v(2, 1), v(2, 2)),
            RemoveEdge(v(2, 2), v(2, 3)),
            Contract(v(2, 1), v(3, 1)),
        ],
        // Row 2 cut; x1 merged into A so (1,2) becomes a neighbour of A.
        AdjustedKind::Q4 => vec![
            RemoveEdge(v(2, 1), v(2, 2)),
            RemoveEdge(v(2, 2), v(2, 3)),
            Contract(v(2, 2), v(3, 2)),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjustedQuadrant {
    pub kind: AdjustedKind,
    pub graph: GridGraph,
    /// The boundary line `A` (row 3 of the upper-left quadrant).
    pub a: Vec<Vertex>,
    /// Neighbours of `A` in `graph`.
    pub n: BTreeSet<Vertex>,
}

/// The adjusted quadrant of the given kind, in upper-left coordinates.
pub fn adjusted_quadrant(kind: AdjustedKind) -> AdjustedQuadrant {
    let q = Quadrant::standard(Corner::UpperLeft);
    let a = q.landmarks().a;
    let mut graph = q.graph().clone();
    graph.remove_edge(a[0], a[1]).expect("A has its internal edges");
    graph.remove_edge(a[1], a[2]).expect("A has its internal edges");
    for step in reductions(kind) {
        let res = match step {
            Step::RemoveEdge(x, y) => graph.remove_edge(x, y),
            Step::RemoveVertex(x) => graph.remove_vertex(x),
            Step::Contract(x, y) => graph.contract(x, y),
        };
        res.expect("reduction table refers to present elements");
    }
    let n = a
        .iter()
        .flat_map(|&x| graph.neighbors(x))
        .filter(|x| !a.contains(x))
        .collect();
    AdjustedQuadrant { kind, graph, a, n }
}

impl AdjustedQuadrant {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.graph.vertices().collect()
    }

    pub fn in_a(&self, x: Vertex) -> bool {
        self.a.contains(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_is_quadrant_minus_a_edges() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        assert_eq!(q0.graph.vertex_count(), 9);
        assert_eq!(q0.graph.edge_count(), 10);
        assert_eq!(q0.n, [v(2, 1), v(2, 2), v(2, 3)].into_iter().collect());
        for &x in &q0.a {
            let nb = q0.graph.neighbors(x);
            assert!((1..=2).contains(&nb.len()));
            assert!(nb.iter().all(|y| y.row == 2));
        }
    }

    #[test]
    fn reduced_variants_keep_a_independent() {
        for kind in AdjustedKind::ALL {
            let h = adjusted_quadrant(kind);
            for &x in &h.a {
                assert!(h.graph.contains(x), "{kind:?} lost {x}");
                for &y in &h.a {
                    assert!(!h.graph.has_edge(x, y));
                }
            }
            assert!(h.graph.is_connected(), "{kind:?} disconnected");
        }
    }

    #[test]
    fn transcribed_shapes() {
        let sizes: Vec<(usize, usize)> = AdjustedKind::REDUCED
            .iter()
            .map(|&k| {
                let h = adjusted_quadrant(k);
                (h.graph.vertex_count(), h.graph.edge_count())
            })
            .collect();
        assert_eq!(sizes, vec![(8, 7), (8, 8), (8, 7), (8, 7)]);
        let n = |k| adjusted_quadrant(k).n;
        assert_eq!(n(AdjustedKind::Q1), [v(2, 1), v(2, 2), v(2, 3)].into());
        assert_eq!(n(AdjustedKind::Q3), [v(1, 1), v(2, 2), v(2, 3)].into());
        assert_eq!(n(AdjustedKind::Q4), [v(1, 2), v(2, 1), v(2, 3)].into());
        let q2 = adjusted_quadrant(AdjustedKind::Q2);
        assert!(q2.graph.has_edge(v(1, 1), v(2, 2)));
        assert_eq!(q2.graph.representative(v(1, 2)), v(1, 1));
    }
}
