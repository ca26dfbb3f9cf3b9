//! Grid graphs `P_r □ P_c` and the subgraphs derived from them.
//!
//! Vertices are addressed by 1-based `(row, col)` matrix coordinates, rows
//! counted top to bottom. Every derived graph (quadrants, adjusted
//! quadrants, instances read from files) keeps the coordinates of the host
//! grid, so certificates stay comparable across graphs.
//!
//! Contraction is recorded as a vertex map instead of rewriting the graph:
//! the original edges are kept and each endpoint is read through its
//! representative. Parallel edges produced by a contraction therefore keep
//! their multiplicity.

mod adjusted;
mod quadrant;

pub use adjusted::{adjusted_quadrant, AdjustedKind, AdjustedQuadrant};
pub use quadrant::{
    central_cycles, quadrant, quadrant_symmetries, terminal_count, Corner, CycleId, Line, Quadrant, QuadrantLandmarks,
    SymmetryKind, SymmetryTransform,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid dimensions must be at least 1x1, got {rows}x{cols}")]
    BadDimensions { rows: u16, cols: u16 },
    #[error("quadrants are only defined on the 6x6 grid, got {rows}x{cols}")]
    NotSixBySix { rows: u16, cols: u16 },
    #[error("vertex {0} is not present in the graph")]
    MissingVertex(Vertex),
    #[error("edge {0}-{1} is not present in the graph")]
    MissingEdge(Vertex, Vertex),
}

/// A grid house `(row, col)`, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub row: u16,
    pub col: u16,
}

impl Vertex {
    pub const fn new(row: u16, col: u16) -> Self {
        Vertex { row, col }
    }

    /// `|Δrow| + |Δcol|`.
    pub fn manhattan(self, other: Vertex) -> u32 {
        (self.row.abs_diff(other.row) + self.col.abs_diff(other.col)) as u32
    }

    pub fn is_grid_adjacent(self, other: Vertex) -> bool {
        self.manhattan(other) == 1
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Shorthand used heavily by the quadrant tables.
pub const fn v(row: u16, col: u16) -> Vertex {
    Vertex::new(row, col)
}

/// An unordered vertex pair, stored with `a <= b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: Vertex,
    pub b: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, w: Vertex) -> Self {
        if u <= w {
            Edge { a: u, b: w }
        } else {
            Edge { a: w, b: u }
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.a == x || self.b == x
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if self.a == x {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.a, self.b)
    }
}

/// Vertex and edge model of `P_rows □ P_cols` and its subgraphs.
#[derive(Clone, PartialEq, Eq)]
pub struct GridGraph {
    rows: u16,
    cols: u16,
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
    contraction: BTreeMap<Vertex, Vertex>,
}

/// Builds the full grid with `rows·(cols−1) + cols·(rows−1)` edges.
pub fn make_grid(rows: u16, cols: u16) -> Result<GridGraph, GridError> {
    if rows < 1 || cols < 1 {
        return Err(GridError::BadDimensions { rows, cols });
    }
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for r in 1..=rows {
        for c in 1..=cols {
            vertices.insert(v(r, c));
            if c < cols {
                edges.insert(Edge::new(v(r, c), v(r, c + 1)));
            }
            if r < rows {
                edges.insert(Edge::new(v(r, c), v(r + 1, c)));
            }
        }
    }
    Ok(GridGraph {
        rows,
        cols,
        vertices,
        edges,
        contraction: BTreeMap::new(),
    })
}

impl GridGraph {
    /// The 6×6 host grid.
    pub fn six_by_six() -> GridGraph {
        make_grid(6, 6).expect("6x6 is a valid grid")
    }

    pub fn rows(&self) -> u16 {
        self.rows
    }

    pub fn cols(&self) -> u16 {
        self.cols
    }

    pub fn in_bounds(&self, x: Vertex) -> bool {
        (1..=self.rows).contains(&x.row) && (1..=self.cols).contains(&x.col)
    }

    /// Representative of `x` under the contraction map (identity by default).
    pub fn representative(&self, x: Vertex) -> Vertex {
        self.contraction.get(&x).copied().unwrap_or(x)
    }

    pub fn contraction_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.contraction
    }

    /// True if `x` is a vertex of the (contracted) graph.
    pub fn contains(&self, x: Vertex) -> bool {
        self.vertices.contains(&x) && !self.contraction.contains_key(&x)
    }

    /// Present vertices in lexicographic `(row, col)` order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices
            .iter()
            .copied()
            .filter(move |x| !self.contraction.contains_key(x))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    /// Edges of the contracted graph, one entry per original edge, loops
    /// dropped. Sorted lexicographically.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .edges
            .iter()
            .filter_map(|e| {
                let (a, b) = (self.representative(e.a), self.representative(e.b));
                (a != b).then(|| Edge::new(a, b))
            })
            .collect();
        out.sort();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// The original (uncontracted) edges that are still present.
    pub fn original_edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Number of parallel edges joining `u` and `w` in the contracted graph.
    pub fn multiplicity(&self, u: Vertex, w: Vertex) -> usize {
        if u == w {
            return 0;
        }
        let target = Edge::new(u, w);
        self.edges
            .iter()
            .filter(|e| Edge::new(self.representative(e.a), self.representative(e.b)) == target)
            .count()
    }

    pub fn has_edge(&self, u: Vertex, w: Vertex) -> bool {
        self.multiplicity(u, w) > 0
    }

    /// Neighbours of `x` (with repetition for parallel edges), sorted.
    pub fn neighbors(&self, x: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .edges()
            .into_iter()
            .filter(|e| e.touches(x))
            .map(|e| e.other(x))
            .collect();
        out.sort();
        out
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.neighbors(x).len()
    }

    /// Removes every edge joining `u` and `w`.
    pub fn remove_edge(&mut self, u: Vertex, w: Vertex) -> Result<(), GridError> {
        if !self.has_edge(u, w) {
            return Err(GridError::MissingEdge(u, w));
        }
        let target = Edge::new(u, w);
        let reps: BTreeMap<Vertex, Vertex> = self.contraction.clone();
        let rep = |x: Vertex| reps.get(&x).copied().unwrap_or(x);
        self.edges.retain(|e| Edge::new(rep(e.a), rep(e.b)) != target);
        Ok(())
    }

    /// Removes `x`, every vertex contracted into it, and all incident edges.
    pub fn remove_vertex(&mut self, x: Vertex) -> Result<(), GridError> {
        if !self.contains(x) {
            return Err(GridError::MissingVertex(x));
        }
        let class: BTreeSet<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|&y| self.representative(y) == x)
            .collect();
        self.vertices.retain(|y| !class.contains(y));
        self.edges.retain(|e| !class.contains(&e.a) && !class.contains(&e.b));
        self.contraction.retain(|k, _| !class.contains(k));
        Ok(())
    }

    /// Contracts the edge `from`–`into`; `from` (and anything already merged
    /// into it) is afterwards represented by `into`.
    pub fn contract(&mut self, from: Vertex, into: Vertex) -> Result<(), GridError> {
        if !self.contains(from) {
            return Err(GridError::MissingVertex(from));
        }
        if !self.contains(into) {
            return Err(GridError::MissingVertex(into));
        }
        if !self.has_edge(from, into) {
            return Err(GridError::MissingEdge(from, into));
        }
        let members: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|&y| self.representative(y) == from)
            .collect();
        for y in members {
            self.contraction.insert(y, into);
        }
        Ok(())
    }

    /// Subgraph induced by the present vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> GridGraph {
        let mut g = self.clone();
        let drop: Vec<Vertex> = g.vertices().filter(|&x| !keep(x)).collect();
        for x in drop {
            g.remove_vertex(x).expect("vertex listed as present");
        }
        g
    }

    /// Vertices reachable from `start` (empty if `start` is absent).
    pub fn component_of(&self, start: Vertex) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::new();
        if !self.contains(start) {
            return seen;
        }
        let edges = self.edges();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(x) = stack.pop() {
            for e in edges.iter().filter(|e| e.touches(x)) {
                let y = e.other(x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(x) => self.component_of(x).len() == self.vertex_count(),
        }
    }
}

impl fmt::Debug for GridGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridGraph")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edges())
            .field("contraction", &self.contraction)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_grid_counts() {
        let g = make_grid(6, 6).unwrap();
        assert_eq!(g.vertex_count(), 36);
        assert_eq!(g.edge_count(), 60);
        let g = make_grid(1, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = make_grid(3, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
    }

    #[test]
    fn rejects_empty_dimensions() {
        assert_eq!(make_grid(0, 4), Err(GridError::BadDimensions { rows: 0, cols: 4 }));
        assert!(make_grid(3, 0).is_err());
    }

    #[test]
    fn edges_join_manhattan_neighbours() {
        let g = make_grid(4, 5).unwrap();
        assert!(g.edges().iter().all(|e| e.a.is_grid_adjacent(e.b)));
        assert_eq!(g.edge_count(), 4 * 4 + 5 * 3);
    }

    #[test]
    fn contraction_is_idempotent_and_merges_neighbourhoods() {
        let mut g = make_grid(3, 3).unwrap();
        g.contract(v(1, 2), v(1, 1)).unwrap();
        g.contract(v(1, 1), v(2, 1)).unwrap();
        for (&k, &r) in g.contraction_map() {
            assert_eq!(g.representative(r), r, "{k:?} maps to non-representative");
        }
        assert_eq!(g.representative(v(1, 2)), v(2, 1));
        assert!(!g.contains(v(1, 1)));
        // (1,2)-(2,2) now reads as (2,1)-(2,2), parallel to the grid edge.
        assert_eq!(g.multiplicity(v(2, 1), v(2, 2)), 2);
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn contract_requires_an_edge() {
        let mut g = make_grid(3, 3).unwrap();
        assert_eq!(
            g.contract(v(1, 1), v(2, 2)),
            Err(GridError::MissingEdge(v(1, 1), v(2, 2)))
        );
    }

    #[test]
    fn vertex_removal_drops_incident_edges() {
        let mut g = make_grid(3, 3).unwrap();
        g.remove_vertex(v(2, 2)).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert!(g.edges().iter().all(|e| !e.touches(v(2, 2))));
        assert!(g.remove_vertex(v(2, 2)).is_err());
    }

    #[test]
    fn remove_edge_and_connectivity() {
        let mut g = make_grid(1, 3).unwrap();
        assert!(g.is_connected());
        g.remove_edge(v(1, 2), v(1, 3)).unwrap();
        assert!(!g.is_connected());
        assert!(g.remove_edge(v(1, 2), v(1, 3)).is_err());
    }
}
