//! The four 3×3 quadrants of the 6×6 grid and their landmarks.
//!
//! Landmarks are defined once in quadrant-local coordinates, where local row
//! 3 and local column 3 are the boundary lines facing the neighbouring
//! quadrants, and then mapped to global coordinates per corner. For the
//! upper-left quadrant local and global coordinates coincide.

use std::collections::BTreeSet;

use super::{v, Edge, GridError, GridGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    UpperLeft,
    UpperRight,
    LowerLeft,
    LowerRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::UpperLeft,
        Corner::UpperRight,
        Corner::LowerLeft,
        Corner::LowerRight,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Corner::UpperLeft => "UL",
            Corner::UpperRight => "UR",
            Corner::LowerLeft => "LL",
            Corner::LowerRight => "LR",
        }
    }

    fn flips(self) -> (bool, bool) {
        match self {
            Corner::UpperLeft => (false, false),
            Corner::UpperRight => (false, true),
            Corner::LowerLeft => (true, false),
            Corner::LowerRight => (true, true),
        }
    }

    /// Maps quadrant-local `(row, col)` in `1..=3` to global coordinates.
    pub fn to_global(self, row: u16, col: u16) -> Vertex {
        let (flip_r, flip_c) = self.flips();
        let r = if flip_r { 7 - row } else { row };
        let c = if flip_c { 7 - col } else { col };
        v(r, c)
    }

    /// Inverse of [`Corner::to_global`]; `None` outside the quadrant.
    pub fn to_local(self, x: Vertex) -> Option<(u16, u16)> {
        let (flip_r, flip_c) = self.flips();
        if !(1..=6).contains(&x.row) || !(1..=6).contains(&x.col) {
            return None;
        }
        let r = if flip_r { 7 - x.row } else { x.row };
        let c = if flip_c { 7 - x.col } else { x.col };
        (r <= 3 && c <= 3).then_some((r, c))
    }
}

/// The boundary line of a quadrant facing a neighbouring quadrant:
/// `A` is horizontal, `B` vertical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    A,
    B,
}

impl Line {
    pub fn swapped(self) -> Line {
        match self {
            Line::A => Line::B,
            Line::B => Line::A,
        }
    }
}

/// The two standard cycles around the centre of the 6×6 grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleId {
    /// Innermost 4-cycle on rows/cols 3–4.
    C0,
    /// 12-cycle on the boundary of rows/cols 2–5.
    C1,
}

impl CycleId {
    pub fn other(self) -> CycleId {
        match self {
            CycleId::C0 => CycleId::C1,
            CycleId::C1 => CycleId::C0,
        }
    }

    pub fn from_alpha(alpha: u8) -> CycleId {
        if alpha == 0 {
            CycleId::C0
        } else {
            CycleId::C1
        }
    }

    pub fn alpha(self) -> u8 {
        match self {
            CycleId::C0 => 0,
            CycleId::C1 => 1,
        }
    }

    /// Vertices in cyclic order.
    pub fn vertices(self) -> Vec<Vertex> {
        let (lo, hi) = match self {
            CycleId::C0 => (3, 4),
            CycleId::C1 => (2, 5),
        };
        ring(lo, hi)
    }

    pub fn edges(self) -> Vec<Edge> {
        let vs = self.vertices();
        let mut out: Vec<Edge> = (0..vs.len())
            .map(|i| Edge::new(vs[i], vs[(i + 1) % vs.len()]))
            .collect();
        out.sort();
        out
    }
}

fn ring(lo: u16, hi: u16) -> Vec<Vertex> {
    let mut out = Vec::new();
    for c in lo..=hi {
        out.push(v(lo, c));
    }
    for r in lo + 1..=hi {
        out.push(v(r, hi));
    }
    for c in (lo..hi).rev() {
        out.push(v(hi, c));
    }
    for r in (lo + 1..hi).rev() {
        out.push(v(r, lo));
    }
    out
}

/// Edge lists of `C0` and `C1`.
pub fn central_cycles() -> (Vec<Edge>, Vec<Edge>) {
    (CycleId::C0.edges(), CycleId::C1.edges())
}

/// A 3×3 corner block of the 6×6 grid together with its induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrant {
    corner: Corner,
    vertices: Vec<Vertex>,
    graph: GridGraph,
}

/// The quadrant of `grid` at `corner`; `grid` must be 6×6.
pub fn quadrant(grid: &GridGraph, corner: Corner) -> Result<Quadrant, GridError> {
    if grid.rows() != 6 || grid.cols() != 6 {
        return Err(GridError::NotSixBySix {
            rows: grid.rows(),
            cols: grid.cols(),
        });
    }
    let mut vertices: Vec<Vertex> = (1..=3)
        .flat_map(|r| (1..=3).map(move |c| corner.to_global(r, c)))
        .collect();
    vertices.sort();
    let graph = grid.induced(|x| corner.to_local(x).is_some());
    Ok(Quadrant {
        corner,
        vertices,
        graph,
    })
}

impl Quadrant {
    /// Quadrant of the full 6×6 grid.
    pub fn standard(corner: Corner) -> Quadrant {
        quadrant(&GridGraph::six_by_six(), corner).expect("6x6 grid")
    }

    pub fn corner(&self) -> Corner {
        self.corner
    }

    /// The nine vertices, sorted.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Induced subgraph in global coordinates.
    pub fn graph(&self) -> &GridGraph {
        &self.graph
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.corner.to_local(x).is_some()
    }

    pub fn local(&self, row: u16, col: u16) -> Vertex {
        self.corner.to_global(row, col)
    }

    pub fn to_local(&self, x: Vertex) -> Option<(u16, u16)> {
        self.corner.to_local(x)
    }

    /// `C_α ∩ Q`, in cyclic order along `C_α`.
    pub fn cycle_vertices(&self, cycle: CycleId) -> Vec<Vertex> {
        cycle.vertices().into_iter().filter(|&x| self.contains(x)).collect()
    }

    /// Edges of `C1` with both ends in the quadrant (the two edges at `x1`).
    pub fn c1_edges(&self) -> Vec<Edge> {
        CycleId::C1
            .edges()
            .into_iter()
            .filter(|e| self.contains(e.a) && self.contains(e.b))
            .collect()
    }

    pub fn landmarks(&self) -> QuadrantLandmarks {
        landmarks(self)
    }
}

/// Named vertices, lines and cycles of a quadrant, in global coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrantLandmarks {
    /// Horizontal boundary line, ordered from the outer corner to `x0`.
    pub a: Vec<Vertex>,
    /// Vertical boundary line, ordered from the outer corner to `x0`.
    pub b_line: Vec<Vertex>,
    pub x0: Vertex,
    pub x1: Vertex,
    /// The corner of degree 2 in `G`.
    pub x2: Vertex,
    /// The degree-3 corner lying on `A`.
    pub y0: Vertex,
    /// Middle vertex of `B`.
    pub b: Vertex,
    /// Corner not on `A ∪ B`.
    pub c: Vertex,
    pub c0: Vec<Edge>,
    pub c1: Vec<Edge>,
    pub z: BTreeSet<Vertex>,
    pub m: BTreeSet<Vertex>,
    pub s: BTreeSet<Vertex>,
    /// The 8-cycle `Q − x1`, as edges.
    pub boundary_cycle: Vec<Edge>,
    /// The same cycle as a vertex sequence starting at `x2`, running along
    /// the outer row first.
    pub boundary_order: Vec<Vertex>,
}

impl QuadrantLandmarks {
    pub fn line(&self, line: Line) -> &[Vertex] {
        match line {
            Line::A => &self.a,
            Line::B => &self.b_line,
        }
    }

    pub fn a_union_b(&self) -> BTreeSet<Vertex> {
        self.a.iter().chain(self.b_line.iter()).copied().collect()
    }
}

fn landmarks(q: &Quadrant) -> QuadrantLandmarks {
    let g = |r, c| q.local(r, c);
    let boundary_order = vec![g(1, 1), g(1, 2), g(1, 3), g(2, 3), g(3, 3), g(3, 2), g(3, 1), g(2, 1)];
    let mut boundary_cycle: Vec<Edge> = (0..8)
        .map(|i| Edge::new(boundary_order[i], boundary_order[(i + 1) % 8]))
        .collect();
    boundary_cycle.sort();
    let z = [g(2, 1), g(2, 2), g(2, 3), g(1, 2), g(3, 2)].into_iter().collect();
    let m = [g(1, 1), g(1, 2), g(1, 3), g(2, 1), g(3, 1), g(2, 2)]
        .into_iter()
        .collect();
    let s = [g(1, 1), g(1, 2), g(2, 1), g(2, 2)].into_iter().collect();
    QuadrantLandmarks {
        a: vec![g(3, 1), g(3, 2), g(3, 3)],
        b_line: vec![g(1, 3), g(2, 3), g(3, 3)],
        x0: g(3, 3),
        x1: g(2, 2),
        x2: g(1, 1),
        y0: g(3, 1),
        b: g(2, 3),
        c: g(1, 1),
        c0: CycleId::C0.edges(),
        c1: CycleId::C1.edges(),
        z,
        m,
        s,
        boundary_cycle,
        boundary_order,
    }
}

/// `‖S‖ = |T ∩ S|`, counting distinct vertices.
pub fn terminal_count(sub: &[Vertex], terminals: &[Vertex]) -> usize {
    let t: BTreeSet<Vertex> = terminals.iter().copied().collect();
    sub.iter().copied().collect::<BTreeSet<_>>().intersection(&t).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    Identity,
    /// Reflection across the quadrant diagonal through `x0`; swaps `A` and `B`.
    Transpose,
}

/// A symmetry of one quadrant; vertices outside the quadrant are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryTransform {
    pub kind: SymmetryKind,
    pub corner: Corner,
}

impl SymmetryTransform {
    pub fn apply(&self, x: Vertex) -> Vertex {
        match (self.kind, self.corner.to_local(x)) {
            (SymmetryKind::Transpose, Some((r, c))) => self.corner.to_global(c, r),
            _ => x,
        }
    }

    pub fn apply_edge(&self, e: Edge) -> Edge {
        Edge::new(self.apply(e.a), self.apply(e.b))
    }

    pub fn apply_line(&self, line: Line) -> Line {
        match self.kind {
            SymmetryKind::Identity => line,
            SymmetryKind::Transpose => line.swapped(),
        }
    }

    /// The bijection restricted to the quadrant's nine vertices.
    pub fn vertex_map(&self) -> Vec<(Vertex, Vertex)> {
        (1..=3)
            .flat_map(|r| (1..=3).map(move |c| (r, c)))
            .map(|(r, c)| {
                let x = self.corner.to_global(r, c);
                (x, self.apply(x))
            })
            .collect()
    }
}

/// `{identity, transpose about x0}` for the quadrant.
pub fn quadrant_symmetries(q: &Quadrant) -> Vec<SymmetryTransform> {
    vec![
        SymmetryTransform {
            kind: SymmetryKind::Identity,
            corner: q.corner(),
        },
        SymmetryTransform {
            kind: SymmetryKind::Transpose,
            corner: q.corner(),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn quadrant_blocks() {
        let g = GridGraph::six_by_six();
        let ul = quadrant(&g, Corner::UpperLeft).unwrap();
        let expected: Vec<Vertex> = (1..=3).flat_map(|r| (1..=3).map(move |c| v(r, c))).collect();
        assert_eq!(ul.vertices(), expected.as_slice());
        assert_eq!(ul.graph().edge_count(), 12);
        let ur = quadrant(&g, Corner::UpperRight).unwrap();
        assert!(ur.contains(v(3, 4)));
        let five = make_grid(5, 5).unwrap();
        assert_eq!(
            quadrant(&five, Corner::UpperLeft),
            Err(GridError::NotSixBySix { rows: 5, cols: 5 })
        );
    }

    #[test]
    fn landmark_coordinates() {
        let ul = Quadrant::standard(Corner::UpperLeft).landmarks();
        assert_eq!((ul.x0, ul.x1), (v(3, 3), v(2, 2)));
        assert_eq!((ul.b, ul.c), (v(2, 3), v(1, 1)));
        assert_eq!(ul.y0, v(3, 1));
        let ur = Quadrant::standard(Corner::UpperRight).landmarks();
        assert_eq!((ur.x0, ur.x1), (v(3, 4), v(2, 5)));
        let lr = Quadrant::standard(Corner::LowerRight).landmarks();
        assert_eq!((lr.x0, lr.x1, lr.x2), (v(4, 4), v(5, 5), v(6, 6)));
    }

    #[test]
    fn landmark_invariants_hold_for_every_corner() {
        let g = GridGraph::six_by_six();
        for corner in Corner::ALL {
            let q = Quadrant::standard(corner);
            let l = q.landmarks();
            assert!(l.a.contains(&l.x0) && l.b_line.contains(&l.x0));
            assert_eq!(l.b, l.b_line[1]);
            assert!(!l.a.contains(&l.c) && !l.b_line.contains(&l.c));
            assert_eq!((l.a.len(), l.b_line.len()), (3, 3));
            assert_eq!((l.c0.len(), l.c1.len()), (4, 12));
            assert!(CycleId::C0.vertices().contains(&l.x0));
            assert!(CycleId::C1.vertices().contains(&l.x1));
            assert_eq!(g.degree(l.x2), 2);
            assert_eq!(g.degree(l.y0), 3);
            // Z is connected and meets both lines.
            let zg = q.graph().induced(|x| l.z.contains(&x));
            assert!(zg.is_connected());
            assert!(l.a.iter().any(|x| l.z.contains(x)));
            assert!(l.b_line.iter().any(|x| l.z.contains(x)));
            // Z's induced edges are exactly the quadrant edges off the boundary cycle.
            let off_cycle: Vec<Edge> = q
                .graph()
                .edges()
                .into_iter()
                .filter(|e| !l.boundary_cycle.contains(e))
                .collect();
            assert_eq!(zg.edges(), off_cycle);
            assert_eq!(q.cycle_vertices(CycleId::C0), vec![l.x0]);
            assert_eq!(q.cycle_vertices(CycleId::C1).len(), 3);
            assert_eq!(q.c1_edges().len(), 2);
        }
    }

    #[test]
    fn central_cycles_are_disjoint_and_c0_is_enclosed() {
        let g = GridGraph::six_by_six();
        let c0: BTreeSet<Vertex> = CycleId::C0.vertices().into_iter().collect();
        let c1: BTreeSet<Vertex> = CycleId::C1.vertices().into_iter().collect();
        assert!(c0.is_disjoint(&c1));
        assert_eq!((c0.len(), c1.len()), (4, 12));
        for &x in &c0 {
            for y in g.neighbors(x) {
                assert!(c0.contains(&y) || c1.contains(&y));
            }
        }
        for e in CycleId::C1.edges() {
            assert!(g.has_edge(e.a, e.b));
        }
    }

    #[test]
    fn transpose_examples() {
        let q = Quadrant::standard(Corner::UpperLeft);
        let t = quadrant_symmetries(&q)[1];
        assert_eq!(t.apply(v(1, 3)), v(3, 1));
        assert_eq!(t.apply(v(3, 3)), v(3, 3));
        assert_eq!(t.apply(v(2, 3)), v(3, 2));
    }

    #[test]
    fn transpose_is_an_involutive_automorphism_swapping_lines() {
        for corner in Corner::ALL {
            let q = Quadrant::standard(corner);
            let l = q.landmarks();
            let t = quadrant_symmetries(&q)[1];
            for &x in q.vertices() {
                assert_eq!(t.apply(t.apply(x)), x);
            }
            for e in q.graph().edges() {
                let m = t.apply_edge(e);
                assert!(q.graph().has_edge(m.a, m.b));
            }
            let a: BTreeSet<Vertex> = l.a.iter().map(|&x| t.apply(x)).collect();
            assert_eq!(a, l.b_line.iter().copied().collect());
            assert_eq!(t.apply(l.x0), l.x0);
            assert_eq!(t.apply(l.x1), l.x1);
            let z: BTreeSet<Vertex> = l.z.iter().map(|&x| t.apply(x)).collect();
            assert_eq!(z, l.z);
        }
    }

    #[test]
    fn terminal_count_examples() {
        let terms = [v(3, 1), v(1, 1)];
        assert_eq!(terminal_count(&[], &terms), 0);
        let a = Quadrant::standard(Corner::UpperLeft).landmarks().a;
        assert_eq!(terminal_count(&a, &terms), 1);
        let q = Quadrant::standard(Corner::UpperLeft);
        let eight: Vec<Vertex> = q.vertices()[..8].to_vec();
        assert_eq!(terminal_count(q.vertices(), &eight), 8);
    }
}
