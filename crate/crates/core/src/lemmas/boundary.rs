//! Linking one pair inside a quadrant while escorting two singletons to
//! prescribed boundary lines.
//!
//! The construction decomposes the quadrant into the pair's path and two
//! edge-disjoint clamps. A clamp is a connected subgraph with an anchor set
//! that is either `{x0}` or one vertex of `A` plus one of `B`; any vertex of
//! a clamp can be escorted inside it to the anchor on either line. The
//! decompositions are tabulated in upper-left coordinates; the transpose and
//! relabelings of the terminals cover the remaining placements. Whatever
//! the table does not cover is routed by the exact router.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::grid::{v, Corner, Edge, GridGraph, Line, Quadrant, Vertex};
use crate::routing::{solve, verify, Demand, Instance, Outcome, PathSystem};

use super::{ensure_in, path_edges, search, Certificate, LemmaError, Method};

/// A connected edge set with its anchor vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clamp {
    edges: BTreeSet<Edge>,
    vertices: BTreeSet<Vertex>,
    anchors: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClampError {
    #[error("clamp is not connected")]
    Disconnected,
    #[error("anchor {0} is not a clamp vertex")]
    AnchorOutside(Vertex),
    #[error("clamps share edge {0:?}")]
    SharedEdge(Edge),
    #[error("clamp uses edge {0:?} of the pair path")]
    OverlapsPath(Edge),
    #[error("clamps share anchor {0}")]
    SharedAnchor(Vertex),
}

impl Clamp {
    /// A clamp on `edges`; a single anchor with no edges is allowed.
    pub fn new(edges: impl IntoIterator<Item = Edge>, anchors: &[Vertex]) -> Result<Clamp, ClampError> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut vertices: BTreeSet<Vertex> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
        if edges.is_empty() {
            vertices.extend(anchors.iter().take(1));
        }
        for &a in anchors {
            if !vertices.contains(&a) {
                return Err(ClampError::AnchorOutside(a));
            }
        }
        let clamp = Clamp {
            edges,
            vertices,
            anchors: anchors.to_vec(),
        };
        let start = *clamp.vertices.iter().next().ok_or(ClampError::Disconnected)?;
        if clamp.reach(start).len() != clamp.vertices.len() {
            return Err(ClampError::Disconnected);
        }
        Ok(clamp)
    }

    /// A clamp along a vertex path.
    pub fn path(vertices: &[Vertex], anchors: &[Vertex]) -> Result<Clamp, ClampError> {
        Clamp::new(path_edges(vertices), anchors)
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn anchors(&self) -> &[Vertex] {
        &self.anchors
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.vertices.contains(&x)
    }

    fn reach(&self, start: Vertex) -> BTreeMap<Vertex, Vertex> {
        let mut parent = BTreeMap::from([(start, start)]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for e in self.edges.iter().filter(|e| e.touches(x)) {
                let y = e.other(x);
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(y) {
                    slot.insert(x);
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// A path inside the clamp from `from` to the anchor lying on `line`.
    pub fn escort(&self, from: Vertex, line: &[Vertex]) -> Option<Vec<Vertex>> {
        let target = *self.anchors.iter().find(|a| line.contains(a))?;
        let parent = self.reach(target);
        let mut path = vec![from];
        let mut x = from;
        while x != target {
            x = *parent.get(&x)?;
            path.push(x);
        }
        Some(path)
    }

    fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Clamp {
        Clamp {
            edges: self.edges.iter().map(|e| Edge::new(f(e.a), f(e.b))).collect(),
            vertices: self.vertices.iter().map(|&x| f(x)).collect(),
            anchors: self.anchors.iter().map(|&x| f(x)).collect(),
        }
    }
}

/// Assignment of the two singletons to the two clamps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Matching {
    /// First singleton to `Y2`, second to `Y3`.
    Straight,
    /// First singleton to `Y3`, second to `Y2`.
    Crossed,
    NoMatch,
}

/// Assigns `pi0` to the clamps `y2`, `y3` so that each singleton lies in
/// its clamp. When both assignments work the straight one is returned.
/// Clamps that overlap each other or the pair path are rejected.
pub fn clamp_matching(p1: &[Vertex], y2: &Clamp, y3: &Clamp, pi0: [Vertex; 2]) -> Result<Matching, ClampError> {
    if let Some(&e) = y2.edges.intersection(&y3.edges).next() {
        return Err(ClampError::SharedEdge(e));
    }
    for e in path_edges(p1) {
        if y2.edges.contains(&e) || y3.edges.contains(&e) {
            return Err(ClampError::OverlapsPath(e));
        }
    }
    if let Some(&a) = y2.anchors.iter().find(|a| y3.anchors.contains(a)) {
        return Err(ClampError::SharedAnchor(a));
    }
    Ok(if y2.contains(pi0[0]) && y3.contains(pi0[1]) {
        Matching::Straight
    } else if y3.contains(pi0[0]) && y2.contains(pi0[1]) {
        Matching::Crossed
    } else {
        Matching::NoMatch
    })
}

/// One call of [`clamp_matching`] made by the construction, in the
/// upper-left coordinates of the attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClampRecord {
    pub p1: Vec<Vertex>,
    pub y2: Clamp,
    pub y3: Clamp,
    pub pi0: [Vertex; 2],
    pub matching: Result<Matching, ClampError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLinkage {
    /// Demands: the pair, then both singletons in one distinctness group.
    pub certificate: Certificate,
    /// Which part of the construction produced the paths, or `"search"`.
    pub case: &'static str,
    pub records: Vec<ClampRecord>,
}

/// Links `s1,t1` and escorts `s2`, `s3` to distinct vertices of the lines
/// `psi[0]`, `psi[1]`. Any of the four vertices may coincide.
pub fn link_pair_escort_singletons(
    q: &Quadrant,
    s1: Vertex,
    t1: Vertex,
    s2: Vertex,
    s3: Vertex,
    psi: [Line; 2],
) -> Result<BoundaryLinkage, LemmaError> {
    for x in [s1, t1, s2, s3] {
        ensure_in("terminal", x, q.contains(x))?;
    }
    let l = q.landmarks();
    let inst = Instance::new(
        q.graph().clone(),
        vec![
            Demand::pair(s1, t1),
            Demand::escape_distinct(s2, l.line(psi[0]).to_vec(), 0),
            Demand::escape_distinct(s3, l.line(psi[1]).to_vec(), 0),
        ],
    );
    let corner = q.corner();
    let local = |x: Vertex| {
        let (r, c) = corner.to_local(x).expect("quadrant vertex");
        v(r, c)
    };
    let global = |x: Vertex| corner.to_global(x.row, x.col);

    let mut records = Vec::new();
    for variant in VARIANTS {
        let inputs = variant.apply([local(s1), local(t1), local(s2), local(s3)], psi);
        let Some((paths, case)) = construct(inputs, &mut records) else {
            continue;
        };
        let paths = variant.undo(paths);
        let paths = PathSystem::new(paths.iter().map(|p| p.iter().map(|&x| global(x)).collect()).collect());
        if verify(&inst, &paths).is_ok() {
            return Ok(BoundaryLinkage {
                certificate: Certificate {
                    instance: inst,
                    paths,
                    method: Method::Construction,
                },
                case,
                records,
            });
        }
    }
    let certificate =
        search(inst)?.ok_or_else(|| LemmaError::Defect(format!("link {s1}-{t1}, escort {s2}, {s3} to {psi:?}")))?;
    Ok(BoundaryLinkage {
        certificate,
        case: "search",
        records,
    })
}

/// A relabeling: transpose the quadrant, swap the singletons, reverse the
/// pair.
#[derive(Clone, Copy)]
struct Variant {
    transpose: bool,
    swap: bool,
    flip: bool,
}

const VARIANTS: [Variant; 8] = {
    let mut out = [Variant {
        transpose: false,
        swap: false,
        flip: false,
    }; 8];
    let mut i = 0;
    while i < 8 {
        out[i] = Variant {
            transpose: i & 4 != 0,
            swap: i & 2 != 0,
            flip: i & 1 != 0,
        };
        i += 1;
    }
    out
};

struct Inputs {
    s1: Vertex,
    t1: Vertex,
    s2: Vertex,
    s3: Vertex,
    psi: [Line; 2],
}

impl Variant {
    fn tr(&self, x: Vertex) -> Vertex {
        if self.transpose {
            v(x.col, x.row)
        } else {
            x
        }
    }

    fn apply(&self, [s1, t1, s2, s3]: [Vertex; 4], psi: [Line; 2]) -> Inputs {
        let line = |l: Line| if self.transpose { l.swapped() } else { l };
        let (s1, t1) = if self.flip { (t1, s1) } else { (s1, t1) };
        let (s2, s3, psi) = if self.swap {
            (s3, s2, [psi[1], psi[0]])
        } else {
            (s2, s3, psi)
        };
        Inputs {
            s1: self.tr(s1),
            t1: self.tr(t1),
            s2: self.tr(s2),
            s3: self.tr(s3),
            psi: [line(psi[0]), line(psi[1])],
        }
    }

    fn undo(&self, [mut p1, p2, p3]: [Vec<Vertex>; 3]) -> Vec<Vec<Vertex>> {
        if self.flip {
            p1.reverse();
        }
        let (p2, p3) = if self.swap { (p3, p2) } else { (p2, p3) };
        [p1, p2, p3]
            .into_iter()
            .map(|p| p.into_iter().map(|x| self.tr(x)).collect())
            .collect()
    }
}

const X0: Vertex = v(3, 3);
const X1: Vertex = v(2, 2);
const LINE_A: [Vertex; 3] = [v(3, 1), v(3, 2), v(3, 3)];
const LINE_B: [Vertex; 3] = [v(1, 3), v(2, 3), v(3, 3)];
/// The boundary cycle `Q − x1`, starting at the outer corner.
const CYCLE: [Vertex; 8] = [v(1, 1), v(1, 2), v(1, 3), v(2, 3), v(3, 3), v(3, 2), v(3, 1), v(2, 1)];
const Z_EDGES: [(Vertex, Vertex); 4] = [(X1, v(1, 2)), (X1, v(2, 1)), (X1, v(2, 3)), (X1, v(3, 2))];

fn line(l: Line) -> &'static [Vertex] {
    match l {
        Line::A => &LINE_A,
        Line::B => &LINE_B,
    }
}

fn ul_graph() -> GridGraph {
    Quadrant::standard(Corner::UpperLeft).graph().clone()
}

fn ul_edges() -> BTreeSet<Edge> {
    ul_graph().edges().into_iter().collect()
}

/// Shortest path from `from` to `to` over `edges`.
fn path_within(edges: &BTreeSet<Edge>, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let clamp = Clamp {
        edges: edges.clone(),
        vertices: BTreeSet::new(),
        anchors: vec![to],
    };
    let parent = clamp.reach(to);
    let mut path = vec![from];
    let mut x = from;
    while x != to {
        x = *parent.get(&x)?;
        path.push(x);
    }
    Some(path)
}

/// The walk along the boundary cycle from `from` to `to` that passes
/// `x0`; a full turn when the ends coincide.
fn cycle_walk_through_x0(from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let pos = |x| CYCLE.iter().position(|&y| y == x);
    let (i, j) = (pos(from)?, pos(to)?);
    let arc = |step: usize| {
        let mut w = vec![CYCLE[i]];
        let mut k = i;
        loop {
            k = (k + step) % 8;
            w.push(CYCLE[k]);
            if k == j {
                break;
            }
        }
        w
    };
    [arc(1), arc(7)].into_iter().find(|w| w.contains(&X0))
}

fn construct(inp: Inputs, records: &mut Vec<ClampRecord>) -> Option<([Vec<Vertex>; 3], &'static str)> {
    if let Some(paths) = shortcut(&inp) {
        return Some((paths, "shortcut"));
    }
    if inp.s1 == X0 {
        return pair_at_x0(&inp).map(|p| (p, "pair at x0"));
    }
    if inp.s1 == X0 || inp.t1 == X0 {
        return None;
    }
    for plan in plans(inp.s1, inp.t1) {
        if let Some(paths) = clamp_plan(&inp, &plan, records) {
            return Some((paths, plan.case));
        }
    }
    None
}

/// `s3` next to or on `x0` is escorted there; the rest is routed in
/// `Q − x0`, which is weakly 2-linked.
fn shortcut(inp: &Inputs) -> Option<[Vec<Vertex>; 3]> {
    if ![X0, v(3, 2), v(2, 3)].contains(&inp.s3) || inp.s2 == X0 {
        return None;
    }
    let p3 = if inp.s3 == X0 { vec![X0] } else { vec![inp.s3, X0] };
    let mut h = ul_graph();
    h.remove_vertex(X0).expect("x0 present");
    let pair_at_x0 = inp.s1 == X0 || inp.t1 == X0;
    let (u, w) = match (inp.s1 == X0, inp.t1 == X0) {
        (true, true) => (None, None),
        (true, false) => (Some(inp.t1), None),
        (false, true) => (Some(inp.s1), None),
        (false, false) => (Some(inp.s1), Some(inp.t1)),
    };
    let shifts: Vec<Vertex> = if pair_at_x0 {
        [v(3, 2), v(2, 3)].into_iter().filter(|&y| y != inp.s3).collect()
    } else {
        vec![X0]
    };
    for &target in line(inp.psi[0]).iter().filter(|&&x| x != X0) {
        for &y in &shifts {
            let mut demands = vec![Demand::pair(inp.s2, target)];
            match (u, w) {
                (Some(a), Some(b)) => demands.push(Demand::pair(a, b)),
                (Some(a), None) => demands.push(Demand::pair(a, y)),
                _ => {}
            }
            let Ok(Outcome::Routed(paths)) = solve(&Instance::new(h.clone(), demands)) else {
                continue;
            };
            let p2 = paths.paths[0].clone();
            let p1 = match (u, w) {
                (Some(_), Some(_)) => paths.paths[1].clone(),
                (Some(_), None) => {
                    // The other end reaches y; the edge y-x0 completes it.
                    let mut p = paths.paths[1].clone();
                    p.push(X0);
                    if inp.s1 == X0 {
                        p.reverse();
                    }
                    p
                }
                _ => vec![X0],
            };
            return Some([p1, p2, p3]);
        }
    }
    None
}

/// The pair has an end at `x0` (as `s1`) and neither singleton is on or
/// next to `x0`.
fn pair_at_x0(inp: &Inputs) -> Option<[Vec<Vertex>; 3]> {
    let (t1, s2, s3) = (inp.t1, inp.s2, inp.s3);
    let z: BTreeSet<Vertex> = [v(2, 1), v(2, 2), v(2, 3), v(1, 2), v(3, 2)].into();
    if t1 == X0 {
        return None;
    }
    if z.contains(&s2) {
        let z_edges: Vec<Edge> = Z_EDGES.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        let (p1, p3, clamp_edges) = if t1 != X1 && s3 != X1 {
            // The t1,s3-path of the boundary cycle through x0 carries both.
            let w = cycle_walk_through_x0(t1, s3)?;
            let k = w.iter().position(|&x| x == X0)?;
            let mut p1 = w[..=k].to_vec();
            p1.reverse();
            (p1, w[k..].iter().rev().copied().collect::<Vec<_>>(), z_edges)
        } else {
            // Leave x1 through its outer neighbour w and go round the cycle.
            let y1 = if t1 == X1 { s3 } else { t1 };
            let w = [v(1, 2), v(2, 1)].into_iter().find(|&n| n != s2)?;
            let mut walk = vec![X1];
            walk.extend(cycle_walk_through_x0(w, y1)?);
            let k = walk.iter().position(|&x| x == X0)?;
            let (head, tail) = (walk[..=k].to_vec(), walk[k..].to_vec());
            let (p1, p3) = if s3 == X1 {
                (tail, head)
            } else {
                let mut p1 = head;
                p1.reverse();
                let mut p3 = tail;
                p3.reverse();
                (p1, p3)
            };
            let cut = Edge::new(X1, w);
            (p1, p3, z_edges.into_iter().filter(|&e| e != cut).collect())
        };
        let clamp = Clamp::new(clamp_edges, &[v(3, 2), v(2, 3)]).ok()?;
        let p2 = clamp.escort(s2, line(inp.psi[0]))?;
        return Some([p1, p2, p3]);
    }
    // Both singletons on the outer corners; s3 at the end of A.
    if s3 != v(3, 1) {
        return None;
    }
    let p3 = vec![v(3, 1), v(3, 2), X0];
    let clamp = match s2 {
        v11 if v11 == v(1, 1) => Clamp::path(&[v(3, 1), v(2, 1), v(1, 1), v(1, 2), v(1, 3)], &[v(3, 1), v(1, 3)]),
        v13 if v13 == v(1, 3) && !LINE_A.contains(&t1) => {
            Clamp::path(&[v(1, 3), v(1, 2), v(2, 2), v(3, 2)], &[v(3, 2), v(1, 3)])
        }
        _ => return None,
    }
    .ok()?;
    let p2 = clamp.escort(s2, line(inp.psi[0]))?;
    let used: BTreeSet<Edge> = path_edges(&p3).into_iter().chain(clamp.edges.iter().copied()).collect();
    let rest: BTreeSet<Edge> = ul_edges().difference(&used).copied().collect();
    let p1 = path_within(&rest, X0, t1)?;
    Some([p1, p2, p3])
}

enum ClampSpec {
    Path(&'static [Vertex]),
    Edges(&'static [(Vertex, Vertex)]),
    /// Every quadrant edge not used by the pair path or the other clamp,
    /// except those listed.
    Complement(&'static [(Vertex, Vertex)]),
}

struct Plan {
    case: &'static str,
    p1: &'static [Vertex],
    y2: (ClampSpec, &'static [Vertex]),
    y3: (ClampSpec, &'static [Vertex]),
}

const OUTER: &[Vertex] = &[v(3, 1), v(2, 1), v(1, 1), v(1, 2), v(1, 3)];
const OUTER_ANCHORS: &[Vertex] = &[v(3, 1), v(1, 3)];
const HOOK: &[Vertex] = &[v(1, 3), v(1, 2), v(2, 2), v(3, 2)];
const HOOK_ANCHORS: &[Vertex] = &[v(1, 3), v(3, 2)];
const AT_X0: &[Vertex] = &[X0];

/// Decompositions for a pair `(s1, t1)` avoiding `x0`.
fn plans(s1: Vertex, t1: Vertex) -> Vec<Plan> {
    use ClampSpec::*;
    let key = (s1, t1);
    let mut out = Vec::new();
    let plan = |case, p1, y2, y3| Plan { case, p1, y2, y3 };
    if key == (v(1, 1), v(1, 2)) {
        out.push(plan(
            "pair in S",
            const { &[v(1, 1), v(1, 2)] },
            (
                Path(const { &[v(3, 1), v(2, 1), v(2, 2), v(1, 2), v(1, 3)] }),
                OUTER_ANCHORS,
            ),
            (Complement(const { &[(v(1, 1), v(2, 1))] }), AT_X0),
        ));
    }
    if key == (v(1, 2), v(2, 2)) {
        out.push(plan(
            "pair in S",
            const { &[v(1, 2), v(2, 2)] },
            (Path(OUTER), OUTER_ANCHORS),
            (Complement(const { &[] }), AT_X0),
        ));
    }
    if key == (v(1, 2), v(2, 1)) {
        out.push(plan(
            "pair in S",
            const { &[v(1, 2), v(2, 2), v(2, 1)] },
            (Path(OUTER), OUTER_ANCHORS),
            (Complement(const { &[] }), AT_X0),
        ));
    }
    if key == (v(2, 2), v(1, 1)) {
        out.push(plan(
            "pair in S",
            const { &[v(2, 2), v(2, 1), v(1, 1)] },
            (Path(HOOK), HOOK_ANCHORS),
            (Complement(const { &[(v(1, 1), v(1, 2))] }), AT_X0),
        ));
    }
    // Both ends on A ∪ B − x0: the pair runs along A ∪ B.
    const RIM: [Vertex; 5] = [v(3, 1), v(3, 2), v(3, 3), v(2, 3), v(1, 3)];
    if let (Some(i), Some(j)) = (RIM.iter().position(|&x| x == s1), RIM.iter().position(|&x| x == t1)) {
        if i < j {
            static SPANS: [[&[Vertex]; 5]; 5] = rim_spans();
            out.push(plan(
                "pair on A and B",
                SPANS[i][j],
                (
                    Path(const { &[v(3, 1), v(2, 1), v(1, 1), v(1, 2), v(1, 3)] }),
                    OUTER_ANCHORS,
                ),
                (Edges(&Z_EDGES), const { &[v(3, 2), v(2, 3)] }),
            ));
        }
    }
    if key == (v(1, 1), v(3, 1)) {
        out.push(plan(
            "pair along a column",
            const { &[v(1, 1), v(2, 1), v(3, 1)] },
            (Path(HOOK), HOOK_ANCHORS),
            (Complement(const { &[(v(1, 1), v(1, 2)), (v(3, 1), v(3, 2))] }), AT_X0),
        ));
    }
    if key == (v(2, 1), v(3, 1)) {
        out.push(plan(
            "pair along a column",
            const { &[v(2, 1), v(3, 1)] },
            (Path(const { &[v(1, 1), v(1, 2), v(1, 3), v(2, 3), v(3, 3)] }), AT_X0),
            (
                Complement(const { &[(v(3, 1), v(3, 2)), (v(3, 2), v(3, 3))] }),
                const { &[v(3, 2), v(2, 3)] },
            ),
        ));
    }
    if key == (v(1, 2), v(3, 2)) {
        out.push(plan(
            "pair along a column",
            const { &[v(1, 2), v(2, 2), v(3, 2)] },
            (Path(OUTER), OUTER_ANCHORS),
            (Complement(const { &[] }), AT_X0),
        ));
    }
    if key == (v(1, 2), v(2, 3)) {
        out.push(plan(
            "pair off A",
            const { &[v(1, 2), v(2, 2), v(2, 3)] },
            (Path(OUTER), OUTER_ANCHORS),
            (Complement(const { &[] }), AT_X0),
        ));
    }
    if key == (v(2, 2), v(1, 3)) {
        out.push(plan(
            "pair off A",
            const { &[v(2, 2), v(2, 3), v(1, 3)] },
            (Path(OUTER), OUTER_ANCHORS),
            (Complement(const { &[] }), AT_X0),
        ));
    }
    if key == (v(2, 1), v(1, 3)) {
        out.push(plan(
            "pair off A",
            const { &[v(2, 1), v(2, 2), v(2, 3), v(1, 3)] },
            (Path(OUTER), OUTER_ANCHORS),
            (Complement(const { &[] }), AT_X0),
        ));
    }
    if key == (v(1, 1), v(2, 3)) {
        out.push(plan(
            "pair off A",
            const { &[v(1, 1), v(2, 1), v(2, 2), v(2, 3)] },
            (Path(HOOK), HOOK_ANCHORS),
            (
                Path(const { &[v(2, 1), v(3, 1), v(3, 2), v(3, 3), v(2, 3), v(1, 3)] }),
                AT_X0,
            ),
        ));
        out.push(plan(
            "pair off A",
            const { &[v(1, 1), v(1, 2), v(1, 3), v(2, 3)] },
            (
                Path(const { &[v(3, 1), v(2, 1), v(2, 2), v(2, 3)] }),
                const { &[v(3, 1), v(2, 3)] },
            ),
            (
                Edges(
                    const {
                        &[
                            (v(1, 2), v(2, 2)),
                            (v(2, 2), v(3, 2)),
                            (v(3, 1), v(3, 2)),
                            (v(3, 2), v(3, 3)),
                        ]
                    },
                ),
                AT_X0,
            ),
        ));
    }
    out
}

/// Sub-paths of the rim `(3,1) (3,2) (3,3) (2,3) (1,3)` between positions
/// `i < j`.
const fn rim_spans() -> [[&'static [Vertex]; 5]; 5] {
    const RIM: [Vertex; 5] = [v(3, 1), v(3, 2), v(3, 3), v(2, 3), v(1, 3)];
    const EMPTY: &[Vertex] = &[];
    let mut out = [[EMPTY; 5]; 5];
    // Const slicing of arrays is not available, so list the spans.
    out[0][1] = &[RIM[0], RIM[1]];
    out[0][2] = &[RIM[0], RIM[1], RIM[2]];
    out[0][3] = &[RIM[0], RIM[1], RIM[2], RIM[3]];
    out[0][4] = &RIM;
    out[1][2] = &[RIM[1], RIM[2]];
    out[1][3] = &[RIM[1], RIM[2], RIM[3]];
    out[1][4] = &[RIM[1], RIM[2], RIM[3], RIM[4]];
    out[2][3] = &[RIM[2], RIM[3]];
    out[2][4] = &[RIM[2], RIM[3], RIM[4]];
    out[3][4] = &[RIM[3], RIM[4]];
    out
}

fn build_clamp(spec: &ClampSpec, anchors: &[Vertex], taken: &BTreeSet<Edge>) -> Option<Clamp> {
    let edges: BTreeSet<Edge> = match spec {
        ClampSpec::Path(vs) => path_edges(vs).into_iter().collect(),
        ClampSpec::Edges(es) => es.iter().map(|&(a, b)| Edge::new(a, b)).collect(),
        ClampSpec::Complement(minus) => {
            let minus: BTreeSet<Edge> = minus.iter().map(|&(a, b)| Edge::new(a, b)).collect();
            let all: BTreeSet<Edge> = ul_edges()
                .into_iter()
                .filter(|e| !taken.contains(e) && !minus.contains(e))
                .collect();
            // Keep the part connected to the anchors.
            let probe = Clamp {
                edges: all.clone(),
                vertices: BTreeSet::new(),
                anchors: Vec::new(),
            };
            let component = probe.reach(anchors[0]);
            all.into_iter().filter(|e| component.contains_key(&e.a)).collect()
        }
    };
    Clamp::new(edges, anchors).ok()
}

fn clamp_plan(inp: &Inputs, plan: &Plan, records: &mut Vec<ClampRecord>) -> Option<[Vec<Vertex>; 3]> {
    let p1 = plan.p1.to_vec();
    let mut taken: BTreeSet<Edge> = path_edges(&p1).into_iter().collect();
    let y2 = build_clamp(&plan.y2.0, plan.y2.1, &taken)?;
    taken.extend(y2.edges.iter().copied());
    let y3 = build_clamp(&plan.y3.0, plan.y3.1, &taken)?;
    let pi0 = [inp.s2, inp.s3];
    let matching = clamp_matching(&p1, &y2, &y3, pi0);
    records.push(ClampRecord {
        p1: p1.clone(),
        y2: y2.clone(),
        y3: y3.clone(),
        pi0,
        matching: matching.clone(),
    });
    let (c2, c3) = match matching.ok()? {
        Matching::Straight => (&y2, &y3),
        Matching::Crossed => (&y3, &y2),
        Matching::NoMatch => return None,
    };
    let p2 = c2.escort(inp.s2, line(inp.psi[0]))?;
    let p3 = c3.escort(inp.s3, line(inp.psi[1]))?;
    Some([p1, p2, p3])
}

impl ClampRecord {
    /// The record with every vertex passed through `f`.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex + Copy) -> ClampRecord {
        ClampRecord {
            p1: self.p1.iter().map(|&x| f(x)).collect(),
            y2: self.y2.map(f),
            y3: self.y3.map(f),
            pi0: [f(self.pi0[0]), f(self.pi0[1])],
            matching: self.matching.clone(),
        }
    }
}
