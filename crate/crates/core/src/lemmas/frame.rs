//! Frames on the central cycles and matings onto them.

use std::collections::BTreeSet;

use crate::grid::{CycleId, Edge, Quadrant, Vertex};
use crate::routing::{solve, Demand, Instance, Outcome, PathSystem};

use super::{construct_or_search, ensure_in, path_edges, search, simple_paths, Certificate, LemmaError, Method};

/// Two edge-disjoint mating paths from `terminals` to a common anchor on a
/// central cycle, avoiding the edges of both central cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub cycle: CycleId,
    pub anchor: Vertex,
    pub terminals: [Vertex; 2],
    pub mating_paths: [Vec<Vertex>; 2],
    pub method: Method,
}

impl Frame {
    /// True if no mating path uses an edge of `C0` or `C1`.
    pub fn avoids_cycles(&self) -> bool {
        let cycles: BTreeSet<Edge> = CycleId::C0.edges().into_iter().chain(CycleId::C1.edges()).collect();
        self.mating_paths
            .iter()
            .flat_map(|p| path_edges(p))
            .all(|e| !cycles.contains(&e))
    }

    /// The frame as a two-demand routing certificate on the quadrant.
    pub fn certificate(&self, q: &Quadrant) -> Certificate {
        Certificate {
            instance: frame_instance(q, self.terminals, self.anchor, None),
            paths: PathSystem::new(self.mating_paths.to_vec()),
            method: self.method,
        }
    }
}

/// A frame for two terminals plus an edge-disjoint mating of a third one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameWithMate {
    pub frame: Frame,
    /// Index (into the operation's input) of the terminal that was mated.
    pub mated: usize,
    pub mate_path: Vec<Vertex>,
    /// Three-demand certificate: both frame paths, then the mate path.
    /// Its instance forbids `C1` edges unless no such routing exists; then
    /// only the mate path is kept off them.
    pub certificate: Certificate,
}

/// Pair demands from both terminals to `anchor` (plus an optional third
/// demand) with the quadrant's `C1` edges forbidden.
fn frame_instance(q: &Quadrant, s: [Vertex; 2], anchor: Vertex, third: Option<Demand>) -> Instance {
    let mut demands = vec![Demand::pair(s[0], anchor), Demand::pair(s[1], anchor)];
    demands.extend(third);
    Instance::new(q.graph().clone(), demands).with_forbidden(q.c1_edges())
}

/// A walk from `s1` to `s2` through `x0` along a Hamiltonian cycle of
/// `Q − x1` or `Q − x2`, or along the Hamiltonian `x1,x2`-path when both
/// of those are terminals. None of these uses a `C1` edge.
fn hamiltonian_walk(q: &Quadrant, s1: Vertex, s2: Vertex) -> Vec<Vertex> {
    let l = q.landmarks();
    let g = |r, c| q.local(r, c);
    let terminal = |x| x == s1 || x == s2;
    let (route, closed) = if !terminal(l.x1) {
        (l.boundary_order.clone(), true)
    } else if !terminal(l.x2) {
        let cycle = [(1, 2), (1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1), (2, 2)];
        (cycle.iter().map(|&(r, c)| g(r, c)).collect(), true)
    } else {
        let path = [(2, 2), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2), (1, 1)];
        (path.iter().map(|&(r, c)| g(r, c)).collect(), false)
    };
    let pos = |x| route.iter().position(|&y| y == x).expect("route spans the terminals");
    let (i, j) = (pos(s1), pos(s2));
    if !closed {
        let mut w: Vec<Vertex> = route[i.min(j)..=i.max(j)].to_vec();
        if i > j {
            w.reverse();
        }
        return w;
    }
    let n = route.len();
    let arc = |step: usize| {
        let mut w = vec![route[i]];
        let mut k = i;
        loop {
            k = (k + step) % n;
            w.push(route[k]);
            if k == j {
                break;
            }
        }
        w
    };
    let (fwd, bwd) = (arc(1), arc(n - 1));
    let has_x0 = |w: &Vec<Vertex>| w.contains(&l.x0);
    match (has_x0(&fwd), has_x0(&bwd)) {
        (true, false) => fwd,
        (false, true) => bwd,
        _ if bwd.len() < fwd.len() => bwd,
        _ => fwd,
    }
}

/// Splits `walk` at index `k` into the two mating paths ending at `walk[k]`.
fn split_at(walk: &[Vertex], k: usize) -> [Vec<Vertex>; 2] {
    let first = walk[..=k].to_vec();
    let mut second = walk[k..].to_vec();
    second.reverse();
    [first, second]
}

/// Index of the anchor on `walk` for a frame on `cycle`, preferring an
/// endpoint that already lies on the cycle.
fn anchor_index(q: &Quadrant, walk: &[Vertex], cycle: CycleId) -> Option<usize> {
    let on = q.cycle_vertices(cycle);
    let last = walk.len() - 1;
    if on.contains(&walk[0]) {
        Some(0)
    } else if on.contains(&walk[last]) {
        Some(last)
    } else {
        walk.iter().position(|x| on.contains(x))
    }
}

/// A frame on `C_alpha` (`alpha` = 0 or 1) for terminals `s1`, `s2` of the
/// quadrant, which may coincide.
pub fn build_frame(q: &Quadrant, s1: Vertex, s2: Vertex, alpha: u8) -> Result<Frame, LemmaError> {
    ensure_in("terminal", s1, q.contains(s1))?;
    ensure_in("terminal", s2, q.contains(s2))?;
    if alpha > 1 {
        return Err(LemmaError::Precondition(format!("alpha must be 0 or 1, got {alpha}")));
    }
    let cycle = CycleId::from_alpha(alpha);
    let mut walk = hamiltonian_walk(q, s1, s2);
    if s1 == s2 && q.cycle_vertices(cycle).contains(&s1) {
        walk = vec![s1];
    }
    if let Some(k) = anchor_index(q, &walk, cycle) {
        let paths = split_at(&walk, k);
        let inst = frame_instance(q, [s1, s2], walk[k], None);
        if let Some(cert) = construct_or_search(inst, Some(PathSystem::new(paths.to_vec())))? {
            return Ok(frame_from(cert, cycle, walk[k], [s1, s2]));
        }
    }
    for anchor in q.cycle_vertices(cycle) {
        if let Some(cert) = search(frame_instance(q, [s1, s2], anchor, None))? {
            return Ok(frame_from(cert, cycle, anchor, [s1, s2]));
        }
    }
    Err(LemmaError::Defect(format!("frame on {cycle:?} for {s1}, {s2}")))
}

fn frame_from(cert: Certificate, cycle: CycleId, anchor: Vertex, terminals: [Vertex; 2]) -> Frame {
    let mut paths = cert.paths.paths.into_iter();
    Frame {
        cycle,
        anchor,
        terminals,
        mating_paths: [paths.next().expect("two paths"), paths.next().expect("two paths")],
        method: cert.method,
    }
}

/// Edge-disjoint matings of `s1`, `s2` onto the cycles `gamma[0]`,
/// `gamma[1]`, avoiding `C1` edges.
pub fn mate_pair_to_cycles(
    q: &Quadrant,
    s1: Vertex,
    s2: Vertex,
    gamma: [CycleId; 2],
) -> Result<Certificate, LemmaError> {
    ensure_in("terminal", s1, q.contains(s1))?;
    ensure_in("terminal", s2, q.contains(s2))?;
    let demands = [s1, s2]
        .iter()
        .zip(gamma)
        .map(|(&s, c)| Demand::escape(s, q.cycle_vertices(c)))
        .collect();
    let inst = Instance::new(q.graph().clone(), demands).with_forbidden(q.c1_edges());

    // Both frame paths reach x0 through a C1 neighbour of x0, so cutting
    // them at their first C1 vertex mates them onto C1 instead.
    let x0 = q.landmarks().x0;
    let walk = hamiltonian_walk(q, s1, s2);
    let k = walk.iter().position(|&x| x == x0).expect("walk passes x0");
    let mut paths = split_at(&walk, k);
    let c1 = q.cycle_vertices(CycleId::C1);
    for j in 0..2 {
        if gamma[j] == CycleId::C0 {
            continue;
        }
        if let Some(cut) = paths[j].iter().position(|x| c1.contains(x)) {
            paths[j].truncate(cut + 1);
        } else {
            let taken: BTreeSet<Edge> = path_edges(&paths[1 - j]).into_iter().collect();
            if let Some(&n) = q
                .graph()
                .neighbors(x0)
                .iter()
                .find(|&&n| !taken.contains(&Edge::new(x0, n)))
            {
                paths[j].push(n);
            }
        }
    }
    construct_or_search(inst, Some(PathSystem::new(paths.to_vec())))?
        .ok_or_else(|| LemmaError::Defect(format!("mating {s1}, {s2} onto {gamma:?}")))
}

fn frame_with_mate(
    q: &Quadrant,
    terminals: &[Vertex; 3],
    pair: (usize, usize),
    mated: usize,
    cycle: CycleId,
    anchor: Vertex,
    mate: Demand,
) -> Result<Option<FrameWithMate>, LemmaError> {
    let s = [terminals[pair.0], terminals[pair.1]];
    let cert = match search(frame_instance(q, s, anchor, Some(mate.clone())))? {
        Some(cert) => cert,
        None => match frame_beside_mate_path(q, s, anchor, &mate)? {
            Some(cert) => cert,
            None => return Ok(None),
        },
    };
    let paths = &cert.paths.paths;
    Ok(Some(FrameWithMate {
        frame: Frame {
            cycle,
            anchor,
            terminals: s,
            mating_paths: [paths[0].clone(), paths[1].clone()],
            method: cert.method,
        },
        mated,
        mate_path: paths[2].clone(),
        certificate: cert,
    }))
}

/// The frame paths may use `C1` edges as long as the mate path does not:
/// tries every `C1`-free mate path and routes the frame on the rest.
fn frame_beside_mate_path(
    q: &Quadrant,
    s: [Vertex; 2],
    anchor: Vertex,
    mate: &Demand,
) -> Result<Option<Certificate>, LemmaError> {
    let avoid: BTreeSet<Edge> = q.c1_edges().into_iter().collect();
    let frame = vec![Demand::pair(s[0], anchor), Demand::pair(s[1], anchor)];
    let mut candidates = simple_paths(q.graph(), mate.source(), &|x| mate.accepts_end(x), &avoid);
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for m in candidates {
        let mut rest = q.graph().clone();
        for e in path_edges(&m) {
            rest.remove_edge(e.a, e.b).expect("path edge present");
        }
        if let Outcome::Routed(paths) = solve(&Instance::new(rest, frame.clone()))? {
            let mut all = paths.paths;
            all.push(m);
            let mut demands = frame.clone();
            demands.push(mate.clone());
            let inst = Instance::new(q.graph().clone(), demands);
            return construct_or_search(inst, Some(PathSystem::new(all))).map(|c| {
                c.map(|c| Certificate {
                    method: Method::Search,
                    ..c
                })
            });
        }
    }
    Ok(None)
}

fn ensure_distinct(q: &Quadrant, t: &[Vertex; 3]) -> Result<(), LemmaError> {
    for &x in t {
        ensure_in("terminal", x, q.contains(x))?;
    }
    if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
        return Err(LemmaError::Precondition(format!("terminals {t:?} are not distinct")));
    }
    Ok(())
}

/// Frames `sp`, `sq` on `C_alpha` for some `alpha` and mates `sr` onto the
/// other cycle, all edge-disjoint; the mate path avoids `C1` edges.
pub fn frame_two_mate_third(
    q: &Quadrant,
    sp: Vertex,
    sq: Vertex,
    sr: Vertex,
) -> Result<(FrameWithMate, u8), LemmaError> {
    let t = [sp, sq, sr];
    ensure_distinct(q, &t)?;
    for alpha in [0u8, 1] {
        let cycle = CycleId::from_alpha(alpha);
        let mate = Demand::escape(sr, q.cycle_vertices(cycle.other()));
        for anchor in q.cycle_vertices(cycle) {
            if let Some(f) = frame_with_mate(q, &t, (0, 1), 2, cycle, anchor, mate.clone())? {
                return Ok((f, alpha));
            }
        }
    }
    Err(LemmaError::Defect(format!("frame for {sp}, {sq} with {sr} mated")))
}

const PAIRS: [((usize, usize), usize); 3] = [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)];

/// For some two of the three terminals, a frame on `C0`, and a mating of
/// the third onto `C1`.
pub fn frame_c0_mate_c1(q: &Quadrant, triple: [Vertex; 3]) -> Result<FrameWithMate, LemmaError> {
    ensure_distinct(q, &triple)?;
    let x0 = q.landmarks().x0;
    for (pair, r) in PAIRS {
        let mate = Demand::escape(triple[r], q.cycle_vertices(CycleId::C1));
        if let Some(f) = frame_with_mate(q, &triple, pair, r, CycleId::C0, x0, mate)? {
            return Ok(f);
        }
    }
    Err(LemmaError::Defect(format!("C0 frame for {triple:?}")))
}

/// For some two of the three terminals, a frame on `C1`, and a mating of
/// the third to `z`, which must be `x0` or `y0`.
pub fn frame_c1_mate_corner(q: &Quadrant, triple: [Vertex; 3], z: Vertex) -> Result<FrameWithMate, LemmaError> {
    ensure_distinct(q, &triple)?;
    let l = q.landmarks();
    if z != l.x0 && z != l.y0 {
        return Err(LemmaError::Precondition(format!("{z} is neither x0 nor y0")));
    }
    for (pair, r) in PAIRS {
        for anchor in q.cycle_vertices(CycleId::C1) {
            let mate = Demand::pair(triple[r], z);
            if let Some(f) = frame_with_mate(q, &triple, pair, r, CycleId::C1, anchor, mate)? {
                return Ok(f);
            }
        }
    }
    Err(LemmaError::Defect(format!("C1 frame for {triple:?} with mate to {z}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{v, Corner};

    fn ul() -> Quadrant {
        Quadrant::standard(Corner::UpperLeft)
    }

    #[test]
    fn terminal_on_c0_gives_zero_length_frame() {
        let f = build_frame(&ul(), v(3, 3), v(3, 3), 0).unwrap();
        assert_eq!(f.anchor, v(3, 3));
        assert_eq!(f.mating_paths, [vec![v(3, 3)], vec![v(3, 3)]]);
        assert_eq!(f.method, Method::Construction);
    }

    #[test]
    fn c1_frame_in_the_corner() {
        let q = ul();
        let f = build_frame(&q, v(1, 2), v(2, 1), 1).unwrap();
        assert!(q.cycle_vertices(CycleId::C1).contains(&f.anchor));
        assert!(f.avoids_cycles());
        f.certificate(&q).check().unwrap();
    }

    #[test]
    fn construction_covers_every_pair_in_every_corner() {
        for corner in Corner::ALL {
            let q = Quadrant::standard(corner);
            for &s1 in q.vertices() {
                for &s2 in q.vertices() {
                    for alpha in [0, 1] {
                        let f = build_frame(&q, s1, s2, alpha).unwrap();
                        f.certificate(&q).check().unwrap();
                        assert!(f.avoids_cycles());
                        assert_eq!(f.method, Method::Construction, "{corner:?} {s1} {s2} {alpha}");
                    }
                }
            }
        }
    }

    #[test]
    fn x1_twice_mates_onto_c0() {
        let q = ul();
        let cert = mate_pair_to_cycles(&q, v(2, 2), v(2, 2), [CycleId::C0, CycleId::C0]).unwrap();
        cert.check().unwrap();
        assert!(cert.paths.paths.iter().all(|p| p.last() == Some(&v(3, 3))));
    }

    #[test]
    fn terminals_already_on_their_cycles_stay() {
        let q = ul();
        let cert = mate_pair_to_cycles(&q, v(3, 3), v(2, 3), [CycleId::C0, CycleId::C1]).unwrap();
        assert_eq!(cert.paths.paths, vec![vec![v(3, 3)], vec![v(2, 3)]]);
    }

    #[test]
    fn rejects_terminals_outside_the_quadrant() {
        assert!(matches!(
            build_frame(&ul(), v(4, 4), v(1, 1), 0),
            Err(LemmaError::Precondition(_))
        ));
        assert!(matches!(
            frame_c1_mate_corner(&ul(), [v(1, 1), v(1, 2), v(1, 3)], v(2, 2)),
            Err(LemmaError::Precondition(_))
        ));
    }

    #[test]
    fn named_triples() {
        let q = ul();
        let f = frame_c0_mate_c1(&q, [v(1, 1), v(1, 3), v(3, 1)]).unwrap();
        f.certificate.check().unwrap();
        let (f, _) = frame_two_mate_third(&q, v(3, 3), v(2, 2), v(1, 1)).unwrap();
        f.certificate.check().unwrap();
        let f = frame_c1_mate_corner(&q, [v(2, 2), v(1, 1), v(1, 3)], v(3, 1)).unwrap();
        f.certificate.check().unwrap();
        assert_eq!(f.mate_path.last(), Some(&v(3, 1)));
    }
}
