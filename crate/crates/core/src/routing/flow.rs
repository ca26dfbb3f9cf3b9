//! Max-flow reduction for instances made only of escape demands.
//!
//! Escape demands with a common exit set are interchangeable, so their
//! feasibility is a single-commodity question: unit capacity per edge, a
//! super-source feeding each source vertex with its multiplicity, and a
//! super-sink fed by every exit (capacity 1 when exits must be distinct).

use std::collections::{BTreeSet, VecDeque};

use crate::grid::{Edge, GridGraph, Vertex};

use super::compact::RoutingGraph;
use super::{Demand, Instance, InstanceError, Outcome, PathSystem};

/// An all-escape instance with one exit set shared by every source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeProblem {
    pub graph: GridGraph,
    pub sources: Vec<Vertex>,
    pub exits: BTreeSet<Vertex>,
    pub distinct: bool,
    pub forbidden: BTreeSet<Edge>,
}

impl EscapeProblem {
    /// Reads an instance whose demands are escapes to one exit set, either
    /// all ungrouped or all in one group. Returns `None` for anything else.
    pub fn from_instance(inst: &Instance) -> Option<EscapeProblem> {
        let mut sources = Vec::new();
        let mut shape: Option<(&BTreeSet<Vertex>, Option<u32>)> = None;
        for d in &inst.demands {
            let Demand::Escape { source, exits, group } = d else {
                return None;
            };
            match shape {
                None => shape = Some((exits, *group)),
                Some((e, g)) if e == exits && g == *group => {}
                Some(_) => return None,
            }
            sources.push(*source);
        }
        let (exits, group) = shape?;
        Some(EscapeProblem {
            graph: inst.graph.clone(),
            sources,
            exits: exits.clone(),
            distinct: group.is_some(),
            forbidden: inst.forbidden.clone(),
        })
    }

    /// The equivalent instance for [`solve`](super::solve).
    pub fn to_instance(&self) -> Instance {
        let demands = self
            .sources
            .iter()
            .map(|&s| Demand::Escape {
                source: s,
                exits: self.exits.clone(),
                group: self.distinct.then_some(0),
            })
            .collect();
        Instance::new(self.graph.clone(), demands).with_forbidden(self.forbidden.iter().copied())
    }

    pub fn solve(&self) -> Result<Outcome, InstanceError> {
        escape_flow(&self.graph, &self.sources, &self.exits, self.distinct, &self.forbidden)
    }
}

/// Flow feasibility for an instance convertible by
/// [`EscapeProblem::from_instance`]; `None` otherwise.
pub fn escape_flow_for(inst: &Instance) -> Option<Result<Outcome, InstanceError>> {
    EscapeProblem::from_instance(inst).map(|p| p.solve())
}

/// Routes every source (with repetition) into `exits` on edge-disjoint
/// paths. Paths are returned in source order.
pub fn escape_flow(
    graph: &GridGraph,
    sources: &[Vertex],
    exits: &BTreeSet<Vertex>,
    distinct: bool,
    forbidden: &BTreeSet<Edge>,
) -> Result<Outcome, InstanceError> {
    if sources.is_empty() {
        return Err(InstanceError::NoSources);
    }
    let problem = EscapeProblem {
        graph: graph.clone(),
        sources: sources.to_vec(),
        exits: exits.clone(),
        distinct,
        forbidden: forbidden.clone(),
    };
    problem.to_instance().validate()?;

    let g = RoutingGraph::build(graph, forbidden);
    let n = g.len();
    let (src, snk) = (n, n + 1);
    let mut net = Network::new(n + 2);
    let mut supply = vec![0i32; n];
    for &s in sources {
        supply[g.idx(s)] += 1;
    }
    for (x, &k) in supply.iter().enumerate() {
        if k > 0 {
            net.add_arc(src, x, k);
        }
    }
    let exit_cap = if distinct { 1 } else { sources.len() as i32 };
    let mut sink_arc = vec![usize::MAX; n];
    for &x in exits {
        sink_arc[g.idx(x)] = net.add_arc(g.idx(x), snk, exit_cap);
    }
    let mut edge_arc = Vec::with_capacity(g.edges.len());
    for &(a, b) in &g.edges {
        edge_arc.push(net.add_undirected(a, b));
    }

    if net.max_flow(src, snk) < sources.len() as i32 {
        return Ok(Outcome::Infeasible);
    }

    // Remaining units: per exit into the sink, per edge in its net direction.
    let mut to_sink: Vec<i32> = (0..n)
        .map(|x| match sink_arc[x] {
            usize::MAX => 0,
            arc => net.flow(arc),
        })
        .collect();
    let mut unit: Vec<Option<(usize, usize)>> = edge_arc
        .iter()
        .zip(&g.edges)
        .map(|(&arc, &(a, b))| match net.flow(arc) {
            1 => Some((a, b)),
            -1 => Some((b, a)),
            _ => None,
        })
        .collect();

    let mut paths = Vec::with_capacity(sources.len());
    for &s in sources {
        let mut path = vec![g.idx(s)];
        loop {
            let cur = *path.last().expect("non-empty");
            if to_sink[cur] > 0 {
                to_sink[cur] -= 1;
                break;
            }
            let step = g.adj[cur]
                .iter()
                .find(|&&(_, e)| matches!(unit[e], Some((from, _)) if from == cur))
                .copied()
                .expect("flow conservation");
            unit[step.1] = None;
            match path.iter().position(|&x| x == step.0) {
                Some(i) => path.truncate(i + 1),
                None => path.push(step.0),
            }
        }
        paths.push(path.into_iter().map(|i| g.nodes[i]).collect());
    }
    Ok(Outcome::Routed(PathSystem::new(paths)))
}

/// Dinic's algorithm on an arc list where each arc's partner is `id ^ 1`.
struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
    initial: Vec<i32>,
}

impl Network {
    fn new(n: usize) -> Network {
        Network {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            initial: Vec::new(),
        }
    }

    fn push_pair(&mut self, a: usize, b: usize, forward: i32, backward: i32) -> usize {
        let id = self.to.len();
        self.to.extend([b, a]);
        self.cap.extend([forward, backward]);
        self.initial.extend([forward, backward]);
        self.head[a].push(id);
        self.head[b].push(id + 1);
        id
    }

    fn add_arc(&mut self, a: usize, b: usize, cap: i32) -> usize {
        self.push_pair(a, b, cap, 0)
    }

    /// A unit-capacity undirected edge as two mutually reverse arcs.
    fn add_undirected(&mut self, a: usize, b: usize) -> usize {
        self.push_pair(a, b, 1, 1)
    }

    /// Net flow along `arc` in its forward direction.
    fn flow(&self, arc: usize) -> i32 {
        self.initial[arc] - self.cap[arc]
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i32 {
        let n = self.head.len();
        let mut total = 0;
        loop {
            let mut level = vec![-1i32; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &arc in &self.head[x] {
                    let y = self.to[arc];
                    if self.cap[arc] > 0 && level[y] < 0 {
                        level[y] = level[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            if level[t] < 0 {
                return total;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, i32::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, x: usize, t: usize, limit: i32, level: &[i32], next: &mut [usize]) -> i32 {
        if x == t {
            return limit;
        }
        while next[x] < self.head[x].len() {
            let arc = self.head[x][next[x]];
            let y = self.to[arc];
            if self.cap[arc] > 0 && level[y] == level[x] + 1 {
                let pushed = self.augment(y, t, limit.min(self.cap[arc]), level, next);
                if pushed > 0 {
                    self.cap[arc] -= pushed;
                    self.cap[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{adjusted_quadrant, make_grid, v, AdjustedKind};
    use crate::routing::{solve, verify};

    fn set(xs: &[Vertex]) -> BTreeSet<Vertex> {
        xs.iter().copied().collect()
    }

    #[test]
    fn source_on_an_exit_stays_put() {
        let g = make_grid(2, 2).unwrap();
        let out = escape_flow(&g, &[v(1, 1)], &set(&[v(1, 1)]), true, &BTreeSet::new()).unwrap();
        assert_eq!(out.into_paths().unwrap().paths, vec![vec![v(1, 1)]]);
    }

    #[test]
    fn first_column_escapes_to_distinct_exits_in_q0() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        let p = EscapeProblem {
            graph: q0.graph.clone(),
            sources: vec![v(1, 1), v(2, 1), v(3, 1)],
            exits: set(&q0.a),
            distinct: true,
            forbidden: BTreeSet::new(),
        };
        let out = p.solve().unwrap();
        verify(&p.to_instance(), out.paths().unwrap()).unwrap();
    }

    #[test]
    fn two_edge_cut_blocks_three_sources() {
        let g = make_grid(3, 3).unwrap();
        let exits = set(&[v(3, 1), v(3, 2), v(3, 3)]);
        let out = escape_flow(&g, &[v(1, 1); 3], &exits, true, &BTreeSet::new()).unwrap();
        assert_eq!(out, Outcome::Infeasible);
        let two = escape_flow(&g, &[v(1, 1); 2], &exits, true, &BTreeSet::new()).unwrap();
        assert!(two.is_feasible());
    }

    #[test]
    fn no_sources_is_an_error() {
        let g = make_grid(2, 2).unwrap();
        let err = escape_flow(&g, &[], &set(&[v(1, 1)]), false, &BTreeSet::new());
        assert_eq!(err, Err(InstanceError::NoSources));
    }

    #[test]
    fn agrees_with_solver_on_small_grids() {
        let g = make_grid(3, 3).unwrap();
        let verts: Vec<Vertex> = g.vertices().collect();
        let exits = set(&[v(3, 1), v(3, 3), v(1, 3)]);
        for a in 0..9 {
            for b in a..9 {
                for c in b..9 {
                    for distinct in [false, true] {
                        let p = EscapeProblem {
                            graph: g.clone(),
                            sources: vec![verts[a], verts[b], verts[c]],
                            exits: exits.clone(),
                            distinct,
                            forbidden: BTreeSet::new(),
                        };
                        let inst = p.to_instance();
                        let by_flow = p.solve().unwrap();
                        let by_search = solve(&inst).unwrap();
                        assert_eq!(by_flow.is_feasible(), by_search.is_feasible(), "{p:?}");
                        if let Some(paths) = by_flow.paths() {
                            verify(&inst, paths).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conversion_requires_uniform_shape() {
        let g = make_grid(2, 2).unwrap();
        let mixed = Instance::new(
            g.clone(),
            vec![Demand::escape(v(1, 1), [v(2, 1)]), Demand::escape(v(1, 2), [v(2, 2)])],
        );
        assert!(escape_flow_for(&mixed).is_none());
        let pair = Instance::new(g, vec![Demand::pair(v(1, 1), v(2, 2))]);
        assert!(escape_flow_for(&pair).is_none());
    }
}
