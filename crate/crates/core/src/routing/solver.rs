//! Complete backtracking search for edge-disjoint routings.
//!
//! Demands are routed in order. For each demand the search enumerates
//! simple paths from its source; a simple path suffices because any walk
//! contains a simple path between the same ends on a subset of its edges.
//! Neighbours are tried in order of residual distance to the goal, ties
//! broken by `(row, col)`, so results are reproducible.
//!
//! Failed states `(demand index, used edges, taken exits)` are memoised.
//! A bad demand order can make the search blow up on instances that are
//! easy in another order, so the search is restarted over demand orders
//! with a growing node budget. Any run that finishes within its budget is
//! complete, so the answer does not depend on the order that produced it.
//! Before each demand the residual graph is checked for two necessary
//! conditions: every remaining demand can still reach its goal, and every
//! vertex has at least as many free edges as remaining demands that must
//! leave it.

use std::collections::{HashSet, VecDeque};

use super::compact::RoutingGraph;
use super::{Demand, Instance, InstanceError, Outcome, PathSystem};

const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Copy)]
enum Goal {
    Pair {
        source: usize,
        target: usize,
    },
    Escape {
        source: usize,
        exits: u128,
        group: Option<usize>,
    },
}

impl Goal {
    fn source(&self) -> usize {
        match *self {
            Goal::Pair { source, .. } | Goal::Escape { source, .. } => source,
        }
    }
}

/// Routes every demand of `inst` on edge-disjoint paths, or reports that
/// no such routing exists.
pub fn solve(inst: &Instance) -> Result<Outcome, InstanceError> {
    inst.validate()?;
    let g = RoutingGraph::build(&inst.graph, &inst.forbidden);
    g.ensure_small()?;

    let mut groups: Vec<u32> = Vec::new();
    let goals: Vec<Goal> = inst
        .demands
        .iter()
        .map(|d| match d {
            Demand::Pair { source, target } => Goal::Pair {
                source: g.idx(*source),
                target: g.idx(*target),
            },
            Demand::Escape { source, exits, group } => Goal::Escape {
                source: g.idx(*source),
                exits: exits.iter().fold(0u128, |m, &x| m | bit(g.idx(x))),
                group: group.map(|id| match groups.iter().position(|&k| k == id) {
                    Some(p) => p,
                    None => {
                        groups.push(id);
                        groups.len() - 1
                    }
                }),
            },
        })
        .collect();

    let taken = vec![0u128; groups.len()];
    let orders = demand_orders(goals.len());
    let mut budget = FIRST_BUDGET;
    loop {
        let last_round = budget >= LAST_BUDGET;
        for order in &orders {
            let mut search = Search {
                g: &g,
                goals: order.iter().map(|&k| goals[k]).collect(),
                failed: HashSet::new(),
                budget: if last_round { None } else { Some(budget) },
            };
            match search.route(0, 0, &taken) {
                Ok(Some(paths)) => {
                    let mut out = vec![Vec::new(); paths.len()];
                    for (&k, p) in order.iter().zip(paths) {
                        out[k] = p.into_iter().map(|i| g.nodes[i]).collect();
                    }
                    return Ok(Outcome::Routed(PathSystem::new(out)));
                }
                Ok(None) => return Ok(Outcome::Infeasible),
                Err(OutOfBudget) => {}
            }
            if last_round {
                unreachable!("an unbudgeted search always finishes");
            }
        }
        budget *= 8;
    }
}

/// Node budget of the first round of restarts.
const FIRST_BUDGET: u64 = 2_000;
/// From this budget on the first order is searched without a limit.
const LAST_BUDGET: u64 = 2_000 * 8 * 8 * 8;

struct OutOfBudget;

/// Demand orders tried in turn: the given order first, then every other
/// permutation for up to five demands, otherwise the rotations.
fn demand_orders(n: usize) -> Vec<Vec<usize>> {
    if n > 5 {
        return (0..n).map(|r| (0..n).map(|i| (i + r) % n).collect()).collect();
    }
    fn permute(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            permute(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    permute(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

#[inline]
fn bit(i: usize) -> u128 {
    1u128 << i
}

struct Search<'a> {
    g: &'a RoutingGraph,
    goals: Vec<Goal>,
    failed: HashSet<(usize, u128, Vec<u128>)>,
    /// Remaining search nodes, if limited.
    budget: Option<u64>,
}

/// Per-demand DFS state.
struct Walk {
    demand: usize,
    dist: Vec<u32>,
    visited: u128,
    path_edges: u128,
    path: Vec<usize>,
}

impl<'a> Search<'a> {
    fn route(&mut self, i: usize, used: u128, taken: &[u128]) -> Result<Option<Vec<Vec<usize>>>, OutOfBudget> {
        if i == self.goals.len() {
            return Ok(Some(Vec::new()));
        }
        let key = (i, used, taken.to_vec());
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let result = if self.residual_admits(i, used, taken) {
            let goal = self.goals[i];
            let mut walk = Walk {
                demand: i,
                dist: self.distances_to_goal(goal, used, taken),
                visited: bit(goal.source()),
                path_edges: 0,
                path: vec![goal.source()],
            };
            self.extend(&mut walk, used, taken)?
        } else {
            None
        };
        if result.is_none() {
            self.failed.insert(key);
        }
        Ok(result)
    }

    fn exits_open(goal: Goal, taken: &[u128]) -> u128 {
        match goal {
            Goal::Pair { target, .. } => bit(target),
            Goal::Escape { exits, group, .. } => match group {
                Some(k) => exits & !taken[k],
                None => exits,
            },
        }
    }

    fn extend(&mut self, w: &mut Walk, used: u128, taken: &[u128]) -> Result<Option<Vec<Vec<usize>>>, OutOfBudget> {
        if let Some(b) = &mut self.budget {
            if *b == 0 {
                return Err(OutOfBudget);
            }
            *b -= 1;
        }
        let cur = *w.path.last().expect("walk starts at the source");
        let goal = self.goals[w.demand];
        if Self::exits_open(goal, taken) & bit(cur) != 0 {
            let mut next_taken = taken.to_vec();
            if let Goal::Escape { group: Some(k), .. } = goal {
                next_taken[k] |= bit(cur);
            }
            if let Some(mut rest) = self.route(w.demand + 1, used | w.path_edges, &next_taken)? {
                rest.insert(0, w.path.clone());
                return Ok(Some(rest));
            }
            // Any longer path ending elsewhere is dominated unless the exit
            // is contested by a distinctness group.
            if !matches!(goal, Goal::Escape { group: Some(_), .. }) {
                return Ok(None);
            }
        }

        let blocked = used | w.path_edges;
        let mut options: Vec<(u32, usize, usize)> = self.g.adj[cur]
            .iter()
            .filter(|&&(nb, e)| blocked & bit(e) == 0 && w.visited & bit(nb) == 0)
            .map(|&(nb, e)| (w.dist[nb], nb, e))
            .filter(|&(d, _, _)| d != UNREACHABLE)
            .collect();
        options.sort_unstable();

        let open = Self::exits_open(goal, taken);
        for (_, nb, e) in options {
            if !self.reaches(nb, open, w.visited, blocked | bit(e)) {
                continue;
            }
            w.visited |= bit(nb);
            w.path_edges |= bit(e);
            w.path.push(nb);
            let found = self.extend(w, used, taken);
            w.path.pop();
            w.path_edges &= !bit(e);
            w.visited &= !bit(nb);
            if !matches!(found, Ok(None)) {
                return found;
            }
        }
        Ok(None)
    }

    /// BFS from `start` to any vertex of `targets`, avoiding `blocked_nodes`
    /// (other than `start`) and `blocked_edges`.
    fn reaches(&self, start: usize, targets: u128, blocked_nodes: u128, blocked_edges: u128) -> bool {
        if targets & bit(start) != 0 {
            return true;
        }
        let mut seen = blocked_nodes | bit(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(nb, e) in &self.g.adj[x] {
                if blocked_edges & bit(e) != 0 || seen & bit(nb) != 0 {
                    continue;
                }
                if targets & bit(nb) != 0 {
                    return true;
                }
                seen |= bit(nb);
                queue.push_back(nb);
            }
        }
        false
    }

    fn distances_to_goal(&self, goal: Goal, used: u128, taken: &[u128]) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.g.len()];
        let mut queue = VecDeque::new();
        let open = Self::exits_open(goal, taken);
        for (x, d) in dist.iter_mut().enumerate() {
            if open & bit(x) != 0 {
                *d = 0;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &(nb, e) in &self.g.adj[x] {
                if used & bit(e) == 0 && dist[nb] == UNREACHABLE {
                    dist[nb] = dist[x] + 1;
                    queue.push_back(nb);
                }
            }
        }
        dist
    }

    /// Necessary conditions for routing demands `i..` in the residual graph.
    fn residual_admits(&self, i: usize, used: u128, taken: &[u128]) -> bool {
        let n = self.g.len();
        let mut comp = vec![usize::MAX; n];
        let mut degree = vec![0usize; n];
        for (e, &(a, b)) in self.g.edges.iter().enumerate() {
            if used & bit(e) == 0 {
                degree[a] += 1;
                degree[b] += 1;
            }
        }
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(nb, e) in &self.g.adj[x] {
                    if used & bit(e) == 0 && comp[nb] == usize::MAX {
                        comp[nb] = s;
                        stack.push(nb);
                    }
                }
            }
        }
        let mut need = vec![0usize; n];
        for &goal in &self.goals[i..] {
            let open = Self::exits_open(goal, taken);
            let s = goal.source();
            if open & bit(s) != 0 {
                continue;
            }
            let reachable = (0..n).any(|x| open & bit(x) != 0 && comp[x] == comp[s]);
            if !reachable {
                return false;
            }
            need[s] += 1;
            if let Goal::Pair { target, .. } = goal {
                need[target] += 1;
            }
        }
        need.iter().zip(&degree).all(|(n, d)| n <= d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{adjusted_quadrant, make_grid, v, AdjustedKind, Edge};
    use crate::routing::verify;

    fn routed(inst: &Instance) -> PathSystem {
        let out = solve(inst).unwrap();
        let paths = out.into_paths().expect("feasible");
        verify(inst, &paths).unwrap();
        paths
    }

    #[test]
    fn zero_length_pair() {
        let inst = Instance::new(make_grid(3, 3).unwrap(), vec![Demand::pair(v(1, 1), v(1, 1))]);
        assert_eq!(routed(&inst).paths, vec![vec![v(1, 1)]]);
    }

    #[test]
    fn crossing_pairs_on_a_four_cycle_are_infeasible() {
        // Either path between opposite corners isolates an end of the other pair.
        let inst = Instance::new(
            make_grid(2, 2).unwrap(),
            vec![Demand::pair(v(1, 1), v(2, 2)), Demand::pair(v(1, 2), v(2, 1))],
        );
        assert_eq!(solve(&inst).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn opposite_corner_pairs_on_a_four_cycle() {
        let inst = Instance::new(
            make_grid(2, 2).unwrap(),
            vec![Demand::pair(v(1, 1), v(2, 2)), Demand::pair(v(1, 1), v(2, 2))],
        );
        let paths = routed(&inst);
        assert!(paths.paths.iter().all(|p| p.len() == 3));
        let mut used = paths.edges();
        used.sort();
        assert_eq!(used, make_grid(2, 2).unwrap().edges());
    }

    #[test]
    fn shared_exit_escapes_in_q0() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        let demands = [v(1, 2), v(2, 1), v(2, 2)]
            .into_iter()
            .map(|s| Demand::escape(s, q0.a.clone()))
            .collect();
        routed(&Instance::new(q0.graph, demands));
    }

    #[test]
    fn cut_bound_makes_corner_escape_infeasible() {
        // Three terminals stacked on the degree-2 corner of a 3x3 grid, each
        // needing its own exit on the far row: only two edges leave (1,1).
        let g = make_grid(3, 3).unwrap();
        let exits = [v(3, 1), v(3, 2), v(3, 3)];
        let demands = (0..3).map(|_| Demand::escape_distinct(v(1, 1), exits, 0)).collect();
        assert_eq!(solve(&Instance::new(g, demands)).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn distinct_group_moves_a_terminal_off_its_exit() {
        // (1,2) already sits on an exit, but the second member of the group
        // can only end there, so the first must walk on to (1,3).
        let g = make_grid(1, 3).unwrap();
        let inst = Instance::new(
            g,
            vec![
                Demand::escape_distinct(v(1, 2), [v(1, 2), v(1, 3)], 7),
                Demand::escape_distinct(v(1, 1), [v(1, 2)], 7),
            ],
        );
        let paths = routed(&inst);
        assert_eq!(paths.paths[0], vec![v(1, 2), v(1, 3)]);
        assert_eq!(paths.paths[1], vec![v(1, 1), v(1, 2)]);
    }

    #[test]
    fn forbidden_edges_are_respected() {
        let g = make_grid(1, 3).unwrap();
        let inst = Instance::new(g, vec![Demand::pair(v(1, 1), v(1, 3))]).with_forbidden([Edge::new(v(1, 2), v(1, 3))]);
        assert_eq!(solve(&inst).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn parallel_edges_carry_two_paths() {
        let mut g = make_grid(2, 2).unwrap();
        g.contract(v(1, 2), v(1, 1)).unwrap();
        // (1,1)=(1,2) now has two parallel edges towards row 2 merged at
        // (2,1),(2,2); contract (2,2) into (2,1) as well.
        g.contract(v(2, 2), v(2, 1)).unwrap();
        assert_eq!(g.multiplicity(v(1, 1), v(2, 1)), 2);
        let inst = Instance::new(g, vec![Demand::pair(v(1, 1), v(2, 1)), Demand::pair(v(2, 1), v(1, 1))]);
        routed(&inst);
    }

    #[test]
    fn solver_is_deterministic() {
        let g = make_grid(4, 4).unwrap();
        let inst = Instance::new(
            g,
            vec![
                Demand::pair(v(1, 1), v(4, 4)),
                Demand::pair(v(1, 4), v(4, 1)),
                Demand::pair(v(2, 2), v(3, 3)),
            ],
        );
        assert_eq!(solve(&inst).unwrap(), solve(&inst).unwrap());
    }
}
