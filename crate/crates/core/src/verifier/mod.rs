//! Exhaustive and sampled verification campaigns.
//!
//! A campaign enumerates the quantified domain of a statement, runs the
//! matching operation on every instance, re-checks each certificate with
//! the independent checker and aggregates the outcome into a
//! [`LemmaReport`]. Instances are evaluated on a dedicated worker pool but
//! results are collected in enumeration order, so report bodies do not
//! depend on the worker count.

mod evaluate;
mod instances;
mod pairability;

pub use instances::{all_instances, GraphFamily, LemmaInstance};
pub use pairability::{burnside_count, for_each_canonical, for_each_matching, random_pair_sets, to_pair_set, PairSet};

use std::fmt::{self, Write as _};
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{GridGraph, Vertex};
use crate::routing::{solve, verify, Demand, Instance, Outcome};

use evaluate::{evaluate, Evaluation, Note};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    L1,
    L2,
    L3,
    L4,
    L5,
    /// The mating clause of the frame statement.
    L5i,
    L6,
    L7,
    L8,
    L9,
    L10,
    /// The clamp matching used by the boundary construction.
    P1,
}

impl LemmaId {
    pub const ALL: [LemmaId; 12] = [
        LemmaId::L1,
        LemmaId::L2,
        LemmaId::L3,
        LemmaId::L4,
        LemmaId::L5,
        LemmaId::L5i,
        LemmaId::L6,
        LemmaId::L7,
        LemmaId::L8,
        LemmaId::L9,
        LemmaId::L10,
        LemmaId::P1,
    ];

    /// Whether the reduced strategy can use the quadrant's transpose.
    pub fn has_transpose_symmetry(self) -> bool {
        matches!(self, LemmaId::L5 | LemmaId::L5i | LemmaId::L6 | LemmaId::L10)
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaId::P1 => f.write_str("P1-matching"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown lemma id `{0}`")]
pub struct UnknownLemma(pub String);

impl FromStr for LemmaId {
    type Err = UnknownLemma;

    fn from_str(s: &str) -> Result<LemmaId, UnknownLemma> {
        let lower = s.to_ascii_lowercase();
        if lower == "p1" || lower == "p1-matching" {
            return Ok(LemmaId::P1);
        }
        LemmaId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownLemma(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Exhaustive,
    /// One representative per orbit of the quadrant's transpose where the
    /// statement allows it, otherwise everything.
    Reduced,
    Random {
        samples: usize,
        seed: u64,
    },
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => f.write_str("exhaustive"),
            Strategy::Reduced => f.write_str("reduced"),
            Strategy::Random { .. } => f.write_str("random"),
        }
    }
}

/// The instances a campaign visits, in a fixed order. Random sampling
/// draws indices into the full enumeration with replacement.
pub fn enumerate_instances(id: LemmaId, strategy: Strategy) -> Vec<LemmaInstance> {
    let all = all_instances(id);
    match strategy {
        Strategy::Exhaustive => all,
        Strategy::Reduced if id.has_transpose_symmetry() => {
            all.into_iter().filter(|i| i.is_orbit_representative()).collect()
        }
        Strategy::Reduced => all,
        Strategy::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
        }
    }
}

/// Outcome of a campaign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub subject: String,
    pub strategy: Strategy,
    pub instances: usize,
    pub passed: usize,
    pub by_construction: usize,
    pub by_search: usize,
    /// Extra `key: value` lines, in order.
    pub details: Vec<(String, String)>,
    pub defects: Vec<String>,
    pub workers: usize,
    pub elapsed: Duration,
}

impl LemmaReport {
    pub fn is_clean(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The report without the run section; identical across repeated runs
    /// with the same subject, strategy and seed.
    pub fn body(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "subject: {}", self.subject);
        let _ = writeln!(out, "strategy: {}", self.strategy);
        if let Strategy::Random { samples, seed } = self.strategy {
            let _ = writeln!(out, "samples: {samples}");
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(out, "passed: {}", self.passed);
        let _ = writeln!(out, "construction: {}", self.by_construction);
        let _ = writeln!(out, "search: {}", self.by_search);
        for (k, v) in &self.details {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "defects: {}", self.defects.len());
        for d in &self.defects {
            let _ = writeln!(out, "defect: {d}");
        }
        out
    }

    /// The full report: the body, then the run section with the worker
    /// count and timing.
    pub fn render(&self) -> String {
        format!(
            "{}# run\nworkers: {}\nelapsed_ms: {}\n",
            self.body(),
            self.workers,
            self.elapsed.as_millis()
        )
    }
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool")
}

/// Runs the campaign for `id` on `workers` threads.
pub fn verify_lemma(id: LemmaId, strategy: Strategy, workers: usize) -> LemmaReport {
    let start = Instant::now();
    let insts = enumerate_instances(id, strategy);
    let results: Vec<Evaluation> = pool(workers).install(|| insts.par_iter().map(|i| evaluate(id, i)).collect());
    let mut report = LemmaReport {
        subject: id.to_string(),
        strategy,
        instances: insts.len(),
        passed: 0,
        by_construction: 0,
        by_search: 0,
        details: Vec::new(),
        defects: Vec::new(),
        workers,
        elapsed: Duration::ZERO,
    };
    if strategy == Strategy::Reduced && !id.has_transpose_symmetry() {
        report
            .details
            .push(("symmetry".into(), "none, full enumeration".into()));
    }
    let mut flow_checked = 0;
    let mut flow_mismatches = 0;
    let mut confirmed = 0;
    let mut records = 0;
    let mut outcomes = Vec::new();
    for (inst, eval) in insts.iter().zip(&results) {
        match &eval.defect {
            None => {
                report.passed += 1;
                match eval.method {
                    Some(crate::lemmas::Method::Construction) => report.by_construction += 1,
                    Some(crate::lemmas::Method::Search) => report.by_search += 1,
                    None => {}
                }
            }
            Some(d) => report.defects.push(format!("{inst}: {d}")),
        }
        if let Some(agree) = eval.flow_agrees {
            flow_checked += 1;
            if !agree {
                flow_mismatches += 1;
            }
        }
        match &eval.note {
            Note::ConfirmedInfeasible(true) => confirmed += 1,
            Note::Records(n) => records += n,
            Note::Projection { linked } => {
                if let LemmaInstance::Projection { t, s } = inst {
                    outcomes.push((t.clone(), *s, *linked));
                }
            }
            _ => {}
        }
    }
    match id {
        LemmaId::L8 => {
            report.details.push(("flow_checked".into(), flow_checked.to_string()));
            report
                .details
                .push(("flow_mismatches".into(), flow_mismatches.to_string()));
        }
        LemmaId::L10 => {
            report
                .details
                .push(("confirmed_infeasible".into(), confirmed.to_string()));
        }
        LemmaId::P1 => {
            report.details.push(("clamp_records".into(), records.to_string()));
        }
        LemmaId::L9 if !matches!(strategy, Strategy::Random { .. }) => {
            let (family, mut defects) = evaluate::exceptional_family(&outcomes);
            for (t, working) in &family {
                report.details.push((
                    "exceptional".into(),
                    format!("[{}] working [{}]", join(t), join(working)),
                ));
            }
            report.defects.append(&mut defects);
        }
        _ => {}
    }
    report.elapsed = start.elapsed();
    report
}

fn join(xs: &[Vertex]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// How pair sets are chosen for the pairability campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairabilityStrategy {
    Random {
        samples: usize,
        seed: u64,
    },
    /// Every orbit of the grid's eight symmetries; `limit` stops early.
    ExhaustiveReduced {
        limit: Option<usize>,
    },
}

fn route_pairs(graph: &GridGraph, set: &PairSet) -> Option<String> {
    let inst = Instance::new(graph.clone(), set.iter().map(|&(s, t)| Demand::pair(s, t)).collect());
    let describe = || {
        set.iter()
            .map(|(s, t)| format!("{s}-{t}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    match solve(&inst) {
        Ok(Outcome::Routed(paths)) => verify(&inst, &paths)
            .err()
            .map(|e| format!("{}: invalid certificate: {e}", describe())),
        Ok(Outcome::Infeasible) => Some(format!("{}: not linkable", describe())),
        Err(e) => Some(format!("{}: {e}", describe())),
    }
}

/// Routes four pairs on the 6×6 grid for every chosen pair set.
pub fn pairability_check(strategy: PairabilityStrategy, workers: usize) -> LemmaReport {
    let start = Instant::now();
    let graph = GridGraph::six_by_six();
    let pool = pool(workers);
    let mut instances = 0;
    let mut defects = Vec::new();
    let mut run = |batch: &[PairSet]| {
        instances += batch.len();
        let found: Vec<Option<String>> =
            pool.install(|| batch.par_iter().map(|set| route_pairs(&graph, set)).collect());
        defects.extend(found.into_iter().flatten());
    };
    let (strategy_field, mut details) = match strategy {
        PairabilityStrategy::Random { samples, seed } => {
            run(&random_pair_sets(6, samples, seed));
            (Strategy::Random { samples, seed }, Vec::new())
        }
        PairabilityStrategy::ExhaustiveReduced { limit } => {
            const BATCH: usize = 1 << 16;
            let mut batch = Vec::with_capacity(BATCH);
            let mut taken = 0usize;
            let _ = for_each_canonical(6, 4, |m| {
                if limit.is_some_and(|l| taken >= l) {
                    return ControlFlow::Break(());
                }
                taken += 1;
                batch.push(to_pair_set(6, m));
                if batch.len() == BATCH {
                    run(&batch);
                    batch.clear();
                }
                ControlFlow::Continue(())
            });
            run(&batch);
            let mut details = vec![("symmetry".into(), "dihedral, 8 elements".into())];
            if let Some(l) = limit {
                details.push(("limit".into(), l.to_string()));
            }
            (Strategy::Reduced, details)
        }
    };
    details.push(("counterexamples".into(), defects.len().to_string()));
    LemmaReport {
        subject: "pairability 6x6".into(),
        strategy: strategy_field,
        instances,
        passed: instances - defects.len(),
        by_construction: 0,
        by_search: instances - defects.len(),
        details,
        defects,
        workers,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.to_string().parse::<LemmaId>(), Ok(id));
        }
        assert_eq!("l5I".parse::<LemmaId>(), Ok(LemmaId::L5i));
        assert_eq!("P1".parse::<LemmaId>(), Ok(LemmaId::P1));
        assert!("L11".parse::<LemmaId>().is_err());
    }

    #[test]
    fn reduced_sizes() {
        // 81 ordered pairs, 9 fixed by the transpose.
        assert_eq!(enumerate_instances(LemmaId::L5, Strategy::Reduced).len(), 2 * 45);
        assert_eq!(
            enumerate_instances(LemmaId::L9, Strategy::Reduced),
            enumerate_instances(LemmaId::L9, Strategy::Exhaustive)
        );
    }

    #[test]
    fn body_excludes_the_run_section() {
        let report = verify_lemma(LemmaId::L5, Strategy::Random { samples: 5, seed: 3 }, 2);
        assert!(report.is_clean());
        assert!(!report.body().contains("elapsed"));
        assert!(report.render().contains("elapsed_ms"));
        assert!(report.body().contains("seed: 3"));
    }
}
