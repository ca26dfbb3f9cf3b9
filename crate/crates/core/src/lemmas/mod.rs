//! Escape and framing operations on a single quadrant.
//!
//! Every operation returns a [`Certificate`]: the routing instance implied
//! by the operation's contract together with the paths that satisfy it, so
//! any output can be re-checked with [`verify`]. Where an explicit
//! construction exists it is tried first; the exact router is the fallback
//! and the [`Method`] tag records which one produced the paths.

mod boundary;
mod crowded;
mod escape;
mod frame;
mod projection;

pub use boundary::{
    clamp_matching, link_pair_escort_singletons, BoundaryLinkage, Clamp, ClampError, ClampRecord, Matching,
};
pub use crowded::{crowded_escape, CrowdedConfig, CrowdedEscape, CrowdedVariant};
pub use escape::{escape_three_distinct, escape_three_shared, link_and_escape};
pub use frame::{
    build_frame, frame_c0_mate_c1, frame_c1_mate_corner, frame_two_mate_third, mate_pair_to_cycles, Frame,
    FrameWithMate,
};
pub use projection::{
    exceptional_sets, project_with_b_link, projection_instance, ExceptionalSet, Projection, T1, T1_ADMISSIBLE, T2,
    T2_ADMISSIBLE,
};

use std::fmt;

use thiserror::Error;

use std::collections::BTreeSet;

use crate::grid::{Edge, GridGraph, Vertex};
use crate::routing::{solve, verify, Instance, InstanceError, Outcome, PathSystem, Violation};

/// How a certificate was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// The explicit construction of the corresponding proof.
    Construction,
    /// Found by the exact router.
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Construction => "construction",
            Method::Search => "search",
        })
    }
}

/// An instance together with paths claimed to route it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub instance: Instance,
    pub paths: PathSystem,
    pub method: Method,
}

impl Certificate {
    /// Re-checks the paths with the independent checker.
    pub fn check(&self) -> Result<(), Violation> {
        verify(&self.instance, &self.paths)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    /// The statement claims a routing that could not be found.
    #[error("no routing exists for {0}")]
    Defect(String),
}

/// Solves `inst`, returning a search certificate if feasible.
pub(crate) fn search(inst: Instance) -> Result<Option<Certificate>, LemmaError> {
    Ok(match solve(&inst)? {
        Outcome::Routed(paths) => Some(Certificate {
            instance: inst,
            paths,
            method: Method::Search,
        }),
        Outcome::Infeasible => None,
    })
}

/// Keeps `paths` if they route `inst`, otherwise falls back to the router.
pub(crate) fn construct_or_search(
    inst: Instance,
    paths: Option<PathSystem>,
) -> Result<Option<Certificate>, LemmaError> {
    if let Some(paths) = paths {
        if verify(&inst, &paths).is_ok() {
            return Ok(Some(Certificate {
                instance: inst,
                paths,
                method: Method::Construction,
            }));
        }
    }
    search(inst)
}

pub(crate) fn path_edges(path: &[Vertex]) -> Vec<Edge> {
    path.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
}

pub(crate) fn ensure_in(label: &str, x: Vertex, ok: bool) -> Result<(), LemmaError> {
    if ok {
        Ok(())
    } else {
        Err(LemmaError::Precondition(format!("{label} {x} is not in the quadrant")))
    }
}

/// Vertex-simple paths from `from` whose end satisfies `accept`, avoiding
/// the edges in `avoid`. Includes the one-vertex path when `from` itself
/// is accepted.
pub(crate) fn simple_paths(
    g: &GridGraph,
    from: Vertex,
    accept: &dyn Fn(Vertex) -> bool,
    avoid: &BTreeSet<Edge>,
) -> Vec<Vec<Vertex>> {
    fn go(
        g: &GridGraph,
        path: &mut Vec<Vertex>,
        accept: &dyn Fn(Vertex) -> bool,
        avoid: &BTreeSet<Edge>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let x = *path.last().expect("non-empty path");
        if accept(x) {
            out.push(path.clone());
        }
        for y in g.neighbors(x) {
            if !path.contains(&y) && !avoid.contains(&Edge::new(x, y)) {
                path.push(y);
                go(g, path, accept, avoid, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut vec![from], accept, avoid, &mut out);
    out
}
