//! Running one instance and checking the result independently of the
//! operation that produced it.

use std::collections::{BTreeMap, BTreeSet};

use crate::grid::{adjusted_quadrant, AdjustedKind, Corner, CycleId, Edge, GridGraph, Line, Quadrant, Vertex};
use crate::lemmas::{
    build_frame, crowded_escape, escape_three_distinct, escape_three_shared, frame_c0_mate_c1, frame_c1_mate_corner,
    frame_two_mate_third, link_and_escape, link_pair_escort_singletons, mate_pair_to_cycles, project_with_b_link,
    Certificate, ClampError, ClampRecord, CrowdedVariant, LemmaError, Matching, Method, T1, T1_ADMISSIBLE, T2,
    T2_ADMISSIBLE,
};
use crate::routing::{escape_flow_for, is_weakly_2_linked, solve, Demand, Instance};

use super::{LemmaId, LemmaInstance};

#[derive(Clone, Debug, Default)]
pub(crate) struct Evaluation {
    pub method: Option<Method>,
    pub defect: Option<String>,
    /// Set when the instance was also decided by both the router and the
    /// flow reduction.
    pub flow_agrees: Option<bool>,
    pub note: Note,
}

#[derive(Clone, Debug, Default)]
pub(crate) enum Note {
    #[default]
    None,
    /// A failed instance was shown infeasible by path enumeration.
    ConfirmedInfeasible(bool),
    /// Number of clamp matchings checked.
    Records(usize),
    Projection {
        linked: bool,
    },
}

fn ul() -> Quadrant {
    Quadrant::standard(Corner::UpperLeft)
}

fn pass(method: Method) -> Evaluation {
    Evaluation {
        method: Some(method),
        ..Evaluation::default()
    }
}

fn fail(defect: impl Into<String>) -> Evaluation {
    Evaluation {
        defect: Some(defect.into()),
        ..Evaluation::default()
    }
}

/// Re-checks a certificate, optionally demanding that no path uses one of
/// `avoid`.
fn checked(cert: &Certificate, avoid: &[Edge]) -> Evaluation {
    if let Err(v) = cert.check() {
        return fail(format!("certificate rejected: {v}"));
    }
    let avoid: BTreeSet<&Edge> = avoid.iter().collect();
    if let Some(e) = cert.paths.edges().iter().find(|e| avoid.contains(e)) {
        return fail(format!("path uses forbidden edge {e}"));
    }
    pass(cert.method)
}

/// Like [`checked`], but only the last (mate) path must avoid `avoid`.
fn checked_mate(r: Result<Certificate, LemmaError>, avoid: &[Edge]) -> Evaluation {
    let cert = match r {
        Ok(cert) => cert,
        Err(e) => return fail(e.to_string()),
    };
    let eval = checked(&cert, &[]);
    let mate = cert.paths.paths.last().map(|p| p.as_slice()).unwrap_or_default();
    match mate
        .windows(2)
        .map(|w| Edge::new(w[0], w[1]))
        .find(|e| avoid.contains(e))
    {
        Some(e) if eval.defect.is_none() => fail(format!("mate path uses forbidden edge {e}")),
        _ => eval,
    }
}

fn from_result(r: Result<Certificate, LemmaError>, avoid: &[Edge]) -> Evaluation {
    match r {
        Ok(cert) => checked(&cert, avoid),
        Err(e) => fail(e.to_string()),
    }
}

/// Feasibility by the router and by the flow reduction agree.
fn flow_agreement(inst: &Instance) -> Option<bool> {
    let by_flow = escape_flow_for(inst)?.ok()?.is_feasible();
    let by_search = solve(inst).ok()?.is_feasible();
    Some(by_flow == by_search)
}

pub(crate) fn evaluate(id: LemmaId, inst: &LemmaInstance) -> Evaluation {
    use LemmaInstance::*;
    let q = ul();
    let c1 = q.c1_edges();
    match inst {
        Crowded { .. } => {
            let (config, variant) = inst.crowded_config().expect("crowded instance");
            match crowded_escape(&q, &config, variant) {
                Ok(out) => {
                    let mut eval = checked(&out.certificate, &[]);
                    if eval.defect.is_none() {
                        eval.defect = crowded_side_conditions(&q, &out.certificate, variant, out.linked.len());
                    }
                    eval
                }
                Err(e) => fail(e.to_string()),
            }
        }
        Linkage(family) => {
            let got = is_weakly_2_linked(&family.graph());
            if got == family.expected() {
                pass(Method::Search)
            } else {
                fail(format!("weakly 2-linked: {got}, expected {}", family.expected()))
            }
        }
        Frame { s1, s2, alpha } => match build_frame(&q, *s1, *s2, *alpha) {
            Ok(frame) => {
                if !q.cycle_vertices(CycleId::from_alpha(*alpha)).contains(&frame.anchor) {
                    return fail(format!("anchor {} is not on C{alpha}", frame.anchor));
                }
                checked(&frame.certificate(&q), &c1)
            }
            Err(e) => fail(e.to_string()),
        },
        Mate { s1, s2, gamma } => from_result(mate_pair_to_cycles(&q, *s1, *s2, *gamma), &c1),
        FrameMate { pair, third } => checked_mate(
            frame_two_mate_third(&q, pair[0], pair[1], *third).map(|(f, _)| f.certificate),
            &c1,
        ),
        FrameC0(triple) => checked_mate(frame_c0_mate_c1(&q, *triple).map(|f| f.certificate), &c1),
        FrameC1 { triple, z } => checked_mate(frame_c1_mate_corner(&q, *triple, *z).map(|f| f.certificate), &c1),
        EscapeShared { kind, triple } => {
            let h = adjusted_quadrant(*kind);
            let mut eval = from_result(escape_three_shared(&h, *triple), &[]);
            let demands = triple.iter().map(|&s| Demand::escape(s, h.a.clone())).collect();
            eval.flow_agrees = flow_agreement(&Instance::new(h.graph.clone(), demands));
            eval
        }
        LinkEscape { s1, t1, s2 } => from_result(
            link_and_escape(&adjusted_quadrant(AdjustedKind::Q0), *s1, *t1, *s2),
            &[],
        ),
        EscapeDistinct(terminals) => {
            let q0 = adjusted_quadrant(AdjustedKind::Q0);
            let mut eval = from_result(escape_three_distinct(&q0, *terminals), &[]);
            let demands = terminals
                .iter()
                .map(|&s| Demand::escape_distinct(s, q0.a.clone(), 0))
                .collect();
            eval.flow_agrees = flow_agreement(&Instance::new(q0.graph.clone(), demands));
            eval
        }
        Projection { t, s } => {
            let q0 = adjusted_quadrant(AdjustedKind::Q0);
            match project_with_b_link(&q0, t, *s) {
                Ok(crate::lemmas::Projection::Linked(cert)) => Evaluation {
                    note: Note::Projection { linked: true },
                    ..checked(&cert, &[])
                },
                Ok(crate::lemmas::Projection::Refused(_)) => Evaluation {
                    note: Note::Projection { linked: false },
                    ..Evaluation::default()
                },
                Err(e) => fail(e.to_string()),
            }
        }
        Boundary { s1, t1, s2, s3, psi } => {
            let out = link_pair_escort_singletons(&q, *s1, *t1, *s2, *s3, *psi);
            if id == LemmaId::P1 {
                let records = out.map(|o| o.records).unwrap_or_default();
                let mut eval = pass(Method::Construction);
                eval.note = Note::Records(records.len());
                if let Some(bad) = records.iter().find_map(check_record) {
                    eval.defect = Some(bad);
                }
                return eval;
            }
            match out {
                Ok(o) => checked(&o.certificate, &[]),
                Err(LemmaError::Defect(_)) => {
                    let confirmed = !boundary_by_enumeration(&q, *s1, *t1, *s2, *s3, *psi);
                    let how = if confirmed { "confirmed" } else { "NOT confirmed" };
                    Evaluation {
                        note: Note::ConfirmedInfeasible(confirmed),
                        ..fail(format!("no routing exists ({how} by path enumeration)"))
                    }
                }
                Err(e) => fail(e.to_string()),
            }
        }
    }
}

fn crowded_side_conditions(q: &Quadrant, cert: &Certificate, variant: CrowdedVariant, linked: usize) -> Option<String> {
    let l = q.landmarks();
    let off_a: Vec<Vertex> = l.b_line.iter().filter(|x| !l.a.contains(x)).copied().collect();
    let pairs = cert.instance.demands.iter().filter(|d| !d.is_escape()).count();
    if pairs != linked {
        return Some(format!("{pairs} pair demands but {linked} reported linked"));
    }
    let exits_off_a = cert
        .instance
        .demands
        .iter()
        .zip(&cert.paths.paths)
        .filter(|(d, p)| d.is_escape() && p.last().is_some_and(|x| off_a.contains(x)))
        .count();
    match variant {
        CrowdedVariant::Seven if pairs < 2 => Some(format!("only {pairs} pairs linked")),
        CrowdedVariant::Six if pairs < 1 => Some("no pair linked".into()),
        CrowdedVariant::Six | CrowdedVariant::Five if exits_off_a > 1 => {
            Some(format!("{exits_off_a} exits in B outside A"))
        }
        _ => None,
    }
}

/// Decides a clamp matching directly: overlap checks on the edge sets,
/// then the two assignments of two singletons to two clamps.
pub(crate) fn expected_matching(r: &ClampRecord) -> Result<Matching, ClampError> {
    let (y2, y3) = (r.y2.edges(), r.y3.edges());
    if let Some(&e) = y2.iter().find(|e| y3.contains(e)) {
        return Err(ClampError::SharedEdge(e));
    }
    for w in r.p1.windows(2) {
        let e = Edge::new(w[0], w[1]);
        if y2.contains(&e) || y3.contains(&e) {
            return Err(ClampError::OverlapsPath(e));
        }
    }
    if let Some(&a) = r.y2.anchors().iter().find(|a| r.y3.anchors().contains(a)) {
        return Err(ClampError::SharedAnchor(a));
    }
    let clamps = [&r.y2, &r.y3];
    let assignments = [(Matching::Straight, [0, 1]), (Matching::Crossed, [1, 0])];
    Ok(assignments
        .into_iter()
        .find(|(_, to)| (0..2).all(|j| clamps[to[j]].contains(r.pi0[j])))
        .map_or(Matching::NoMatch, |(m, _)| m))
}

fn check_record(r: &ClampRecord) -> Option<String> {
    let want = expected_matching(r);
    if want != r.matching {
        return Some(format!("clamp matching {:?}, direct enumeration {want:?}", r.matching));
    }
    // Hall's condition: at most one singleton (with multiplicity) private
    // to each clamp, and both covered, forces a matching.
    if let Ok(Matching::NoMatch) = want {
        let only = |a: &crate::lemmas::Clamp, b: &crate::lemmas::Clamp| {
            r.pi0.iter().filter(|&&x| a.contains(x) && !b.contains(x)).count()
        };
        let covered = r.pi0.iter().all(|&x| r.y2.contains(x) || r.y3.contains(x));
        if covered && only(&r.y2, &r.y3) <= 1 && only(&r.y3, &r.y2) <= 1 {
            return Some("no matching although the hypothesis holds".into());
        }
    }
    None
}

/// Vertex-simple paths from `from` ending in `accept`, as edge bit masks
/// with their end vertex.
fn simple_paths(
    g: &GridGraph,
    bit: &BTreeMap<Edge, u32>,
    from: Vertex,
    accept: &dyn Fn(Vertex) -> bool,
) -> Vec<(u32, Vertex)> {
    fn go(
        g: &GridGraph,
        bit: &BTreeMap<Edge, u32>,
        x: Vertex,
        mask: u32,
        seen: &mut BTreeSet<Vertex>,
        accept: &dyn Fn(Vertex) -> bool,
        out: &mut Vec<(u32, Vertex)>,
    ) {
        if accept(x) {
            out.push((mask, x));
        }
        for y in g.neighbors(x) {
            if seen.insert(y) {
                go(g, bit, y, mask | 1 << bit[&Edge::new(x, y)], seen, accept, out);
                seen.remove(&y);
            }
        }
    }
    let mut out = Vec::new();
    go(g, bit, from, 0, &mut BTreeSet::from([from]), accept, &mut out);
    out
}

/// Decides a boundary instance by enumerating all simple paths of the
/// three demands.
pub(crate) fn boundary_by_enumeration(
    q: &Quadrant,
    s1: Vertex,
    t1: Vertex,
    s2: Vertex,
    s3: Vertex,
    psi: [Line; 2],
) -> bool {
    let g = q.graph();
    let bit: BTreeMap<Edge, u32> = g.edges().into_iter().zip(0..).collect();
    let l = q.landmarks();
    let line = |p: Line| l.line(p).to_vec();
    let (line2, line3) = (line(psi[0]), line(psi[1]));
    let p1 = simple_paths(g, &bit, s1, &|x| x == t1);
    let p2 = simple_paths(g, &bit, s2, &|x| line2.contains(&x));
    let p3 = simple_paths(g, &bit, s3, &|x| line3.contains(&x));
    p1.iter().any(|&(m1, _)| {
        p2.iter()
            .filter(|&&(m2, _)| m1 & m2 == 0)
            .any(|&(m2, e2)| p3.iter().any(|&(m3, e3)| (m1 | m2) & m3 == 0 && e2 != e3))
    })
}

/// Groups projection outcomes by terminal set and returns the sets with
/// fewer than `min(3, |T|)` working choices, plus any disagreement with
/// the expected family or with the rule that sets off `A` avoiding the
/// outer corner always work.
pub(crate) fn exceptional_family(
    outcomes: &[(Vec<Vertex>, Vertex, bool)],
) -> (Vec<crate::lemmas::ExceptionalSet>, Vec<String>) {
    let q0 = adjusted_quadrant(AdjustedKind::Q0);
    let corner = ul().landmarks().c;
    let mut by_set: BTreeMap<&Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    let mut defects = Vec::new();
    for (t, s, linked) in outcomes {
        let working = by_set.entry(t).or_default();
        if *linked {
            working.push(*s);
        } else if t.iter().all(|x| !q0.in_a(*x)) && !t.contains(&corner) {
            defects.push(format!("T [{}] off A without the corner refuses {s}", super::join(t)));
        }
    }
    let family: Vec<(Vec<Vertex>, Vec<Vertex>)> = by_set
        .into_iter()
        .filter(|(t, working)| working.len() < t.len().min(3))
        .map(|(t, mut working)| {
            working.sort();
            (t.clone(), working)
        })
        .collect();
    let sorted = |xs: &[Vertex]| {
        let mut v = xs.to_vec();
        v.sort();
        v
    };
    let mut expected = vec![
        (sorted(&T1), sorted(&T1_ADMISSIBLE)),
        (sorted(&T2), sorted(&T2_ADMISSIBLE)),
    ];
    expected.sort();
    if family != expected {
        defects.push(format!("exceptional family {family:?}, expected {expected:?}"));
    }
    (family, defects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::v;

    #[test]
    fn enumeration_oracle_on_known_instances() {
        let q = ul();
        assert!(!boundary_by_enumeration(
            &q,
            v(1, 1),
            v(1, 2),
            v(1, 1),
            v(1, 1),
            [Line::A, Line::A]
        ));
        assert!(boundary_by_enumeration(
            &q,
            v(1, 1),
            v(1, 2),
            v(2, 2),
            v(2, 2),
            [Line::A, Line::A]
        ));
        assert!(boundary_by_enumeration(
            &q,
            v(3, 3),
            v(3, 3),
            v(3, 3),
            v(3, 3),
            [Line::A, Line::B]
        ));
    }
}
