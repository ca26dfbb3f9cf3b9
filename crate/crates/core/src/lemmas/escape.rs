//! Escapes into the horizontal boundary line of an adjusted quadrant.

use crate::grid::{AdjustedKind, AdjustedQuadrant, Vertex};
use crate::routing::{escape_flow_for, Demand, Instance, Outcome};

use super::{ensure_in, search, Certificate, LemmaError, Method};

fn flow_certificate(inst: Instance) -> Result<Option<Certificate>, LemmaError> {
    let outcome = escape_flow_for(&inst).expect("uniform escape instance")?;
    Ok(match outcome {
        Outcome::Routed(paths) => Some(Certificate {
            instance: inst,
            paths,
            method: Method::Search,
        }),
        Outcome::Infeasible => None,
    })
}

fn check_present(h: &AdjustedQuadrant, xs: &[Vertex]) -> Result<(), LemmaError> {
    for &x in xs {
        ensure_in("terminal", x, h.graph.contains(x))?;
    }
    Ok(())
}

/// Three distinct terminals of a reduced adjusted quadrant escape into `A`,
/// exits shared.
pub fn escape_three_shared(h: &AdjustedQuadrant, triple: [Vertex; 3]) -> Result<Certificate, LemmaError> {
    if h.kind == AdjustedKind::Q0 {
        return Err(LemmaError::Precondition("expected one of Q1..Q4".into()));
    }
    check_present(h, &triple)?;
    if triple[0] == triple[1] || triple[0] == triple[2] || triple[1] == triple[2] {
        return Err(LemmaError::Precondition(format!(
            "terminals {triple:?} are not distinct"
        )));
    }
    let demands = triple.iter().map(|&s| Demand::escape(s, h.a.clone())).collect();
    flow_certificate(Instance::new(h.graph.clone(), demands))?
        .ok_or_else(|| LemmaError::Defect(format!("{} escape of {triple:?}", h.kind.label())))
}

/// An `s1,t1`-path in `Q0` and an edge-disjoint escape of `s2` into `A`;
/// the three vertices need not be distinct.
pub fn link_and_escape(q0: &AdjustedQuadrant, s1: Vertex, t1: Vertex, s2: Vertex) -> Result<Certificate, LemmaError> {
    if q0.kind != AdjustedKind::Q0 {
        return Err(LemmaError::Precondition("expected Q0".into()));
    }
    check_present(q0, &[s1, t1, s2])?;
    let inst = Instance::new(
        q0.graph.clone(),
        vec![Demand::pair(s1, t1), Demand::escape(s2, q0.a.clone())],
    );
    search(inst)?.ok_or_else(|| LemmaError::Defect(format!("link {s1}-{t1}, escape {s2}")))
}

/// Three terminals of `Q0` escape into pairwise distinct vertices of `A`.
/// Two terminals may coincide if they are not on `A`.
pub fn escape_three_distinct(q0: &AdjustedQuadrant, terminals: [Vertex; 3]) -> Result<Certificate, LemmaError> {
    if q0.kind != AdjustedKind::Q0 {
        return Err(LemmaError::Precondition("expected Q0".into()));
    }
    check_present(q0, &terminals)?;
    let mut sorted = terminals;
    sorted.sort();
    let repeated: Vec<Vertex> = sorted.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    let allowed = match repeated.as_slice() {
        [] => true,
        [x] => sorted[0] != sorted[2] && !q0.in_a(*x),
        _ => false,
    };
    if !allowed {
        return Err(LemmaError::Precondition(format!(
            "invalid terminal multiset {terminals:?}"
        )));
    }
    let demands = terminals
        .iter()
        .map(|&s| Demand::escape_distinct(s, q0.a.clone(), 0))
        .collect();
    flow_certificate(Instance::new(q0.graph.clone(), demands))?
        .ok_or_else(|| LemmaError::Defect(format!("distinct escape of {terminals:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{adjusted_quadrant, v};

    #[test]
    fn terminal_on_a_stays() {
        let q1 = adjusted_quadrant(AdjustedKind::Q1);
        let cert = escape_three_shared(&q1, [v(3, 2), v(1, 2), v(2, 3)]).unwrap();
        cert.check().unwrap();
        assert_eq!(cert.paths.paths[0], vec![v(3, 2)]);
    }

    #[test]
    fn neighbours_of_a_step_straight_down() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        let cert = escape_three_distinct(&q0, [v(2, 1), v(2, 2), v(2, 3)]).unwrap();
        cert.check().unwrap();
        assert!(cert.paths.paths.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn a_itself_escapes_in_place() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        let cert = escape_three_distinct(&q0, [v(3, 1), v(3, 2), v(3, 3)]).unwrap();
        assert!(cert.paths.paths.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn coincident_terminals() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        escape_three_distinct(&q0, [v(1, 1), v(1, 1), v(1, 2)])
            .unwrap()
            .check()
            .unwrap();
        assert!(escape_three_distinct(&q0, [v(3, 1), v(3, 1), v(1, 2)]).is_err());
        assert!(escape_three_distinct(&q0, [v(1, 1), v(1, 1), v(1, 1)]).is_err());
        link_and_escape(&q0, v(1, 1), v(3, 3), v(1, 1))
            .unwrap()
            .check()
            .unwrap();
        let all_a = link_and_escape(&q0, v(3, 1), v(3, 1), v(3, 1)).unwrap();
        assert!(all_a.paths.paths.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn kind_preconditions() {
        let q0 = adjusted_quadrant(AdjustedKind::Q0);
        let q2 = adjusted_quadrant(AdjustedKind::Q2);
        assert!(escape_three_shared(&q0, [v(1, 1), v(1, 2), v(1, 3)]).is_err());
        assert!(link_and_escape(&q2, v(1, 1), v(1, 1), v(1, 1)).is_err());
        // (1,2) is contracted away in Q2.
        assert!(escape_three_shared(&q2, [v(1, 2), v(2, 2), v(2, 3)]).is_err());
    }
}
