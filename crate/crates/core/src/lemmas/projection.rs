//! Linking one terminal to the middle of `B` while the rest escape to `A`.

use crate::grid::{v, AdjustedKind, AdjustedQuadrant, Vertex};
use crate::routing::{Demand, Instance};

use super::{ensure_in, search, Certificate, LemmaError};

/// The first column of the quadrant.
pub const T1: [Vertex; 3] = [v(1, 1), v(2, 1), v(3, 1)];
/// The terminals of `T1` that can be linked to `b`.
pub const T1_ADMISSIBLE: [Vertex; 2] = [v(1, 1), v(2, 1)];
/// The outer row plus the middle of `B`.
pub const T2: [Vertex; 4] = [v(1, 1), v(1, 2), v(1, 3), v(2, 3)];
/// The terminals of `T2` that can be linked to `b`.
pub const T2_ADMISSIBLE: [Vertex; 2] = [v(1, 3), v(2, 3)];

/// Outcome of [`project_with_b_link`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projection {
    Linked(Certificate),
    /// No routing exists; the instance is kept for reporting.
    Refused(Instance),
}

impl Projection {
    pub fn is_linked(&self) -> bool {
        matches!(self, Projection::Linked(_))
    }
}

/// The middle vertex of `B`.
const B_MIDDLE: Vertex = v(2, 3);

/// The instance linking `s` to `b` with every other terminal of `t`
/// escaping into `A` (shared exits).
pub fn projection_instance(q0: &AdjustedQuadrant, t: &[Vertex], s: Vertex) -> Instance {
    let mut demands = vec![Demand::pair(s, B_MIDDLE)];
    demands.extend(t.iter().filter(|&&x| x != s).map(|&x| Demand::escape(x, q0.a.clone())));
    Instance::new(q0.graph.clone(), demands)
}

/// Links `s ∈ t` to `b` and escapes `t − s` into `A`, or refuses when no
/// such routing exists. `t` holds at most four distinct vertices of `Q0`.
pub fn project_with_b_link(q0: &AdjustedQuadrant, t: &[Vertex], s: Vertex) -> Result<Projection, LemmaError> {
    if q0.kind != AdjustedKind::Q0 {
        return Err(LemmaError::Precondition("expected Q0".into()));
    }
    if t.len() > 4 {
        return Err(LemmaError::Precondition(format!(
            "{} terminals, at most 4 allowed",
            t.len()
        )));
    }
    for (i, &x) in t.iter().enumerate() {
        ensure_in("terminal", x, q0.graph.contains(x))?;
        if t[..i].contains(&x) {
            return Err(LemmaError::Precondition(format!("terminal {x} repeated")));
        }
    }
    if !t.contains(&s) {
        return Err(LemmaError::Precondition(format!("{s} is not one of the terminals")));
    }
    let inst = projection_instance(q0, t, s);
    Ok(match search(inst.clone())? {
        Some(cert) => Projection::Linked(cert),
        None => Projection::Refused(inst),
    })
}

/// Terminal sets (size 1 to 4) for which fewer than `min(3, |T|)` choices
/// of `s` work, each with the choices that do work. Sets and choices are
/// sorted.
/// A terminal set on which some link choice fails, with the choices that work.
pub type ExceptionalSet = (Vec<Vertex>, Vec<Vertex>);

pub fn exceptional_sets(q0: &AdjustedQuadrant) -> Result<Vec<ExceptionalSet>, LemmaError> {
    let vs: Vec<Vertex> = q0.graph.vertices().collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << vs.len()) {
        if mask.count_ones() > 4 {
            continue;
        }
        let t: Vec<Vertex> = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
        let mut working = Vec::new();
        for &s in &t {
            if project_with_b_link(q0, &t, s)?.is_linked() {
                working.push(s);
            }
        }
        if working.len() < t.len().min(3) {
            out.push((t, working));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::adjusted_quadrant;

    fn q0() -> AdjustedQuadrant {
        adjusted_quadrant(AdjustedKind::Q0)
    }

    #[test]
    fn b_alone_is_zero_length() {
        match project_with_b_link(&q0(), &[v(2, 3)], v(2, 3)).unwrap() {
            Projection::Linked(cert) => assert_eq!(cert.paths.paths, vec![vec![v(2, 3)]]),
            Projection::Refused(_) => panic!("b links to itself"),
        }
    }

    #[test]
    fn first_column_bottom_terminal_is_refused() {
        let q0 = q0();
        assert!(!project_with_b_link(&q0, &T1, v(3, 1)).unwrap().is_linked());
        for s in T1_ADMISSIBLE {
            assert!(project_with_b_link(&q0, &T1, s).unwrap().is_linked());
        }
    }

    #[test]
    fn b_in_t2_links() {
        let q0 = q0();
        match project_with_b_link(&q0, &T2, v(2, 3)).unwrap() {
            Projection::Linked(cert) => cert.check().unwrap(),
            Projection::Refused(_) => panic!("(2,3) is admissible"),
        }
    }

    #[test]
    fn rejects_bad_terminal_sets() {
        let q0 = q0();
        assert!(project_with_b_link(&q0, &[v(1, 1), v(1, 1)], v(1, 1)).is_err());
        assert!(project_with_b_link(&q0, &[v(1, 1)], v(1, 2)).is_err());
        let five = [v(1, 1), v(1, 2), v(1, 3), v(2, 1), v(2, 2)];
        assert!(project_with_b_link(&q0, &five, v(1, 1)).is_err());
    }
}
