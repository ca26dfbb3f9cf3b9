//! Escapes from a quadrant holding five or more terminals.
//!
//! Some of the pairs lying inside the quadrant are linked there and every
//! other terminal escapes to its own exit on `A ∪ B`. The statements carry
//! no construction, so the operation searches over which pairs to link and,
//! where at most one exit may lie in `B − A`, over which terminal (if any)
//! takes that exit.

use crate::grid::{Quadrant, Vertex};
use crate::routing::{Demand, Instance};

use super::{ensure_in, search, Certificate, LemmaError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrowdedVariant {
    /// Seven or eight terminals: link at least two pairs.
    Seven,
    /// Six terminals: link at least one pair, at most one exit in `B − A`.
    Six,
    /// Five terminals with a full pair: link the first pair, at most one
    /// exit in `B − A`.
    Five,
}

impl CrowdedVariant {
    pub fn from_terminal_count(n: usize) -> Option<CrowdedVariant> {
        match n {
            7 | 8 => Some(CrowdedVariant::Seven),
            6 => Some(CrowdedVariant::Six),
            5 => Some(CrowdedVariant::Five),
            _ => None,
        }
    }
}

/// Terminals inside one quadrant: pairs with both ends inside and
/// singletons whose partner lies outside. All vertices are distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrowdedConfig {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub singletons: Vec<Vertex>,
}

impl CrowdedConfig {
    pub fn terminal_count(&self) -> usize {
        2 * self.pairs.len() + self.singletons.len()
    }

    fn terminals(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs
            .iter()
            .flat_map(|&(s, t)| [s, t])
            .chain(self.singletons.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrowdedEscape {
    /// Pair demands for the linked pairs in `linked` order, then one
    /// distinct-exit escape per remaining terminal.
    pub certificate: Certificate,
    /// Indices into `config.pairs` of the linked pairs.
    pub linked: Vec<usize>,
    /// The terminals that escape, in demand order.
    pub escaping: Vec<Vertex>,
}

impl CrowdedEscape {
    /// Number of escape paths ending in `B − A`.
    pub fn exits_off_a(&self, q: &Quadrant) -> usize {
        let l = q.landmarks();
        let off: Vec<Vertex> = l.b_line.iter().filter(|x| !l.a.contains(x)).copied().collect();
        let skip = self.linked.len();
        self.certificate.paths.paths[skip..]
            .iter()
            .filter(|p| p.last().is_some_and(|x| off.contains(x)))
            .count()
    }
}

fn validate(q: &Quadrant, config: &CrowdedConfig, variant: CrowdedVariant) -> Result<(), LemmaError> {
    let all: Vec<Vertex> = config.terminals().collect();
    for (i, &x) in all.iter().enumerate() {
        ensure_in("terminal", x, q.contains(x))?;
        if all[..i].contains(&x) {
            return Err(LemmaError::Precondition(format!("terminal {x} repeated")));
        }
    }
    if config.pairs.len() + config.singletons.len() > 4 {
        return Err(LemmaError::Precondition("more than four terminal pairs".into()));
    }
    let n = all.len();
    let ok = match variant {
        CrowdedVariant::Seven => n == 7 || n == 8,
        CrowdedVariant::Six => n == 6,
        CrowdedVariant::Five => n == 5 && !config.pairs.is_empty(),
    };
    if ok {
        Ok(())
    } else {
        Err(LemmaError::Precondition(format!(
            "{n} terminals do not fit {variant:?}"
        )))
    }
}

/// Subsets of `0..n` with at least `min` elements, larger first.
fn subsets(n: usize, min: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize >= min)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

/// Links pairs and escapes the remaining terminals as the variant demands.
pub fn crowded_escape(
    q: &Quadrant,
    config: &CrowdedConfig,
    variant: CrowdedVariant,
) -> Result<CrowdedEscape, LemmaError> {
    validate(q, config, variant)?;
    let l = q.landmarks();
    let a_line = l.a.to_vec();
    let b_off: Vec<Vertex> = l.b_line.iter().filter(|x| !l.a.contains(x)).copied().collect();
    let a_or_b = l.a_union_b();

    let link_sets = match variant {
        CrowdedVariant::Seven => subsets(config.pairs.len(), 2),
        CrowdedVariant::Six => subsets(config.pairs.len(), 1),
        CrowdedVariant::Five => vec![vec![0]],
    };
    for linked in link_sets {
        let mut demands: Vec<Demand> = linked
            .iter()
            .map(|&i| Demand::pair(config.pairs[i].0, config.pairs[i].1))
            .collect();
        let escaping: Vec<Vertex> = config
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| !linked.contains(i))
            .flat_map(|(_, &(s, t))| [s, t])
            .chain(config.singletons.iter().copied())
            .collect();
        // Which escaping terminal may exit in B − A; `None` sends all to A.
        let choices: Vec<Option<usize>> = match variant {
            CrowdedVariant::Seven => vec![None],
            _ => std::iter::once(None).chain((0..escaping.len()).map(Some)).collect(),
        };
        for choice in choices {
            let escapes = escaping.iter().enumerate().map(|(j, &s)| {
                let exits = match (variant, choice) {
                    (CrowdedVariant::Seven, _) => a_or_b.clone(),
                    (_, Some(k)) if k == j => b_off.iter().copied().collect(),
                    _ => a_line.iter().copied().collect(),
                };
                Demand::escape_distinct(s, exits, 0)
            });
            let inst = Instance::new(q.graph().clone(), demands.iter().cloned().chain(escapes).collect());
            if let Some(certificate) = search(inst)? {
                return Ok(CrowdedEscape {
                    certificate,
                    linked,
                    escaping,
                });
            }
        }
        demands.clear();
    }
    Err(LemmaError::Defect(format!("{variant:?} escape of {config:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{v, Corner};

    fn ul() -> Quadrant {
        Quadrant::standard(Corner::UpperLeft)
    }

    #[test]
    fn full_quadrant_links_two_pairs() {
        let q = ul();
        let config = CrowdedConfig {
            pairs: vec![
                (v(1, 1), v(3, 3)),
                (v(1, 3), v(3, 1)),
                (v(1, 2), v(3, 2)),
                (v(2, 1), v(2, 3)),
            ],
            singletons: vec![],
        };
        let out = crowded_escape(&q, &config, CrowdedVariant::Seven).unwrap();
        out.certificate.check().unwrap();
        assert!(out.linked.len() >= 2);
    }

    #[test]
    fn five_with_pair_on_the_diagonal() {
        let q = ul();
        let config = CrowdedConfig {
            pairs: vec![(v(3, 3), v(1, 1))],
            singletons: vec![v(1, 3), v(2, 3), v(1, 2)],
        };
        let out = crowded_escape(&q, &config, CrowdedVariant::Five).unwrap();
        out.certificate.check().unwrap();
        assert_eq!(out.linked, vec![0]);
        assert!(out.exits_off_a(&q) <= 1);
    }

    #[test]
    fn six_respects_the_side_condition() {
        for corner in Corner::ALL {
            let q = Quadrant::standard(corner);
            let g = |r, c| q.local(r, c);
            let config = CrowdedConfig {
                pairs: vec![(g(1, 1), g(2, 3)), (g(1, 3), g(2, 1)), (g(1, 2), g(3, 3))],
                singletons: vec![],
            };
            let out = crowded_escape(&q, &config, CrowdedVariant::Six).unwrap();
            out.certificate.check().unwrap();
            assert!(out.exits_off_a(&q) <= 1);
        }
    }

    #[test]
    fn preconditions() {
        let q = ul();
        let five = CrowdedConfig {
            pairs: vec![],
            singletons: vec![v(1, 1), v(1, 2), v(1, 3), v(2, 1), v(2, 2)],
        };
        assert!(crowded_escape(&q, &five, CrowdedVariant::Five).is_err());
        assert!(crowded_escape(&q, &five, CrowdedVariant::Six).is_err());
        let repeated = CrowdedConfig {
            pairs: vec![(v(1, 1), v(1, 1))],
            singletons: vec![v(1, 3), v(2, 1), v(2, 2)],
        };
        assert!(crowded_escape(&q, &repeated, CrowdedVariant::Five).is_err());
    }

    #[test]
    fn subset_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1, 2], vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
