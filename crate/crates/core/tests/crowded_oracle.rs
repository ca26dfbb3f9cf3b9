//! The crowded-quadrant search models "at most one exit off A" as a choice
//! of which terminal may take `B − A`. Cross-check it against plain
//! enumeration of distinct exit assignments, routed as fixed pairs.

use gridlink::grid::{Corner, Quadrant, Vertex};
use gridlink::lemmas::{crowded_escape, CrowdedConfig, CrowdedVariant, LemmaError};
use gridlink::routing::{solve, Demand, Instance};
use gridlink::verifier::{all_instances, LemmaId, LemmaInstance};

/// Injective maps of `terminals` into `exits` with at most `off_limit`
/// images outside `a`; true as soon as one routes together with `linked`.
fn some_assignment_routes(
    q: &Quadrant,
    linked: &[(Vertex, Vertex)],
    terminals: &[Vertex],
    exits: &[Vertex],
    a: &[Vertex],
    off_limit: usize,
) -> bool {
    fn go(
        q: &Quadrant,
        linked: &[(Vertex, Vertex)],
        terminals: &[Vertex],
        exits: &[Vertex],
        a: &[Vertex],
        off_left: usize,
        chosen: &mut Vec<Vertex>,
    ) -> bool {
        if chosen.len() == terminals.len() {
            let demands = linked
                .iter()
                .map(|&(s, t)| Demand::pair(s, t))
                .chain(terminals.iter().zip(chosen.iter()).map(|(&s, &e)| Demand::pair(s, e)))
                .collect();
            return solve(&Instance::new(q.graph().clone(), demands)).unwrap().is_feasible();
        }
        for &e in exits {
            if chosen.contains(&e) {
                continue;
            }
            let off = !a.contains(&e);
            if off && off_left == 0 {
                continue;
            }
            chosen.push(e);
            let found = go(q, linked, terminals, exits, a, off_left - usize::from(off), chosen);
            chosen.pop();
            if found {
                return true;
            }
        }
        false
    }
    go(q, linked, terminals, exits, a, off_limit, &mut Vec::new())
}

/// The link subsets the operation tries, in its order.
fn link_order(variant: CrowdedVariant, pairs: usize) -> Vec<Vec<usize>> {
    let min = match variant {
        CrowdedVariant::Seven => 2,
        CrowdedVariant::Six => 1,
        CrowdedVariant::Five => return vec![vec![0]],
    };
    let mut out: Vec<Vec<usize>> = (0u32..1 << pairs)
        .filter(|m| m.count_ones() as usize >= min)
        .map(|m| (0..pairs).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
    out
}

/// The first link subset for which some exit assignment routes.
fn expected_link(q: &Quadrant, config: &CrowdedConfig, variant: CrowdedVariant) -> Option<Vec<usize>> {
    let l = q.landmarks();
    let mut exits = l.a.clone();
    exits.extend(l.b_line.iter().filter(|x| !l.a.contains(x)));
    let off_limit = if variant == CrowdedVariant::Seven {
        usize::MAX
    } else {
        1
    };
    link_order(variant, config.pairs.len()).into_iter().find(|linked| {
        let pairs: Vec<(Vertex, Vertex)> = linked.iter().map(|&i| config.pairs[i]).collect();
        let escaping: Vec<Vertex> = (0..config.pairs.len())
            .filter(|i| !linked.contains(i))
            .flat_map(|i| [config.pairs[i].0, config.pairs[i].1])
            .chain(config.singletons.iter().copied())
            .collect();
        some_assignment_routes(q, &pairs, &escaping, &exits, &l.a, off_limit)
    })
}

fn cross_check(id: LemmaId, stride: usize) {
    let q = Quadrant::standard(Corner::UpperLeft);
    let mut checked = 0;
    for inst in all_instances(id).into_iter().step_by(stride) {
        let LemmaInstance::Crowded {
            variant,
            pairs,
            singletons,
        } = inst
        else {
            panic!("{id} yields crowded instances");
        };
        let config = CrowdedConfig { pairs, singletons };
        let expected = expected_link(&q, &config, variant);
        match (crowded_escape(&q, &config, variant), expected) {
            (Ok(out), Some(linked)) => assert_eq!(out.linked, linked, "{config:?}"),
            (Err(LemmaError::Defect(_)), None) => {}
            (got, want) => panic!("{config:?}: operation {got:?}, enumeration {want:?}"),
        }
        checked += 1;
    }
    assert!(checked > 40, "{checked}");
}

#[test]
fn seven_and_eight_terminals_agree_with_enumeration() {
    cross_check(LemmaId::L1, 53);
}

#[test]
fn six_terminals_agree_with_enumeration() {
    cross_check(LemmaId::L2, 59);
}

#[test]
fn five_terminals_agree_with_enumeration() {
    cross_check(LemmaId::L3, 17);
}
