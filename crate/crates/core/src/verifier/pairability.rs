//! Four disjoint terminal pairs on a square grid: seeded sampling and
//! enumeration up to the symmetries of the square.

use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grid::{v, Vertex};

/// Four pairs of eight distinct vertices.
pub type PairSet = [(Vertex, Vertex); 4];

/// `samples` pair sets on the `n × n` grid: eight distinct vertices drawn
/// uniformly, paired in drawing order.
pub fn random_pair_sets(n: u16, samples: usize, seed: u64) -> Vec<PairSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = usize::from(n) * usize::from(n);
    let at = |i: usize| v((i / usize::from(n)) as u16 + 1, (i % usize::from(n)) as u16 + 1);
    (0..samples)
        .map(|_| {
            let idx = rand::seq::index::sample(&mut rng, cells, 8).into_vec();
            [0, 1, 2, 3].map(|k| (at(idx[2 * k]), at(idx[2 * k + 1])))
        })
        .collect()
}

/// The eight symmetries of the `n × n` grid applied to cell index `i`.
fn image(n: usize, g: usize, i: usize) -> usize {
    let (r, c) = (i / n, i % n);
    let m = n - 1;
    let (r, c) = match g {
        0 => (r, c),
        1 => (c, m - r),
        2 => (m - r, m - c),
        3 => (m - c, r),
        4 => (r, m - c),
        5 => (m - r, c),
        6 => (c, r),
        _ => (m - c, m - r),
    };
    r * n + c
}

/// A matching in normal form: each pair ascending, pairs ascending.
fn normal(mut m: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    for p in &mut m {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    m.sort_unstable();
    m
}

fn apply(n: usize, g: usize, m: &[(usize, usize)]) -> Vec<(usize, usize)> {
    normal(m.iter().map(|&(a, b)| (image(n, g, a), image(n, g, b))).collect())
}

/// Calls `f` once per orbit of `k` disjoint unordered pairs of cells of the
/// `n × n` grid under its eight symmetries, with the least member of the
/// orbit, in increasing order. Pairs are cell indices `row * n + col`.
/// Stops when `f` breaks.
pub fn for_each_canonical(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[(usize, usize)]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    for_each_matching(n * n, k, |m| {
        if (1..8).all(|g| apply(n, g, m).as_slice() >= m) {
            f(m)
        } else {
            ControlFlow::Continue(())
        }
    })
}

type Visit<'a> = dyn FnMut(&[(usize, usize)]) -> ControlFlow<()> + 'a;

/// Calls `f` with every set of `k` disjoint pairs from `0..cells`, in
/// normal form and increasing order. Stops when `f` breaks.
pub fn for_each_matching(
    cells: usize,
    k: usize,
    mut f: impl FnMut(&[(usize, usize)]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn go(
        cells: usize,
        k: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        f: &mut Visit<'_>,
    ) -> ControlFlow<()> {
        if cur.len() == k {
            return f(cur);
        }
        // The next pair's smaller end exceeds the previous one's.
        let lo = cur.last().map_or(0, |p| p.0 + 1);
        for a in lo..cells {
            if used[a] {
                continue;
            }
            used[a] = true;
            for b in a + 1..cells {
                if used[b] {
                    continue;
                }
                used[b] = true;
                cur.push((a, b));
                let flow = go(cells, k, used, cur, f);
                cur.pop();
                used[b] = false;
                flow?;
            }
            used[a] = false;
        }
        ControlFlow::Continue(())
    }
    go(cells, k, &mut vec![false; cells], &mut Vec::with_capacity(k), &mut f)
}

/// Orbit count by Burnside's lemma: the average number of matchings fixed
/// by each symmetry.
pub fn burnside_count(n: usize, k: usize) -> usize {
    let mut fixed = [0usize; 8];
    let _ = for_each_matching(n * n, k, |m| {
        for (g, count) in fixed.iter_mut().enumerate() {
            if apply(n, g, m).as_slice() == m {
                *count += 1;
            }
        }
        ControlFlow::Continue(())
    });
    fixed.iter().sum::<usize>() / 8
}

/// Converts cell-index pairs on the `n × n` grid to vertex pairs.
pub fn to_pair_set(n: usize, m: &[(usize, usize)]) -> PairSet {
    let at = |i: usize| v((i / n) as u16 + 1, (i % n) as u16 + 1);
    [0, 1, 2, 3].map(|j| (at(m[j].0), at(m[j].1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_seeded() {
        let a = random_pair_sets(6, 50, 7);
        assert_eq!(a, random_pair_sets(6, 50, 7));
        assert_ne!(a, random_pair_sets(6, 50, 8));
        for set in &a {
            let mut vs: Vec<Vertex> = set.iter().flat_map(|&(s, t)| [s, t]).collect();
            vs.sort();
            vs.dedup();
            assert_eq!(vs.len(), 8);
            assert!(vs.iter().all(|x| (1..=6).contains(&x.row) && (1..=6).contains(&x.col)));
        }
    }

    #[test]
    fn matching_count() {
        // C(9,4) * 3 matchings of four cells.
        let mut count = 0;
        let _ = for_each_matching(9, 2, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 378);
    }

    #[test]
    fn symmetries_form_a_group_of_eight() {
        let n = 4;
        let images: std::collections::BTreeSet<Vec<usize>> =
            (0..8).map(|g| (0..n * n).map(|i| image(n, g, i)).collect()).collect();
        assert_eq!(images.len(), 8);
    }
}
