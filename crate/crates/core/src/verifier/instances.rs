//! The quantified domain of every statement, as a list of instances.

use std::fmt;

use crate::grid::{make_grid, v, AdjustedKind, Corner, CycleId, GridGraph, Line, Quadrant, Vertex};
use crate::lemmas::{CrowdedConfig, CrowdedVariant};

use super::LemmaId;

/// Graph families checked for weak 2-linkage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphFamily {
    /// `P_3 □ P_k`.
    Strip(u16),
    /// The first two rows and columns of `P_k □ P_k`.
    LShape(u16),
    /// `P_1 □ P_k`, expected not to be weakly 2-linked.
    Path(u16),
}

impl GraphFamily {
    pub fn graph(self) -> GridGraph {
        match self {
            GraphFamily::Strip(k) => make_grid(3, k).expect("valid size"),
            GraphFamily::LShape(k) => make_grid(k, k)
                .expect("valid size")
                .induced(|x| x.row <= 2 || x.col <= 2),
            GraphFamily::Path(k) => make_grid(1, k).expect("valid size"),
        }
    }

    /// Whether the family is claimed to be weakly 2-linked.
    pub fn expected(self) -> bool {
        !matches!(self, GraphFamily::Path(_))
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Strip(k) => write!(f, "P3xP{k}"),
            GraphFamily::LShape(k) => write!(f, "L-shape in P{k}xP{k}"),
            GraphFamily::Path(k) => write!(f, "P1xP{k}"),
        }
    }
}

/// One instance of one statement. Quadrant vertices are upper-left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaInstance {
    Crowded {
        variant: CrowdedVariant,
        pairs: Vec<(Vertex, Vertex)>,
        singletons: Vec<Vertex>,
    },
    Linkage(GraphFamily),
    Frame {
        s1: Vertex,
        s2: Vertex,
        alpha: u8,
    },
    Mate {
        s1: Vertex,
        s2: Vertex,
        gamma: [CycleId; 2],
    },
    FrameMate {
        pair: [Vertex; 2],
        third: Vertex,
    },
    FrameC0([Vertex; 3]),
    FrameC1 {
        triple: [Vertex; 3],
        z: Vertex,
    },
    EscapeShared {
        kind: AdjustedKind,
        triple: [Vertex; 3],
    },
    LinkEscape {
        s1: Vertex,
        t1: Vertex,
        s2: Vertex,
    },
    EscapeDistinct([Vertex; 3]),
    Projection {
        t: Vec<Vertex>,
        s: Vertex,
    },
    Boundary {
        s1: Vertex,
        t1: Vertex,
        s2: Vertex,
        s3: Vertex,
        psi: [Line; 2],
    },
}

fn list(xs: &[Vertex]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for LemmaInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LemmaInstance::*;
        match self {
            Crowded {
                variant,
                pairs,
                singletons,
            } => {
                let pairs: Vec<String> = pairs.iter().map(|(s, t)| format!("{s}-{t}")).collect();
                write!(
                    f,
                    "{variant:?} pairs [{}] singletons [{}]",
                    pairs.join(" "),
                    list(singletons)
                )
            }
            Linkage(g) => write!(f, "{g}"),
            Frame { s1, s2, alpha } => write!(f, "frame {s1} {s2} on C{alpha}"),
            Mate { s1, s2, gamma } => write!(f, "mate {s1} to {:?}, {s2} to {:?}", gamma[0], gamma[1]),
            FrameMate { pair, third } => write!(f, "frame {} {}, mate {third}", pair[0], pair[1]),
            FrameC0(t) => write!(f, "C0 frame among {}", list(t)),
            FrameC1 { triple, z } => write!(f, "C1 frame among {}, mate to {z}", list(triple)),
            EscapeShared { kind, triple } => write!(f, "{} escape {}", kind.label(), list(triple)),
            LinkEscape { s1, t1, s2 } => write!(f, "link {s1}-{t1}, escape {s2}"),
            EscapeDistinct(t) => write!(f, "distinct escape {}", list(t)),
            Projection { t, s } => write!(f, "T [{}] s {s}", list(t)),
            Boundary { s1, t1, s2, s3, psi } => {
                write!(f, "link {s1}-{t1}, escort {s2} to {:?}, {s3} to {:?}", psi[0], psi[1])
            }
        }
    }
}

fn tr(x: Vertex) -> Vertex {
    v(x.col, x.row)
}

fn sorted<const N: usize>(mut xs: [Vertex; N]) -> [Vertex; N] {
    xs.sort();
    xs
}

impl LemmaInstance {
    /// The image under the quadrant's transpose, when the statement is
    /// invariant under it.
    pub fn transposed(&self) -> Option<LemmaInstance> {
        use LemmaInstance::*;
        Some(match self {
            Frame { s1, s2, alpha } => Frame {
                s1: tr(*s1),
                s2: tr(*s2),
                alpha: *alpha,
            },
            Mate { s1, s2, gamma } => Mate {
                s1: tr(*s1),
                s2: tr(*s2),
                gamma: *gamma,
            },
            FrameMate { pair, third } => FrameMate {
                pair: sorted(pair.map(tr)),
                third: tr(*third),
            },
            Boundary { s1, t1, s2, s3, psi } => Boundary {
                s1: tr(*s1),
                t1: tr(*t1),
                s2: tr(*s2),
                s3: tr(*s3),
                psi: psi.map(Line::swapped),
            },
            _ => return None,
        })
    }

    /// True if this instance is the least member of its transpose orbit.
    pub fn is_orbit_representative(&self) -> bool {
        self.transposed().is_none_or(|t| *self <= t)
    }
}

fn quadrant_vertices() -> Vec<Vertex> {
    Quadrant::standard(Corner::UpperLeft).vertices().to_vec()
}

/// Subsets of `xs` of size `k`, in lexicographic order.
pub(crate) fn combinations<T: Copy>(xs: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(xs: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..xs.len() {
            if xs.len() - i < k - cur.len() {
                break;
            }
            cur.push(xs[i]);
            go(xs, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(xs, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Perfect matchings of an even-sized list; the first element is paired
/// with each other element in turn.
pub(crate) fn perfect_matchings<T: Copy>(xs: &[T]) -> Vec<Vec<(T, T)>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in 1..xs.len() {
        let rest: Vec<T> = xs[1..]
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != j)
            .map(|(_, &x)| x)
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (xs[0], xs[j]));
            out.push(m);
        }
    }
    out
}

fn crowded(n: usize) -> Vec<LemmaInstance> {
    let vs = quadrant_vertices();
    let mut out = Vec::new();
    let variant = CrowdedVariant::from_terminal_count(n).expect("crowded size");
    if n == 5 {
        for pair in combinations(&vs, 2) {
            let rest: Vec<Vertex> = vs.iter().copied().filter(|x| !pair.contains(x)).collect();
            for singletons in combinations(&rest, 3) {
                out.push(LemmaInstance::Crowded {
                    variant,
                    pairs: vec![(pair[0], pair[1])],
                    singletons,
                });
            }
        }
        return out;
    }
    for set in combinations(&vs, n) {
        // Split off singletons so the rest forms full pairs; four pairs in all.
        for k in 0..=(8 - n) {
            if !(n - k).is_multiple_of(2) || (n - k) / 2 + k > 4 {
                continue;
            }
            for singletons in combinations(&set, k) {
                let rest: Vec<Vertex> = set.iter().copied().filter(|x| !singletons.contains(x)).collect();
                for pairs in perfect_matchings(&rest) {
                    out.push(LemmaInstance::Crowded {
                        variant,
                        pairs,
                        singletons: singletons.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Every instance of the statement, in a fixed order.
pub fn all_instances(id: LemmaId) -> Vec<LemmaInstance> {
    use LemmaInstance::*;
    let vs = quadrant_vertices();
    let triples = || combinations(&vs, 3).into_iter().map(|t| [t[0], t[1], t[2]]);
    match id {
        LemmaId::L1 => [8, 7].into_iter().flat_map(crowded).collect(),
        LemmaId::L2 => crowded(6),
        LemmaId::L3 => crowded(5),
        LemmaId::L4 => (3..=6)
            .map(GraphFamily::Strip)
            .chain((3..=6).map(GraphFamily::LShape))
            .chain([GraphFamily::Path(3)])
            .map(Linkage)
            .collect(),
        LemmaId::L5 => {
            let mut out = Vec::new();
            for &s1 in &vs {
                for &s2 in &vs {
                    for alpha in [0, 1] {
                        out.push(Frame { s1, s2, alpha });
                    }
                }
            }
            out
        }
        LemmaId::L5i => {
            let mut out = Vec::new();
            for &s1 in &vs {
                for &s2 in &vs {
                    for g1 in [CycleId::C0, CycleId::C1] {
                        for g2 in [CycleId::C0, CycleId::C1] {
                            out.push(Mate {
                                s1,
                                s2,
                                gamma: [g1, g2],
                            });
                        }
                    }
                }
            }
            out
        }
        LemmaId::L6 => triples()
            .flat_map(|t| {
                (0..3).map(move |r| {
                    let pair: Vec<Vertex> = (0..3).filter(|&i| i != r).map(|i| t[i]).collect();
                    FrameMate {
                        pair: [pair[0], pair[1]],
                        third: t[r],
                    }
                })
            })
            .collect(),
        LemmaId::L7 => {
            let l = Quadrant::standard(Corner::UpperLeft).landmarks();
            let mut out: Vec<LemmaInstance> = triples().map(FrameC0).collect();
            for z in [l.x0, l.y0] {
                out.extend(triples().map(|triple| FrameC1 { triple, z }));
            }
            out
        }
        LemmaId::L8 => {
            let mut out = Vec::new();
            for kind in AdjustedKind::REDUCED {
                let h = crate::grid::adjusted_quadrant(kind);
                for t in combinations(&h.vertices(), 3) {
                    out.push(EscapeShared {
                        kind,
                        triple: [t[0], t[1], t[2]],
                    });
                }
            }
            for &s1 in &vs {
                for &t1 in &vs {
                    for &s2 in &vs {
                        out.push(LinkEscape { s1, t1, s2 });
                    }
                }
            }
            out.extend(triples().map(EscapeDistinct));
            let a = crate::grid::adjusted_quadrant(AdjustedKind::Q0).a;
            for &x in vs.iter().filter(|x| !a.contains(x)) {
                for &y in vs.iter().filter(|&&y| y != x) {
                    out.push(EscapeDistinct([x, x, y]));
                }
            }
            out
        }
        LemmaId::L9 => {
            let mut out = Vec::new();
            for k in 1..=4 {
                for t in combinations(&vs, k) {
                    for &s in &t {
                        out.push(Projection { t: t.clone(), s });
                    }
                }
            }
            out
        }
        LemmaId::L10 | LemmaId::P1 => {
            let mut out = Vec::with_capacity(26244);
            let psis = [
                [Line::A, Line::A],
                [Line::A, Line::B],
                [Line::B, Line::A],
                [Line::B, Line::B],
            ];
            for &s1 in &vs {
                for &t1 in &vs {
                    for &s2 in &vs {
                        for &s3 in &vs {
                            for psi in psis {
                                out.push(Boundary { s1, t1, s2, s3, psi });
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

impl LemmaInstance {
    pub(crate) fn crowded_config(&self) -> Option<(CrowdedConfig, CrowdedVariant)> {
        match self {
            LemmaInstance::Crowded {
                variant,
                pairs,
                singletons,
            } => Some((
                CrowdedConfig {
                    pairs: pairs.clone(),
                    singletons: singletons.clone(),
                },
                *variant,
            )),
            _ => None,
        }
    }
}
