//! Line-oriented text formats for instances and certificates.
//!
//! Instance files hold one directive per line; `#` starts a comment.
//!
//! ```text
//! grid R C
//! remove_vertex (r,c)
//! remove_edge (r,c) (r,c)
//! contract (r,c) (r,c)
//! forbid_edge (r,c) (r,c)
//! demand pair (r,c) (r,c)
//! demand escape (r,c) -> {(r,c), (r,c)} [group N]
//! ```
//!
//! `grid` comes first and exactly once. Graph directives apply in file
//! order, so `contract` sees earlier removals. Demands are numbered from 0
//! in order of appearance. The group suffix is optional; the brackets are
//! literal.
//!
//! Certificate files hold `path K: (r,c) (r,c) ...` for K = 0, 1, ... in
//! order, or the single line `infeasible`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::grid::{make_grid, v, Edge, GridGraph, Vertex};
use crate::routing::{Demand, Instance, InstanceError, PathSystem};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Contents of a certificate file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateFile {
    Paths(PathSystem),
    Infeasible,
}

/// Character cursor over one line.
struct Cursor<'a> {
    rest: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest.is_empty()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        match self.rest.strip_prefix(token) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            err(self.line, format!("expected `{token}` near `{}`", self.rest.trim()))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let end = self
            .rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest.len());
        let (w, r) = self.rest.split_at(end);
        self.rest = r;
        w
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        self.skip_ws();
        let end = self.rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest.len());
        let (digits, r) = self.rest.split_at(end);
        match digits.parse() {
            Ok(n) => {
                self.rest = r;
                Ok(n)
            }
            Err(_) => err(self.line, format!("expected {what} near `{}`", self.rest.trim())),
        }
    }

    fn vertex(&mut self) -> Result<Vertex, ParseError> {
        self.expect("(")?;
        let r = self.number("row")?;
        self.expect(",")?;
        let c = self.number("column")?;
        self.expect(")")?;
        Ok(v(r, c))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            err(self.line, format!("unexpected trailing text `{}`", self.rest))
        }
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut graph: Option<GridGraph> = None;
    let mut forbidden: Vec<(usize, Edge)> = Vec::new();
    let mut demands: Vec<(usize, Demand)> = Vec::new();
    let mut last = 0;

    for (line, body) in lines(text) {
        last = line;
        let mut cur = Cursor { rest: body, line };
        let keyword = cur.word();
        let Some(g) = graph.as_mut() else {
            if keyword != "grid" {
                return err(line, "the first directive must be `grid R C`");
            }
            let rows = cur.number("row count")?;
            let cols = cur.number("column count")?;
            cur.finish()?;
            graph = Some(make_grid(rows, cols).or_else(|e| err(line, e.to_string()))?);
            continue;
        };
        let in_bounds = |x: Vertex| {
            if g.in_bounds(x) {
                Ok(x)
            } else {
                err(
                    line,
                    format!("vertex {x} is outside the {}x{} grid", g.rows(), g.cols()),
                )
            }
        };
        match keyword {
            "grid" => return err(line, "duplicate `grid` directive"),
            "remove_vertex" => {
                let x = cur.vertex()?;
                cur.finish()?;
                g.remove_vertex(x).or_else(|e| err(line, e.to_string()))?;
            }
            "remove_edge" | "contract" | "forbid_edge" => {
                let a = cur.vertex()?;
                let b = cur.vertex()?;
                cur.finish()?;
                in_bounds(a)?;
                in_bounds(b)?;
                let done = match keyword {
                    "remove_edge" => g.remove_edge(a, b),
                    "contract" => g.contract(a, b),
                    _ => {
                        forbidden.push((line, Edge::new(a, b)));
                        Ok(())
                    }
                };
                done.or_else(|e| err(line, e.to_string()))?;
            }
            "demand" => {
                let kind = cur.word();
                let source = in_bounds(cur.vertex()?)?;
                let demand = match kind {
                    "pair" => Demand::pair(source, in_bounds(cur.vertex()?)?),
                    "escape" => {
                        cur.expect("->")?;
                        cur.expect("{")?;
                        let mut exits = BTreeSet::new();
                        if !cur.eat("}") {
                            loop {
                                exits.insert(in_bounds(cur.vertex()?)?);
                                if cur.eat("}") {
                                    break;
                                }
                                cur.expect(",")?;
                            }
                        }
                        let group = if cur.eat("[") {
                            let w = cur.word();
                            if w != "group" {
                                return err(line, format!("expected `group`, found `{w}`"));
                            }
                            let n = cur.number("group number")?;
                            cur.expect("]")?;
                            Some(n)
                        } else {
                            None
                        };
                        Demand::Escape { source, exits, group }
                    }
                    other => return err(line, format!("unknown demand kind `{other}`")),
                };
                cur.finish()?;
                demands.push((line, demand));
            }
            "" => return err(line, format!("expected a directive, found `{body}`")),
            other => return err(line, format!("unknown directive `{other}`")),
        }
    }

    let Some(graph) = graph else {
        return err(last.max(1), "missing `grid` directive");
    };
    let inst = Instance {
        graph,
        forbidden: forbidden.iter().map(|&(_, e)| e).collect(),
        demands: demands.iter().map(|(_, d)| d.clone()).collect(),
    };
    if let Err(e) = inst.validate() {
        let line = match &e {
            InstanceError::MissingEndpoint { demand, .. } | InstanceError::EmptyExits { demand } => demands[*demand].0,
            InstanceError::ForbiddenOutsideGraph(edge) => {
                forbidden.iter().find(|(_, f)| f == edge).map_or(last, |&(l, _)| l)
            }
            _ => last,
        };
        return err(line, e.to_string());
    }
    Ok(inst)
}

/// Directives that rebuild `g` from the full grid: removed vertices, then
/// removed edges, then contractions deepest-first along a spanning tree of
/// each class.
fn graph_directives(g: &GridGraph, out: &mut String) {
    let full = make_grid(g.rows(), g.cols()).expect("dimensions of an existing graph");
    let present: BTreeSet<Vertex> = g.vertices().chain(g.contraction_map().keys().copied()).collect();
    for x in full.vertices().filter(|x| !present.contains(x)) {
        writeln!(out, "remove_vertex {x}").unwrap();
    }
    for e in full.original_edges() {
        if present.contains(&e.a) && present.contains(&e.b) && !g.original_edges().contains(e) {
            writeln!(out, "remove_edge {} {}", e.a, e.b).unwrap();
        }
    }

    let mut classes: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for (&y, &rep) in g.contraction_map() {
        classes.entry(rep).or_default().insert(y);
    }
    for (rep, members) in classes {
        // BFS from the representative over surviving edges inside the class.
        let mut depth: BTreeMap<Vertex, (usize, Vertex)> = BTreeMap::new();
        let mut frontier = vec![rep];
        let mut seen = BTreeSet::from([rep]);
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for x in frontier {
                for e in g.original_edges().iter().filter(|e| e.touches(x)) {
                    let y = e.other(x);
                    if members.contains(&y) && seen.insert(y) {
                        depth.insert(y, (d, x));
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut order: Vec<(usize, Vertex, Vertex)> = depth.into_iter().map(|(y, (d, p))| (d, y, p)).collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, y, parent) in order {
            writeln!(out, "contract {y} {parent}").unwrap();
        }
    }
}

/// Canonical text of `inst`; parses back to an equal instance.
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = format!("grid {} {}\n", g.rows(), g.cols());
    graph_directives(g, &mut out);
    for e in &inst.forbidden {
        writeln!(out, "forbid_edge {} {}", e.a, e.b).unwrap();
    }
    for d in &inst.demands {
        match d {
            Demand::Pair { source, target } => writeln!(out, "demand pair {source} {target}").unwrap(),
            Demand::Escape { source, exits, group } => {
                let list: Vec<String> = exits.iter().map(Vertex::to_string).collect();
                write!(out, "demand escape {source} -> {{{}}}", list.join(", ")).unwrap();
                if let Some(n) = group {
                    write!(out, " [group {n}]").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile, ParseError> {
    let mut paths = Vec::new();
    let mut infeasible = None;
    for (line, body) in lines(text) {
        if let Some(l) = infeasible {
            return err(line, format!("nothing may follow `infeasible` (line {l})"));
        }
        let mut cur = Cursor { rest: body, line };
        match cur.word() {
            "infeasible" => {
                cur.finish()?;
                if !paths.is_empty() {
                    return err(line, "`infeasible` must be the only line");
                }
                infeasible = Some(line);
            }
            "path" => {
                let k: usize = cur.number("path index")?;
                if k != paths.len() {
                    return err(line, format!("expected path {}, found path {k}", paths.len()));
                }
                cur.expect(":")?;
                let mut path = Vec::new();
                while !cur.at_end() {
                    path.push(cur.vertex()?);
                }
                if path.is_empty() {
                    return err(line, format!("path {k} has no vertices"));
                }
                paths.push(path);
            }
            other => return err(line, format!("expected `path K:` or `infeasible`, found `{other}`")),
        }
    }
    Ok(match infeasible {
        Some(_) => CertificateFile::Infeasible,
        None => CertificateFile::Paths(PathSystem::new(paths)),
    })
}

pub fn write_certificate(cert: &CertificateFile) -> String {
    match cert {
        CertificateFile::Infeasible => "infeasible\n".to_string(),
        CertificateFile::Paths(ps) => {
            let mut out = String::new();
            for (k, p) in ps.paths.iter().enumerate() {
                write!(out, "path {k}:").unwrap();
                for x in p {
                    write!(out, " {x}").unwrap();
                }
                out.push('\n');
            }
            out
        }
    }
}
