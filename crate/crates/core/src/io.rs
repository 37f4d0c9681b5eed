//! Text and JSON input formats.
//!
//! Every format refers to vertices by label; [`Labels`] maps labels to the
//! dense ids used everywhere else, in order of first appearance in the edge
//! list.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, Vertex};
use crate::kappa::{KappaFamily, KappaQSet};
use crate::quasiconvex::{QSet, QSetFamily};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Labels {
    names: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, Vertex>,
}

impl Labels {
    /// Labels `0..n` named by their ids.
    pub fn identity(n: usize) -> Self {
        let mut l = Labels::default();
        for v in 0..n {
            l.intern(&v.to_string());
        }
        l
    }

    pub fn intern(&mut self, label: &str) -> Vertex {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.names.len();
        self.names.push(label.to_string());
        self.index.insert(label.to_string(), v);
        v
    }

    pub fn get(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn resolve(&self, label: &str, line: usize, what: &str) -> Result<Vertex> {
        self.get(label).ok_or_else(|| Error::Parse {
            line,
            msg: format!("unknown vertex label {label:?} in {what}"),
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank, non-comment lines as `(1-based line number, tokens)`.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

/// Parses a whitespace-separated edge list. Repeated edges are merged;
/// self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Labels)> {
    let mut labels = Labels::default();
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, tok) in data_lines(text) {
        if tok.len() != 2 {
            return Err(parse_err(line, format!("expected two vertex labels, found {}", tok.len())));
        }
        if tok[0] == tok[1] {
            return Err(parse_err(line, format!("self-loop at {:?}", tok[0])));
        }
        let (u, v) = (labels.intern(tok[0]), labels.intern(tok[1]));
        if seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    if edges.is_empty() {
        return Err(parse_err(0, "edge list has no edges"));
    }
    let g = Graph::from_edges(labels.len(), &edges)?;
    Ok((g, labels))
}

pub fn write_edge_list(g: &Graph, labels: &Labels) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", labels.name(u), labels.name(v));
    }
    out
}

/// Label as written in JSON: a string or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Str(String),
    Int(i64),
}

impl JsonLabel {
    fn text(&self) -> String {
        match self {
            JsonLabel::Str(s) => s.clone(),
            JsonLabel::Int(i) => i.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    name: String,
    vertices: Vec<JsonLabel>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKappa {
    name: String,
    parts: Vec<Vec<JsonLabel>>,
}

/// A named list of vertex labels, before resolution against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSet {
    pub name: String,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedKappaSet {
    pub name: String,
    pub parts: Vec<Vec<String>>,
}

fn json_err(e: serde_json::Error) -> Error {
    parse_err(e.line(), e.to_string())
}

/// `[{"name": ..., "vertices": [labels]}, ...]`
pub fn parse_family_json(text: &str) -> Result<Vec<NamedSet>> {
    let raw: Vec<RawSet> = serde_json::from_str(text).map_err(json_err)?;
    if raw.is_empty() {
        return Err(parse_err(0, "family is empty"));
    }
    raw.into_iter()
        .map(|s| {
            if s.vertices.is_empty() {
                return Err(parse_err(0, format!("set {:?} has no vertices", s.name)));
            }
            Ok(NamedSet {
                name: s.name,
                vertices: s.vertices.iter().map(JsonLabel::text).collect(),
            })
        })
        .collect()
}

/// `[{"name": ..., "parts": [[labels], ...]}, ...]`
pub fn parse_kappa_family_json(text: &str) -> Result<Vec<NamedKappaSet>> {
    let raw: Vec<RawKappa> = serde_json::from_str(text).map_err(json_err)?;
    if raw.is_empty() {
        return Err(parse_err(0, "family is empty"));
    }
    raw.into_iter()
        .map(|s| {
            if s.parts.is_empty() || s.parts.iter().any(Vec::is_empty) {
                return Err(parse_err(0, format!("member {:?} has an empty part list or part", s.name)));
            }
            Ok(NamedKappaSet {
                name: s.name,
                parts: s.parts.iter().map(|p| p.iter().map(JsonLabel::text).collect()).collect(),
            })
        })
        .collect()
}

pub fn family_from_named(sets: &[NamedSet], labels: &Labels, dm: &DistanceMatrix) -> Result<QSetFamily> {
    let qs = sets
        .iter()
        .map(|s| {
            let ids = s
                .vertices
                .iter()
                .map(|l| labels.resolve(l, 0, &format!("set {:?}", s.name)))
                .collect::<Result<Vec<_>>>()?;
            QSet::new(dm, s.name.clone(), ids)
        })
        .collect::<Result<Vec<_>>>()?;
    QSetFamily::new(qs)
}

pub fn kappa_family_from_named(sets: &[NamedKappaSet], labels: &Labels, dm: &DistanceMatrix) -> Result<KappaFamily> {
    let members = sets
        .iter()
        .map(|s| {
            let parts = s
                .parts
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let ids = p
                        .iter()
                        .map(|l| labels.resolve(l, 0, &format!("member {:?}", s.name)))
                        .collect::<Result<Vec<_>>>()?;
                    QSet::new(dm, format!("{}[{k}]", s.name), ids)
                })
                .collect::<Result<Vec<_>>>()?;
            KappaQSet::new(s.name.clone(), parts)
        })
        .collect::<Result<Vec<_>>>()?;
    KappaFamily::new(members)
}

/// One `labelA labelB` pair per line, for commodity and demand files.
/// Returns `(line, a, b)` triples.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (line, tok) in data_lines(text) {
        if tok.len() != 2 {
            return Err(parse_err(line, format!("expected two vertex labels, found {}", tok.len())));
        }
        if tok[0] == tok[1] {
            return Err(parse_err(line, format!("pair joins {:?} to itself", tok[0])));
        }
        out.push((line, tok[0].to_string(), tok[1].to_string()));
    }
    if out.is_empty() {
        return Err(parse_err(0, "no pairs"));
    }
    Ok(out)
}

pub fn resolve_pairs(pairs: &[(usize, String, String)], labels: &Labels) -> Result<Vec<(Vertex, Vertex)>> {
    pairs
        .iter()
        .map(|(line, a, b)| Ok((labels.resolve(a, *line, "pair")?, labels.resolve(b, *line, "pair")?)))
        .collect()
}

/// One `label radius` ball per line.
pub fn parse_balls(text: &str) -> Result<Vec<(usize, String, u32)>> {
    let mut out = Vec::new();
    for (line, tok) in data_lines(text) {
        if tok.len() != 2 {
            return Err(parse_err(line, format!("expected a label and a radius, found {} fields", tok.len())));
        }
        let r = tok[1]
            .parse::<u32>()
            .map_err(|e| parse_err(line, format!("bad radius {:?}: {e}", tok[1])))?;
        out.push((line, tok[0].to_string(), r));
    }
    if out.is_empty() {
        return Err(parse_err(0, "no balls"));
    }
    Ok(out)
}

/// Comma- or space-separated labels, as given on the command line.
pub fn parse_label_list(text: &str, labels: &Labels) -> Result<Vec<Vertex>> {
    let ids = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|l| labels.resolve(l, 0, "vertex list"))
        .collect::<Result<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(parse_err(0, "vertex list is empty"));
    }
    Ok(ids)
}
