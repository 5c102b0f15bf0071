//! Multigraphs and their graphic matroids.
//!
//! Edge files are plain text, one edge per line: `label u v`. A line
//! `label u u` declares a loop, and lines starting with `#` are comments.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::bits::MAX_GROUND;
use crate::error::{Error, Result};
use crate::matroid::{GroundSet, Matroid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub u: String,
    pub v: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Undirected multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new<V, S>(vertices: V, edges: Vec<Edge>) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Multigraph {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: Vec::with_capacity(edges.len()),
        };
        for e in edges {
            g.push_edge(e)?;
        }
        Ok(g)
    }

    /// Builds a graph from `(label, u, v)` triples; vertices are the endpoints.
    pub fn from_edges<'a, I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let mut g = Multigraph::default();
        for (label, u, v) in edges {
            g.vertices.insert(u.to_string());
            g.vertices.insert(v.to_string());
            g.push_edge(Edge {
                label: label.to_string(),
                u: u.to_string(),
                v: v.to_string(),
            })?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, e: Edge) -> Result<()> {
        if self.edges.iter().any(|f| f.label == e.label) {
            return Err(Error::DuplicateLabel(e.label));
        }
        for end in [&e.u, &e.v] {
            if !self.vertices.contains(end) {
                return Err(Error::InvalidParameters(format!(
                    "edge `{}` has unknown endpoint `{end}`",
                    e.label
                )));
            }
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut g = Multigraph::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [label, u, v] = fields[..] else {
                return Err(Error::parse(
                    format!("line {}", no + 1),
                    format!("expected `label u v`, found `{line}`"),
                ));
            };
            g.vertices.insert(u.to_string());
            g.vertices.insert(v.to_string());
            g.push_edge(Edge {
                label: label.into(),
                u: u.into(),
                v: v.into(),
            })
            .map_err(|e| Error::parse(format!("line {}", no + 1), e))?;
        }
        Ok(g)
    }

    /// Edge-list text; isolated vertices are not representable and are dropped.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.label, e.u, e.v);
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, label: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label)
    }

    fn check_known<S: AsRef<str>>(&self, t: &[S]) -> Result<()> {
        match t.iter().find(|l| self.edge(l.as_ref()).is_none()) {
            Some(l) => Err(Error::UnknownElement(l.as_ref().to_string())),
            None => Ok(()),
        }
    }

    /// Removes the edges in `t`, keeping every vertex.
    pub fn delete<S: AsRef<str>>(&self, t: &[S]) -> Result<Multigraph> {
        self.check_known(t)?;
        let drop: BTreeSet<&str> = t.iter().map(AsRef::as_ref).collect();
        Ok(Multigraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| !drop.contains(e.label.as_str()))
                .cloned()
                .collect(),
        })
    }

    /// Contracts the edges in `t` in ascending label order. A non-loop edge
    /// merges its endpoint with the larger label into the one with the
    /// smaller label; a loop edge is simply removed. Parallel edges and
    /// loops created along the way are kept.
    pub fn contract<S: AsRef<str>>(&self, t: &[S]) -> Result<Multigraph> {
        self.check_known(t)?;
        let order: BTreeSet<&str> = t.iter().map(AsRef::as_ref).collect();
        let mut g = self.clone();
        for label in order {
            let pos = g.edges.iter().position(|e| e.label == label).unwrap();
            let e = g.edges.remove(pos);
            if e.is_loop() {
                continue;
            }
            let (keep, gone) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            for f in &mut g.edges {
                if f.u == gone {
                    f.u = keep.clone();
                }
                if f.v == gone {
                    f.v = keep.clone();
                }
            }
            g.vertices.remove(&gone);
        }
        Ok(g)
    }

    /// The cycle matroid: ground set the edge labels in edge order, bases
    /// the spanning forests.
    pub fn graphic_matroid(&self) -> Result<Matroid> {
        let n = self.edges.len();
        if n > MAX_GROUND {
            return Err(Error::CapacityExceeded {
                what: "edge count",
                actual: n,
                limit: MAX_GROUND,
            });
        }
        let vid: HashMap<&str, usize> = self.vertices().zip(0..).collect();
        let ends: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (vid[e.u.as_str()], vid[e.v.as_str()]))
            .collect();
        let mut forest = UnionFind::new(self.vertices.len());
        let mut rank = 0;
        for &(u, v) in &ends {
            if forest.union(u, v) {
                rank += 1;
            }
        }
        let mut bases = Vec::new();
        spanning_forests(
            &ends,
            0,
            0,
            rank,
            UnionFind::new(self.vertices.len()),
            &mut bases,
        );
        let ground = GroundSet::new(self.edges.iter().map(|e| e.label.clone()))?;
        Ok(Matroid::from_bases_unchecked(ground, bases))
    }
}

/// Enumerates acyclic edge sets of size `target` extending `chosen`, using
/// edges from index `next` on.
fn spanning_forests(
    ends: &[(usize, usize)],
    next: usize,
    chosen: u64,
    target: usize,
    uf: UnionFind,
    out: &mut Vec<u64>,
) {
    let have = chosen.count_ones() as usize;
    if have == target {
        out.push(chosen);
        return;
    }
    if ends.len() - next < target - have {
        return;
    }
    let (u, v) = ends[next];
    let mut with = uf.clone();
    if with.union(u, v) {
        spanning_forests(ends, next + 1, chosen | 1 << next, target, with, out);
    }
    spanning_forests(ends, next + 1, chosen, target, uf, out);
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}
