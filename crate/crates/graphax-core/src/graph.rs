//! Edge-labeled directed graphs (no loops, no multiple edges, nonzero labels)
//! together with the constructions used throughout the crate: incidence graphs
//! of graphs and partial linear spaces, Cayley graphs, complete graphs, and the
//! contraction of an ideal subgraph.
//!
//! Vertex order is significant: it fixes the basis order of the graph algebra
//! and is preserved by every constructor, so reports and matrices are
//! reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, Scalar};
use crate::frucht::CayleyTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("loop at vertex {0:?}")]
    LoopEdge(String),
    #[error("duplicate edge ({0:?}, {1:?})")]
    DuplicateEdge(String, String),
    #[error("zero label on edge ({0:?}, {1:?})")]
    ZeroLabel(String, String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("label from a different field on edge ({0:?}, {1:?})")]
    FieldMismatch(String, String),
    #[error("cannot parse scalar: {0}")]
    BadScalar(#[from] crate::field::FieldError),
    #[error("{0} is not an ideal subgraph: {1}")]
    NotIdealSubgraph(String, String),
    #[error("line {0} has fewer than 2 points")]
    LineTooSmall(usize),
    #[error("points {0:?} and {1:?} lie on two common lines")]
    PointsOnTwoLines(String, String),
    #[error("generators do not generate the group")]
    NotGenerating,
    #[error("identity element used as a generator")]
    IdentityGenerator,
    #[error("vertex name collision: {0:?}")]
    NameCollision(String),
}

/// A possibly-infinite extended natural, used for girth and degree bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(u64),
    Infinity,
}

impl Extent {
    pub fn finite(self) -> Option<u64> {
        match self {
            Extent::Finite(n) => Some(n),
            Extent::Infinity => None,
        }
    }
}

impl std::fmt::Display for Extent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extent::Finite(n) => write!(f, "{n}"),
            Extent::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(n) => s.serialize_u64(*n),
            Extent::Infinity => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Extent::Finite(n)),
            Raw::S(s) if s == "infinity" => Ok(Extent::Infinity),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad extent {s:?}"))),
        }
    }
}

/// An edge-labeled directed graph over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    field: FieldCtx,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Scalar>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    und_adj: Vec<Vec<usize>>,
}

impl LabeledDigraph {
    pub fn new<I>(field: FieldCtx, vertices: Vec<String>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (String, String, Scalar)>,
    {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut by_index = Vec::new();
        for (t, h, label) in edges {
            let ti = *index
                .get(&t)
                .ok_or_else(|| GraphError::UnknownVertex(t.clone()))?;
            let hi = *index
                .get(&h)
                .ok_or_else(|| GraphError::UnknownVertex(h.clone()))?;
            by_index.push((ti, hi, label));
        }
        Self::from_indexed(field, vertices, index, by_index)
    }

    pub fn from_indexed_edges(
        field: FieldCtx,
        vertices: Vec<String>,
        edges: Vec<(usize, usize, Scalar)>,
    ) -> Result<Self, GraphError> {
        let index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        if index.len() != vertices.len() {
            let dup = vertices
                .iter()
                .find(|v| vertices.iter().filter(|w| w == v).count() > 1)
                .unwrap();
            return Err(GraphError::DuplicateVertex(dup.clone()));
        }
        Self::from_indexed(field, vertices, index, edges)
    }

    fn from_indexed(
        field: FieldCtx,
        vertices: Vec<String>,
        index: HashMap<String, usize>,
        edges: Vec<(usize, usize, Scalar)>,
    ) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut map = BTreeMap::new();
        for (t, h, label) in edges {
            if t == h {
                return Err(GraphError::LoopEdge(vertices[t].clone()));
            }
            if label.is_zero() {
                return Err(GraphError::ZeroLabel(
                    vertices[t].clone(),
                    vertices[h].clone(),
                ));
            }
            if label.field() != field {
                return Err(GraphError::FieldMismatch(
                    vertices[t].clone(),
                    vertices[h].clone(),
                ));
            }
            if map.insert((t, h), label).is_some() {
                return Err(GraphError::DuplicateEdge(
                    vertices[t].clone(),
                    vertices[h].clone(),
                ));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut und: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(t, h) in map.keys() {
            out_adj[t].push(h);
            in_adj[h].push(t);
            und[t].insert(h);
            und[h].insert(t);
        }
        for adj in in_adj.iter_mut() {
            adj.sort_unstable();
        }
        let und_adj = und.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(LabeledDigraph {
            field,
            vertices,
            index,
            edges: map,
            out_adj,
            in_adj,
            und_adj,
        })
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn label(&self, tail: usize, head: usize) -> Option<&Scalar> {
        self.edges.get(&(tail, head))
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        self.edges.contains_key(&(tail, head))
    }

    /// Edges in canonical (tail, head) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.edges.iter().map(|(&(t, h), l)| (t, h, l))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Neighbors in the underlying undirected graph, sorted.
    pub fn underlying_neighbors(&self, v: usize) -> &[usize] {
        &self.und_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Distinct labels, sorted.
    pub fn label_set(&self) -> Vec<Scalar> {
        let set: BTreeSet<Scalar> = self.edges.values().cloned().collect();
        set.into_iter().collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges
            .keys()
            .all(|&(t, h)| self.edges.contains_key(&(h, t)))
    }

    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.underlying_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Every ordered pair of distinct vertices is an edge.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1)
    }

    /// Girth of the underlying undirected graph, by BFS from every vertex.
    pub fn girth(&self) -> Extent {
        let n = self.vertex_count();
        let mut best: Option<u64> = None;
        for s in 0..n {
            let mut dist = vec![u64::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // cycles through deeper layers can only be longer
                    if dist[u].saturating_mul(2) >= b {
                        continue;
                    }
                }
                for &w in self.underlying_neighbors(u) {
                    if dist[w] == u64::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        match best {
            Some(g) => Extent::Finite(g),
            None => Extent::Infinity,
        }
    }

    pub fn profile(&self) -> GraphProfile {
        let n = self.vertex_count();
        let degrees: BTreeMap<String, (u64, u64)> = (0..n)
            .map(|v| {
                (
                    self.vertices[v].clone(),
                    (self.in_degree(v) as u64, self.out_degree(v) as u64),
                )
            })
            .collect();
        let und_degrees: Vec<u64> = (0..n).map(|v| self.und_adj[v].len() as u64).collect();
        let (k_min, k_max) = match (und_degrees.iter().min(), und_degrees.iter().max()) {
            (Some(&lo), Some(&hi)) => (Extent::Finite(lo), Extent::Finite(hi)),
            _ => (Extent::Infinity, Extent::Infinity),
        };
        GraphProfile {
            is_symmetric: self.is_symmetric(),
            weakly_connected: self.is_weakly_connected(),
            girth: self.girth(),
            k_min,
            k_max,
            per_vertex_degrees: degrees,
        }
    }

    /// The reversed graph: edge `(y, x)` carries the label of `(x, y)`, so the
    /// resulting algebra is the opposite algebra of this one.
    pub fn reversed(&self) -> LabeledDigraph {
        let edges = self
            .edges
            .iter()
            .map(|(&(t, h), l)| (h, t, l.clone()))
            .collect();
        LabeledDigraph::from_indexed(self.field, self.vertices.clone(), self.index.clone(), edges)
            .expect("reversal preserves validity")
    }

    /// Contracts an ideal subgraph `Y` to a single vertex named after its
    /// members, as in the quotient-graph construction. `Y` is re-verified.
    pub fn contract_ideal_subgraph(
        &self,
        y: &BTreeSet<usize>,
    ) -> Result<LabeledDigraph, GraphError> {
        let witness = crate::structure::check_ideal_subgraph(self, y).map_err(|reason| {
            let names: Vec<&str> = y.iter().map(|&v| self.vertex_name(v)).collect();
            GraphError::NotIdealSubgraph(format!("{{{}}}", names.join(",")), reason)
        })?;
        let contracted_name = {
            let names: Vec<&str> = y.iter().map(|&v| self.vertex_name(v)).collect();
            names.join("+")
        };
        let mut vertices: Vec<String> = Vec::new();
        let mut old_to_new = vec![usize::MAX; self.vertex_count()];
        for (v, slot) in old_to_new.iter_mut().enumerate() {
            if !y.contains(&v) {
                *slot = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        if vertices.contains(&contracted_name) {
            return Err(GraphError::NameCollision(contracted_name));
        }
        let contracted = vertices.len();
        vertices.push(contracted_name);
        let mut edges = Vec::new();
        for (&(t, h), label) in &self.edges {
            if !y.contains(&t) && !y.contains(&h) {
                edges.push((old_to_new[t], old_to_new[h], label.clone()));
            }
        }
        for (&x, labels) in &witness.external_labels {
            if let Some(alpha) = &labels.0 {
                edges.push((old_to_new[x], contracted, alpha.clone()));
            }
            if let Some(beta) = &labels.1 {
                edges.push((contracted, old_to_new[x], beta.clone()));
            }
        }
        LabeledDigraph::from_indexed_edges(self.field, vertices, edges)
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            field: self.field,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|(&(t, h), l)| {
                    (
                        self.vertices[t].clone(),
                        self.vertices[h].clone(),
                        l.to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: RawGraph = serde_json::from_str(text)
            .map_err(|e| GraphError::InvalidLabel(format!("bad graph JSON: {e}")))?;
        raw.build()
    }

    /// DOT rendering with labels as edge attributes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  {:?};", v);
        }
        for (&(t, h), l) in &self.edges {
            let _ = writeln!(
                s,
                "  {:?} -> {:?} [label={:?}];",
                self.vertices[t],
                self.vertices[h],
                l.to_string()
            );
        }
        s.push_str("}\n");
        s
    }
}

/// The JSON wire form of a labeled digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub field: FieldCtx,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl RawGraph {
    pub fn build(&self) -> Result<LabeledDigraph, GraphError> {
        let mut edges = Vec::new();
        for (t, h, text) in &self.edges {
            let label = self.field.parse(text)?;
            edges.push((t.clone(), h.clone(), label));
        }
        LabeledDigraph::new(self.field, self.vertices.clone(), edges)
    }
}

/// One defect found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    DuplicateVertex {
        vertex: String,
    },
    UnknownVertex {
        vertex: String,
    },
    LoopEdge {
        vertex: String,
    },
    DuplicateEdge {
        tail: String,
        head: String,
    },
    ZeroLabel {
        tail: String,
        head: String,
    },
    BadScalar {
        tail: String,
        head: String,
        text: String,
    },
}

/// Report-style validation result for raw graph data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub weakly_connected: bool,
    pub issues: Vec<ValidationIssue>,
}

/// Checks raw graph data for loops, multiple edges, zero or malformed labels,
/// and reports weak connectivity of the underlying graph.
pub fn validate(raw: &RawGraph) -> ValidationReport {
    let mut issues = Vec::new();
    let mut index = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            issues.push(ValidationIssue::DuplicateVertex { vertex: v.clone() });
        }
    }
    let n = raw.vertices.len();
    let mut seen_edges = BTreeSet::new();
    let mut und: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (t, h, text) in &raw.edges {
        let ti = index.get(t).copied();
        let hi = index.get(h).copied();
        if ti.is_none() {
            issues.push(ValidationIssue::UnknownVertex { vertex: t.clone() });
        }
        if hi.is_none() {
            issues.push(ValidationIssue::UnknownVertex { vertex: h.clone() });
        }
        let (Some(ti), Some(hi)) = (ti, hi) else {
            continue;
        };
        if ti == hi {
            issues.push(ValidationIssue::LoopEdge { vertex: t.clone() });
            continue;
        }
        if !seen_edges.insert((ti, hi)) {
            issues.push(ValidationIssue::DuplicateEdge {
                tail: t.clone(),
                head: h.clone(),
            });
            continue;
        }
        match raw.field.parse(text) {
            Ok(label) if label.is_zero() => {
                issues.push(ValidationIssue::ZeroLabel {
                    tail: t.clone(),
                    head: h.clone(),
                });
            }
            Ok(_) => {}
            Err(_) => issues.push(ValidationIssue::BadScalar {
                tail: t.clone(),
                head: h.clone(),
                text: text.clone(),
            }),
        }
        und[ti].insert(hi);
        und[hi].insert(ti);
    }
    let weakly_connected = if n == 0 {
        true
    } else {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &und[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    };
    ValidationReport {
        valid: issues.is_empty(),
        weakly_connected,
        issues,
    }
}

/// Structural summary of a labeled digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphProfile {
    pub is_symmetric: bool,
    pub weakly_connected: bool,
    pub girth: Extent,
    pub k_min: Extent,
    pub k_max: Extent,
    pub per_vertex_degrees: BTreeMap<String, (u64, u64)>,
}

/// An undirected simple graph, used as construction input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: Vec<String>) -> Result<Self, GraphError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        Ok(SimpleGraph {
            vertices,
            index,
            edges: BTreeSet::new(),
        })
    }

    pub fn add_vertex(&mut self, name: String) -> Result<usize, GraphError> {
        if self.index.contains_key(&name) {
            return Err(GraphError::DuplicateVertex(name));
        }
        let i = self.vertices.len();
        self.index.insert(name.clone(), i);
        self.vertices.push(name);
        Ok(i)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(self.vertices[u].clone()));
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(
                self.vertices[key.0].clone(),
                self.vertices[key.1].clone(),
            ));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    /// Views the graph as a partial linear space whose lines are the edges.
    pub fn to_pls(&self) -> PartialLinearSpace {
        let lines = self.edges.iter().map(|&(u, v)| vec![u, v]).collect();
        PartialLinearSpace {
            points: self.vertices.clone(),
            index: self.index.clone(),
            lines,
        }
    }

    /// Symmetric labeled digraph with every directed edge carrying `label`.
    pub fn to_symmetric_digraph(
        &self,
        field: FieldCtx,
        label: &Scalar,
    ) -> Result<LabeledDigraph, GraphError> {
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            edges.push((u, v, label.clone()));
            edges.push((v, u, label.clone()));
        }
        LabeledDigraph::from_indexed_edges(field, self.vertices.clone(), edges)
    }
}

/// Points and lines with any two points on at most one common line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLinearSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    lines: Vec<Vec<usize>>,
}

/// The JSON wire form of a partial linear space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawPls {
    pub points: Vec<String>,
    pub lines: Vec<Vec<String>>,
}

impl PartialLinearSpace {
    pub fn new(points: Vec<String>, lines: Vec<Vec<String>>) -> Result<Self, GraphError> {
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(p.clone()));
            }
        }
        let mut idx_lines = Vec::new();
        for (li, line) in lines.iter().enumerate() {
            let mut pts = Vec::new();
            for p in line {
                let i = *index
                    .get(p)
                    .ok_or_else(|| GraphError::UnknownVertex(p.clone()))?;
                pts.push(i);
            }
            pts.sort_unstable();
            pts.dedup();
            if pts.len() < 2 || pts.len() != line.len() {
                return Err(GraphError::LineTooSmall(li));
            }
            idx_lines.push(pts);
        }
        let mut pair_seen = BTreeSet::new();
        for line in &idx_lines {
            for i in 0..line.len() {
                for j in i + 1..line.len() {
                    if !pair_seen.insert((line[i], line[j])) {
                        return Err(GraphError::PointsOnTwoLines(
                            points[line[i]].clone(),
                            points[line[j]].clone(),
                        ));
                    }
                }
            }
        }
        Ok(PartialLinearSpace {
            points,
            index,
            lines: idx_lines,
        })
    }

    pub fn from_raw(raw: &RawPls) -> Result<Self, GraphError> {
        Self::new(raw.points.clone(), raw.lines.clone())
    }

    pub fn to_raw(&self) -> RawPls {
        RawPls {
            points: self.points.clone(),
            lines: self
                .lines
                .iter()
                .map(|l| l.iter().map(|&p| self.points[p].clone()).collect())
                .collect(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Number of lines through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.points.len()];
        for line in &self.lines {
            for &p in line {
                deg[p] += 1;
            }
        }
        deg
    }

    pub fn all_lines_of_size(&self, k: usize) -> bool {
        self.lines.iter().all(|l| l.len() == k)
    }

    /// Connectivity of the point-line incidence structure.
    pub fn is_connected(&self) -> bool {
        let n = self.points.len() + self.lines.len();
        if n == 0 {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (li, line) in self.lines.iter().enumerate() {
            let lv = self.points.len() + li;
            for &p in line {
                adj[p].push(lv);
                adj[lv].push(p);
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Name used for the i-th line vertex in the incidence graph.
    pub fn line_name(&self, li: usize) -> String {
        let members: Vec<&str> = self.lines[li]
            .iter()
            .map(|&p| self.points[p].as_str())
            .collect();
        format!("L({})", members.join(","))
    }
}

/// The directed incidence graph: vertices are points and lines, each incident
/// pair `(p, l)` contributes the edge `(p, l)` labeled `alpha` and `(l, p)`
/// labeled `beta`. The result is symmetric and bipartite with girth at least 6.
pub fn incidence_graph(
    pls: &PartialLinearSpace,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<LabeledDigraph, GraphError> {
    if alpha.is_zero() {
        return Err(GraphError::InvalidLabel("alpha must be nonzero".into()));
    }
    if beta.is_zero() {
        return Err(GraphError::InvalidLabel("beta must be nonzero".into()));
    }
    if alpha.field() != beta.field() {
        return Err(GraphError::InvalidLabel(
            "alpha and beta from different fields".into(),
        ));
    }
    let field = alpha.field();
    let mut vertices = pls.points.to_vec();
    for li in 0..pls.line_count() {
        let name = pls.line_name(li);
        if pls.index.contains_key(&name) {
            return Err(GraphError::NameCollision(name));
        }
        vertices.push(name);
    }
    let mut edges = Vec::new();
    for (li, line) in pls.lines.iter().enumerate() {
        let lv = pls.point_count() + li;
        for &p in line {
            edges.push((p, lv, alpha.clone()));
            edges.push((lv, p, beta.clone()));
        }
    }
    LabeledDigraph::from_indexed_edges(field, vertices, edges)
}

/// The Cayley graph of a finite group for the given generators: one edge
/// `(g, g*s)` labeled `labels[s]` per element `g` and generator `s`.
pub fn cayley_graph(
    group: &CayleyTable,
    gens: &[usize],
    labels: &BTreeMap<usize, Scalar>,
) -> Result<LabeledDigraph, GraphError> {
    for &s in gens {
        if s == group.identity() {
            return Err(GraphError::IdentityGenerator);
        }
        let label = labels
            .get(&s)
            .ok_or_else(|| GraphError::InvalidLabel(format!("no label for generator {s}")))?;
        if label.is_zero() {
            return Err(GraphError::ZeroLabel(
                group.element_name(0).to_string(),
                group.element_name(group.mul(0, s)).to_string(),
            ));
        }
    }
    if !group.generates(gens) {
        return Err(GraphError::NotGenerating);
    }
    let field = labels
        .values()
        .next()
        .map(|l| l.field())
        .ok_or(GraphError::NotGenerating)?;
    let vertices: Vec<String> = (0..group.order())
        .map(|g| group.element_name(g).to_string())
        .collect();
    let mut edges = Vec::new();
    for g in 0..group.order() {
        for &s in gens {
            edges.push((g, group.mul(g, s), labels[&s].clone()));
        }
    }
    LabeledDigraph::from_indexed_edges(field, vertices, edges)
}

/// Symmetric complete digraph on `n` vertices, all labels equal.
pub fn complete_graph(
    n: usize,
    label: &Scalar,
    ctx: FieldCtx,
) -> Result<LabeledDigraph, GraphError> {
    if label.is_zero() {
        return Err(GraphError::InvalidLabel("label must be nonzero".into()));
    }
    if label.field() != ctx {
        return Err(GraphError::InvalidLabel(
            "label not in the given field".into(),
        ));
    }
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                edges.push((i, j, label.clone()));
            }
        }
    }
    LabeledDigraph::from_indexed_edges(ctx, vertices, edges)
}
