//! Mixed graphs with stable integer vertex ids, plus the boundaried and
//! annotated variants that the reduction pipelines operate on.
//!
//! Graphs are simple and loopless. Undirected edges and directed arcs may
//! coexist in one graph (auxiliary constructions need that). Vertex ids are
//! never reused: reductions delete vertices and mint fresh ones above the
//! current maximum, so traces stay replayable.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type VertexId = u32;

fn norm(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    verts: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
    arcs: BTreeSet<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I: IntoIterator<Item = VertexId>>(ids: I) -> Self {
        let mut g = Self::new();
        for v in ids {
            g.add_vertex(v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.verts.insert(v);
    }

    /// Smallest id strictly above every vertex ever seen in this graph.
    pub fn fresh_id(&self) -> VertexId {
        self.verts.iter().next_back().map_or(0, |m| m + 1)
    }

    pub fn add_fresh_vertex(&mut self) -> VertexId {
        let v = self.fresh_id();
        self.add_vertex(v);
        v
    }

    /// Adds an undirected edge; endpoints are added if missing. Loops are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u != v, "loop at vertex {u}");
        self.verts.insert(u);
        self.verts.insert(v);
        self.edges.insert(norm(u, v));
    }

    /// Adds a directed arc from `u` to `v`; endpoints are added if missing.
    pub fn add_arc(&mut self, u: VertexId, v: VertexId) {
        assert!(u != v, "loop at vertex {u}");
        self.verts.insert(u);
        self.verts.insert(v);
        self.arcs.insert((u, v));
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        self.edges.remove(&norm(u, v));
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.verts.remove(&v);
        self.edges.retain(|&(a, b)| a != v && b != v);
        self.arcs.retain(|&(a, b)| a != v && b != v);
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.contains(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&norm(u, v))
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn order(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.verts
    }

    pub fn edge_list(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn arc_list(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighborhood along undirected edges only.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut n = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a == v {
                n.insert(b);
            } else if b == v {
                n.insert(a);
            }
        }
        n
    }

    /// Vertices reachable from `v` in one step: undirected edges and outgoing arcs.
    pub fn out_neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut n = self.neighbors(v);
        for &(a, b) in &self.arcs {
            if a == v {
                n.insert(b);
            }
        }
        n
    }

    /// Vertices that reach `v` in one step: undirected edges and incoming arcs.
    pub fn in_neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut n = self.neighbors(v);
        for &(a, b) in &self.arcs {
            if b == v {
                n.insert(a);
            }
        }
        n
    }

    /// Neighborhood ignoring directions (edges plus arcs either way).
    pub fn weak_neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut n = self.neighbors(v);
        for &(a, b) in &self.arcs {
            if a == v {
                n.insert(b);
            } else if b == v {
                n.insert(a);
            }
        }
        n
    }

    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if self.verts.contains(&v) {
                g.add_vertex(v);
            }
        }
        for &(a, b) in &self.edges {
            if keep.contains(&a) && keep.contains(&b) {
                g.add_edge(a, b);
            }
        }
        for &(a, b) in &self.arcs {
            if keep.contains(&a) && keep.contains(&b) {
                g.add_arc(a, b);
            }
        }
        g
    }

    pub fn without(&self, drop: &BTreeSet<VertexId>) -> Graph {
        let keep: BTreeSet<VertexId> = self.verts.difference(drop).copied().collect();
        self.induced(&keep)
    }

    /// Bypasses `v`: removes it and adds a shortcut for every directed
    /// two-step connection through it, so reachability among the remaining
    /// vertices is preserved under any deletion avoiding `v`. A shortcut is an
    /// undirected edge when both steps were undirected, otherwise an arc in
    /// the traversal direction; shortcuts already present are not duplicated.
    pub fn bypass(&self, v: VertexId) -> Result<Graph> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut g = self.clone();
        let preds = self.in_neighbors(v);
        let succs = self.out_neighbors(v);
        for &p in &preds {
            for &w in &succs {
                if p == w {
                    continue;
                }
                let und_in = self.has_edge(p, v);
                let und_out = self.has_edge(v, w);
                if und_in && und_out {
                    if !g.has_edge(p, w) {
                        g.add_edge(p, w);
                    }
                } else if !g.has_arc(p, w) && !g.has_edge(p, w) {
                    g.add_arc(p, w);
                }
            }
        }
        g.remove_vertex(v);
        Ok(g)
    }

    /// Bypasses every vertex in `set`, ascending by id. The result does not
    /// depend on the order (checked by property tests).
    pub fn bypass_set(&self, set: &BTreeSet<VertexId>) -> Result<Graph> {
        let mut g = self.clone();
        for &v in set {
            g = g.bypass(v)?;
        }
        Ok(g)
    }

    /// Weakly connected components, sorted by their smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.verts.iter().copied() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if !comp.insert(u) {
                    continue;
                }
                seen.insert(u);
                for w in self.weak_neighbors(u) {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Proper 2-coloring ignoring directions, or None. Deterministic: the
    /// smallest vertex of each component lands on the left side.
    pub fn bipartite_coloring(&self) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
        let mut side: BTreeMap<VertexId, bool> = BTreeMap::new();
        for comp in self.components() {
            let root = *comp.iter().next().unwrap();
            side.insert(root, false);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[&u];
                for w in self.weak_neighbors(u) {
                    match side.get(&w) {
                        None => {
                            side.insert(w, !su);
                            queue.push_back(w);
                        }
                        Some(&sw) => {
                            if sw == su {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (v, s) in side {
            if s {
                right.insert(v);
            } else {
                left.insert(v);
            }
        }
        Some((left, right))
    }

    /// For every ordered pair of non-interior vertices, records whether an
    /// odd and/or even length walk exists whose internal vertices all lie in
    /// `interior` (directions ignored). Length-1 walks count as odd with an
    /// empty interior; closed walks at a single vertex are included. When the
    /// interior induces a bipartite graph, walk parity and path parity agree.
    pub fn parity_reachability(&self, interior: &BTreeSet<VertexId>) -> ParityReach {
        let mut reach = ParityReach::default();
        let outer: Vec<VertexId> = self
            .verts
            .iter()
            .copied()
            .filter(|v| !interior.contains(v))
            .collect();
        for &u in &outer {
            // states: (interior vertex, walk length parity so far)
            let mut visited: BTreeSet<(VertexId, bool)> = BTreeSet::new();
            let mut queue = std::collections::VecDeque::new();
            for w in self.weak_neighbors(u) {
                if interior.contains(&w) {
                    if visited.insert((w, true)) {
                        queue.push_back((w, true));
                    }
                } else {
                    reach.record(u, w, true);
                }
            }
            while let Some((w, odd)) = queue.pop_front() {
                for y in self.weak_neighbors(w) {
                    if interior.contains(&y) {
                        if visited.insert((y, !odd)) {
                            queue.push_back((y, !odd));
                        }
                    } else {
                        reach.record(u, y, !odd);
                    }
                }
            }
        }
        reach
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParityReach {
    odd: BTreeSet<(VertexId, VertexId)>,
    even: BTreeSet<(VertexId, VertexId)>,
}

impl ParityReach {
    fn record(&mut self, u: VertexId, v: VertexId, odd: bool) {
        if odd {
            self.odd.insert((u, v));
        } else {
            self.even.insert((u, v));
        }
    }

    pub fn odd(&self, u: VertexId, v: VertexId) -> bool {
        self.odd.contains(&(u, v))
    }

    pub fn even(&self, u: VertexId, v: VertexId) -> bool {
        self.even.contains(&(u, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub name: String,
    pub set: BTreeSet<VertexId>,
}

/// Annotated boundaried graph: a graph, a boundary at which partners may be
/// glued, and an ordered list of named vertex sets. Plain boundaried graphs
/// are the empty-annotation case. The list order is part of the identity:
/// gluing unites annotation sets index-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abg {
    pub graph: Graph,
    pub boundary: BTreeSet<VertexId>,
    pub annotations: Vec<Annotation>,
}

impl Abg {
    pub fn new(graph: Graph, boundary: BTreeSet<VertexId>) -> Result<Self> {
        let abg = Self {
            graph,
            boundary,
            annotations: Vec::new(),
        };
        abg.validate()?;
        Ok(abg)
    }

    pub fn with_annotation(mut self, name: &str, set: BTreeSet<VertexId>) -> Result<Self> {
        if let Some(v) = set.iter().find(|v| !self.graph.contains(**v)) {
            return Err(Error::UnknownVertex(*v));
        }
        if self.annotations.iter().any(|a| a.name == name) {
            return Err(Error::AnnotationMismatch(format!(
                "duplicate annotation name {name:?}"
            )));
        }
        self.annotations.push(Annotation {
            name: name.to_string(),
            set,
        });
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(v) = self.boundary.iter().find(|v| !self.graph.contains(**v)) {
            return Err(Error::UnknownVertex(*v));
        }
        for a in &self.annotations {
            if let Some(v) = a.set.iter().find(|v| !self.graph.contains(**v)) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        Ok(())
    }

    pub fn annotation(&self, name: &str) -> Option<&BTreeSet<VertexId>> {
        self.annotations
            .iter()
            .find(|a| a.name == name)
            .map(|a| &a.set)
    }

    /// Glues two annotated boundaried graphs. Shared vertex ids must lie in
    /// both boundaries; the result has the union boundary and index-wise
    /// unions of the annotation sets.
    pub fn glue(&self, other: &Abg) -> Result<Abg> {
        if self.annotations.len() != other.annotations.len() {
            return Err(Error::AnnotationMismatch(format!(
                "arity {} vs {}",
                self.annotations.len(),
                other.annotations.len()
            )));
        }
        for (a, b) in self.annotations.iter().zip(&other.annotations) {
            if a.name != b.name {
                return Err(Error::AnnotationMismatch(format!(
                    "annotation {:?} glued against {:?}",
                    a.name, b.name
                )));
            }
        }
        let shared: BTreeSet<VertexId> = self
            .graph
            .vertex_set()
            .intersection(other.graph.vertex_set())
            .copied()
            .collect();
        for v in &shared {
            if !(self.boundary.contains(v) && other.boundary.contains(v)) {
                return Err(Error::Precondition(format!(
                    "shared vertex {v} is not in both boundaries"
                )));
            }
        }
        let mut graph = self.graph.clone();
        for v in other.graph.vertices() {
            graph.add_vertex(v);
        }
        for (u, v) in other.graph.edge_list() {
            if !graph.has_edge(u, v) {
                graph.add_edge(u, v);
            }
        }
        for (u, v) in other.graph.arc_list() {
            if !graph.has_arc(u, v) {
                graph.add_arc(u, v);
            }
        }
        let boundary: BTreeSet<VertexId> =
            self.boundary.union(&other.boundary).copied().collect();
        let annotations = self
            .annotations
            .iter()
            .zip(&other.annotations)
            .map(|(a, b)| Annotation {
                name: a.name.clone(),
                set: a.set.union(&b.set).copied().collect(),
            })
            .collect();
        Ok(Abg {
            graph,
            boundary,
            annotations,
        })
    }
}
