//! Vertex-capacity max-flow and the cut/linkage queries built on it.
//!
//! Every query runs on the directed view of a mixed graph (undirected edges
//! count in both directions) through one standard construction: split each
//! vertex v into v_in -> v_out with capacity 1 (undeletable vertices get
//! effectively infinite capacity), connect u_out -> v_in for each connection,
//! and attach a super source at the in-nodes of the sources and a super sink
//! at the out-nodes of the sinks, so computed cuts may include source and
//! sink vertices. Augmenting paths are explored in ascending vertex-id order,
//! making every output deterministic.

use std::collections::BTreeSet;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone)]
pub struct CutQuery<'a> {
    pub graph: &'a Graph,
    pub sources: BTreeSet<VertexId>,
    pub sinks: BTreeSet<VertexId>,
    pub undeletable: BTreeSet<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutResult {
    Finite {
        size: usize,
        cut: BTreeSet<VertexId>,
    },
    /// No finite cut avoids the undeletable vertices (e.g. an undeletable
    /// vertex is both a source and a sink).
    Infinite,
}

impl CutResult {
    pub fn size(&self) -> Option<usize> {
        match self {
            CutResult::Finite { size, .. } => Some(*size),
            CutResult::Infinite => None,
        }
    }

    pub fn cut(&self) -> Option<&BTreeSet<VertexId>> {
        match self {
            CutResult::Finite { cut, .. } => Some(cut),
            CutResult::Infinite => None,
        }
    }
}

struct FlowNet {
    ids: Vec<VertexId>,
    // edge arrays: to[e], cap[e]; e ^ 1 is the reverse edge
    to: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl FlowNet {
    const SRC_OFFSET: usize = 0;
    const SNK_OFFSET: usize = 1;

    fn node_in(&self, idx: usize) -> usize {
        2 * idx
    }

    fn node_out(&self, idx: usize) -> usize {
        2 * idx + 1
    }

    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let node_count = 2 * ids.len() + 2;
        FlowNet {
            source: node_count - 2 + Self::SRC_OFFSET,
            sink: node_count - 2 + Self::SNK_OFFSET,
            ids,
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); node_count],
        }
    }

    fn index_of(&self, v: VertexId) -> usize {
        self.ids.binary_search(&v).expect("vertex in graph")
    }

    fn add_edge(&mut self, a: usize, b: usize, c: u64) {
        let e = self.to.len();
        self.to.push(b);
        self.cap.push(c);
        self.to.push(a);
        self.cap.push(0);
        self.adj[a].push(e);
        self.adj[b].push(e + 1);
    }

    /// Edmonds-Karp; BFS follows edges in insertion order, so results are
    /// deterministic for a fixed construction order.
    fn max_flow(&mut self, limit: u64) -> u64 {
        let mut flow = 0;
        while flow < limit {
            let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([self.source]);
            pred[self.source] = Some(usize::MAX);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && pred[v].is_none() {
                        pred[v] = Some(e);
                        if v == self.sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if pred[self.sink].is_none() {
                break;
            }
            let mut bottleneck = u64::MAX;
            let mut v = self.sink;
            while v != self.source {
                let e = pred[v].unwrap();
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = self.sink;
            while v != self.source {
                let e = pred[v].unwrap();
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.to[e ^ 1];
            }
            flow += bottleneck;
        }
        flow
    }

    fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

fn build_net(q: &CutQuery) -> FlowNet {
    let mut net = FlowNet::new(q.graph);
    let inf = q.graph.order() as u64 + 1;
    for (idx, &v) in net.ids.clone().iter().enumerate() {
        let c = if q.undeletable.contains(&v) { inf } else { 1 };
        net.add_edge(net.node_in(idx), net.node_out(idx), c);
    }
    let mut connections: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (u, v) in q.graph.edge_list() {
        connections.insert((u, v));
        connections.insert((v, u));
    }
    for (u, v) in q.graph.arc_list() {
        connections.insert((u, v));
    }
    for (u, v) in connections {
        let (ui, vi) = (net.index_of(u), net.index_of(v));
        net.add_edge(net.node_out(ui), net.node_in(vi), inf);
    }
    for &s in &q.sources {
        let si = net.index_of(s);
        net.add_edge(net.source, net.node_in(si), inf);
    }
    for &t in &q.sinks {
        let ti = net.index_of(t);
        net.add_edge(net.node_out(ti), net.sink, inf);
    }
    net
}

/// Minimum vertex cut between source and sink sets; the cut may contain
/// sources and sinks but never undeletable vertices. Of all minimum cuts the
/// source-closest one is returned. `Infinite` signals that no finite cut
/// exists. Size equals the maximum number of vertex-disjoint source-to-sink
/// paths that pairwise share only undeletable vertices.
pub fn min_vertex_cut(q: &CutQuery) -> CutResult {
    let n = q.graph.order() as u64;
    let mut net = build_net(q);
    let flow = net.max_flow(n + 1);
    if flow > n {
        return CutResult::Infinite;
    }
    let reach = net.residual_reachable();
    let mut cut = BTreeSet::new();
    for (idx, &v) in net.ids.iter().enumerate() {
        if reach[net.node_in(idx)] && !reach[net.node_out(idx)] {
            cut.insert(v);
        }
    }
    debug_assert_eq!(cut.len() as u64, flow);
    CutResult::Finite {
        size: flow as usize,
        cut,
    }
}

/// The minimum (t_side, s_side)-vertex cut closest to `t_side`. All vertices
/// are deletable, so the result is always finite; it is linked to `t_side` by
/// a full family of disjoint paths and is the unique minimum cut between
/// `t_side` and itself.
pub fn closest_cut(
    g: &Graph,
    t_side: &BTreeSet<VertexId>,
    s_side: &BTreeSet<VertexId>,
) -> BTreeSet<VertexId> {
    let q = CutQuery {
        graph: g,
        sources: t_side.clone(),
        sinks: s_side.clone(),
        undeletable: BTreeSet::new(),
    };
    match min_vertex_cut(&q) {
        CutResult::Finite { cut, .. } => cut,
        CutResult::Infinite => unreachable!("all vertices deletable"),
    }
}

/// True iff there are |t| vertex-disjoint paths from `s` onto `t` (each
/// vertex of `t` is the endpoint of one path; length-0 paths allowed, so any
/// set is linked to a superset of itself).
pub fn is_linked(g: &Graph, s: &BTreeSet<VertexId>, t: &BTreeSet<VertexId>) -> bool {
    if t.len() > s.len() {
        return false;
    }
    let q = CutQuery {
        graph: g,
        sources: s.clone(),
        sinks: t.clone(),
        undeletable: BTreeSet::new(),
    };
    let mut net = build_net(&q);
    let flow = net.max_flow(t.len() as u64);
    flow == t.len() as u64
}

/// Maximum number of paths from `v` to distinct terminals that pairwise
/// intersect only at `v`. The vertex `v` is uncapacitated; if `v` is itself a
/// terminal that membership is ignored (paths must reach other terminals).
pub fn fan_to_distinct_terminals(
    g: &Graph,
    v: VertexId,
    terminals: &BTreeSet<VertexId>,
) -> usize {
    let mut undeletable = BTreeSet::new();
    undeletable.insert(v);
    let mut sinks = terminals.clone();
    sinks.remove(&v);
    let q = CutQuery {
        graph: g,
        sources: [v].into_iter().collect(),
        sinks: sinks.clone(),
        undeletable,
    };
    let mut net = build_net(&q);
    // terminals exit through their unit internal arcs, so each absorbs one
    // path; v's infinite internal capacity lets all paths share v
    let flow = net.max_flow(sinks.len() as u64);
    flow as usize
}
