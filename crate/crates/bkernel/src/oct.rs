//! Odd-cycle-transversal kernelization at a boundary.
//!
//! Given a graph with boundary `B` and a local odd cycle transversal `S`,
//! the boundary is first widened to `B' = B ∪ S`, leaving `G - B'`
//! bipartite. Every `B'`-vertex is then split into a left and a right copy
//! in an auxiliary graph wired so that a partner-side transversal plus
//! bipartition choice turns the remaining problem into a minimum vertex cut
//! between copy sets ([`oct_opt_via_decomposition`] evaluates exactly this
//! decomposition). A cut cover for all copy-set pairs pins down which
//! interior vertices any such cut can use; the rest are removed, with their
//! parity influence reconstructed by direct edges, one shared subdivision
//! vertex per pair, and one triangle per boundary vertex that carried an odd
//! closed walk. The output is reported at the original boundary with offset
//! zero.

use std::collections::{BTreeMap, BTreeSet};

use crate::cutcover::{binom, pair_cut_cover, CoverMode, CutCover};
use crate::error::{Error, Result};
use crate::flow::{min_vertex_cut, CutQuery, CutResult};
use crate::graph::{Abg, Graph, VertexId};
use crate::matroid::{gammoid_failure_bound, PrimeField};
use crate::report::{FailureBound, KernelResult, RuleApplication, SizeBound};

/// The split-copy auxiliary graph. Copies get fresh ids above the original
/// range; interior vertices keep theirs, so cut-cover output can be
/// intersected with the interior directly.
#[derive(Debug, Clone)]
pub struct OctAux {
    pub g_star: Graph,
    pub b_prime: BTreeSet<VertexId>,
    pub left: BTreeMap<VertexId, VertexId>,
    pub right: BTreeMap<VertexId, VertexId>,
    pub f_left: BTreeSet<VertexId>,
    pub f_right: BTreeSet<VertexId>,
}

impl OctAux {
    /// All copy vertices, the source/sink set of every cover query.
    pub fn copies(&self) -> BTreeSet<VertexId> {
        self.left.values().chain(self.right.values()).copied().collect()
    }
}

/// Builds the auxiliary graph for boundary set `b_prime`: interior edges are
/// kept as-is, a left copy sees the interior right side and vice versa, and
/// adjacent `b_prime`-vertices get crossed copy edges. The interior coloring
/// is the deterministic one (smallest vertex of each component goes left).
/// Errors when the interior is not bipartite.
pub fn build_oct_auxiliary(g: &Graph, b_prime: &BTreeSet<VertexId>) -> Result<OctAux> {
    let interior = g.without(b_prime);
    let (f_left, f_right) = interior.bipartite_coloring().ok_or_else(|| {
        Error::InvalidSolution(
            "removing the transversal and the boundary leaves an odd cycle".into(),
        )
    })?;
    let base = g.fresh_id();
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (k, &x) in b_prime.iter().enumerate() {
        left.insert(x, base + 2 * k as VertexId);
        right.insert(x, base + 2 * k as VertexId + 1);
    }
    let mut g_star = Graph::with_vertices(
        interior
            .vertices()
            .chain(left.values().copied())
            .chain(right.values().copied()),
    );
    for (u, v) in interior.edge_list() {
        g_star.add_edge(u, v);
    }
    for &x in b_prime {
        for y in g.neighbors(x) {
            if f_right.contains(&y) {
                g_star.add_edge(left[&x], y);
            } else if f_left.contains(&y) {
                g_star.add_edge(right[&x], y);
            } else if b_prime.contains(&y) {
                g_star.add_edge(left[&x], right[&y]);
                g_star.add_edge(right[&x], left[&y]);
            }
        }
    }
    Ok(OctAux {
        g_star,
        b_prime: b_prime.clone(),
        left,
        right,
        f_left,
        f_right,
    })
}

/// Evaluates the glued optimum through the cut decomposition: minimize, over
/// partner transversals `X` and bipartitions of the partner remainder, `|X|`
/// plus the minimum vertex cut in the auxiliary graph (copies of deleted
/// boundary vertices dropped) between same-side and opposite-side copies.
///
/// The bipartition choice matters: when the remainder is disconnected, each
/// component's two-coloring can be flipped independently, and only some
/// flip combinations are compatible with the instance side. A fixed coloring
/// yields just an upper bound, so this minimizes over the flips of every
/// remainder component that touches the boundary (flipping a component with
/// no boundary vertex cannot change the copy partition).
pub fn oct_opt_via_decomposition(abg: &Abg, partner: &Abg) -> Result<u64> {
    if abg.boundary != partner.boundary {
        return Err(Error::Precondition(
            "decomposition needs identical boundaries".into(),
        ));
    }
    let aux = build_oct_auxiliary(&abg.graph, &abg.boundary)?;
    let hverts: Vec<VertexId> = partner.graph.vertices().collect();
    if hverts.len() > 24 {
        return Err(Error::Budget(format!(
            "partner with {} vertices is too large for subset enumeration",
            hverts.len()
        )));
    }
    let mut best: Option<u64> = None;
    for mask in 0u64..(1 << hverts.len()) {
        let x: BTreeSet<VertexId> = hverts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let rest = partner.graph.without(&x);
        let Some((k_left, _)) = rest.bipartite_coloring() else {
            continue;
        };
        let mut g_cut = aux.g_star.clone();
        for &v in &abg.boundary {
            if x.contains(&v) {
                g_cut.remove_vertex(aux.left[&v]);
                g_cut.remove_vertex(aux.right[&v]);
            }
        }
        let flip_comps: Vec<BTreeSet<VertexId>> = rest
            .components()
            .into_iter()
            .filter(|c| c.iter().any(|v| abg.boundary.contains(v)))
            .collect();
        for flips in 0u64..(1 << flip_comps.len()) {
            let mut b_same = BTreeSet::new();
            let mut b_diff = BTreeSet::new();
            for &v in &abg.boundary {
                if x.contains(&v) {
                    continue;
                }
                let flipped = flip_comps
                    .iter()
                    .position(|c| c.contains(&v))
                    .is_some_and(|i| flips >> i & 1 == 1);
                if k_left.contains(&v) != flipped {
                    b_same.insert(aux.left[&v]);
                    b_diff.insert(aux.right[&v]);
                } else {
                    b_same.insert(aux.right[&v]);
                    b_diff.insert(aux.left[&v]);
                }
            }
            let cut = match min_vertex_cut(&CutQuery {
                graph: &g_cut,
                sources: b_same,
                sinks: b_diff,
                undeletable: BTreeSet::new(),
            }) {
                CutResult::Finite { size, .. } => size as u64,
                CutResult::Infinite => unreachable!("all vertices deletable"),
            };
            let total = x.len() as u64 + cut;
            if best.is_none_or(|b| total < b) {
                best = Some(total);
            }
        }
    }
    // x = V(H) always admits the empty coloring, so a value exists
    Ok(best.expect("full deletion is always a transversal"))
}

/// Removes the interior outside the cover and reconstructs parities: an odd
/// path (interiors outside the cover) becomes an edge, an even path one
/// shared length-2 detour, an odd closed walk at a boundary vertex one
/// triangle. Returns the reduced graph and the trace entries.
pub fn rr_oct(
    g: &Graph,
    aux: &OctAux,
    cover_z: &BTreeSet<VertexId>,
) -> Result<(Graph, Vec<RuleApplication>)> {
    let f: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| !aux.b_prime.contains(v))
        .collect();
    let drop: BTreeSet<VertexId> = f.difference(cover_z).copied().collect();
    let reach = g.parity_reachability(&drop);
    let mut out = g.clone();
    for &v in &drop {
        out.remove_vertex(v);
    }
    let mut trace = Vec::new();
    if !drop.is_empty() {
        trace.push(RuleApplication::new("oct-interior-remove", drop.clone(), 0));
    }
    let keepers: Vec<VertexId> = aux
        .b_prime
        .iter()
        .chain(f.intersection(cover_z))
        .copied()
        .collect();
    let mut fresh = g.fresh_id();
    let mut created = Vec::new();
    for (i, &u) in keepers.iter().enumerate() {
        for &v in &keepers[i + 1..] {
            if reach.odd(u, v) {
                out.add_edge(u, v);
            }
            if reach.even(u, v) {
                let m = fresh;
                fresh += 1;
                out.add_edge(u, m);
                out.add_edge(m, v);
                created.push(m);
            }
        }
    }
    for &x in &aux.b_prime {
        if reach.odd(x, x) {
            let (a, b) = (fresh, fresh + 1);
            fresh += 2;
            out.add_edge(x, a);
            out.add_edge(a, b);
            out.add_edge(b, x);
            created.push(a);
            created.push(b);
        }
    }
    if !created.is_empty() {
        trace.push(RuleApplication::new("oct-parity-substitution", created, 0));
    }
    debug_assert!(
        out.without(&aux.b_prime).bipartite_coloring().is_some(),
        "parity substitution keeps the remainder bipartite"
    );
    Ok((out, trace))
}

/// Full pipeline: widen the boundary by the transversal internally, build
/// the auxiliary graph, cover all copy-pair cuts, reduce, and report at the
/// original boundary with offset zero.
pub fn kernelize_oct(
    abg: &Abg,
    solution: &BTreeSet<VertexId>,
    mode: CoverMode,
    seed: u64,
) -> Result<KernelResult> {
    abg.validate()?;
    for &v in solution {
        if !abg.graph.contains(v) {
            return Err(Error::InvalidSolution(format!(
                "solution vertex {v} is not in the graph"
            )));
        }
    }
    if abg.graph.without(solution).bipartite_coloring().is_none() {
        return Err(Error::InvalidSolution(
            "the given set is not an odd cycle transversal".into(),
        ));
    }
    let b_prime: BTreeSet<VertexId> = abg.boundary.union(solution).copied().collect();
    let aux = build_oct_auxiliary(&abg.graph, &b_prime)?;
    let copies = aux.copies();
    let cover: CutCover = pair_cut_cover(&aux.g_star, &copies, &copies, mode, seed)?;
    let (reduced_graph, trace) = rr_oct(&abg.graph, &aux, &cover.z)?;

    let bp = b_prime.len();
    let zf = reduced_graph
        .vertex_set()
        .iter()
        .filter(|v| !b_prime.contains(v) && abg.graph.contains(**v))
        .count();
    let value = (bp + zf + 2 * bp + binom(bp + zf, 2)) as u64;
    let base = (abg.boundary.len() + solution.len()).max(1) as f64;
    let c = value as f64 / base.powi(6);
    let expression = format!(
        "|B'| + |F∩Z| + 2|B'| + C(|B'|+|F∩Z|, 2) = {bp} + {zf} + {} + {} \
         <= {c:.3} * (|B| + l)^6 with |B| = {}, l = {}",
        2 * bp,
        binom(bp + zf, 2),
        abg.boundary.len(),
        solution.len()
    );
    let failure = match mode {
        CoverMode::Oracle => FailureBound::deterministic(),
        CoverMode::Matroid => {
            let (expr, val) =
                gammoid_failure_bound(aux.g_star.order(), PrimeField::from_env().p);
            FailureBound {
                expression: expr,
                value: val,
            }
        }
    };
    let mut reduced = Abg::new(reduced_graph, abg.boundary.clone())?;
    for ann in &abg.annotations {
        let set = ann
            .set
            .intersection(reduced.graph.vertex_set())
            .copied()
            .collect();
        reduced = reduced.with_annotation(&ann.name, set)?;
    }
    KernelResult::assemble(
        "oct",
        seed,
        abg,
        reduced,
        trace,
        SizeBound { expression, value },
        failure,
    )
}
