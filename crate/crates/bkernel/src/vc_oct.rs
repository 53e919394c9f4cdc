//! Vertex-cover kernelization at a boundary, parameterized by an odd cycle
//! transversal.
//!
//! Given a graph with boundary `B` and a transversal `S` (so `G - S` is
//! bipartite), the working boundary starts as `B ∪ S` and the rest is
//! bipartite. The pipeline:
//!
//! 1. clean up: drop isolated interior vertices, trim crown structures down
//!    to their saturating matchings, and move the interior vertices a
//!    maximum matching misses into the working boundary, leaving `G - B̂`
//!    perfectly matched ([`rr_vc_clean_pipeline`]),
//! 2. detach boundary vertices that form matched-pair triangles with more
//!    than `|B̂|` matching edges; such a vertex lies in every relevant
//!    optimum and is kept alive by one fresh pendant ([`rr_vc_triangle`]),
//! 3. repeatedly bypass matched interior pairs that no boundary-pair
//!    minimum cut (witnessed by a cut cover over a directed split-copy
//!    auxiliary graph) can touch, at offset +1 per pair
//!    ([`rr_vc_bypass`]). The auxiliary graph is updated incrementally and
//!    checked against a full rebuild every [`REBUILD_INTERVAL`] steps.
//!
//! [`conflict`] measures how much forcing a boundary subset into a cover
//! costs inside the interior; minimum cuts in the auxiliary graph never
//! exceed it, with equality on independent subsets once the instance is
//! clean. [`vc_decompose_opt`] evaluates glued optima by splitting on the
//! boundary subset excluded from the cover.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cutcover::{pair_cut_cover, CoverMode, CutCover};
use crate::error::{Error, Result};
use crate::graph::{Abg, Graph, VertexId};
use crate::matroid::{gammoid_failure_bound, PrimeField};
use crate::oracle::{exact_value_enum, ProblemSpec};
use crate::report::{FailureBound, KernelResult, RuleApplication, SizeBound};

/// How often the incrementally maintained auxiliary graph is compared
/// against a fresh rebuild during the bypass loop.
pub const REBUILD_INTERVAL: usize = 8;

/// Maximum bipartite matching by augmenting paths; `left` is one side,
/// every neighbor of a left vertex counts as right. Returns the symmetric
/// partner map. Deterministic: left vertices ascending, neighbors ascending.
fn max_matching(g: &Graph, left: &BTreeSet<VertexId>) -> BTreeMap<VertexId, VertexId> {
    fn try_augment(
        g: &Graph,
        u: VertexId,
        partner: &mut BTreeMap<VertexId, VertexId>,
        visited: &mut BTreeSet<VertexId>,
    ) -> bool {
        for w in g.neighbors(u) {
            if !visited.insert(w) {
                continue;
            }
            let free = match partner.get(&w).copied() {
                None => true,
                Some(u2) => try_augment(g, u2, partner, visited),
            };
            if free {
                partner.insert(w, u);
                partner.insert(u, w);
                return true;
            }
        }
        false
    }
    let mut partner = BTreeMap::new();
    for &u in left {
        if !partner.contains_key(&u) {
            try_augment(g, u, &mut partner, &mut BTreeSet::new());
        }
    }
    partner
}

/// Minimum vertex cover size of a bipartite graph (matching size).
fn bipartite_vc(g: &Graph) -> Result<u64> {
    let (left, _) = g.bipartite_coloring().ok_or_else(|| {
        Error::Precondition("vertex-cover bookkeeping needs a bipartite graph".into())
    })?;
    Ok(max_matching(g, &left).len() as u64 / 2)
}

/// How much forcing `b_subset` into a cover costs inside the interior `f`:
/// the interior optimum after removing the forced neighborhood, plus that
/// neighborhood, minus the free interior optimum.
pub fn conflict(g: &Graph, f: &BTreeSet<VertexId>, b_subset: &BTreeSet<VertexId>) -> Result<u64> {
    let nf: BTreeSet<VertexId> = b_subset
        .iter()
        .flat_map(|&x| g.neighbors(x))
        .filter(|v| f.contains(v))
        .collect();
    let gf = g.induced(f);
    let opt_full = bipartite_vc(&gf)?;
    let rest: BTreeSet<VertexId> = f.difference(&nf).copied().collect();
    let opt_rest = bipartite_vc(&g.induced(&rest))?;
    Ok(opt_rest + nf.len() as u64 - opt_full)
}

/// A crown: an independent interior set `I`, its full neighborhood `H`, and
/// a matching saturating `H` into `I`. Every edge between `I` and `H`
/// outside the matching is redundant.
#[derive(Debug, Clone)]
pub struct Crown {
    pub independent: BTreeSet<VertexId>,
    pub head: BTreeSet<VertexId>,
    pub matching: BTreeMap<VertexId, VertexId>,
}

/// Searches for a crown with removable edges. Stage one grows the vertices
/// missed by a maximum interior matching into their even-alternating
/// closure; stage two matches that closure against its whole neighborhood
/// (boundary vertices included) and shrinks along alternating paths from the
/// unmatched side until the neighborhood is saturated. The result is
/// validated against the crown definition.
fn find_crown(g: &Graph, f: &BTreeSet<VertexId>) -> Option<Crown> {
    let gf = g.induced(f);
    let (fl, _) = gf.bipartite_coloring()?;
    let m1 = max_matching(&gf, &fl);
    let missed: BTreeSet<VertexId> = f.iter().filter(|v| !m1.contains_key(v)).copied().collect();
    if missed.is_empty() {
        return None;
    }
    // even-alternating closure inside the interior
    let mut closure = missed.clone();
    let mut queue: VecDeque<VertexId> = missed.iter().copied().collect();
    let mut odd_seen = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        for w in gf.neighbors(u) {
            if m1.get(&u) == Some(&w) || !odd_seen.insert(w) {
                continue;
            }
            // w cannot be unmatched: that would be an augmenting path
            if let Some(&w2) = m1.get(&w) {
                if closure.insert(w2) {
                    queue.push_back(w2);
                }
            }
        }
    }
    let hood: BTreeSet<VertexId> = closure
        .iter()
        .flat_map(|&v| g.neighbors(v))
        .filter(|v| !closure.contains(v))
        .collect();
    let mut bip = Graph::with_vertices(closure.iter().chain(hood.iter()).copied());
    for &i in &closure {
        for y in g.neighbors(i) {
            if hood.contains(&y) {
                bip.add_edge(i, y);
            }
        }
    }
    let m2 = max_matching(&bip, &hood);
    let free: BTreeSet<VertexId> = closure.iter().filter(|v| !m2.contains_key(v)).copied().collect();
    if free.is_empty() {
        return None;
    }
    // alternating closure from the free side pins a saturated sub-crown
    let mut ind = free.clone();
    let mut head = BTreeSet::new();
    let mut queue: VecDeque<VertexId> = free.iter().copied().collect();
    while let Some(i) = queue.pop_front() {
        for h in bip.neighbors(i) {
            if m2.get(&i) == Some(&h) || !head.insert(h) {
                continue;
            }
            let &i2 = m2.get(&h).expect("an unmatched head vertex would augment");
            if ind.insert(i2) {
                queue.push_back(i2);
            }
        }
    }
    let edge_count: usize = ind
        .iter()
        .map(|&i| g.neighbors(i).intersection(&head).count())
        .sum();
    if edge_count <= head.len() {
        return None;
    }
    let matching: BTreeMap<VertexId, VertexId> = head
        .iter()
        .flat_map(|&h| {
            let i = m2[&h];
            [(h, i), (i, h)]
        })
        .collect();
    // the three defining conditions, checked outright
    for &a in &ind {
        assert!(
            g.neighbors(a).intersection(&ind).next().is_none(),
            "crown base must be independent"
        );
    }
    let full_hood: BTreeSet<VertexId> = ind
        .iter()
        .flat_map(|&v| g.neighbors(v))
        .filter(|v| !ind.contains(v))
        .collect();
    assert_eq!(full_hood, head, "crown head must be the exact neighborhood");
    for &h in &head {
        assert!(
            matching.get(&h).is_some_and(|i| ind.contains(i)),
            "crown matching must saturate the head into the base"
        );
    }
    Some(Crown {
        independent: ind,
        head,
        matching,
    })
}

/// Working state of one run. The interior coloring and its perfect matching
/// are fixed by the clean pipeline and maintained (never recolored) through
/// later rules, so incremental auxiliary-graph updates stay comparable with
/// full rebuilds.
#[derive(Debug, Clone)]
pub struct VcInstance {
    pub graph: Graph,
    pub boundary: BTreeSet<VertexId>,
    pub b_hat: BTreeSet<VertexId>,
    pub f_left: BTreeSet<VertexId>,
    pub f_right: BTreeSet<VertexId>,
    pub matching: BTreeMap<VertexId, VertexId>,
    pub trace: Vec<RuleApplication>,
}

impl VcInstance {
    pub fn new(abg: &Abg, solution: &BTreeSet<VertexId>) -> Result<Self> {
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
        let b_hat: BTreeSet<VertexId> = abg.boundary.union(solution).copied().collect();
        Ok(VcInstance {
            graph: abg.graph.clone(),
            boundary: abg.boundary.clone(),
            b_hat,
            f_left: BTreeSet::new(),
            f_right: BTreeSet::new(),
            matching: BTreeMap::new(),
            trace: Vec::new(),
        })
    }

    pub fn f_set(&self) -> BTreeSet<VertexId> {
        self.graph
            .vertices()
            .filter(|v| !self.b_hat.contains(v))
            .collect()
    }

    /// Matching edges as sorted pairs, ascending.
    fn matched_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.matching
            .iter()
            .filter(|(u, v)| u < v)
            .map(|(&u, &v)| (u, v))
            .collect()
    }
}

/// Counts from the clean pipeline.
#[derive(Debug, Clone, Default)]
pub struct CleanStats {
    pub isolated_removed: usize,
    pub crowns_trimmed: usize,
    pub moved_to_boundary: usize,
}

/// Exhausts the cleanup rules and fixes the interior structure: isolated
/// interior vertices are removed, crowns are trimmed to their saturating
/// matchings (which isolates the unmatched part of the crown base), and the
/// interior vertices missed by a maximum matching move into the working
/// boundary. Afterwards `G - B̂` has a perfect matching and the working
/// boundary has at most doubled.
pub fn rr_vc_clean_pipeline(inst: &mut VcInstance) -> Result<CleanStats> {
    let b0 = inst.b_hat.len();
    let mut stats = CleanStats::default();
    loop {
        let isolated: BTreeSet<VertexId> = inst
            .f_set()
            .into_iter()
            .filter(|&v| inst.graph.neighbors(v).is_empty())
            .collect();
        if !isolated.is_empty() {
            for &v in &isolated {
                inst.graph.remove_vertex(v);
            }
            stats.isolated_removed += isolated.len();
            inst.trace
                .push(RuleApplication::new("vc-isolated", isolated, 0));
        }
        let Some(crown) = find_crown(&inst.graph, &inst.f_set()) else {
            break;
        };
        let mut removed = Vec::new();
        for &i in &crown.independent {
            for h in inst.graph.neighbors(i) {
                if crown.head.contains(&h) && crown.matching.get(&i) != Some(&h) {
                    removed.push((i, h));
                }
            }
        }
        assert!(!removed.is_empty(), "detected crowns carry removable edges");
        for &(i, h) in &removed {
            inst.graph.remove_edge(i, h);
        }
        stats.crowns_trimmed += 1;
        inst.trace.push(RuleApplication::new(
            "vc-crown-trim",
            crown.independent.iter().chain(crown.head.iter()).copied(),
            0,
        ));
    }
    // move what the matching misses into the working boundary
    let f = inst.f_set();
    let gf = inst.graph.induced(&f);
    let (fl, _) = gf
        .bipartite_coloring()
        .expect("the interior stays bipartite");
    let m1 = max_matching(&gf, &fl);
    let missed: BTreeSet<VertexId> = f.iter().filter(|v| !m1.contains_key(v)).copied().collect();
    if !missed.is_empty() {
        stats.moved_to_boundary = missed.len();
        inst.b_hat.extend(missed.iter().copied());
        inst.trace
            .push(RuleApplication::new("vc-boundary-move", missed, 0));
    }
    assert!(
        inst.b_hat.len() <= 2 * b0,
        "after crown cleanup at most |B ∪ S| interior vertices stay unmatched"
    );
    let f = inst.f_set();
    let (fl, fr) = inst
        .graph
        .induced(&f)
        .bipartite_coloring()
        .expect("the interior stays bipartite");
    inst.f_left = fl;
    inst.f_right = fr;
    inst.matching = m1;
    debug_assert!(f.iter().all(|v| inst.matching.contains_key(v)));
    Ok(stats)
}

/// Detaches boundary vertices that form triangles with more than `|B̂|`
/// matched interior pairs: all their interior edges are removed and one
/// fresh pendant (which joins the working boundary) keeps them relevant.
/// Such a vertex lies in every optimal cover of every gluing, so the offset
/// stays zero. Runs to exhaustion, ascending; returns how many fired.
pub fn rr_vc_triangle(inst: &mut VcInstance) -> Result<usize> {
    let mut fired = 0;
    loop {
        let pairs = inst.matched_pairs();
        let candidate = inst
            .b_hat
            .iter()
            .copied()
            .filter(|&x| inst.graph.contains(x))
            .find(|&x| {
                let tri = pairs
                    .iter()
                    .filter(|&&(u, v)| inst.graph.has_edge(x, u) && inst.graph.has_edge(x, v))
                    .count();
                tri > inst.b_hat.len()
            });
        let Some(x) = candidate else {
            break;
        };
        let f_neighbors: Vec<VertexId> = inst
            .graph
            .neighbors(x)
            .into_iter()
            .filter(|v| !inst.b_hat.contains(v))
            .collect();
        for &y in &f_neighbors {
            inst.graph.remove_edge(x, y);
        }
        let pendant = inst.graph.add_fresh_vertex();
        inst.graph.add_edge(x, pendant);
        inst.b_hat.insert(pendant);
        inst.trace
            .push(RuleApplication::new("vc-triangle-detach", [x, pendant], 0));
        fired += 1;
    }
    Ok(fired)
}

/// The directed split-copy auxiliary graph: interior edges run left to
/// right, matched edges also right to left, boundary copies send and receive
/// according to the interior sides, and adjacent boundary pairs get crossed
/// copy arcs. Copy ids start at `base` and stay fixed across incremental
/// updates.
#[derive(Debug, Clone)]
pub struct VcAux {
    pub g_star: Graph,
    pub left: BTreeMap<VertexId, VertexId>,
    pub right: BTreeMap<VertexId, VertexId>,
    pub base: VertexId,
}

impl VcAux {
    pub fn left_copies(&self) -> BTreeSet<VertexId> {
        self.left.values().copied().collect()
    }
    pub fn right_copies(&self) -> BTreeSet<VertexId> {
        self.right.values().copied().collect()
    }
}

/// Builds the auxiliary graph from the instance state; `base` pins the copy
/// id range so rebuilds match incrementally updated graphs.
pub fn build_vc_auxiliary(inst: &VcInstance, base: Option<VertexId>) -> VcAux {
    let base = base.unwrap_or_else(|| inst.graph.fresh_id());
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (k, &x) in inst.b_hat.iter().enumerate() {
        left.insert(x, base + 2 * k as VertexId);
        right.insert(x, base + 2 * k as VertexId + 1);
    }
    let mut g_star = Graph::with_vertices(
        inst.f_left
            .iter()
            .chain(inst.f_right.iter())
            .chain(left.values())
            .chain(right.values())
            .copied(),
    );
    for &u in &inst.f_left {
        for w in inst.graph.neighbors(u) {
            if inst.f_right.contains(&w) {
                g_star.add_arc(u, w);
                if inst.matching.get(&u) == Some(&w) {
                    g_star.add_arc(w, u);
                }
            }
        }
    }
    for &x in &inst.b_hat {
        for y in inst.graph.neighbors(x) {
            if inst.f_right.contains(&y) {
                g_star.add_arc(left[&x], y);
            } else if inst.f_left.contains(&y) {
                g_star.add_arc(y, right[&x]);
            } else if inst.b_hat.contains(&y) {
                g_star.add_arc(left[&x], right[&y]);
                g_star.add_arc(left[&y], right[&x]);
            }
        }
    }
    VcAux {
        g_star,
        left,
        right,
        base,
    }
}

/// The auxiliary graph with the copy-to-copy arcs between `b_subset` members
/// removed. An adjacent pair inside the subset otherwise short-circuits its
/// left and right copies with two direct arcs whose cut cost is unrelated to
/// the interior, so the conflict bounds the copy cut only on this stripped
/// graph; for an independent subset nothing is removed. Panics when the
/// subset is not contained in the instance boundary the aux was built from.
pub fn interior_cut_graph(aux: &VcAux, b_subset: &BTreeSet<VertexId>) -> Graph {
    let copies: BTreeSet<VertexId> = b_subset
        .iter()
        .flat_map(|x| [aux.left[x], aux.right[x]])
        .collect();
    let mut g = Graph::with_vertices(aux.g_star.vertices());
    for (u, v) in aux.g_star.edge_list() {
        g.add_edge(u, v);
    }
    for (u, v) in aux.g_star.arc_list() {
        if !(copies.contains(&u) && copies.contains(&v)) {
            g.add_arc(u, v);
        }
    }
    g
}

/// What the bypass loop did, for reporting and the final size argument.
#[derive(Debug, Clone)]
pub struct BypassStats {
    pub bypassed_pairs: usize,
    pub triangles_fired: usize,
    pub covers_built: usize,
    pub final_cover: CutCover,
    pub aux_order: usize,
}

/// The main reduction loop. Each round re-checks the triangle rule (bypass
/// shortcuts can create fresh triangles), covers all boundary-copy pair cuts
/// in the auxiliary graph, and bypasses the first matched interior pair that
/// the cover misses and that shares no boundary neighbor: the pair is
/// removed from the graph, every path through it is shortcut to a direct
/// edge, and the optimum drops by exactly one (offset +1). The auxiliary
/// graph is updated by the directed two-vertex bypass and compared against a
/// full rebuild every [`REBUILD_INTERVAL`] rounds. Stops when every matched
/// pair is covered or boundary-shared; the interior is then at most
/// `2|B̂|^2 + 2|Z|` vertices.
pub fn rr_vc_bypass(inst: &mut VcInstance, mode: CoverMode, seed: u64) -> Result<BypassStats> {
    let mut aux = build_vc_auxiliary(inst, None);
    let mut bypassed = 0usize;
    let mut triangles = 0usize;
    let mut covers = 0usize;
    let aux_order = aux.g_star.order();
    loop {
        let fired = rr_vc_triangle(inst)?;
        if fired > 0 {
            triangles += fired;
            aux = build_vc_auxiliary(inst, None);
        }
        let cover = pair_cut_cover(
            &aux.g_star,
            &aux.left_copies(),
            &aux.right_copies(),
            mode,
            seed.wrapping_add(covers as u64),
        )?;
        covers += 1;
        let eligible = inst.matched_pairs().into_iter().find(|&(u, v)| {
            !cover.z.contains(&u)
                && !cover.z.contains(&v)
                && inst
                    .graph
                    .neighbors(u)
                    .intersection(&inst.graph.neighbors(v))
                    .all(|w| !inst.b_hat.contains(w))
        });
        let Some((u, v)) = eligible else {
            let f_count = inst.f_set().len();
            assert!(
                f_count <= 2 * inst.b_hat.len() * inst.b_hat.len() + 2 * cover.z.len(),
                "stopped loop leaves at most 2|B̂|^2 + 2|Z| interior vertices"
            );
            return Ok(BypassStats {
                bypassed_pairs: bypassed,
                triangles_fired: triangles,
                covers_built: covers,
                final_cover: cover,
                aux_order,
            });
        };
        // shortcut every path through the pair, then drop it
        let nu: Vec<VertexId> = inst
            .graph
            .neighbors(u)
            .into_iter()
            .filter(|&w| w != v)
            .collect();
        let nv: Vec<VertexId> = inst
            .graph
            .neighbors(v)
            .into_iter()
            .filter(|&w| w != u)
            .collect();
        inst.graph.remove_vertex(u);
        inst.graph.remove_vertex(v);
        for &x in &nu {
            for &y in &nv {
                debug_assert_ne!(x, y, "shortcut endpoints live on opposite sides");
                inst.graph.add_edge(x, y);
            }
        }
        let pair: BTreeSet<VertexId> = [u, v].into_iter().collect();
        aux.g_star = aux.g_star.bypass_set(&pair)?;
        inst.f_left.remove(&u);
        inst.f_left.remove(&v);
        inst.f_right.remove(&u);
        inst.f_right.remove(&v);
        inst.matching.remove(&u);
        inst.matching.remove(&v);
        inst.trace
            .push(RuleApplication::new("vc-matched-pair-bypass", [u, v], 1));
        bypassed += 1;
        if bypassed % REBUILD_INTERVAL == 0 {
            let fresh = build_vc_auxiliary(inst, Some(aux.base));
            assert_eq!(
                fresh.g_star, aux.g_star,
                "incremental auxiliary update must equal a full rebuild"
            );
        }
    }
}

/// Glued optimum by boundary decomposition: minimize, over the boundary
/// subset taken into the cover, its size plus the exact optima of the two
/// sides with that subset deleted. Covers of the remainders are free to use
/// the untaken boundary vertices; the union never double-counts across the
/// interfaces because the sides only share the boundary.
pub fn vc_decompose_opt(abg: &Abg, partner: &Abg) -> Result<u64> {
    if abg.boundary != partner.boundary {
        return Err(Error::Precondition(
            "decomposition needs identical boundaries".into(),
        ));
    }
    let bids: Vec<VertexId> = abg.boundary.iter().copied().collect();
    let mut best: Option<u64> = None;
    for mask in 0u64..(1 << bids.len()) {
        let b_prime: BTreeSet<VertexId> = bids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let g_rest = Abg::new(abg.graph.without(&b_prime), BTreeSet::new())?;
        let h_rest = Abg::new(partner.graph.without(&b_prime), BTreeSet::new())?;
        let a = exact_value_enum(ProblemSpec::VertexCover, &g_rest)?
            .expect("vertex cover is always feasible");
        let b = exact_value_enum(ProblemSpec::VertexCover, &h_rest)?
            .expect("vertex cover is always feasible");
        let total = b_prime.len() as u64 + a + b;
        if best.is_none_or(|cur| total < cur) {
            best = Some(total);
        }
    }
    Ok(best.expect("the empty subset is always enumerated"))
}

/// Full pipeline: clean, detach triangle-heavy boundary vertices, bypass
/// uncovered matched pairs, and report at the original boundary. The offset
/// equals the number of bypassed pairs.
pub fn kernelize_vc_oct(
    abg: &Abg,
    solution: &BTreeSet<VertexId>,
    mode: CoverMode,
    seed: u64,
) -> Result<KernelResult> {
    let mut inst = VcInstance::new(abg, solution)?;
    rr_vc_clean_pipeline(&mut inst)?;
    let stats = rr_vc_bypass(&mut inst, mode, seed)?;

    let bh = inst.b_hat.len();
    let value = (bh + 2 * bh * bh + 2 * stats.final_cover.size_bound_claimed) as u64;
    let base = (abg.boundary.len() + solution.len()).max(1) as f64;
    let c = value as f64 / base.powi(3);
    let expression = format!(
        "|B̂| + 2|B̂|^2 + 2|Z| = {bh} + {} + {} <= {c:.3} * (|B| + l)^3 \
         with |B| = {}, l = {}",
        2 * bh * bh,
        2 * stats.final_cover.size_bound_claimed,
        abg.boundary.len(),
        solution.len()
    );
    let failure = match mode {
        CoverMode::Oracle => FailureBound::deterministic(),
        CoverMode::Matroid => {
            let (expr, val) = gammoid_failure_bound(stats.aux_order, PrimeField::from_env().p);
            FailureBound {
                expression: format!("{} * ({expr})", stats.covers_built),
                value: stats.covers_built as f64 * val,
            }
        }
    };
    let mut reduced = Abg::new(inst.graph.clone(), abg.boundary.clone())?;
    for ann in &abg.annotations {
        let set = ann
            .set
            .intersection(reduced.graph.vertex_set())
            .copied()
            .collect();
        reduced = reduced.with_annotation(&ann.name, set)?;
    }
    KernelResult::assemble(
        "vc",
        seed,
        abg,
        reduced,
        inst.trace.clone(),
        SizeBound { expression, value },
        failure,
    )
}
