//! Multiway-cut kernelization with deletable terminals.
//!
//! Unlike the capped variant, terminals may be deleted, may sit on the
//! boundary, and partners may bring arbitrarily many of their own. The
//! pipeline, given a local multiway cut `S` of size `ell`:
//!
//! 1. remove components that avoid the boundary and hold at most one
//!    terminal,
//! 2. delete interior vertices (offset +1 each) and detach boundary vertices
//!    (offset 0, behind a fresh pendant terminal pair) once they carry a fan
//!    of `ell + |B| + 2` paths to distinct terminals sharing only that
//!    vertex,
//! 3. keep only the vertices whose sink-copy triple survives in a
//!    representative family over the gammoid with sources `B ∪ T`, and
//!    bypass the rest.
//!
//! Step 3 is the one randomized step: the gammoid representation is correct
//! except with the reported failure probability.

use std::collections::BTreeSet;

use crate::cutcover::binom;
use crate::error::{Error, Result};
use crate::flow::fan_to_distinct_terminals;
use crate::graph::{Abg, VertexId};
use crate::matroid::{
    add_sink_copies, gammoid_failure_bound, gammoid_representation, representative_family,
    PrimeField,
};
use crate::oracle::{terminals_of, TERMINALS};
use crate::report::{FailureBound, KernelResult, RuleApplication, SizeBound};

/// Working state of one run. The fan threshold is fixed at construction
/// (`ell + |B| + 2`); pendant terminals added later never affect it.
#[derive(Debug, Clone)]
pub struct DtmwcInstance {
    pub graph: crate::graph::Graph,
    pub boundary: BTreeSet<VertexId>,
    pub terminals: BTreeSet<VertexId>,
    pub ell: usize,
    pub threshold: usize,
    pub trace: Vec<RuleApplication>,
}

impl DtmwcInstance {
    /// Validates and builds. The solution may contain terminals; it must
    /// leave no two surviving terminals in the same component.
    pub fn new(abg: &Abg, solution: &BTreeSet<VertexId>) -> Result<Self> {
        abg.validate()?;
        let terminals = terminals_of(abg);
        for &v in solution {
            if !abg.graph.contains(v) {
                return Err(Error::InvalidSolution(format!(
                    "solution vertex {v} is not in the graph"
                )));
            }
        }
        let rest = abg.graph.without(solution);
        for comp in rest.components() {
            let mut seen = None;
            for &t in terminals.intersection(&comp) {
                if let Some(prev) = seen {
                    return Err(Error::InvalidSolution(format!(
                        "terminals {prev} and {t} stay connected after removing the solution"
                    )));
                }
                seen = Some(t);
            }
        }
        Ok(DtmwcInstance {
            graph: abg.graph.clone(),
            boundary: abg.boundary.clone(),
            terminals,
            ell: solution.len(),
            threshold: solution.len() + abg.boundary.len() + 2,
            trace: Vec::new(),
        })
    }

    fn finish(&self, original: &Abg) -> Result<Abg> {
        let mut out = Abg::new(self.graph.clone(), self.boundary.clone())?;
        for ann in &original.annotations {
            let set = if ann.name == TERMINALS {
                self.terminals.clone()
            } else {
                ann.set
                    .intersection(self.graph.vertex_set())
                    .copied()
                    .collect()
            };
            out = out.with_annotation(&ann.name, set)?;
        }
        Ok(out)
    }
}

/// Removes every component that misses the boundary and contains at most one
/// terminal. Such a component never interacts with a partner and needs no
/// deletions of its own. Returns the number of removed components.
pub fn rr_dtmwc_iso(inst: &mut DtmwcInstance) -> usize {
    let mut removed = 0;
    for comp in inst.graph.components() {
        if comp.intersection(&inst.boundary).next().is_some() {
            continue;
        }
        if inst.terminals.intersection(&comp).count() > 1 {
            continue;
        }
        for &v in &comp {
            inst.graph.remove_vertex(v);
            inst.terminals.remove(&v);
        }
        inst.trace
            .push(RuleApplication::new("dtmwc-isolated-component", comp, 0));
        removed += 1;
    }
    removed
}

/// Exhausts the fan rules together with the component rule: an interior
/// vertex with a fan of `threshold` paths to distinct terminals (pairwise
/// sharing only that vertex) lies in every optimum and is deleted with
/// offset +1; a boundary vertex with such a fan is detached from all its
/// edges and guarded by two fresh pendant terminals with offset 0. Returns
/// (interior deletions, boundary detachments).
pub fn rr_dtmwc_high_deg(inst: &mut DtmwcInstance) -> (usize, usize) {
    let mut deleted = 0;
    let mut detached = 0;
    loop {
        rr_dtmwc_iso(inst);
        let fan_at = |inst: &DtmwcInstance, v: VertexId| {
            fan_to_distinct_terminals(&inst.graph, v, &inst.terminals)
        };
        let interior = inst
            .graph
            .vertices()
            .filter(|v| !inst.boundary.contains(v))
            .find(|&v| fan_at(inst, v) >= inst.threshold);
        if let Some(v) = interior {
            inst.graph.remove_vertex(v);
            inst.terminals.remove(&v);
            inst.trace
                .push(RuleApplication::new("dtmwc-fan-delete", [v], 1));
            deleted += 1;
            continue;
        }
        let on_boundary = inst
            .boundary
            .iter()
            .copied()
            .filter(|&v| inst.graph.contains(v))
            .find(|&v| fan_at(inst, v) >= inst.threshold);
        if let Some(v) = on_boundary {
            for u in inst.graph.neighbors(v) {
                inst.graph.remove_edge(v, u);
            }
            let t1 = inst.graph.add_fresh_vertex();
            inst.graph.add_edge(v, t1);
            let t2 = inst.graph.add_fresh_vertex();
            inst.graph.add_edge(v, t2);
            inst.terminals.insert(t1);
            inst.terminals.insert(t2);
            inst.trace
                .push(RuleApplication::new("dtmwc-fan-detach", [v, t1, t2], 0));
            detached += 1;
            continue;
        }
        break;
    }
    (deleted, detached)
}

/// What the representative-family step did, for reporting.
#[derive(Debug, Clone)]
pub struct RepsetSummary {
    pub q: usize,
    pub kept_triples: usize,
    pub claimed_triples: usize,
    pub gammoid_order: usize,
}

/// Adds two sink-only copies of every non-boundary vertex, represents the
/// gammoid with sources `B ∪ T`, computes a `(2|B| + |T| - 1)`-representative
/// subfamily of all copy triples, and bypasses every non-terminal interior
/// vertex whose triple was dropped.
pub fn rr_dtmwc_repset(inst: &mut DtmwcInstance, seed: u64) -> Result<RepsetSummary> {
    let f: BTreeSet<VertexId> = inst
        .graph
        .vertices()
        .filter(|v| !inst.boundary.contains(v))
        .collect();
    let (g_star, copies) = add_sink_copies(&inst.graph, &f, 2);
    let sources: BTreeSet<VertexId> = inst
        .boundary
        .iter()
        .filter(|v| inst.graph.contains(**v))
        .chain(inst.terminals.iter())
        .copied()
        .collect();
    let field = PrimeField::from_env();
    let rep = gammoid_representation(&g_star, &sources, field, seed);
    let q = (2 * inst.boundary.len() + inst.terminals.len()).saturating_sub(1);
    let fam: Vec<BTreeSet<VertexId>> = f
        .iter()
        .map(|v| {
            let c = &copies[v];
            [*v, c[0], c[1]].into_iter().collect()
        })
        .collect();
    let repfam = representative_family(&rep, &fam, q)?;
    // copies get fresh ids above the original range, so the owner of a
    // triple is its smallest element
    let kept_owners: BTreeSet<VertexId> = repfam
        .kept
        .iter()
        .map(|z| *z.iter().next().expect("triples are nonempty"))
        .collect();
    let drop: BTreeSet<VertexId> = f
        .iter()
        .filter(|v| !inst.terminals.contains(v) && !kept_owners.contains(v))
        .copied()
        .collect();
    if !drop.is_empty() {
        inst.graph = inst.graph.bypass_set(&drop)?;
        inst.trace
            .push(RuleApplication::new("dtmwc-representative-bypass", drop, 0));
    }
    Ok(RepsetSummary {
        q,
        kept_triples: repfam.kept.len(),
        claimed_triples: binom(q + 3, 3),
        gammoid_order: g_star.order(),
    })
}

/// Full pipeline; the accumulated offset counts one per fan-deleted interior
/// vertex and is zero otherwise.
pub fn kernelize_dtmwc(
    abg: &Abg,
    solution: &BTreeSet<VertexId>,
    seed: u64,
) -> Result<KernelResult> {
    let mut inst = DtmwcInstance::new(abg, solution)?;
    rr_dtmwc_high_deg(&mut inst);
    let lb = inst.ell + inst.boundary.len();
    assert!(
        inst.terminals.len() <= lb * (lb + 3),
        "after the fan rules the terminal count is bounded by (l+|B|)(l+|B|+3)"
    );
    let summary = rr_dtmwc_repset(&mut inst, seed)?;

    let b = inst.boundary.len();
    let t_count = inst.terminals.len();
    let value = (b + t_count + summary.claimed_triples) as u64;
    let base = lb.max(1) as f64;
    let c = value as f64 / base.powi(6);
    let expression = format!(
        "|B| + |T| + C(2|B|+|T|+2, 3) = {b} + {t_count} + {} <= {c:.3} * (|B| + l)^6 \
         with |B| = {b}, l = {}",
        summary.claimed_triples, inst.ell
    );
    let (fexpr, fval) = gammoid_failure_bound(summary.gammoid_order, PrimeField::from_env().p);
    let reduced = inst.finish(abg)?;
    KernelResult::assemble(
        "dtmwc",
        seed,
        abg,
        reduced,
        inst.trace.clone(),
        SizeBound { expression, value },
        FailureBound {
            expression: fexpr,
            value: fval,
        },
    )
}
