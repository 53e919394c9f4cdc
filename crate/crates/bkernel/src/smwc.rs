//! Multiway-cut kernelization at a boundary, with undeletable terminals.
//!
//! An instance carries a graph with boundary `B`, a terminal annotation `T`
//! disjoint from `B`, a cap `s` on how many terminals the glued whole may
//! have, and a local multiway cut `S` disjoint from `T`. Partners are
//! expected to keep their own terminals off the shared boundary. Two rules
//! shrink the graph:
//!
//! 1. a terminal whose neighborhood outgrew `S ∪ B` is rewired onto the
//!    closest minimum cut between that neighborhood and `S ∪ B`,
//! 2. everything outside a partition cut cover of `B ∪ N(T)` (plus the
//!    terminals and their neighborhoods) is bypassed.
//!
//! Both steps preserve the glued optimum exactly, so the reported offset is
//! always zero. When the instance alone already has more than `s` terminals
//! no gluing can ever be feasible and the pipeline short-circuits to a
//! canonical two-vertex infeasible output.

use std::collections::BTreeSet;

use crate::cutcover::{partition_cut_cover, CoverMode, CutCover};
use crate::error::{Error, Result};
use crate::flow::closest_cut;
use crate::graph::{Abg, Graph, VertexId};
use crate::matroid::{gammoid_failure_bound, PrimeField};
use crate::oracle::{terminals_of, TERMINALS};
use crate::report::{FailureBound, KernelResult, RuleApplication, SizeBound};

/// Working state of one run. The rewiring target `b_prime` is
/// `S ∪ (B ∖ T)`; terminals are validated to stay off the boundary, so this
/// equals `S ∪ B`, but the subtraction keeps the construction safe against
/// future policy drift. It is fixed once at construction: later rules never
/// grow it.
#[derive(Debug, Clone)]
pub struct SmwcInstance {
    pub graph: Graph,
    pub boundary: BTreeSet<VertexId>,
    pub terminals: BTreeSet<VertexId>,
    pub s: u32,
    pub b_prime: BTreeSet<VertexId>,
    pub ell: usize,
    pub trace: Vec<RuleApplication>,
}

impl SmwcInstance {
    /// Validates and builds. The solution must avoid terminals and separate
    /// every pair of non-adjacent terminals; an adjacent terminal pair is
    /// tolerated (nothing could ever separate it, the instance is then
    /// infeasible under every gluing and the rules keep it that way).
    pub fn new(abg: &Abg, s: u32, solution: &BTreeSet<VertexId>) -> Result<Self> {
        abg.validate()?;
        let terminals = terminals_of(abg);
        if terminals.len() > s as usize {
            return Err(Error::Parameter(format!(
                "{} terminals exceed the cap s = {s}; kernelize_smwc emits the canonical \
                 infeasible instance for this case",
                terminals.len()
            )));
        }
        if let Some(t) = terminals.intersection(&abg.boundary).next() {
            return Err(Error::Precondition(format!(
                "terminal {t} lies on the boundary; this pipeline keeps terminals internal"
            )));
        }
        for &v in solution {
            if !abg.graph.contains(v) {
                return Err(Error::InvalidSolution(format!(
                    "solution vertex {v} is not in the graph"
                )));
            }
            if terminals.contains(&v) {
                return Err(Error::InvalidSolution(format!(
                    "solution deletes terminal {v}, terminals are undeletable here"
                )));
            }
        }
        let rest = abg.graph.without(solution);
        for comp in rest.components() {
            let here: Vec<VertexId> = terminals.intersection(&comp).copied().collect();
            for (i, &a) in here.iter().enumerate() {
                for &b in &here[i + 1..] {
                    if !abg.graph.has_edge(a, b) {
                        return Err(Error::InvalidSolution(format!(
                            "terminals {a} and {b} stay connected after removing the solution"
                        )));
                    }
                }
            }
        }
        let b_prime: BTreeSet<VertexId> = solution
            .iter()
            .chain(abg.boundary.difference(&terminals))
            .copied()
            .collect();
        Ok(SmwcInstance {
            graph: abg.graph.clone(),
            boundary: abg.boundary.clone(),
            terminals,
            s,
            b_prime,
            ell: solution.len(),
            trace: Vec::new(),
        })
    }

    /// The reduced annotated graph, mirroring the original annotation list.
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

/// Rewires every terminal whose neighborhood outgrew `b_prime` onto the
/// closest minimum cut between that neighborhood and `b_prime`, repeating in
/// ascending id order until nothing changes. Terminals adjacent to another
/// terminal are skipped: the adjacency certifies permanent infeasibility and
/// must survive. Returns the number of rewirings.
pub fn rr_smwc_neighbor(inst: &mut SmwcInstance) -> usize {
    let mut total = 0;
    loop {
        let mut changed = false;
        for t in inst.terminals.clone() {
            let nt = inst.graph.neighbors(t);
            if nt.len() <= inst.b_prime.len() {
                continue;
            }
            if nt.iter().any(|v| inst.terminals.contains(v)) {
                continue;
            }
            let mut rest = inst.graph.clone();
            rest.remove_vertex(t);
            let x = closest_cut(&rest, &nt, &inst.b_prime);
            assert!(
                x.iter().all(|v| !inst.terminals.contains(v)),
                "a minimum cut towards S ∪ B cannot pass a terminal in a validated instance"
            );
            debug_assert!(x.len() <= inst.b_prime.len());
            for &u in &nt {
                inst.graph.remove_edge(t, u);
            }
            for &u in &x {
                inst.graph.add_edge(t, u);
            }
            inst.trace
                .push(RuleApplication::new("smwc-neighbor-rewire", [t], 0));
            total += 1;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    total
}

/// Builds a partition cut cover `Z` for `X = B ∪ ⋃_t N(t)` with the group
/// count `s` and bypasses every vertex outside `Z ∪ B ∪ T ∪ ⋃_t N(t)`.
/// Returns the cover so the caller can report its claimed size bound.
pub fn rr_smwc_cutcover(
    inst: &mut SmwcInstance,
    mode: CoverMode,
    seed: u64,
) -> Result<CutCover> {
    let mut x_set = inst.boundary.clone();
    for &t in &inst.terminals {
        x_set.extend(inst.graph.neighbors(t));
    }
    let groups = (inst.s as usize).max(1);
    let cover = partition_cut_cover(&inst.graph, &x_set, groups, mode, seed)?;
    let mut keep = x_set;
    keep.extend(cover.z.iter().copied());
    keep.extend(inst.terminals.iter().copied());
    let drop: BTreeSet<VertexId> = inst
        .graph
        .vertices()
        .filter(|v| !keep.contains(v))
        .collect();
    if !drop.is_empty() {
        inst.graph = inst.graph.bypass_set(&drop)?;
        inst.trace
            .push(RuleApplication::new("smwc-cut-cover-bypass", drop, 0));
    }
    Ok(cover)
}

/// The canonical infeasible output: two adjacent terminals, empty boundary.
/// Gluing anything to it leaves the pair adjacent and undeletable, so the
/// optimum stays +infinity, matching any instance with more than `s`
/// terminals.
pub fn canonical_infeasible() -> Abg {
    let mut g = Graph::new();
    g.add_edge(0, 1);
    Abg::new(g, BTreeSet::new())
        .and_then(|a| a.with_annotation(TERMINALS, [0, 1].into_iter().collect()))
        .expect("the two-vertex instance is well formed")
}

/// Full pipeline: validate, rewire terminal neighborhoods, cover and bypass,
/// and assemble the report. The offset is zero in every case.
pub fn kernelize_smwc(
    abg: &Abg,
    s: u32,
    solution: &BTreeSet<VertexId>,
    mode: CoverMode,
    seed: u64,
) -> Result<KernelResult> {
    abg.validate()?;
    let terminals = terminals_of(abg);
    if terminals.len() > s as usize {
        let trace = vec![RuleApplication::new(
            "smwc-infeasible-collapse",
            abg.graph.vertices(),
            0,
        )];
        return KernelResult::assemble(
            "smwc",
            seed,
            abg,
            canonical_infeasible(),
            trace,
            SizeBound {
                expression: "2 (canonical infeasible instance)".into(),
                value: 2,
            },
            FailureBound::deterministic(),
        );
    }
    let mut inst = SmwcInstance::new(abg, s, solution)?;
    rr_smwc_neighbor(&mut inst);
    let order_at_cover = inst.graph.order();
    let cover = rr_smwc_cutcover(&mut inst, mode, seed)?;

    let b = inst.boundary.len();
    let t_count = inst.terminals.len();
    let neighbor_sum: usize = inst
        .terminals
        .iter()
        .map(|&t| inst.graph.neighbors(t).len())
        .sum();
    let value = (b + t_count + neighbor_sum + cover.size_bound_claimed) as u64;
    let base = (b + inst.ell).max(1) as f64;
    let c = value as f64 / base.powi(inst.s as i32 + 1);
    let expression = format!(
        "|B| + |T| + sum_t |N(t)| + zbound = {b} + {t_count} + {neighbor_sum} + {} \
         <= {c:.3} * (|B| + l)^(s+1) with |B| = {b}, l = {}, s = {}",
        cover.size_bound_claimed, inst.ell, inst.s
    );
    let failure = match mode {
        CoverMode::Oracle => FailureBound::deterministic(),
        CoverMode::Matroid => {
            let (expr, val) = gammoid_failure_bound(order_at_cover, PrimeField::from_env().p);
            FailureBound {
                expression: expr,
                value: val,
            }
        }
    };
    let reduced = inst.finish(abg)?;
    KernelResult::assemble(
        "smwc",
        seed,
        abg,
        reduced,
        inst.trace.clone(),
        SizeBound { expression, value },
        failure,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abg_with_terminals(g: Graph, b: &[VertexId], t: &[VertexId]) -> Abg {
        Abg::new(g, b.iter().copied().collect())
            .unwrap()
            .with_annotation(TERMINALS, t.iter().copied().collect())
            .unwrap()
    }

    #[test]
    fn neighbor_rewire_shrinks_onto_cut() {
        // t fans out to a..d which all funnel into the single boundary
        // vertex x; the closest minimum cut towards S ∪ B = {x} is {x}.
        let mut g = Graph::new();
        let (t, x) = (0, 5);
        for v in 1..=4 {
            g.add_edge(t, v);
            g.add_edge(v, x);
        }
        let abg = abg_with_terminals(g, &[x], &[t]);
        let mut inst = SmwcInstance::new(&abg, 1, &BTreeSet::new()).unwrap();
        assert_eq!(inst.b_prime, [x].into_iter().collect());
        assert_eq!(rr_smwc_neighbor(&mut inst), 1);
        assert_eq!(inst.graph.neighbors(t), [x].into_iter().collect());
        // a..d keep their edges to x, only t's incidences moved
        assert!(inst.graph.has_edge(1, x));
    }

    #[test]
    fn cut_cover_bypass_drops_far_interior() {
        // terminal - a - v - b(boundary): v sits outside X and the cover
        // keeps it only if some partition cut needs it; with X = {b, a} the
        // minimum cuts live inside X here, so v is bypassed and {a, b}
        // becomes an edge.
        let mut g = Graph::new();
        g.add_edge(0, 1); // t - a
        g.add_edge(1, 2); // a - v
        g.add_edge(2, 3); // v - b
        let abg = abg_with_terminals(g, &[3], &[0]);
        let mut inst = SmwcInstance::new(&abg, 1, &BTreeSet::new()).unwrap();
        assert_eq!(rr_smwc_neighbor(&mut inst), 0);
        rr_smwc_cutcover(&mut inst, CoverMode::Oracle, 7).unwrap();
        if !inst.graph.contains(2) {
            assert!(inst.graph.has_edge(1, 3));
        }
        // either way the terminal side stays intact
        assert!(inst.graph.has_edge(0, 1));
    }

    #[test]
    fn no_op_when_everything_is_protected() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let abg = abg_with_terminals(g, &[2], &[0]);
        let mut inst = SmwcInstance::new(&abg, 2, &BTreeSet::new()).unwrap();
        let before = inst.graph.clone();
        rr_smwc_neighbor(&mut inst);
        rr_smwc_cutcover(&mut inst, CoverMode::Oracle, 3).unwrap();
        assert_eq!(inst.graph, before);
        assert!(inst.trace.is_empty());
    }

    #[test]
    fn too_many_terminals_collapse_to_canonical() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        let abg = abg_with_terminals(g, &[3], &[0, 1, 2]);
        let res = kernelize_smwc(&abg, 2, &BTreeSet::new(), CoverMode::Oracle, 1).unwrap();
        assert_eq!(res.delta, 0);
        assert_eq!(res.reduced.graph.order(), 2);
        assert!(res.reduced.boundary.is_empty());
        assert!(res.reduced.graph.has_edge(0, 1));
        assert_eq!(terminals_of(&res.reduced).len(), 2);
    }

    #[test]
    fn unseparated_terminals_rejected() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let abg = abg_with_terminals(g, &[], &[0, 2]);
        let err = SmwcInstance::new(&abg, 2, &BTreeSet::new()).unwrap_err();
        assert!(matches!(err, Error::InvalidSolution(_)));
        // deleting the middle vertex separates them
        let ok = SmwcInstance::new(&abg, 2, &[1].into_iter().collect());
        assert!(ok.is_ok());
    }

    #[test]
    fn solution_teaching_terminal_rejected() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let abg = abg_with_terminals(g, &[], &[0, 2]);
        let err = SmwcInstance::new(&abg, 2, &[0, 1].into_iter().collect()).unwrap_err();
        assert!(matches!(err, Error::InvalidSolution(_)));
    }

    #[test]
    fn adjacent_terminals_survive_untouched() {
        // two adjacent terminals within the cap: nothing can separate them,
        // the edge must survive so every gluing stays infeasible.
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 3);
        g.add_edge(0, 3);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        let abg = abg_with_terminals(g, &[2], &[0, 1]);
        let res = kernelize_smwc(&abg, 2, &BTreeSet::new(), CoverMode::Oracle, 5).unwrap();
        assert!(res.reduced.graph.has_edge(0, 1));
        assert_eq!(res.delta, 0);
        let terms = terminals_of(&res.reduced);
        assert!(terms.contains(&0) && terms.contains(&1));
    }

    #[test]
    fn kernel_is_gluing_equivalent_exhaustively() {
        use crate::oracle::{check_gluing_equivalence, PartnerFamilySpec, ProblemSpec};
        // fan terminal plus a funnel so both rules fire
        let mut g = Graph::new();
        for v in 1..=3 {
            g.add_edge(0, v);
        }
        g.add_edge(1, 4);
        g.add_edge(2, 4);
        g.add_edge(3, 5);
        g.add_edge(4, 8);
        g.add_edge(5, 9);
        let abg = abg_with_terminals(g, &[8, 9], &[0]);
        let problem = ProblemSpec::SMultiwayCut { s: 2 };
        let res = kernelize_smwc(&abg, 2, &BTreeSet::new(), CoverMode::Oracle, 13).unwrap();
        assert!(res.reduced.graph.order() < abg.graph.order());
        let fam = PartnerFamilySpec::exhaustive(problem, 2);
        let rep =
            check_gluing_equivalence(problem, &abg, &res.reduced, res.delta, &fam).unwrap();
        assert!(rep.equivalent(), "{:?}", rep.counterexample);
    }

    #[test]
    fn kernelize_reports_zero_offset_and_bound() {
        let mut g = Graph::new();
        // terminal 0 fans wide, everything drains into boundary {9}
        for v in 1..=5 {
            g.add_edge(0, v);
            g.add_edge(v, 6);
        }
        g.add_edge(6, 9);
        let abg = abg_with_terminals(g, &[9], &[0]);
        let res = kernelize_smwc(&abg, 2, &BTreeSet::new(), CoverMode::Oracle, 11).unwrap();
        assert_eq!(res.delta, 0);
        assert!(res.reduced.graph.order() as u64 <= res.report.size_bound.value);
        assert_eq!(res.reduced.boundary, abg.boundary);
        // deterministic per seed
        let res2 = kernelize_smwc(&abg, 2, &BTreeSet::new(), CoverMode::Oracle, 11).unwrap();
        assert_eq!(res.report_json(), res2.report_json());
    }
}
