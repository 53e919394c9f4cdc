//! Exact solving and gluing-equivalence checking.
//!
//! This is the ground truth the reduction pipelines are judged against. A
//! reduction from G to G' with offset delta is correct iff for every partner
//! H sharing the boundary, OPT(G ⊕ H) = OPT(G' ⊕ H) + delta, where +infinity
//! on both sides also counts as equal. `check_gluing_equivalence` tests this
//! over an exhaustive partner family (canonicalized up to isomorphism fixing
//! the boundary) or a seeded random sample, reporting the first offending
//! partner verbatim.
//!
//! Exhaustive checks run on compiled boundary interface profiles; a strided
//! subset is re-verified against direct branch-and-bound solves of the glued
//! graphs, so the fast path polices itself.

pub mod partners;
pub mod profiles;

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Abg, Graph, VertexId};
use crate::mask::{MaskGraph, MAX_MASK_VERTICES};
use crate::matroid::LinearRep;

pub use partners::{AnnotationPolicy, SlotGraph};
pub use profiles::ProfileKind;

/// Name of the annotated terminal set on multiway-cut instances.
pub const TERMINALS: &str = "terminals";

/// Default vertex-count ceiling for exact solving.
pub const DEFAULT_EXACT_BUDGET: usize = 20;

/// Ground-set ceiling for the brute-force representative check.
pub const BRUTE_REPRESENTATIVE_LIMIT: usize = 12;

/// The four problems whose instances can be glued and compared.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ProblemSpec {
    VertexCover,
    OddCycleTransversal,
    /// Multiway cut with undeletable terminals; more than `s` terminals in
    /// the glued graph means no feasible solution at all.
    SMultiwayCut { s: u32 },
    DeletableTerminalMultiwayCut,
}

impl ProblemSpec {
    pub fn profile_kind(self) -> ProfileKind {
        match self {
            ProblemSpec::VertexCover => ProfileKind::Vc,
            ProblemSpec::OddCycleTransversal => ProfileKind::Oct,
            ProblemSpec::SMultiwayCut { .. } => ProfileKind::Mwc {
                deletable_terminals: false,
            },
            ProblemSpec::DeletableTerminalMultiwayCut => ProfileKind::Mwc {
                deletable_terminals: true,
            },
        }
    }

    /// The partner annotation shape this problem is defined against.
    pub fn default_policy(self) -> AnnotationPolicy {
        match self {
            ProblemSpec::VertexCover | ProblemSpec::OddCycleTransversal => {
                AnnotationPolicy::NoAnnotation
            }
            ProblemSpec::SMultiwayCut { .. } => AnnotationPolicy::TerminalsOffBoundary,
            ProblemSpec::DeletableTerminalMultiwayCut => AnnotationPolicy::TerminalsAnywhere,
        }
    }

    pub fn uses_terminals(self) -> bool {
        matches!(
            self,
            ProblemSpec::SMultiwayCut { .. } | ProblemSpec::DeletableTerminalMultiwayCut
        )
    }

    /// Terminal-count cap; exceeding it makes an instance infeasible.
    pub fn s_cap(self) -> Option<u32> {
        match self {
            ProblemSpec::SMultiwayCut { s } => Some(s),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemSpec::VertexCover => "vc",
            ProblemSpec::OddCycleTransversal => "oct",
            ProblemSpec::SMultiwayCut { .. } => "smwc",
            ProblemSpec::DeletableTerminalMultiwayCut => "dtmwc",
        }
    }
}

/// Terminal annotation of an instance, empty when absent.
pub fn terminals_of(abg: &Abg) -> BTreeSet<VertexId> {
    abg.annotation(TERMINALS)
        .map(|s| s.iter().copied().collect())
        .unwrap_or_default()
}

/// An exact optimum. `value` None is +infinity (no feasible solution);
/// the witness is then empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub value: Option<u64>,
    pub witness: BTreeSet<VertexId>,
}

pub fn solve_exact(problem: ProblemSpec, instance: &Abg) -> Result<ExactSolution> {
    solve_exact_with_budget(problem, instance, DEFAULT_EXACT_BUDGET)
}

pub fn solve_exact_with_budget(
    problem: ProblemSpec,
    instance: &Abg,
    budget: usize,
) -> Result<ExactSolution> {
    let n = instance.graph.order();
    if n > budget.min(MAX_MASK_VERTICES) {
        return Err(Error::Budget(format!(
            "exact solve refused: {n} vertices exceeds budget {}",
            budget.min(MAX_MASK_VERTICES)
        )));
    }
    if instance.graph.arc_list().next().is_some() {
        return Err(Error::Precondition(
            "exact solving works on undirected graphs".into(),
        ));
    }
    let (mg, ids) = MaskGraph::from_graph(&instance.graph);
    let full = mg.full_mask();
    let terms = terminals_of(instance);
    let t = MaskGraph::mask_of(&ids, terms.iter().copied());
    let sol = match problem {
        ProblemSpec::VertexCover => Some(mg.vc_opt_witness(full)),
        ProblemSpec::OddCycleTransversal => Some(mg.oct_opt_witness(full)),
        ProblemSpec::SMultiwayCut { s } => {
            if terms.len() as u32 > s {
                None
            } else {
                mg.mwc_opt_witness(full, t, false)
            }
        }
        ProblemSpec::DeletableTerminalMultiwayCut => mg.mwc_opt_witness(full, t, true),
    };
    Ok(match sol {
        None => ExactSolution {
            value: None,
            witness: BTreeSet::new(),
        },
        Some((k, w)) => {
            let witness: BTreeSet<VertexId> = ids
                .iter()
                .enumerate()
                .filter(|&(i, _)| w >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            debug_assert_eq!(witness.len() as u32, k);
            debug_assert!(check_witness(problem, instance, &witness));
            ExactSolution {
                value: Some(k as u64),
                witness,
            }
        }
    })
}

/// Optimum value by plain ascending-size enumeration; the independent
/// second method for auditing `solve_exact`.
pub fn exact_value_enum(problem: ProblemSpec, instance: &Abg) -> Result<Option<u64>> {
    let n = instance.graph.order();
    if n > MAX_MASK_VERTICES {
        return Err(Error::Budget(format!("enumeration refused: {n} vertices")));
    }
    let (mg, ids) = MaskGraph::from_graph(&instance.graph);
    let full = mg.full_mask();
    let terms = terminals_of(instance);
    let t = MaskGraph::mask_of(&ids, terms.iter().copied());
    Ok(match problem {
        ProblemSpec::VertexCover => Some(mg.vc_opt_enum(full) as u64),
        ProblemSpec::OddCycleTransversal => Some(mg.oct_opt_enum(full) as u64),
        ProblemSpec::SMultiwayCut { s } => {
            if terms.len() as u32 > s {
                None
            } else {
                mg.mwc_opt_enum(full, t, false).map(u64::from)
            }
        }
        ProblemSpec::DeletableTerminalMultiwayCut => {
            mg.mwc_opt_enum(full, t, true).map(u64::from)
        }
    })
}

/// Feasibility of a claimed solution, at graph level (any size).
pub fn check_witness(problem: ProblemSpec, instance: &Abg, witness: &BTreeSet<VertexId>) -> bool {
    let g = &instance.graph;
    if !witness.iter().all(|&v| g.contains(v)) {
        return false;
    }
    let terms = terminals_of(instance);
    let separates = |rest: &Graph| {
        rest.components()
            .iter()
            .all(|c| c.intersection(&terms).count() <= 1)
    };
    match problem {
        ProblemSpec::VertexCover => g
            .edge_list()
            .all(|(u, v)| witness.contains(&u) || witness.contains(&v)),
        ProblemSpec::OddCycleTransversal => g.without(witness).bipartite_coloring().is_some(),
        ProblemSpec::SMultiwayCut { s } => {
            terms.len() as u32 <= s
                && witness.is_disjoint(&terms)
                && separates(&g.without(witness))
        }
        ProblemSpec::DeletableTerminalMultiwayCut => separates(&g.without(witness)),
    }
}

/// Optimum of instance ⊕ partner by direct branch and bound.
pub fn glued_opt(problem: ProblemSpec, instance: &Abg, partner: &Abg) -> Result<Option<u64>> {
    let glued = instance.glue(partner)?;
    let n = glued.graph.order();
    if n > MAX_MASK_VERTICES {
        return Err(Error::Budget(format!(
            "glued graph too large for direct solving: {n} vertices"
        )));
    }
    let (mg, ids) = MaskGraph::from_graph(&glued.graph);
    let full = mg.full_mask();
    let terms = terminals_of(&glued);
    let t = MaskGraph::mask_of(&ids, terms.iter().copied());
    Ok(match problem {
        ProblemSpec::VertexCover => Some(mg.vc_opt(full) as u64),
        ProblemSpec::OddCycleTransversal => Some(mg.oct_opt(full) as u64),
        ProblemSpec::SMultiwayCut { s } => {
            if terms.len() as u32 > s {
                None
            } else {
                mg.mwc_opt(full, t, false).map(u64::from)
            }
        }
        ProblemSpec::DeletableTerminalMultiwayCut => {
            mg.mwc_opt(full, t, true).map(u64::from)
        }
    })
}

/// How partners are drawn for an equivalence check.
#[derive(Clone, Copy, Debug)]
pub enum EnumerationMode {
    /// Every partner with exactly `extra_budget` extras, one per isomorphism
    /// class fixing the boundary pointwise. Isolated extras make this cover
    /// all smaller extra counts too.
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct PartnerFamilySpec {
    pub extra_budget: usize,
    pub policy: AnnotationPolicy,
    pub mode: EnumerationMode,
}

impl PartnerFamilySpec {
    pub fn exhaustive(problem: ProblemSpec, extra_budget: usize) -> Self {
        PartnerFamilySpec {
            extra_budget,
            policy: problem.default_policy(),
            mode: EnumerationMode::Exhaustive,
        }
    }

    pub fn sampled(problem: ProblemSpec, extra_budget: usize, count: usize, seed: u64) -> Self {
        PartnerFamilySpec {
            extra_budget,
            policy: problem.default_policy(),
            mode: EnumerationMode::Sampled { count, seed },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    /// The offending partner, on real ids gluable against both sides.
    pub partner: Abg,
    pub before_value: Option<u64>,
    pub after_value: Option<u64>,
    pub delta: i64,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub partners_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn values_match(before: Option<u64>, after: Option<u64>, delta: i64) -> bool {
    match (before, after) {
        (None, None) => true,
        (Some(b), Some(a)) => b as i128 == a as i128 + delta as i128,
        _ => false,
    }
}

struct FamilyEntry {
    partners: Vec<SlotGraph>,
    profiles: profiles::FamilyProfiles,
}

type FamilyKey = (usize, usize, AnnotationPolicy, ProfileKind);

static FAMILY_CACHE: OnceLock<Mutex<HashMap<FamilyKey, Arc<FamilyEntry>>>> = OnceLock::new();

fn family_data(
    b: usize,
    h: usize,
    policy: AnnotationPolicy,
    kind: ProfileKind,
) -> Result<Arc<FamilyEntry>> {
    let lock = FAMILY_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().unwrap();
    let key = (b, h, policy, kind);
    if let Some(entry) = map.get(&key) {
        return Ok(Arc::clone(entry));
    }
    let partners = partners::enumerate_partners(b, h, policy)?;
    let profiles = profiles::build_family_profiles(&partners, kind);
    let entry = Arc::new(FamilyEntry { partners, profiles });
    map.insert(key, Arc::clone(&entry));
    Ok(entry)
}

fn validate_annotations(problem: ProblemSpec, side: &Abg, which: &str) -> Result<()> {
    let names: Vec<&str> = side.annotations.iter().map(|a| a.name.as_str()).collect();
    let want: &[&str] = if problem.uses_terminals() {
        &[TERMINALS]
    } else {
        &[]
    };
    if names != want {
        return Err(Error::AnnotationMismatch(format!(
            "{which} instance carries annotations {names:?}, problem {} needs {want:?}",
            problem.name()
        )));
    }
    Ok(())
}

/// Checks OPT(before ⊕ H) = OPT(after ⊕ H) + delta over a partner family.
/// The first violation is reported verbatim; both sides must share the
/// boundary exactly.
pub fn check_gluing_equivalence(
    problem: ProblemSpec,
    before: &Abg,
    after: &Abg,
    delta: i64,
    family: &PartnerFamilySpec,
) -> Result<EquivalenceReport> {
    if before.boundary != after.boundary {
        return Err(Error::Precondition(
            "gluing-equivalence check needs identical boundaries on both sides".into(),
        ));
    }
    validate_annotations(problem, before, "before")?;
    validate_annotations(problem, after, "after")?;
    let bids: Vec<VertexId> = before.boundary.iter().copied().collect();
    let b = bids.len();
    let ann_name = problem.uses_terminals().then_some(TERMINALS);
    let extra_base = before.graph.fresh_id().max(after.graph.fresh_id());
    let s_cap = problem.s_cap();

    match family.mode {
        EnumerationMode::Exhaustive => {
            let kind = problem.profile_kind();
            let fam = family_data(b, family.extra_budget, family.policy, kind)?;
            let t_before = terminals_of(before);
            let t_after = terminals_of(after);
            let side_b = profiles::compile_side(before, kind, &t_before)?;
            let side_a = profiles::compile_side(after, kind, &t_after)?;
            let cb = matches!(kind, ProfileKind::Mwc { .. })
                .then(|| profiles::mwc_codebook(b));
            // every strided partner is re-solved directly, so profile bugs
            // cannot pass silently
            let stride = (fam.partners.len() / 64).max(1);
            for (pi, sg) in fam.partners.iter().enumerate() {
                let vb = profiles::combine(&side_b, sg, &fam.profiles, pi, cb.as_deref(), s_cap)
                    .map(u64::from);
                let va = profiles::combine(&side_a, sg, &fam.profiles, pi, cb.as_deref(), s_cap)
                    .map(u64::from);
                if pi % stride == 0 {
                    let pabg = sg.materialize(&bids, extra_base, ann_name);
                    let db = glued_opt(problem, before, &pabg)?;
                    let da = glued_opt(problem, after, &pabg)?;
                    assert_eq!(
                        (db, da),
                        (vb, va),
                        "interface profile disagrees with direct solve on partner {sg:?}"
                    );
                }
                if !values_match(vb, va, delta) {
                    return Ok(EquivalenceReport {
                        partners_checked: pi + 1,
                        counterexample: Some(Counterexample {
                            partner: sg.materialize(&bids, extra_base, ann_name),
                            before_value: vb,
                            after_value: va,
                            delta,
                        }),
                    });
                }
            }
            Ok(EquivalenceReport {
                partners_checked: fam.partners.len(),
                counterexample: None,
            })
        }
        EnumerationMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..count {
                let sg = partners::sample_partner(&mut rng, b, family.extra_budget, family.policy);
                let pabg = sg.materialize(&bids, extra_base, ann_name);
                let vb = glued_opt(problem, before, &pabg)?;
                let va = glued_opt(problem, after, &pabg)?;
                if !values_match(vb, va, delta) {
                    return Ok(EquivalenceReport {
                        partners_checked: i + 1,
                        counterexample: Some(Counterexample {
                            partner: pabg,
                            before_value: vb,
                            after_value: va,
                            delta,
                        }),
                    });
                }
            }
            Ok(EquivalenceReport {
                partners_checked: count,
                counterexample: None,
            })
        }
    }
}

/// The complete-bipartite obstruction family: member i is K_{2,i} with the
/// two high-degree vertices x, y as the boundary and an empty terminal set.
/// Gluing a partner that declares x and y terminals forces optimum i, while
/// the partner with no terminals forces optimum 0; no single offset relates
/// two distinct members, which is why these instances admit no small
/// replacement independent of the partner.
pub fn generate_k2i_family(i_max: usize) -> Vec<Abg> {
    (1..=i_max)
        .map(|i| {
            let mut g = Graph::new();
            g.add_vertex(0);
            g.add_vertex(1);
            for m in 0..i {
                let mid = 2 + m as VertexId;
                g.add_edge(0, mid);
                g.add_edge(1, mid);
            }
            Abg::new(g, [0, 1].into_iter().collect())
                .unwrap()
                .with_annotation(TERMINALS, BTreeSet::new())
                .unwrap()
        })
        .collect()
}

/// Exhaustively verifies that `subfam` q-represents `fam` in the matroid of
/// `rep`: every independent set X with |X| ≤ q that some member of `fam`
/// extends (disjointly, to an independent union) must also be extended by a
/// member of `subfam`. Ground sets beyond 12 vertices are refused.
pub fn brute_representative_check(
    rep: &LinearRep,
    fam: &[BTreeSet<VertexId>],
    subfam: &[BTreeSet<VertexId>],
    q: usize,
) -> Result<bool> {
    let ground = &rep.ground;
    if ground.len() > BRUTE_REPRESENTATIVE_LIMIT {
        return Err(Error::Budget(format!(
            "brute representative check refused: ground set of {} (limit {})",
            ground.len(),
            BRUTE_REPRESENTATIVE_LIMIT
        )));
    }
    for size in 0..=q.min(ground.len()) {
        for x in ground.iter().copied().combinations(size) {
            let xset: BTreeSet<VertexId> = x.into_iter().collect();
            let extends = |y: &&BTreeSet<VertexId>| {
                y.is_disjoint(&xset) && {
                    let union: BTreeSet<VertexId> = y.iter().chain(xset.iter()).copied().collect();
                    rep.is_independent(&union)
                }
            };
            if fam.iter().any(|y| extends(&y)) && !subfam.iter().any(|y| extends(&y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
