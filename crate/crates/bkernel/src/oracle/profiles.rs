//! Boundary interface profiles.
//!
//! The exhaustive gluing check needs the optimum of instance ⊕ partner for
//! up to hundreds of thousands of partners. Solving every glued graph from
//! scratch is far too slow, so each side is compiled once into a table
//! indexed by everything the other side can observe across the boundary:
//!
//! - vertex cover: for each boundary subset D, the optimum of the side with
//!   D removed. Glued optimum = min over D of |D| + g[D] + h[D].
//! - odd cycle transversal: for each pair (deleted boundary subset,
//!   two-coloring of the rest), the cheapest deletion set realizing it.
//!   Matching keys combine; the shared deleted boundary is counted twice and
//!   subtracted once.
//! - multiway cut: for each (deleted boundary subset, grouping of the
//!   remaining boundary by components, per-group off-boundary terminal
//!   flag), the cheapest cut. Combining merges the groupings and requires
//!   every merged component to hold at most one terminal, where boundary
//!   terminals contributed by either side count once.
//!
//! The multiway-cut combine is the expensive one, so the instance side is
//! additionally flattened into a dense answer table over a codebook of all
//! partner-side keys; a partner check is then one lookup per profile entry.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{Abg, VertexId};
use crate::mask::MaskGraph;

use super::partners::{pair_list, SlotGraph};

/// Hard ceiling on side size for profile compilation: the odd cycle
/// transversal and multiway cut passes enumerate all vertex subsets.
pub const MAX_PROFILE_VERTICES: usize = 18;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ProfileKind {
    Vc,
    Oct,
    Mwc { deletable_terminals: bool },
}

/// Multiway-cut interface key of one side, positional over boundary slots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MwcKey {
    /// Boundary slots the cut deletes.
    pub del: u8,
    /// Partition of the remaining boundary slots by component, blocks as
    /// slot masks ordered by lowest slot.
    pub groups: Vec<u8>,
    /// Bit i set iff block i's component holds an off-boundary terminal.
    pub flags: u8,
}

/// Partner-side key: the partner also declares which surviving boundary
/// slots it makes terminals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MwcCode {
    pub key: MwcKey,
    pub thb: u8,
}

pub struct MwcCodebook {
    pub b: usize,
    pub codes: Vec<MwcCode>,
    pub del_pop: Vec<u8>,
    index: HashMap<MwcCode, u16>,
}

impl MwcCodebook {
    pub fn index_of(&self, code: &MwcCode) -> u16 {
        self.index[code]
    }
}

fn partitions_rec(slots: &[u8], i: usize, blocks: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if i == slots.len() {
        out.push(blocks.clone());
        return;
    }
    let bit = 1u8 << slots[i];
    for j in 0..blocks.len() {
        blocks[j] |= bit;
        partitions_rec(slots, i + 1, blocks, out);
        blocks[j] &= !bit;
    }
    blocks.push(bit);
    partitions_rec(slots, i + 1, blocks, out);
    blocks.pop();
}

fn submasks_u8(mask: u8) -> Vec<u8> {
    let mut out = Vec::new();
    let mut sub = mask;
    loop {
        out.push(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out.sort_unstable();
    out
}

static CODEBOOKS: OnceLock<Mutex<HashMap<usize, Arc<MwcCodebook>>>> = OnceLock::new();

/// All possible partner-side multiway-cut keys for boundary size `b`,
/// cached globally. Deterministic order.
pub fn mwc_codebook(b: usize) -> Arc<MwcCodebook> {
    assert!(b <= 5, "codebook limited to small boundaries, got {b}");
    let lock = CODEBOOKS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().unwrap();
    if let Some(cb) = map.get(&b) {
        return Arc::clone(cb);
    }
    let bmask = ((1u16 << b) - 1) as u8;
    let mut codes = Vec::new();
    for del in submasks_u8(bmask) {
        let rest = bmask & !del;
        let rest_slots: Vec<u8> = (0..b as u8).filter(|&s| rest >> s & 1 == 1).collect();
        let mut parts = Vec::new();
        partitions_rec(&rest_slots, 0, &mut Vec::new(), &mut parts);
        for groups in parts {
            let flag_count = 1u16 << groups.len();
            for flags in 0..flag_count {
                for thb in submasks_u8(rest) {
                    codes.push(MwcCode {
                        key: MwcKey {
                            del,
                            groups: groups.clone(),
                            flags: flags as u8,
                        },
                        thb,
                    });
                }
            }
        }
    }
    let del_pop = codes.iter().map(|c| c.key.del.count_ones() as u8).collect();
    let index = codes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i as u16))
        .collect();
    let cb = Arc::new(MwcCodebook {
        b,
        codes,
        del_pop,
        index,
    });
    map.insert(b, Arc::clone(&cb));
    cb
}

/// One side (instance or partner) lowered onto a mask graph, with the
/// boundary-slot correspondence and terminal bits.
pub struct MaskSide {
    pub mg: MaskGraph,
    pub full: u32,
    /// (graph bit, boundary slot), ascending in both.
    pub bslots: Vec<(usize, u8)>,
    pub bbits: u32,
    pub t_bits: u32,
    pub b: usize,
}

impl MaskSide {
    pub fn from_abg(abg: &Abg, terminals: &std::collections::BTreeSet<VertexId>) -> Result<Self> {
        if abg.graph.arc_list().next().is_some() {
            return Err(Error::Precondition(
                "interface profiles need an undirected graph".into(),
            ));
        }
        let (mg, ids) = MaskGraph::from_graph(&abg.graph);
        let full = mg.full_mask();
        let mut bslots = Vec::new();
        for (slot, v) in abg.boundary.iter().enumerate() {
            let bit = ids.iter().position(|x| x == v).expect("boundary in graph");
            bslots.push((bit, slot as u8));
        }
        let bbits = bslots.iter().map(|&(bit, _)| 1u32 << bit).sum();
        let t_bits = MaskGraph::mask_of(&ids, terminals.iter().copied());
        Ok(MaskSide {
            b: bslots.len(),
            mg,
            full,
            bslots,
            bbits,
            t_bits,
        })
    }

    pub fn from_slot_graph(sg: &SlotGraph) -> Self {
        let n = sg.n as usize;
        let mut mg = MaskGraph::empty(n);
        for (p, (i, j)) in pair_list(n).into_iter().enumerate() {
            if sg.edges >> p & 1 == 1 {
                mg.add_edge(i, j);
            }
        }
        let b = sg.b as usize;
        let full = mg.full_mask();
        MaskSide {
            b,
            mg,
            full,
            bslots: (0..b).map(|s| (s, s as u8)).collect(),
            bbits: ((1u32 << b) - 1),
            t_bits: sg.t_mask as u32,
        }
    }

    fn slots_of(&self, mask: u32) -> u8 {
        let mut out = 0u8;
        for &(bit, slot) in &self.bslots {
            if mask >> bit & 1 == 1 {
                out |= 1 << slot;
            }
        }
        out
    }

    /// Boundary terminal slots.
    pub fn tgb(&self) -> u8 {
        self.slots_of(self.t_bits)
    }

    /// Vertex cover interface: entry D = optimum of the side minus the
    /// boundary subset D (indexed by slot mask).
    pub fn vc_table(&self) -> Vec<u32> {
        let size = 1usize << self.b;
        let mut table = vec![0u32; size];
        for (d, entry) in table.iter_mut().enumerate() {
            let mut remove = 0u32;
            for &(bit, slot) in &self.bslots {
                if d >> slot & 1 == 1 {
                    remove |= 1 << bit;
                }
            }
            *entry = self.mg.vc_opt(self.full & !remove);
        }
        table
    }

    /// Odd cycle transversal interface, indexed base 3 by slot state:
    /// 0 deleted, 1 left, 2 right. u32::MAX marks unrealizable keys.
    pub fn oct_table(&self) -> Vec<u32> {
        let size = 3usize.pow(self.b as u32);
        let mut table = vec![u32::MAX; size];
        let pow3: Vec<usize> = (0..self.b).map(|i| 3usize.pow(i as u32)).collect();
        for x in 0..=self.full {
            let rest = self.full & !x;
            let Some((left, _)) = self.mg.bipartition(rest) else {
                continue;
            };
            let cost = x.count_ones();
            let del = self.slots_of(x);
            // components of the rest that touch the boundary, as slot masks
            // per coloring side
            let mut comps: Vec<(u8, u8)> = Vec::new();
            let mut todo = rest & self.bbits;
            while todo != 0 {
                let v = todo.trailing_zeros() as usize;
                let comp = self.mg.component_from(rest, v);
                todo &= !comp;
                comps.push((self.slots_of(comp & left), self.slots_of(comp & !left)));
            }
            for flip in 0..(1u32 << comps.len()) {
                let mut key = 0usize;
                for s in 0..self.b as u8 {
                    if del >> s & 1 == 1 {
                        continue;
                    }
                    let mut state = 0;
                    for (i, &(a, bside)) in comps.iter().enumerate() {
                        let flipped = flip >> i & 1 == 1;
                        if a >> s & 1 == 1 {
                            state = if flipped { 2 } else { 1 };
                        } else if bside >> s & 1 == 1 {
                            state = if flipped { 1 } else { 2 };
                        }
                    }
                    debug_assert!(state != 0, "boundary slot neither deleted nor colored");
                    key += state * pow3[s as usize];
                }
                if cost < table[key] {
                    table[key] = cost;
                }
            }
        }
        table
    }

    /// Multiway cut interface: minimum cut size per realizable key.
    /// Sorted by key for determinism.
    pub fn mwc_keys(&self, deletable_terminals: bool) -> Vec<(MwcKey, u32)> {
        let mut best: HashMap<MwcKey, u32> = HashMap::new();
        'subset: for x in 0..=self.full {
            if !deletable_terminals && x & self.t_bits != 0 {
                continue;
            }
            let rest = self.full & !x;
            let cost = x.count_ones();
            let mut raw_groups: Vec<(u8, bool)> = Vec::new();
            let mut todo = rest;
            while todo != 0 {
                let v = todo.trailing_zeros() as usize;
                let comp = self.mg.component_from(rest, v);
                todo &= !comp;
                let off = (comp & self.t_bits & !self.bbits).count_ones();
                if off >= 2 {
                    continue 'subset;
                }
                let slots = self.slots_of(comp);
                if slots != 0 {
                    raw_groups.push((slots, off == 1));
                }
            }
            raw_groups.sort_unstable_by_key(|&(slots, _)| slots.trailing_zeros());
            let mut flags = 0u8;
            let groups: Vec<u8> = raw_groups
                .iter()
                .enumerate()
                .map(|(i, &(slots, f))| {
                    if f {
                        flags |= 1 << i;
                    }
                    slots
                })
                .collect();
            let key = MwcKey {
                del: self.slots_of(x),
                groups,
                flags,
            };
            let e = best.entry(key).or_insert(u32::MAX);
            if cost < *e {
                *e = cost;
            }
        }
        let mut out: Vec<(MwcKey, u32)> = best.into_iter().collect();
        out.sort_unstable();
        out
    }
}

/// Merged-component terminal check for one (instance key, partner code)
/// pair. `tb` holds the boundary slots that are terminals after deletion,
/// from either side.
pub fn mwc_merge_valid(gk: &MwcKey, hk: &MwcKey, tb: u8) -> bool {
    let mut comps: Vec<u8> = Vec::new();
    for &m in gk.groups.iter().chain(hk.groups.iter()) {
        let mut cur = m;
        loop {
            let before = comps.len();
            comps.retain(|&c| {
                if c & cur != 0 {
                    cur |= c;
                    false
                } else {
                    true
                }
            });
            if comps.len() == before {
                break;
            }
        }
        comps.push(cur);
    }
    for &m in &comps {
        let mut total = (m & tb).count_ones();
        for (i, &g) in gk.groups.iter().enumerate() {
            if g & m != 0 && gk.flags >> i & 1 == 1 {
                total += 1;
            }
        }
        for (i, &h) in hk.groups.iter().enumerate() {
            if h & m != 0 && hk.flags >> i & 1 == 1 {
                total += 1;
            }
        }
        if total > 1 {
            return false;
        }
    }
    true
}

/// Flattens instance-side multiway-cut keys into a dense table over the
/// partner codebook: entry c = cheapest instance cut compatible with code c.
pub fn mwc_answer_table(keys: &[(MwcKey, u32)], tgb: u8, cb: &MwcCodebook) -> Vec<u32> {
    let mut ans = vec![u32::MAX; cb.codes.len()];
    for (ci, code) in cb.codes.iter().enumerate() {
        let mut best = u32::MAX;
        for (gk, val) in keys {
            if gk.del != code.key.del || *val >= best {
                continue;
            }
            let tb = (tgb & !gk.del) | code.thb;
            if mwc_merge_valid(gk, &code.key, tb) {
                best = *val;
            }
        }
        ans[ci] = best;
    }
    ans
}

/// A side compiled for combination against partner profiles.
pub struct CompiledSide {
    pub kind: ProfileKind,
    pub b: usize,
    pub t_total: u32,
    pub tgb: u8,
    pub data: SideData,
}

pub enum SideData {
    Vc(Vec<u32>),
    Oct(Vec<u32>),
    /// Dense answer table over the codebook for this boundary size.
    Mwc(Vec<u32>),
}

pub fn compile_side(
    abg: &Abg,
    kind: ProfileKind,
    terminals: &std::collections::BTreeSet<VertexId>,
) -> Result<CompiledSide> {
    let n = abg.graph.order();
    let limit = match kind {
        ProfileKind::Vc => crate::mask::MAX_MASK_VERTICES,
        _ => MAX_PROFILE_VERTICES,
    };
    if n > limit {
        return Err(Error::Budget(format!(
            "side too large for interface profile: {n} vertices (limit {limit})"
        )));
    }
    let side = MaskSide::from_abg(abg, terminals)?;
    let data = match kind {
        ProfileKind::Vc => SideData::Vc(side.vc_table()),
        ProfileKind::Oct => SideData::Oct(side.oct_table()),
        ProfileKind::Mwc {
            deletable_terminals,
        } => {
            let keys = side.mwc_keys(deletable_terminals);
            let cb = mwc_codebook(side.b);
            SideData::Mwc(mwc_answer_table(&keys, side.tgb(), &cb))
        }
    };
    Ok(CompiledSide {
        kind,
        b: side.b,
        t_total: terminals.len() as u32,
        tgb: side.tgb(),
        data,
    })
}

/// Profiles of every partner in a family, same order as the partner list.
pub enum FamilyProfiles {
    Vc(Vec<Box<[u8]>>),
    Oct(Vec<Box<[u8]>>),
    Mwc(Vec<Box<[(u16, u8)]>>),
}

pub const OCT_INF: u8 = u8::MAX;

pub fn partner_profile_vc(sg: &SlotGraph) -> Box<[u8]> {
    let side = MaskSide::from_slot_graph(sg);
    side.vc_table().into_iter().map(|v| v as u8).collect()
}

pub fn partner_profile_oct(sg: &SlotGraph) -> Box<[u8]> {
    let side = MaskSide::from_slot_graph(sg);
    side.oct_table()
        .into_iter()
        .map(|v| if v == u32::MAX { OCT_INF } else { v as u8 })
        .collect()
}

pub fn partner_profile_mwc(
    sg: &SlotGraph,
    deletable_terminals: bool,
    cb: &MwcCodebook,
) -> Box<[(u16, u8)]> {
    let side = MaskSide::from_slot_graph(sg);
    let thb_full = sg.t_boundary();
    side.mwc_keys(deletable_terminals)
        .into_iter()
        .map(|(key, val)| {
            let thb = thb_full & !key.del;
            let idx = cb.index_of(&MwcCode { key, thb });
            (idx, val as u8)
        })
        .collect()
}

pub fn build_family_profiles(partners: &[SlotGraph], kind: ProfileKind) -> FamilyProfiles {
    match kind {
        ProfileKind::Vc => {
            FamilyProfiles::Vc(partners.iter().map(partner_profile_vc).collect())
        }
        ProfileKind::Oct => {
            FamilyProfiles::Oct(partners.iter().map(partner_profile_oct).collect())
        }
        ProfileKind::Mwc {
            deletable_terminals,
        } => {
            let b = partners.first().map_or(0, |sg| sg.b as usize);
            let cb = mwc_codebook(b);
            FamilyProfiles::Mwc(
                partners
                    .iter()
                    .map(|sg| partner_profile_mwc(sg, deletable_terminals, &cb))
                    .collect(),
            )
        }
    }
}

/// Optimum of side ⊕ partner, from the compiled tables. `s_cap` bounds the
/// total terminal count for the capped multiway-cut variant; exceeding it
/// means the glued instance has no feasible solution. None is +infinity.
pub fn combine(
    side: &CompiledSide,
    sg: &SlotGraph,
    profiles: &FamilyProfiles,
    pi: usize,
    cb: Option<&MwcCodebook>,
    s_cap: Option<u32>,
) -> Option<u32> {
    if let Some(cap) = s_cap {
        let shared = (side.tgb & sg.t_boundary()).count_ones();
        if side.t_total + sg.t_count() - shared > cap {
            return None;
        }
    }
    match (&side.data, profiles) {
        (SideData::Vc(g), FamilyProfiles::Vc(h)) => {
            let h = &h[pi];
            let mut best = u32::MAX;
            for (d, &gv) in g.iter().enumerate() {
                let cand = gv + h[d] as u32 + (d as u32).count_ones();
                if cand < best {
                    best = cand;
                }
            }
            Some(best)
        }
        (SideData::Oct(g), FamilyProfiles::Oct(h)) => {
            let h = &h[pi];
            let mut best = u32::MAX;
            for (k, &gv) in g.iter().enumerate() {
                if gv == u32::MAX || h[k] == OCT_INF {
                    continue;
                }
                // deleted slots are the base-3 digits equal to 0
                let mut key = k;
                let mut del = 0u32;
                for _ in 0..side.b {
                    if key % 3 == 0 {
                        del += 1;
                    }
                    key /= 3;
                }
                let cand = gv + h[k] as u32 - del;
                if cand < best {
                    best = cand;
                }
            }
            if best == u32::MAX {
                None
            } else {
                Some(best)
            }
        }
        (SideData::Mwc(ans), FamilyProfiles::Mwc(h)) => {
            let cb = cb.expect("codebook required for multiway-cut combine");
            let mut best = u32::MAX;
            for &(idx, hv) in h[pi].iter() {
                let gv = ans[idx as usize];
                if gv == u32::MAX {
                    continue;
                }
                let cand = gv + hv as u32 - cb.del_pop[idx as usize] as u32;
                if cand < best {
                    best = cand;
                }
            }
            if best == u32::MAX {
                None
            } else {
                Some(best)
            }
        }
        _ => unreachable!("side/profile kind mismatch"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::partners::{enumerate_partners, AnnotationPolicy};
    use std::collections::BTreeSet;

    fn random_instance(state: &mut u64, n: usize, b: usize, with_terms: bool) -> Abg {
        let mut step = || {
            *state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            *state >> 33
        };
        let mut g = Graph::new();
        for v in 0..n as VertexId {
            g.add_vertex(v);
        }
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                if step() % 100 < 38 {
                    g.add_edge(u, v);
                }
            }
        }
        let boundary: BTreeSet<VertexId> = (0..b as VertexId).collect();
        let abg = Abg::new(g, boundary).unwrap();
        if with_terms {
            let terms: BTreeSet<VertexId> =
                (0..n as VertexId).filter(|_| step() % 100 < 30).collect();
            abg.with_annotation("terminals", terms).unwrap()
        } else {
            abg
        }
    }

    fn glued_mask_opt(inst: &Abg, partner: &Abg, kind: ProfileKind, s_cap: Option<u32>) -> Option<u32> {
        let glued = inst.glue(partner).unwrap();
        let (mg, ids) = MaskGraph::from_graph(&glued.graph);
        let full = mg.full_mask();
        let terms: BTreeSet<VertexId> = glued
            .annotation("terminals")
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        if let Some(cap) = s_cap {
            if terms.len() as u32 > cap {
                return None;
            }
        }
        let t = MaskGraph::mask_of(&ids, terms);
        match kind {
            ProfileKind::Vc => Some(mg.vc_opt(full)),
            ProfileKind::Oct => Some(mg.oct_opt(full)),
            ProfileKind::Mwc {
                deletable_terminals,
            } => mg.mwc_opt(full, t, deletable_terminals),
        }
    }

    fn check_kind(kind: ProfileKind, policy: AnnotationPolicy, s_cap: Option<u32>, seed: u64) {
        let b = 2;
        let partners = enumerate_partners(b, 2, policy).unwrap();
        let profiles = build_family_profiles(&partners, kind);
        let cb = match kind {
            ProfileKind::Mwc { .. } => Some(mwc_codebook(b)),
            _ => None,
        };
        let with_terms = !matches!(policy, AnnotationPolicy::NoAnnotation);
        let mut state = seed;
        for _ in 0..6 {
            let inst = random_instance(&mut state, 6, b, with_terms);
            let terms: BTreeSet<VertexId> = inst
                .annotation("terminals")
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default();
            let side = compile_side(&inst, kind, &terms).unwrap();
            let bids: Vec<VertexId> = inst.boundary.iter().copied().collect();
            for (pi, sg) in partners.iter().enumerate() {
                let fast = combine(&side, sg, &profiles, pi, cb.as_deref(), s_cap);
                let pabg = sg.materialize(
                    &bids,
                    100,
                    with_terms.then_some("terminals"),
                );
                let slow = glued_mask_opt(&inst, &pabg, kind, s_cap);
                assert_eq!(fast, slow, "kind {kind:?} partner {sg:?}");
            }
        }
    }

    #[test]
    fn vc_combine_matches_direct_solve() {
        check_kind(ProfileKind::Vc, AnnotationPolicy::NoAnnotation, None, 0xabcd);
    }

    #[test]
    fn oct_combine_matches_direct_solve() {
        check_kind(ProfileKind::Oct, AnnotationPolicy::NoAnnotation, None, 0x1234);
    }

    #[test]
    fn mwc_undeletable_combine_matches_direct_solve() {
        check_kind(
            ProfileKind::Mwc {
                deletable_terminals: false,
            },
            AnnotationPolicy::TerminalsAnywhere,
            Some(2),
            0x7777,
        );
    }

    #[test]
    fn mwc_deletable_combine_matches_direct_solve() {
        check_kind(
            ProfileKind::Mwc {
                deletable_terminals: true,
            },
            AnnotationPolicy::TerminalsAnywhere,
            None,
            0x9999,
        );
    }

    #[test]
    fn codebook_is_consistent() {
        let cb = mwc_codebook(3);
        // every code indexes back to itself
        for (i, code) in cb.codes.iter().enumerate() {
            assert_eq!(cb.index_of(code) as usize, i);
        }
        // empty-boundary codebook has exactly the trivial code
        let cb0 = mwc_codebook(0);
        assert_eq!(cb0.codes.len(), 1);
    }
}
