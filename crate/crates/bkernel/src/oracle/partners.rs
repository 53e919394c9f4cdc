//! Enumeration of partner graphs for gluing checks.
//!
//! A partner is a small annotated boundaried graph sharing exactly the
//! boundary with the instance under test. Internally partners live in a
//! positional encoding: slots `0..b` are the sorted boundary vertices,
//! slots `b..n` are fresh extras. Edges become a bitmask over the lex-ordered
//! slot pairs, the annotated terminal set a bitmask over slots. Exhaustive
//! families are canonicalized up to permutations of the extra slots, which is
//! exactly isomorphism fixing the boundary pointwise.

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Abg, Graph, VertexId};

pub const MAX_SLOTS: usize = 8;

/// Raw iteration ceiling for exhaustive partner enumeration
/// (edge subsets times annotation choices, before canonicalization).
pub const RAW_ENUMERATION_LIMIT: u64 = 2_200_000;

/// Which annotated sets a partner may carry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AnnotationPolicy {
    /// Plain graphs, no annotation (vertex cover, odd cycle transversal).
    NoAnnotation,
    /// Terminals allowed on the extras only, never on the boundary.
    TerminalsOffBoundary,
    /// Terminals anywhere, including boundary vertices.
    TerminalsAnywhere,
}

/// A partner in positional encoding. `edges` is a bitmask over lex-ordered
/// slot pairs, `t_mask` over slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SlotGraph {
    pub b: u8,
    pub n: u8,
    pub edges: u32,
    pub t_mask: u8,
}

pub fn pair_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Index of pair (i, j), i < j, in lex order over n slots.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs in lex order, inverse of `pair_index`.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

impl SlotGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges >> pair_index(self.n as usize, a, b) & 1 == 1
    }

    pub fn boundary_mask(&self) -> u8 {
        ((1u16 << self.b) - 1) as u8
    }

    pub fn extras_mask(&self) -> u8 {
        (((1u16 << self.n) - 1) as u8) & !self.boundary_mask()
    }

    /// Terminal count of the partner.
    pub fn t_count(&self) -> u32 {
        self.t_mask.count_ones()
    }

    /// Terminal slots on the boundary.
    pub fn t_boundary(&self) -> u8 {
        self.t_mask & self.boundary_mask()
    }

    /// Builds the real annotated boundaried graph: boundary slots map onto
    /// `boundary_ids` (ascending), extras get ids `extra_base, extra_base+1,
    /// ...`. When `annotation_name` is set, the terminal slots become an
    /// annotation of that name (possibly empty, to keep gluing arity).
    pub fn materialize(
        &self,
        boundary_ids: &[VertexId],
        extra_base: VertexId,
        annotation_name: Option<&str>,
    ) -> Abg {
        assert_eq!(boundary_ids.len(), self.b as usize);
        let n = self.n as usize;
        let id_of = |s: usize| -> VertexId {
            if s < self.b as usize {
                boundary_ids[s]
            } else {
                extra_base + (s - self.b as usize) as VertexId
            }
        };
        let mut g = Graph::new();
        for s in 0..n {
            g.add_vertex(id_of(s));
        }
        for (p, (i, j)) in pair_list(n).into_iter().enumerate() {
            if self.edges >> p & 1 == 1 {
                g.add_edge(id_of(i), id_of(j));
            }
        }
        let abg = Abg::new(g, boundary_ids.iter().copied().collect()).expect("valid boundary");
        match annotation_name {
            None => abg,
            Some(name) => {
                let terms = (0..n).filter(|&s| self.t_mask >> s & 1 == 1).map(id_of);
                abg.with_annotation(name, terms.collect())
                    .expect("valid annotation")
            }
        }
    }
}

/// Precomputed action of one extras-permutation on pair indices and slots.
struct PermTable {
    slot_map: [u8; MAX_SLOTS],
    pair_map: Vec<u8>,
}

fn perm_tables(b: usize, n: usize) -> Vec<PermTable> {
    let pairs = pair_list(n);
    (b..n)
        .permutations(n - b)
        .map(|extra_perm| {
            let mut slot_map = [0u8; MAX_SLOTS];
            for (s, entry) in slot_map.iter_mut().enumerate().take(n) {
                *entry = if s < b {
                    s as u8
                } else {
                    extra_perm[s - b] as u8
                };
            }
            let pair_map = pairs
                .iter()
                .map(|&(i, j)| {
                    let (a, c) = (slot_map[i] as usize, slot_map[j] as usize);
                    let (a, c) = if a < c { (a, c) } else { (c, a) };
                    pair_index(n, a, c) as u8
                })
                .collect();
            PermTable { slot_map, pair_map }
        })
        .collect()
}

fn apply_perm(table: &PermTable, edges: u32, t_mask: u8) -> (u32, u8) {
    let mut e = 0u32;
    let mut m = edges;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        m &= m - 1;
        e |= 1u32 << table.pair_map[p];
    }
    let mut t = 0u8;
    let mut s = t_mask;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        t |= 1u8 << table.slot_map[v];
    }
    (e, t)
}

fn terminal_choices(policy: AnnotationPolicy, b: usize, n: usize) -> Vec<u8> {
    let all = ((1u16 << n) - 1) as u8;
    let extras = all & !(((1u16 << b) - 1) as u8);
    match policy {
        AnnotationPolicy::NoAnnotation => vec![0],
        AnnotationPolicy::TerminalsOffBoundary => submasks(extras),
        AnnotationPolicy::TerminalsAnywhere => submasks(all),
    }
}

fn submasks(mask: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 << mask.count_ones());
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

/// Every partner with boundary size `b` and exactly `h` extra vertices, one
/// representative per isomorphism class fixing the boundary pointwise.
/// Partners with isolated extras subsume the smaller-extras families.
/// Deterministic ascending order.
pub fn enumerate_partners(b: usize, h: usize, policy: AnnotationPolicy) -> Result<Vec<SlotGraph>> {
    let n = b + h;
    assert!(n <= MAX_SLOTS, "too many partner slots: {n}");
    let pairs = pair_count(n);
    let t_choices = terminal_choices(policy, b, n);
    let raw = (1u64 << pairs) * t_choices.len() as u64;
    if raw > RAW_ENUMERATION_LIMIT {
        return Err(Error::Budget(format!(
            "exhaustive partner family too large: {raw} raw candidates \
             (boundary {b}, extras {h}); reduce the glue budget or sample"
        )));
    }
    let tables = perm_tables(b, n);
    let mut out = Vec::new();
    for edges in 0..(1u64 << pairs) {
        let edges = edges as u32;
        't_loop: for &t_mask in &t_choices {
            // tables[0] is the identity; keep only orbit minima
            for table in &tables[1..] {
                if apply_perm(table, edges, t_mask) < (edges, t_mask) {
                    continue 't_loop;
                }
            }
            out.push(SlotGraph {
                b: b as u8,
                n: n as u8,
                edges,
                t_mask,
            });
        }
    }
    Ok(out)
}

/// One random partner with up to `h_max` extras. Edge density and terminal
/// density vary per draw so sparse and dense partners both appear.
pub fn sample_partner(
    rng: &mut ChaCha8Rng,
    b: usize,
    h_max: usize,
    policy: AnnotationPolicy,
) -> SlotGraph {
    let h = rng.gen_range(0..=h_max);
    let n = b + h;
    assert!(n <= MAX_SLOTS);
    let edge_prob = [0.25, 0.5, 0.75][rng.gen_range(0..3)];
    let mut edges = 0u32;
    for p in 0..pair_count(n) {
        if rng.gen_bool(edge_prob) {
            edges |= 1u32 << p;
        }
    }
    let eligible = match policy {
        AnnotationPolicy::NoAnnotation => 0u8,
        AnnotationPolicy::TerminalsOffBoundary => {
            (((1u16 << n) - 1) as u8) & !(((1u16 << b) - 1) as u8)
        }
        AnnotationPolicy::TerminalsAnywhere => ((1u16 << n) - 1) as u8,
    };
    let mut t_mask = 0u8;
    let mut m = eligible;
    while m != 0 {
        let s = m.trailing_zeros();
        m &= m - 1;
        if rng.gen_bool(0.35) {
            t_mask |= 1u8 << s;
        }
    }
    SlotGraph {
        b: b as u8,
        n: n as u8,
        edges,
        t_mask,
    }
}
