//! Cut covers: one vertex set Z that simultaneously contains a minimum cut
//! for every sub-query of an exponential family.
//!
//! Two query shapes: pair covers (every (A, B) with A ⊆ S, B ⊆ T gets a
//! minimum (A,B)-vertex cut inside Z) and partition covers (every partition
//! (X_0, X_X, X_1..X_s) of X gets a minimum multiway cut of the groups in
//! G - X_X inside Z). Two construction modes: `Oracle` exhausts the
//! sub-queries and unions one deterministic minimum cut each, unconditionally
//! correct but exponential in |S|+|T| or |X|; `Matroid` keeps representative
//! triples {v, v', v''} over a gammoid on the sink-copy graph, polynomial with
//! a small random failure probability. `validate_cut_cover` certifies either.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::flow::{min_vertex_cut, CutQuery, CutResult};
use crate::graph::{Graph, VertexId};
use crate::matroid::{add_sink_copies, gammoid_representation, representative_family, PrimeField};

/// Raw sub-query budget for oracle mode: 2^(|S|+|T|) pair queries or
/// (s+2)^|X| partition assignments.
pub const ORACLE_PAIR_LIMIT: u32 = 16;
pub const ORACLE_PARTITION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    Oracle,
    Matroid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverQuery {
    Pair {
        s_set: BTreeSet<VertexId>,
        t_set: BTreeSet<VertexId>,
    },
    Partition {
        x_set: BTreeSet<VertexId>,
        s: usize,
    },
}

#[derive(Debug, Clone)]
pub struct CutCover {
    pub z: BTreeSet<VertexId>,
    pub query: CoverQuery,
    pub mode: CoverMode,
    pub seed: u64,
    pub size_bound_claimed: usize,
}

/// Exact minimum multiway cut of the `groups` in `g - forbidden`: a smallest
/// vertex set (drawn from `deletable`, or anywhere if None) whose removal
/// leaves no two vertices of distinct groups connected. The cut may include
/// group vertices. None when no such cut exists under the restriction.
pub fn group_multiway_cut_opt(
    g: &Graph,
    groups: &[BTreeSet<VertexId>],
    forbidden: &BTreeSet<VertexId>,
    deletable: Option<&BTreeSet<VertexId>>,
) -> Option<usize> {
    group_multiway_cut(g, groups, forbidden, deletable).map(|(size, _)| size)
}

/// As [`group_multiway_cut_opt`] but also returns one deterministic minimum
/// cut (the first optimum in branch order).
pub fn group_multiway_cut(
    g: &Graph,
    groups: &[BTreeSet<VertexId>],
    forbidden: &BTreeSet<VertexId>,
    deletable: Option<&BTreeSet<VertexId>>,
) -> Option<(usize, BTreeSet<VertexId>)> {
    let base = g.without(forbidden);
    let mut best: Option<(usize, BTreeSet<VertexId>)> = None;
    let groups: Vec<BTreeSet<VertexId>> = groups
        .iter()
        .map(|grp| {
            grp.iter()
                .copied()
                .filter(|v| base.contains(*v))
                .collect()
        })
        .collect();
    branch_group_mwc(&base, &groups, deletable, &mut BTreeSet::new(), &mut best);
    best
}

fn group_violating_path(
    g: &Graph,
    groups: &[BTreeSet<VertexId>],
    removed: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    // shortest path connecting two distinct groups
    let group_of = |v: VertexId| groups.iter().position(|grp| grp.contains(&v));
    let mut best: Option<Vec<VertexId>> = None;
    for (gi, grp) in groups.iter().enumerate() {
        let starts: Vec<VertexId> = grp
            .iter()
            .copied()
            .filter(|v| g.contains(*v) && !removed.contains(v))
            .collect();
        if starts.is_empty() {
            continue;
        }
        let mut parent: std::collections::BTreeMap<VertexId, VertexId> = Default::default();
        let mut seen: BTreeSet<VertexId> = starts.iter().copied().collect();
        let mut queue: std::collections::VecDeque<VertexId> = starts.into();
        'bfs: while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if removed.contains(&w) || !seen.insert(w) {
                    continue;
                }
                parent.insert(w, u);
                if let Some(gj) = group_of(w) {
                    if gj != gi {
                        let mut path = vec![w];
                        let mut x = w;
                        while let Some(&p) = parent.get(&x) {
                            path.push(p);
                            x = p;
                        }
                        if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                            best = Some(path);
                        }
                        break 'bfs;
                    }
                }
                queue.push_back(w);
            }
        }
    }
    best
}

fn branch_group_mwc(
    g: &Graph,
    groups: &[BTreeSet<VertexId>],
    deletable: Option<&BTreeSet<VertexId>>,
    removed: &mut BTreeSet<VertexId>,
    best: &mut Option<(usize, BTreeSet<VertexId>)>,
) {
    if let Some((b, _)) = best {
        if removed.len() >= *b {
            return;
        }
    }
    let Some(path) = group_violating_path(g, groups, removed) else {
        *best = Some((removed.len(), removed.clone()));
        return;
    };
    for &v in &path {
        if deletable.is_some_and(|d| !d.contains(&v)) {
            continue;
        }
        removed.insert(v);
        branch_group_mwc(g, groups, deletable, removed, best);
        removed.remove(&v);
    }
}

/// Cover for all (A ⊆ s_set, B ⊆ t_set) minimum vertex cuts in the directed
/// view of `g`.
pub fn pair_cut_cover(
    g: &Graph,
    s_set: &BTreeSet<VertexId>,
    t_set: &BTreeSet<VertexId>,
    mode: CoverMode,
    seed: u64,
) -> Result<CutCover> {
    let query = CoverQuery::Pair {
        s_set: s_set.clone(),
        t_set: t_set.clone(),
    };
    let r = match min_vertex_cut(&CutQuery {
        graph: g,
        sources: s_set.clone(),
        sinks: t_set.clone(),
        undeletable: BTreeSet::new(),
    }) {
        CutResult::Finite { size, .. } => size,
        CutResult::Infinite => unreachable!("no undeletable vertices"),
    };
    match mode {
        CoverMode::Oracle => {
            if (s_set.len() + t_set.len()) as u32 > ORACLE_PAIR_LIMIT {
                return Err(Error::Budget(format!(
                    "oracle pair cover over {} vertices exceeds 2^{ORACLE_PAIR_LIMIT} sub-queries",
                    s_set.len() + t_set.len()
                )));
            }
            let mut z = BTreeSet::new();
            for a in subsets(s_set) {
                for b in subsets(t_set) {
                    let res = min_vertex_cut(&CutQuery {
                        graph: g,
                        sources: a.clone(),
                        sinks: b,
                        undeletable: BTreeSet::new(),
                    });
                    if let CutResult::Finite { cut, .. } = res {
                        z.extend(cut);
                    }
                }
            }
            let size_bound_claimed = z.len();
            Ok(CutCover {
                z,
                query,
                mode,
                seed,
                size_bound_claimed,
            })
        }
        CoverMode::Matroid => {
            let sources: BTreeSet<VertexId> = s_set.union(t_set).copied().collect();
            let q = s_set.len() + t_set.len() + r + 1;
            let mut z = matroid_triple_cover(g, &sources, q, seed)?;
            z.extend(sources);
            let size_bound_claimed = binom(q + 3, 3) + s_set.len() + t_set.len();
            Ok(CutCover {
                z,
                query,
                mode,
                seed,
                size_bound_claimed,
            })
        }
    }
}

/// Cover for every partition (X_0, X_X, X_1..X_s) of `x_set`: Z contains a
/// minimum multiway cut of the groups in g - X_X. Undirected `g`.
pub fn partition_cut_cover(
    g: &Graph,
    x_set: &BTreeSet<VertexId>,
    s: usize,
    mode: CoverMode,
    seed: u64,
) -> Result<CutCover> {
    assert!(s >= 1, "at least one group");
    let query = CoverQuery::Partition {
        x_set: x_set.clone(),
        s,
    };
    match mode {
        CoverMode::Oracle => {
            let raw = (s as u64 + 2).checked_pow(x_set.len() as u32);
            if raw.is_none_or(|r| r > ORACLE_PARTITION_LIMIT) {
                return Err(Error::Budget(format!(
                    "oracle partition cover: (s+2)^|X| = ({}+2)^{} exceeds {ORACLE_PARTITION_LIMIT}",
                    s,
                    x_set.len()
                )));
            }
            let mut z = BTreeSet::new();
            for (xx, groups) in canonical_partitions(x_set, s) {
                if let Some((_, cut)) = group_multiway_cut(g, &groups, &xx, None) {
                    z.extend(cut);
                }
            }
            let size_bound_claimed = z.len();
            Ok(CutCover {
                z,
                query,
                mode,
                seed,
                size_bound_claimed,
            })
        }
        CoverMode::Matroid => {
            let q = 2 * x_set.len() + 1;
            let mut z = matroid_triple_cover(g, x_set, q, seed)?;
            z.extend(x_set.iter().copied());
            let size_bound_claimed = binom(q + 3, 3) + x_set.len();
            Ok(CutCover {
                z,
                query,
                mode,
                seed,
                size_bound_claimed,
            })
        }
    }
}

/// Kept vertices v whose triple {v, v', v''} survives representative-family
/// reduction on the gammoid over the 2-sink-copy extension with the given
/// sources.
fn matroid_triple_cover(
    g: &Graph,
    sources: &BTreeSet<VertexId>,
    q: usize,
    seed: u64,
) -> Result<BTreeSet<VertexId>> {
    let verts: BTreeSet<VertexId> = g.vertex_set().clone();
    let (star, copies) = add_sink_copies(g, &verts, 2);
    let field = PrimeField::from_env();
    let rep = gammoid_representation(&star, sources, field, seed);
    // sources count = rank; the family budget must accommodate it
    let q = q.max(rep.rows().saturating_sub(3));
    let fam: Vec<BTreeSet<VertexId>> = verts
        .iter()
        .map(|&v| {
            let c = &copies[&v];
            [v, c[0], c[1]].into_iter().collect()
        })
        .collect();
    let out = representative_family(&rep, &fam, q)?;
    Ok(out
        .kept
        .iter()
        .map(|triple| *triple.iter().next().expect("triple nonempty"))
        .collect())
}

fn subsets(set: &BTreeSet<VertexId>) -> impl Iterator<Item = BTreeSet<VertexId>> + '_ {
    let items: Vec<VertexId> = set.iter().copied().collect();
    (0..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Every partition of `x_set` into (X_X, groups) with at most `s` nonempty
/// unordered groups; the rest of the vertices (X_0) play no role in the
/// sub-query, so they are not materialized. Canonical restricted-growth
/// enumeration yields each sub-query exactly once.
pub fn canonical_partitions(
    x_set: &BTreeSet<VertexId>,
    s: usize,
) -> Vec<(BTreeSet<VertexId>, Vec<BTreeSet<VertexId>>)> {
    let items: Vec<VertexId> = x_set.iter().copied().collect();
    let mut out = Vec::new();
    let mut xx = BTreeSet::new();
    let mut groups: Vec<BTreeSet<VertexId>> = Vec::new();
    fn rec(
        items: &[VertexId],
        idx: usize,
        s: usize,
        xx: &mut BTreeSet<VertexId>,
        groups: &mut Vec<BTreeSet<VertexId>>,
        out: &mut Vec<(BTreeSet<VertexId>, Vec<BTreeSet<VertexId>>)>,
    ) {
        if idx == items.len() {
            out.push((xx.clone(), groups.clone()));
            return;
        }
        let v = items[idx];
        // X_0 (ignored)
        rec(items, idx + 1, s, xx, groups, out);
        // X_X (forbidden)
        xx.insert(v);
        rec(items, idx + 1, s, xx, groups, out);
        xx.remove(&v);
        // an existing group, or the first new one
        let used = groups.len();
        for gi in 0..used.min(s) {
            groups[gi].insert(v);
            rec(items, idx + 1, s, xx, groups, out);
            groups[gi].remove(&v);
        }
        if used < s {
            groups.push([v].into_iter().collect());
            rec(items, idx + 1, s, xx, groups, out);
            groups.pop();
        }
    }
    rec(&items, 0, s, &mut xx, &mut groups, &mut out);
    out
}

/// Certifies a cover by exhausting its sub-queries: for each one the minimum
/// cut restricted to Z must match the unrestricted minimum.
pub fn validate_cut_cover(g: &Graph, cover: &CutCover) -> Result<bool> {
    match &cover.query {
        CoverQuery::Pair { s_set, t_set } => {
            if (s_set.len() + t_set.len()) as u32 > ORACLE_PAIR_LIMIT {
                return Err(Error::Budget("pair cover too large to validate".into()));
            }
            let outside: BTreeSet<VertexId> =
                g.vertices().filter(|v| !cover.z.contains(v)).collect();
            for a in subsets(s_set) {
                for b in subsets(t_set) {
                    let free = min_vertex_cut(&CutQuery {
                        graph: g,
                        sources: a.clone(),
                        sinks: b.clone(),
                        undeletable: BTreeSet::new(),
                    });
                    let restricted = min_vertex_cut(&CutQuery {
                        graph: g,
                        sources: a.clone(),
                        sinks: b.clone(),
                        undeletable: outside.clone(),
                    });
                    if free.size() != restricted.size() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        CoverQuery::Partition { x_set, s } => {
            let raw = (*s as u64 + 2).checked_pow(x_set.len() as u32);
            if raw.is_none_or(|r| r > ORACLE_PARTITION_LIMIT) {
                return Err(Error::Budget("partition cover too large to validate".into()));
            }
            for (xx, groups) in canonical_partitions(x_set, *s) {
                let free = group_multiway_cut_opt(g, &groups, &xx, None);
                let restricted = group_multiway_cut_opt(g, &groups, &xx, Some(&cover.z));
                if free != restricted {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Uniform random graph helper shared by tests and examples.
pub fn random_graph(n: u32, edge_prob: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(ids: &[VertexId]) -> BTreeSet<VertexId> {
        ids.iter().copied().collect()
    }

    #[test]
    fn partitions_enumerated_once() {
        let x = set(&[0, 1, 2]);
        let parts = canonical_partitions(&x, 2);
        // each (xx, unordered nonempty groups) must be unique
        let mut keys = BTreeSet::new();
        for (xx, groups) in &parts {
            let mut gs: Vec<Vec<VertexId>> = groups
                .iter()
                .map(|g| g.iter().copied().collect())
                .collect();
            gs.sort();
            assert!(keys.insert((xx.clone(), gs)), "duplicate {xx:?} {groups:?}");
        }
        // f(k,u) = (2+u) f(k-1,u) + [u<2] f(k-1,u+1), f(0,*) = 1:
        // f(3,0) = 2 f(2,0) + f(2,1) = 2*10 + 16 = 36
        assert_eq!(parts.len(), 36);
    }

    #[test]
    fn group_mwc_examples() {
        // star: center 4, leaves 0..=3; groups {0},{1}: cut the center or a leaf
        let mut g = Graph::new();
        for l in 0..4 {
            g.add_edge(4, l);
        }
        assert_eq!(
            group_multiway_cut_opt(&g, &[set(&[0]), set(&[1])], &set(&[]), None),
            Some(1)
        );
        // restricted away from everything useful: infeasible
        assert_eq!(
            group_multiway_cut_opt(&g, &[set(&[0]), set(&[1])], &set(&[]), Some(&set(&[2]))),
            None
        );
        // forbidden set removes the center: groups already separated
        assert_eq!(
            group_multiway_cut_opt(&g, &[set(&[0]), set(&[1])], &set(&[4]), None),
            Some(0)
        );
    }

    #[test]
    fn oracle_pair_cover_path() {
        let mut g = Graph::new();
        g.add_arc(0, 1);
        g.add_arc(1, 2);
        let cover = pair_cut_cover(&g, &set(&[0]), &set(&[2]), CoverMode::Oracle, 0).unwrap();
        assert!(validate_cut_cover(&g, &cover).unwrap());
        // S=T={x} forces x itself into Z
        let cover = pair_cut_cover(&g, &set(&[1]), &set(&[1]), CoverMode::Oracle, 0).unwrap();
        assert!(cover.z.contains(&1));
        // empty queries give an empty cover
        let cover = pair_cut_cover(&g, &set(&[]), &set(&[]), CoverMode::Oracle, 0).unwrap();
        assert!(cover.z.is_empty());
        assert!(validate_cut_cover(&g, &cover).unwrap());
    }

    #[test]
    fn oracle_partition_cover_star() {
        let mut g = Graph::new();
        g.add_edge(2, 0);
        g.add_edge(2, 1);
        let cover =
            partition_cut_cover(&g, &set(&[0, 1]), 2, CoverMode::Oracle, 0).unwrap();
        assert!(cover.z.contains(&2) || cover.z.is_superset(&set(&[0])) || cover.z.is_superset(&set(&[1])));
        assert!(validate_cut_cover(&g, &cover).unwrap());

        // fully disconnected x_set: all min cuts empty
        let g2 = Graph::with_vertices([0, 1, 2]);
        let cover =
            partition_cut_cover(&g2, &set(&[0, 1, 2]), 2, CoverMode::Oracle, 0).unwrap();
        assert!(cover.z.is_empty());
        assert!(validate_cut_cover(&g2, &cover).unwrap());
    }

    #[test]
    fn matroid_covers_validate_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..12u64 {
            let g = random_graph(8, 0.35, &mut rng);
            let s_set = set(&[0, 1]);
            let t_set = set(&[6, 7]);
            let cover =
                pair_cut_cover(&g, &s_set, &t_set, CoverMode::Matroid, 100 + trial).unwrap();
            assert!(
                validate_cut_cover(&g, &cover).unwrap(),
                "pair cover failed on trial {trial}"
            );
            let cover =
                partition_cut_cover(&g, &set(&[0, 1, 2]), 2, CoverMode::Matroid, 200 + trial)
                    .unwrap();
            assert!(
                validate_cut_cover(&g, &cover).unwrap(),
                "partition cover failed on trial {trial}"
            );
        }
    }

    #[test]
    fn oracle_budget_refusal() {
        let g = random_graph(20, 0.2, &mut ChaCha8Rng::seed_from_u64(1));
        let big: BTreeSet<VertexId> = (0..10).collect();
        let big2: BTreeSet<VertexId> = (10..20).collect();
        assert!(pair_cut_cover(&g, &big, &big2, CoverMode::Oracle, 0).is_err());
        let x: BTreeSet<VertexId> = (0..12).collect();
        assert!(partition_cut_cover(&g, &x, 3, CoverMode::Oracle, 0).is_err());
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(6, 3), 20);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(7, 0), 1);
    }
}
