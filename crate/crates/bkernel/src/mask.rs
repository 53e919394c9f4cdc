//! Exact solvers for small instances, on a bitmask graph representation.
//!
//! These back the gluing-equivalence oracle, so they are called millions of
//! times on graphs of at most a couple dozen vertices. Each problem gets a
//! branch-and-bound solver plus a brute-force enumeration twin used to
//! cross-check the clever one in tests.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

pub const MAX_MASK_VERTICES: usize = 26;

/// Undirected graph on vertices 0..n (n ≤ 26) with adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl MaskGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_MASK_VERTICES, "mask solver limit exceeded: {n}");
        MaskGraph {
            n,
            adj: vec![0; n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Translates an undirected `Graph`; returns the id table (bit i stands
    /// for ids[i]).
    pub fn from_graph(g: &Graph) -> (MaskGraph, Vec<VertexId>) {
        assert_eq!(g.arc_list().count(), 0, "mask solvers are undirected");
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut mg = MaskGraph::empty(ids.len());
        for (u, v) in g.edge_list() {
            mg.add_edge(index[&u], index[&v]);
        }
        (mg, ids)
    }

    pub fn mask_of(ids: &[VertexId], set: impl IntoIterator<Item = VertexId>) -> u32 {
        let mut m = 0u32;
        for v in set {
            let i = ids.iter().position(|&x| x == v).expect("vertex in table");
            m |= 1 << i;
        }
        m
    }

    pub fn component_from(&self, alive: u32, start: usize) -> u32 {
        let mut comp = 1u32 << start;
        loop {
            let mut grow = 0u32;
            let mut rest = comp;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow |= self.adj[v];
            }
            grow &= alive & !comp;
            if grow == 0 {
                return comp;
            }
            comp |= grow;
        }
    }

    /// True iff `cover` meets every edge of the graph induced on `alive`.
    pub fn is_vertex_cover(&self, alive: u32, cover: u32) -> bool {
        let rest = alive & !cover;
        let mut m = rest;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj[v] & rest != 0 {
                return false;
            }
        }
        true
    }

    /// Two-colors the graph induced on `alive`; None when an odd cycle
    /// exists. Lowest-index vertex per component lands on the left side.
    pub fn bipartition(&self, alive: u32) -> Option<(u32, u32)> {
        let mut colored = 0u32;
        let mut left = 0u32;
        let mut right = 0u32;
        let mut rest = alive;
        while rest != 0 {
            let root = rest.trailing_zeros() as usize;
            let mut frontier = 1u32 << root;
            left |= frontier;
            colored |= frontier;
            let mut side = false;
            while frontier != 0 {
                let mut next = 0u32;
                let mut m = frontier;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    next |= self.adj[v] & alive;
                }
                // same-side adjacency means an odd cycle
                let cur = if side { right } else { left };
                let mut mm = frontier;
                while mm != 0 {
                    let v = mm.trailing_zeros() as usize;
                    mm &= mm - 1;
                    if self.adj[v] & cur & alive != 0 {
                        return None;
                    }
                }
                next &= !colored;
                side = !side;
                if side {
                    right |= next;
                } else {
                    left |= next;
                }
                colored |= next;
                frontier = next;
            }
            rest = alive & !colored;
        }
        Some((left, right))
    }

    /// Any odd cycle in the graph induced on `alive`, as a vertex mask.
    fn odd_cycle(&self, alive: u32) -> Option<u32> {
        let mut colored = 0u32;
        let mut color = vec![false; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut rest = alive;
        while rest != 0 {
            let root = rest.trailing_zeros() as usize;
            let mut queue = std::collections::VecDeque::from([root]);
            colored |= 1u32 << root;
            while let Some(u) = queue.pop_front() {
                let mut m = self.adj[u] & alive;
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if colored & (1u32 << w) == 0 {
                        colored |= 1u32 << w;
                        color[w] = !color[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if color[w] == color[u] && w != u {
                        // tree paths from u and w to their meet, plus the
                        // conflict edge, form an odd cycle
                        let path = |mut x: usize| {
                            let mut p = vec![x];
                            while parent[x] != usize::MAX {
                                x = parent[x];
                                p.push(x);
                            }
                            p
                        };
                        let pa = path(u);
                        let pb = path(w);
                        let in_pb: u32 = pb.iter().map(|&x| 1u32 << x).sum();
                        let meet = *pa
                            .iter()
                            .find(|&&x| in_pb & (1u32 << x) != 0)
                            .unwrap_or(&root);
                        let mut cyc = 0u32;
                        for &x in &pa {
                            cyc |= 1 << x;
                            if x == meet {
                                break;
                            }
                        }
                        for &x in &pb {
                            cyc |= 1 << x;
                            if x == meet {
                                break;
                            }
                        }
                        return Some(cyc);
                    }
                }
            }
            rest = alive & !colored;
        }
        None
    }

    /// Minimum vertex cover size of the graph induced on `alive`.
    pub fn vc_opt(&self, alive: u32) -> u32 {
        self.vc_opt_witness(alive).0
    }

    /// Minimum vertex cover with one optimal cover as a mask.
    pub fn vc_opt_witness(&self, alive: u32) -> (u32, u32) {
        let mut best = (alive.count_ones(), alive);
        self.vc_branch(alive, 0, 0, &mut best);
        best
    }

    fn vc_lower_bound(&self, alive: u32) -> u32 {
        // greedy maximal matching
        let mut used = 0u32;
        let mut size = 0;
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if used & (1 << v) != 0 {
                continue;
            }
            let cand = self.adj[v] & alive & !used;
            if cand != 0 {
                used |= (1 << v) | (1 << cand.trailing_zeros());
                size += 1;
            }
        }
        size
    }

    fn vc_branch(&self, alive: u32, taken: u32, chosen: u32, best: &mut (u32, u32)) {
        if taken >= best.0 {
            return;
        }
        if taken + self.vc_lower_bound(alive) >= best.0 {
            return;
        }
        // strip isolated vertices, apply the degree-1 rule, find max degree
        let mut alive = alive;
        let mut taken = taken;
        let mut chosen = chosen;
        loop {
            let mut changed = false;
            let mut m = alive;
            let mut max_deg = 0;
            let mut max_v = usize::MAX;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let deg = (self.adj[v] & alive).count_ones();
                if deg == 0 {
                    alive &= !(1u32 << v);
                    changed = true;
                } else if deg == 1 {
                    // take the unique neighbor
                    let w = (self.adj[v] & alive).trailing_zeros();
                    alive &= !((1u32 << v) | (1u32 << w));
                    taken += 1;
                    chosen |= 1u32 << w;
                    changed = true;
                    break;
                } else if deg > max_deg {
                    max_deg = deg;
                    max_v = v;
                }
            }
            if taken >= best.0 {
                return;
            }
            if alive == 0 {
                *best = (taken, chosen);
                return;
            }
            if changed {
                continue;
            }
            let v = max_v;
            // branch: v in the cover
            self.vc_branch(alive & !(1u32 << v), taken + 1, chosen | (1u32 << v), best);
            // or all of N(v) in the cover
            let nb = self.adj[v] & alive;
            self.vc_branch(
                alive & !nb & !(1u32 << v),
                taken + nb.count_ones(),
                chosen | nb,
                best,
            );
            return;
        }
    }

    /// Minimum vertex cover by ascending-popcount enumeration (reference).
    pub fn vc_opt_enum(&self, alive: u32) -> u32 {
        for k in 0..=alive.count_ones() {
            if self
                .subsets_of(alive, k)
                .any(|cover| self.is_vertex_cover(alive, cover))
            {
                return k;
            }
        }
        unreachable!()
    }

    /// Minimum odd cycle transversal size of the graph induced on `alive`.
    pub fn oct_opt(&self, alive: u32) -> u32 {
        self.oct_opt_witness(alive).0
    }

    /// Minimum odd cycle transversal with one optimal deletion set.
    pub fn oct_opt_witness(&self, alive: u32) -> (u32, u32) {
        for k in 0.. {
            if let Some(del) = self.oct_branch(alive, k) {
                return (k, del);
            }
        }
        unreachable!()
    }

    fn oct_branch(&self, alive: u32, budget: u32) -> Option<u32> {
        match self.odd_cycle(alive) {
            None => Some(0),
            Some(cyc) => {
                if budget == 0 {
                    return None;
                }
                let mut m = cyc;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if let Some(del) = self.oct_branch(alive & !(1u32 << v), budget - 1) {
                        return Some(del | (1u32 << v));
                    }
                }
                None
            }
        }
    }

    pub fn oct_opt_enum(&self, alive: u32) -> u32 {
        for k in 0..=alive.count_ones() {
            if self
                .subsets_of(alive, k)
                .any(|del| self.bipartition(alive & !del).is_some())
            {
                return k;
            }
        }
        unreachable!()
    }

    /// True iff every component of the graph induced on `alive` contains at
    /// most one vertex of `terminals`.
    pub fn separates_terminals(&self, alive: u32, terminals: u32) -> bool {
        let mut rest = terminals & alive;
        while rest != 0 {
            let t = rest.trailing_zeros() as usize;
            let comp = self.component_from(alive, t);
            if (comp & terminals & alive).count_ones() > 1 {
                return false;
            }
            rest &= !comp;
        }
        true
    }

    /// Minimum multiway cut separating `terminals` pairwise. When
    /// `deletable_terminals` is false the cut must avoid terminals and the
    /// instance may be infeasible (None); otherwise deleting a terminal also
    /// removes it from the demand.
    pub fn mwc_opt(&self, alive: u32, terminals: u32, deletable_terminals: bool) -> Option<u32> {
        self.mwc_opt_witness(alive, terminals, deletable_terminals)
            .map(|(k, _)| k)
    }

    /// Minimum multiway cut with one optimal cut as a mask.
    pub fn mwc_opt_witness(
        &self,
        alive: u32,
        terminals: u32,
        deletable_terminals: bool,
    ) -> Option<(u32, u32)> {
        let cap = alive & terminals;
        let mut best: Option<(u32, u32)> = None;
        // a cut of all terminals always works when they are deletable
        if deletable_terminals {
            best = Some((cap.count_ones(), cap));
        }
        self.mwc_branch(alive, terminals, deletable_terminals, 0, 0, &mut best);
        best
    }

    fn violating_path(&self, alive: u32, terminals: u32) -> Option<Vec<usize>> {
        // shortest path between two distinct terminals, if any
        let mut rest = terminals & alive;
        let mut best: Option<Vec<usize>> = None;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // BFS from s
            let mut parent = vec![usize::MAX; self.n];
            let mut seen = 1u32 << s;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let mut m = self.adj[u] & alive & !seen;
                while m != 0 {
                    let w = m.trailing_zeros() as usize;
                    m &= m - 1;
                    seen |= 1 << w;
                    parent[w] = u;
                    if terminals & (1u32 << w) != 0 {
                        let mut path = vec![w];
                        let mut x = w;
                        while parent[x] != usize::MAX {
                            x = parent[x];
                            path.push(x);
                        }
                        if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                            best = Some(path);
                        }
                        // only the shortest from this source matters
                        queue.clear();
                        break;
                    }
                    queue.push_back(w);
                }
            }
        }
        best
    }

    fn mwc_branch(
        &self,
        alive: u32,
        terminals: u32,
        deletable: bool,
        taken: u32,
        removed: u32,
        best: &mut Option<(u32, u32)>,
    ) {
        if let Some((b, _)) = *best {
            if taken >= b {
                return;
            }
        }
        let Some(path) = self.violating_path(alive, terminals) else {
            *best = Some((taken, removed));
            return;
        };
        for &v in &path {
            if !deletable && terminals & (1u32 << v) != 0 {
                continue;
            }
            self.mwc_branch(
                alive & !(1u32 << v),
                terminals,
                deletable,
                taken + 1,
                removed | (1u32 << v),
                best,
            );
        }
    }

    pub fn mwc_opt_enum(
        &self,
        alive: u32,
        terminals: u32,
        deletable_terminals: bool,
    ) -> Option<u32> {
        let candidates = if deletable_terminals {
            alive
        } else {
            alive & !terminals
        };
        for k in 0..=candidates.count_ones() {
            if self
                .subsets_of(candidates, k)
                .any(|del| self.separates_terminals(alive & !del, terminals))
            {
                return Some(k);
            }
        }
        None
    }

    /// Iterator over all `size`-subsets of `universe` (as masks).
    pub fn subsets_of(&self, universe: u32, size: u32) -> impl Iterator<Item = u32> + '_ {
        let bits: Vec<u32> = (0..32).filter(|b| universe & (1 << b) != 0).collect();
        let k = size as usize;
        let mut combo: Vec<usize> = (0..k).collect();
        let m = bits.len();
        let mut done = k > m;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mask = combo.iter().map(|&i| 1u32 << bits[i]).sum();
            // advance
            let mut i = k;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                if combo[i] + 1 <= m - (k - i) {
                    combo[i] += 1;
                    for j in i + 1..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
            Some(mask)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> MaskGraph {
        let mut g = MaskGraph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn vc_small_graphs() {
        let c5 = cycle(5);
        let full = c5.full_mask();
        assert_eq!(c5.vc_opt(full), 3);
        assert_eq!(c5.vc_opt_enum(full), 3);

        let mut star = MaskGraph::empty(5);
        for l in 1..5 {
            star.add_edge(0, l);
        }
        assert_eq!(star.vc_opt(star.full_mask()), 1);

        let empty = MaskGraph::empty(4);
        assert_eq!(empty.vc_opt(empty.full_mask()), 0);
    }

    #[test]
    fn oct_small_graphs() {
        let c5 = cycle(5);
        assert_eq!(c5.oct_opt(c5.full_mask()), 1);
        let c6 = cycle(6);
        assert_eq!(c6.oct_opt(c6.full_mask()), 0);

        // K_m stays non-bipartite until only two vertices remain
        let mut k5 = MaskGraph::empty(5);
        for u in 0..5 {
            for v in u + 1..5 {
                k5.add_edge(u, v);
            }
        }
        assert_eq!(k5.oct_opt(k5.full_mask()), 3);
        assert_eq!(k5.oct_opt_enum(k5.full_mask()), 3);
    }

    #[test]
    fn mwc_small_graphs() {
        // path t0 - a - t1: cut {a}; terminals undeletable
        let mut p = MaskGraph::empty(3);
        p.add_edge(0, 1);
        p.add_edge(1, 2);
        let t = 0b101;
        assert_eq!(p.mwc_opt(p.full_mask(), t, false), Some(1));
        assert_eq!(p.mwc_opt_enum(p.full_mask(), t, false), Some(1));

        // adjacent terminals: infeasible unless deletable
        let mut e = MaskGraph::empty(2);
        e.add_edge(0, 1);
        assert_eq!(e.mwc_opt(e.full_mask(), 0b11, false), None);
        assert_eq!(e.mwc_opt(e.full_mask(), 0b11, true), Some(1));
        assert_eq!(e.mwc_opt_enum(e.full_mask(), 0b11, true), Some(1));
    }

    #[test]
    fn solvers_agree_exhaustively() {
        // all graphs on 5 vertices with a fixed pseudo-random edge subset
        // sample, plus sweeps over alive masks
        let mut edge_pairs = Vec::new();
        for u in 0..5usize {
            for v in u + 1..5 {
                edge_pairs.push((u, v));
            }
        }
        let mut state = 0x243f6a88u64;
        for trial in 0..200 {
            let mut g = MaskGraph::empty(5);
            for &(u, v) in &edge_pairs {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if state >> 40 & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            let alive = g.full_mask();
            assert_eq!(g.vc_opt(alive), g.vc_opt_enum(alive), "trial {trial}");
            assert_eq!(g.oct_opt(alive), g.oct_opt_enum(alive), "trial {trial}");
            let terminals = ((state >> 17) as u32) & alive;
            for deletable in [false, true] {
                assert_eq!(
                    g.mwc_opt(alive, terminals, deletable),
                    g.mwc_opt_enum(alive, terminals, deletable),
                    "trial {trial} deletable {deletable}"
                );
            }
        }
    }

    #[test]
    fn witnesses_are_feasible_and_tight() {
        let mut state = 0x13198a2eu64;
        for _ in 0..80 {
            let mut g = MaskGraph::empty(6);
            for u in 0..6usize {
                for v in u + 1..6 {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if state >> 33 & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
            }
            let alive = g.full_mask();
            let (k, cover) = g.vc_opt_witness(alive);
            assert_eq!(cover.count_ones(), k);
            assert!(g.is_vertex_cover(alive, cover));

            let (k, del) = g.oct_opt_witness(alive);
            assert_eq!(del.count_ones(), k);
            assert!(g.bipartition(alive & !del).is_some());

            let terminals = ((state >> 11) as u32) & alive;
            for deletable in [false, true] {
                if let Some((k, cut)) = g.mwc_opt_witness(alive, terminals, deletable) {
                    assert_eq!(cut.count_ones(), k);
                    assert!(deletable || cut & terminals == 0);
                    assert!(g.separates_terminals(alive & !cut, terminals));
                }
            }
        }
    }

    #[test]
    fn from_graph_round_trip() {
        let mut g = Graph::new();
        g.add_edge(3, 9);
        g.add_edge(9, 12);
        let (mg, ids) = MaskGraph::from_graph(&g);
        assert_eq!(ids, vec![3, 9, 12]);
        assert_eq!(mg.vc_opt(mg.full_mask()), 1);
        let t = MaskGraph::mask_of(&ids, [3, 12]);
        assert_eq!(mg.mwc_opt(mg.full_mask(), t, false), Some(1));
    }
}
