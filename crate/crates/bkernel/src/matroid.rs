//! Prime-field linear algebra, randomized gammoid representations, rank
//! truncation, and representative families.
//!
//! A gammoid over a digraph with source set S declares a vertex set
//! independent when it is linked to S by disjoint paths. We represent it as a
//! matrix over F_p via the classical route: build the transversal matroid of
//! the reversed incidence structure with random nonzero entries, then dualize.
//! Randomness can only err in one direction per determinant (a structurally
//! nonzero polynomial evaluating to zero), so failures are rare and are caught
//! at test scale by comparing against the flow-based linkage oracle.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Arithmetic mod a prime small enough that products fit in u128.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub const DEFAULT_PRIME: u64 = (1u64 << 61) - 1;

    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    /// Default field, overridable through the BK_FIELD_PRIME variable.
    pub fn from_env() -> Self {
        match std::env::var("BK_FIELD_PRIME") {
            Ok(v) => PrimeField {
                p: v.parse().unwrap_or(Self::DEFAULT_PRIME),
            },
            Err(_) => PrimeField {
                p: Self::DEFAULT_PRIME,
            },
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    fn random_nonzero(&self, rng: &mut impl Rng) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Row rank of a matrix over the field (Gaussian elimination).
pub fn field_rank(field: PrimeField, m: &[Vec<u64>]) -> usize {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = field.inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for cc in 0..cols {
                    let delta = field.mul(f, a[rank][cc]);
                    a[r][cc] = field.sub(a[r][cc], delta);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A linear representation of a matroid on graph-vertex ground elements:
/// one column per ground element, independence = column independence.
#[derive(Debug, Clone)]
pub struct LinearRep {
    pub field: PrimeField,
    /// Column order; ground[i] labels column i.
    pub ground: Vec<VertexId>,
    /// rows x ground.len() matrix.
    pub mat: Vec<Vec<u64>>,
}

impl LinearRep {
    pub fn rows(&self) -> usize {
        self.mat.len()
    }

    pub fn col_index(&self, v: VertexId) -> Option<usize> {
        self.ground.iter().position(|&g| g == v)
    }

    fn columns(&self, set: &BTreeSet<VertexId>) -> Option<Vec<Vec<u64>>> {
        // one row per selected ground element
        set.iter()
            .map(|&v| {
                self.col_index(v)
                    .map(|c| self.mat.iter().map(|row| row[c]).collect())
            })
            .collect()
    }

    pub fn is_independent(&self, set: &BTreeSet<VertexId>) -> bool {
        if set.len() > self.rows() {
            return false;
        }
        match self.columns(set) {
            Some(cols) => field_rank(self.field, &cols) == set.len(),
            None => false,
        }
    }
}

/// Reduced row echelon form in place; returns pivot column indices.
fn rref(field: PrimeField, a: &mut [Vec<u64>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for cc in 0..cols {
                    let delta = field.mul(f, a[r][cc]);
                    a[i][cc] = field.sub(a[i][cc], delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Representation of the dual matroid on the same ground order: one row per
/// non-pivot column, orthogonal to the row space of the input.
fn dualize(field: PrimeField, mut mat: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let pivots = rref(field, &mut mat);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let nonpivots: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut dual = vec![vec![0u64; ncols]; nonpivots.len()];
    for (k, &d) in nonpivots.iter().enumerate() {
        dual[k][d] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            dual[k][c] = field.sub(0, mat[i][d]);
        }
    }
    dual
}

/// Randomized representation of the gammoid on digraph `d` (undirected edges
/// count both ways) with the given sources: a vertex set is independent iff
/// it is linked to `sources` by vertex-disjoint paths. One column per vertex,
/// |sources| rows. Per instantiation the failure probability is at most
/// |V|^2 * 2^|V| / p.
pub fn gammoid_representation(
    d: &Graph,
    sources: &BTreeSet<VertexId>,
    field: PrimeField,
    seed: u64,
) -> LinearRep {
    let ground: Vec<VertexId> = d.vertices().collect();
    let left: Vec<VertexId> = ground
        .iter()
        .copied()
        .filter(|v| !sources.contains(v))
        .collect();
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        // transversal matrix of the incidence structure: row w (a non-source),
        // column v, nonzero iff v = w or v -> w is a connection
        let mut mat = vec![vec![0u64; ground.len()]; left.len()];
        for (r, &w) in left.iter().enumerate() {
            let mut supported: BTreeSet<VertexId> = d.in_neighbors(w);
            supported.insert(w);
            for (c, &v) in ground.iter().enumerate() {
                if supported.contains(&v) {
                    mat[r][c] = field.random_nonzero(&mut rng);
                }
            }
        }
        // the self entries give a structural perfect matching of the rows, so
        // a rank drop can only be random cancellation: redraw
        if field_rank(field, &mat) < left.len() {
            continue;
        }
        let dual = dualize(field, mat, ground.len());
        debug_assert_eq!(dual.len(), sources.len());
        return LinearRep {
            field,
            ground,
            mat: dual,
        };
    }
    unreachable!("64 consecutive rank-deficient draws at p >= 2^61");
}

/// Adds `count` sink-only copies of each vertex in `copy_of`: fresh ids in
/// ascending order, arcs (u, copy) for every connection u -> v, no outgoing
/// arcs. Returns the extended graph and the copy map.
pub fn add_sink_copies(
    g: &Graph,
    copy_of: &BTreeSet<VertexId>,
    count: usize,
) -> (Graph, BTreeMap<VertexId, Vec<VertexId>>) {
    let mut out = g.clone();
    let mut map = BTreeMap::new();
    for &v in copy_of {
        let preds = g.in_neighbors(v);
        let mut copies = Vec::with_capacity(count);
        for _ in 0..count {
            let c = out.add_fresh_vertex();
            for &u in &preds {
                out.add_arc(u, c);
            }
            copies.push(c);
        }
        map.insert(v, copies);
    }
    (out, map)
}

/// Random rank-`r` truncation: independence of sets of size ≤ r is preserved
/// with failure probability about (#sets tested) * r / p. A no-op when the
/// representation already has at most `r` rows.
pub fn truncate(rep: &LinearRep, r: usize, seed: u64) -> LinearRep {
    if rep.rows() <= r {
        return rep.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472756e63617465);
    let field = rep.field;
    let t: Vec<Vec<u64>> = (0..r)
        .map(|_| (0..rep.rows()).map(|_| rng.gen_range(0..field.p)).collect())
        .collect();
    let mut mat = vec![vec![0u64; rep.ground.len()]; r];
    for (i, row) in mat.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (k, trow) in t[i].iter().enumerate() {
                acc = field.add(acc, field.mul(*trow, rep.mat[k][c]));
            }
            *cell = acc;
        }
    }
    LinearRep {
        field,
        ground: rep.ground.clone(),
        mat,
    }
}

/// Output of [`representative_family`]: the kept subfamily plus how many
/// input sets were dropped for being dependent.
#[derive(Debug, Clone)]
pub struct RepresentativeFamily {
    pub kept: Vec<BTreeSet<VertexId>>,
    pub dropped_dependent: usize,
}

/// Computes a q-representative subfamily of `fam` (all sets of one size s):
/// for every independent X with |X| ≤ q, if some member of `fam` extends X
/// then some kept member does. Output size ≤ C(q+s, s). Candidates are
/// scanned in ascending lexicographic ground-id order and kept greedily when
/// their exterior-product coordinates leave the span of the kept ones.
pub fn representative_family(
    rep: &LinearRep,
    fam: &[BTreeSet<VertexId>],
    q: usize,
) -> Result<RepresentativeFamily> {
    if fam.is_empty() {
        return Ok(RepresentativeFamily {
            kept: Vec::new(),
            dropped_dependent: 0,
        });
    }
    let s = fam[0].len();
    if fam.iter().any(|y| y.len() != s) {
        return Err(Error::Parameter(
            "representative family requires equal-size sets".into(),
        ));
    }
    if rep.rows() > q + s {
        return Err(Error::Parameter(format!(
            "representation rank {} exceeds q+s = {}; truncate first",
            rep.rows(),
            q + s
        )));
    }
    let field = rep.field;
    let row_subsets: Vec<Vec<usize>> = (0..rep.rows()).combinations(s).collect();
    let mut candidates: Vec<BTreeSet<VertexId>> = fam.to_vec();
    candidates.sort_by(|a, b| {
        a.iter()
            .collect::<Vec<_>>()
            .cmp(&b.iter().collect::<Vec<_>>())
    });
    candidates.dedup();

    // incremental row basis over wedge coordinates: (pivot index, vector)
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    let mut dropped = 0usize;
    for y in candidates {
        let Some(cols) = wedge_vector(rep, &row_subsets, &y) else {
            dropped += 1;
            continue;
        };
        let mut v = cols;
        if v.iter().all(|&x| x == 0) {
            dropped += 1;
            continue;
        }
        for (pivot, bvec) in &basis {
            if v[*pivot] != 0 {
                let f = v[*pivot];
                for (x, b) in v.iter_mut().zip(bvec) {
                    let delta = field.mul(f, *b);
                    *x = field.sub(*x, delta);
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&x| x != 0) {
            let inv = field.inv(v[pivot]);
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            basis.push((pivot, v));
            kept.push(y);
        }
    }
    Ok(RepresentativeFamily {
        kept,
        dropped_dependent: dropped,
    })
}

/// All s x s minors of the columns of `y`, indexed by `row_subsets`; None if
/// a ground element is missing, all-zero if the set is dependent.
fn wedge_vector(
    rep: &LinearRep,
    row_subsets: &[Vec<usize>],
    y: &BTreeSet<VertexId>,
) -> Option<Vec<u64>> {
    let field = rep.field;
    let col_idx: Option<Vec<usize>> = y.iter().map(|&v| rep.col_index(v)).collect();
    let col_idx = col_idx?;
    let mut out = Vec::with_capacity(row_subsets.len());
    for rows in row_subsets {
        let minor: Vec<Vec<u64>> = rows
            .iter()
            .map(|&r| col_idx.iter().map(|&c| rep.mat[r][c]).collect())
            .collect();
        out.push(determinant(field, minor));
    }
    Some(out)
}

fn determinant(field: PrimeField, mut a: Vec<Vec<u64>>) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(c, p);
            det = field.sub(0, det);
        }
        det = field.mul(det, a[c][c]);
        let inv = field.inv(a[c][c]);
        for r in c + 1..n {
            if a[r][c] != 0 {
                let f = field.mul(a[r][c], inv);
                for cc in c..n {
                    let delta = field.mul(f, a[c][cc]);
                    a[r][cc] = field.sub(a[r][cc], delta);
                }
            }
        }
    }
    det
}

/// Symbolic and numeric failure-probability bound for one gammoid
/// instantiation on an n-vertex graph over F_p.
pub fn gammoid_failure_bound(n: usize, p: u64) -> (String, f64) {
    let expr = format!("{n}^2 * 2^{n} / {p}");
    let value = (n as f64) * (n as f64) * (n as f64).exp2() / (p as f64);
    (expr, value)
}
