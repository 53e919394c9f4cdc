//! Cut covers: one vertex set containing a minimum cut for every query in a
//! family, computed either by querying an exact cut oracle per query or by a
//! randomized matroid argument whose size bound is query-free.

use std::collections::BTreeSet;

use bkernel::cutcover::{
    group_multiway_cut, pair_cut_cover, partition_cut_cover, validate_cut_cover, CoverMode,
};
use bkernel::{Graph, Result, VertexId};

fn set(ids: &[VertexId]) -> BTreeSet<VertexId> {
    ids.iter().copied().collect()
}

fn main() -> Result<()> {
    // grid-ish graph between two vertex groups
    let mut g = Graph::new();
    for (a, b) in [
        (0, 4),
        (1, 4),
        (1, 5),
        (4, 6),
        (5, 6),
        (5, 7),
        (6, 2),
        (6, 3),
        (7, 3),
    ] {
        g.add_edge(a, b);
    }
    let s_side = set(&[0, 1]);
    let t_side = set(&[2, 3]);

    // pair cover: a minimum (S', T') separator stays inside Z for every
    // S' ⊆ S, T' ⊆ T
    for mode in [CoverMode::Oracle, CoverMode::Matroid] {
        let cover = pair_cut_cover(&g, &s_side, &t_side, mode, 11)?;
        println!(
            "pair cover [{mode:?}]: |Z| = {} (claimed ≤ {}), Z = {:?}",
            cover.z.len(),
            cover.size_bound_claimed,
            cover.z
        );
        assert!(validate_cut_cover(&g, &cover)?);
    }

    // partition cover: minimum multiway cuts of every partition of X into
    // at most 2 groups stay inside Z
    let x = set(&[0, 2, 3]);
    let cover = partition_cut_cover(&g, &x, 2, CoverMode::Oracle, 11)?;
    println!(
        "\npartition cover over X = {x:?}: |Z| = {} (claimed ≤ {})",
        cover.z.len(),
        cover.size_bound_claimed
    );
    assert!(validate_cut_cover(&g, &cover)?);

    // one concrete multiway cut the partition cover must dominate
    let groups = vec![set(&[0]), set(&[2, 3])];
    let (size, cut) = group_multiway_cut(&g, &groups, &BTreeSet::new(), None)
        .expect("the groups are separable");
    println!("direct minimum cut separating {{0}} from {{2,3}}: {cut:?} (size {size})");
    Ok(())
}
