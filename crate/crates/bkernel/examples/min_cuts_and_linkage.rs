//! Vertex minimum cuts, closest cuts, linkage, and terminal fans.
//!
//! All cut machinery is vertex-capacitated: a cut is a set of vertices
//! (possibly endpoints) whose removal disconnects the sides, and undeletable
//! vertices can be excluded.

use std::collections::BTreeSet;

use bkernel::flow::{closest_cut, fan_to_distinct_terminals, is_linked, min_vertex_cut, CutQuery};
use bkernel::{Graph, Result, VertexId};

fn set(ids: &[VertexId]) -> BTreeSet<VertexId> {
    ids.iter().copied().collect()
}

fn main() -> Result<()> {
    // theta graph: three internally disjoint 0 -> 1 paths
    let mut g = Graph::new();
    for (a, b) in [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)] {
        g.add_edge(a, b);
    }

    // cuts may contain endpoints: deleting 0 itself is cheapest
    let cut = min_vertex_cut(&CutQuery {
        graph: &g,
        sources: set(&[0]),
        sinks: set(&[1]),
        undeletable: BTreeSet::new(),
    });
    println!("min 0-1 cut: size {:?}, cut {:?}", cut.size(), cut.cut());

    // protecting the endpoints exposes the three disjoint paths: the
    // minimum internal cut takes one vertex per path
    let internal = min_vertex_cut(&CutQuery {
        graph: &g,
        sources: set(&[0]),
        sinks: set(&[1]),
        undeletable: set(&[0, 1]),
    });
    println!(
        "with 0 and 1 undeletable: size {:?}, cut {:?}",
        internal.size(),
        internal.cut()
    );

    // among minimum cuts, the one closest to the first side
    let closest = closest_cut(&g, &set(&[2, 3, 4]), &set(&[1]));
    println!("min cut closest to {{2,3,4}}: {closest:?}");

    // linkage: can T be saturated by vertex-disjoint paths from S?
    let s = set(&[2, 3, 4]);
    let t = set(&[0, 1, 5]);
    println!("{:?} linked into {:?}: {}", s, t, is_linked(&g, &s, &t));

    // a star center chokes disjoint paths: two targets, only one route
    let mut star = Graph::new();
    for leaf in 1..=4 {
        star.add_edge(0, leaf);
        star.add_edge(leaf, leaf + 10);
    }
    println!(
        "{:?} linked into {:?} in the star: {}",
        set(&[1, 2]),
        set(&[13, 14]),
        is_linked(&star, &set(&[1, 2]), &set(&[13, 14]))
    );

    // fan: vertex-disjoint paths from one vertex to distinct terminals
    let terminals = set(&[11, 12, 13, 14]);
    println!(
        "fan from 0 to {:?}: {}",
        terminals,
        fan_to_distinct_terminals(&star, 0, &terminals)
    );
    Ok(())
}
