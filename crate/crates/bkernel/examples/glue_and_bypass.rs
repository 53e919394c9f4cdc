//! Boundaried graphs, gluing, and vertex bypass.
//!
//! Two graphs sharing a boundary are glued by identifying boundary vertices
//! and uniting annotations index-wise. Bypassing a vertex set removes it and
//! reconnects everything that routed through it.

use std::collections::BTreeSet;

use bkernel::{Abg, Graph, Result, VertexId};

fn main() -> Result<()> {
    // a square 0-2-1-3-0 with boundary {0, 1}
    let mut g = Graph::new();
    g.add_edge(0, 2);
    g.add_edge(2, 1);
    g.add_edge(1, 3);
    g.add_edge(3, 0);
    let boundary: BTreeSet<VertexId> = [0, 1].into_iter().collect();
    let left = Abg::new(g, boundary.clone())?.with_annotation("terminals", [2].into_iter().collect())?;

    // a path 0-7-1 over the same boundary, its own terminal at 7
    let mut h = Graph::new();
    h.add_edge(0, 7);
    h.add_edge(7, 1);
    let right = Abg::new(h, boundary)?.with_annotation("terminals", [7].into_iter().collect())?;

    let glued = left.glue(&right)?;
    println!("left : {:?}", left.graph.edge_list().collect::<Vec<_>>());
    println!("right: {:?}", right.graph.edge_list().collect::<Vec<_>>());
    println!("glued: {:?}", glued.graph.edge_list().collect::<Vec<_>>());
    println!(
        "glued terminals (united index-wise): {:?}",
        glued.annotation("terminals").unwrap()
    );

    // bypassing one vertex of the square reconnects its neighbors
    let square = left.graph.clone();
    let bypassed = square.bypass(2)?;
    println!("\nbypass vertex 2: {:?}", bypassed.edge_list().collect::<Vec<_>>());

    // in a directed chain, bypassing the middle pair leaves one long arc
    let mut d = Graph::new();
    d.add_arc(10, 11);
    d.add_arc(11, 12);
    d.add_arc(12, 13);
    let pair: BTreeSet<VertexId> = [11, 12].into_iter().collect();
    let shortcut = d.bypass_set(&pair)?;
    println!("bypass arc chain {{11,12}}: {:?}", shortcut.arc_list().collect::<Vec<_>>());
    Ok(())
}
