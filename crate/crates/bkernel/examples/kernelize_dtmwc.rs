//! Multiway-cut kernelization with deletable terminals.
//!
//! Terminals may be deleted (each deletion pays into the offset) and may sit
//! on the boundary. High-fan vertices are resolved directly; the remaining
//! interior is thinned by a representative family over a gammoid, keeping
//! only vertices that some minimum linkage still needs.

use std::collections::BTreeSet;

use bkernel::dtmwc::kernelize_dtmwc;
use bkernel::{Abg, Graph, Result, VertexId};

fn main() -> Result<()> {
    // vertex 5 fans into four terminals: with boundary {0} and a 1-vertex
    // local solution the fan threshold l + |B| + 2 = 4 is met, so 5 is
    // deleted at offset +1. The path 0-6-7-8 carries no terminals and gets
    // contracted by the representative-family bypass.
    let mut g = Graph::new();
    for t in 1..=4 {
        g.add_edge(5, t);
    }
    g.add_edge(0, 6);
    g.add_edge(6, 7);
    g.add_edge(7, 8);
    let boundary: BTreeSet<VertexId> = [0].into_iter().collect();
    let abg = Abg::new(g, boundary)?.with_annotation("terminals", [1, 2, 3, 4].into_iter().collect())?;

    // deleting 5 disconnects every terminal pair
    let solution: BTreeSet<VertexId> = [5].into_iter().collect();

    let result = kernelize_dtmwc(&abg, &solution, 5)?;
    println!(
        "before: {} vertices, after: {} vertices, offset {}",
        abg.graph.order(),
        result.reduced.graph.order(),
        result.delta
    );
    for step in &result.trace {
        println!(
            "  rule {:<28} affected {:?} (offset {:+})",
            step.rule, step.affected, step.delta
        );
    }
    println!(
        "\nsurviving vertices: {:?}",
        result.reduced.graph.vertex_set()
    );
    println!("\nreport:\n{}", result.report_json());
    Ok(())
}
