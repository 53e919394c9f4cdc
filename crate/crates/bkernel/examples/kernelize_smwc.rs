//! Multiway-cut kernelization with undeletable terminals.
//!
//! Terminals may not be deleted, at most `s` of them exist, and the reduced
//! instance must keep the same optimum as the original under every gluing at
//! the boundary (for partners whose own terminals avoid the boundary).
//! Rule one rewires a high-degree terminal onto a closest cut; rule two
//! bypasses everything a partition cut cover cannot touch.

use std::collections::BTreeSet;

use bkernel::cutcover::CoverMode;
use bkernel::smwc::kernelize_smwc;
use bkernel::{Abg, Graph, Result, VertexId};

fn main() -> Result<()> {
    // terminal 0 fans out through {2,3,4}; terminal 1 hangs off the
    // boundary; a funnel 8-5-6-9 gives the cut cover something to bypass
    let mut g = Graph::new();
    for (a, b) in [
        (0, 2),
        (0, 3),
        (0, 4),
        (2, 8),
        (3, 8),
        (4, 9),
        (8, 5),
        (5, 6),
        (6, 9),
        (9, 1),
    ] {
        g.add_edge(a, b);
    }
    let boundary: BTreeSet<VertexId> = [8, 9].into_iter().collect();
    let abg = Abg::new(g, boundary)?.with_annotation("terminals", [0, 1].into_iter().collect())?;

    // the local solution: deleting both boundary vertices separates the
    // terminals, so the widened boundary B' stays {8, 9}
    let solution: BTreeSet<VertexId> = [8, 9].into_iter().collect();

    let result = kernelize_smwc(&abg, 2, &solution, CoverMode::Oracle, 5)?;
    println!(
        "before: {} vertices, after: {} vertices, offset {}",
        abg.graph.order(),
        result.reduced.graph.order(),
        result.delta
    );
    for step in &result.trace {
        println!("  rule {:<24} affected {:?}", step.rule, step.affected);
    }
    println!(
        "terminal 0 now touches: {:?}",
        result.reduced.graph.neighbors(0)
    );
    println!("\nreport:\n{}", result.report_json());
    Ok(())
}
