//! Odd-cycle-transversal kernelization.
//!
//! A split-copy auxiliary graph turns parity questions into cut questions:
//! each widened-boundary vertex gets a left and right copy, the bipartite
//! interior is wired between them, and a pair cut cover marks the interior
//! worth keeping. Everything else is removed and replaced by parity
//! gadgets: an edge for an odd connection, a subdivided edge for an even
//! one, and a triangle for an odd closed walk.

use std::collections::BTreeSet;

use bkernel::cutcover::CoverMode;
use bkernel::oct::kernelize_oct;
use bkernel::oracle::{check_gluing_equivalence, PartnerFamilySpec, ProblemSpec};
use bkernel::{Abg, Graph, Result, VertexId};

fn main() -> Result<()> {
    // a five-cycle through the boundary vertex plus a square appendage:
    // the square is pure even padding, the cycle carries an odd closed walk
    let mut g = Graph::new();
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] {
        g.add_edge(a, b);
    }
    for (a, b) in [(2, 5), (5, 6), (6, 7), (7, 2)] {
        g.add_edge(a, b);
    }
    let boundary: BTreeSet<VertexId> = [0].into_iter().collect();
    let abg = Abg::new(g, boundary)?;

    // removing the boundary vertex itself leaves a bipartite graph
    let solution: BTreeSet<VertexId> = [0].into_iter().collect();

    let result = kernelize_oct(&abg, &solution, CoverMode::Oracle, 9)?;
    println!(
        "before: {} vertices, after: {} vertices, offset {}",
        abg.graph.order(),
        result.reduced.graph.order(),
        result.delta
    );
    for step in &result.trace {
        println!("  rule {:<24} affected {:?}", step.rule, step.affected);
    }
    println!("reduced edges: {:?}", result.reduced.graph.edge_list().collect::<Vec<_>>());

    // certify the reduction against every small partner
    let problem = ProblemSpec::OddCycleTransversal;
    let family = PartnerFamilySpec::exhaustive(problem, 3);
    let report = check_gluing_equivalence(problem, &abg, &result.reduced, result.delta, &family)?;
    println!(
        "\ngluing equivalence: {} ({} partners checked)",
        if report.equivalent() { "PASS" } else { "FAIL" },
        report.partners_checked
    );
    Ok(())
}
