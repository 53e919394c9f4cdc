//! Vertex-cover kernelization parameterized by an odd cycle transversal.
//!
//! The working boundary starts as the boundary plus the transversal; the
//! rest is bipartite. Crowns are trimmed, the unmatched interior joins the
//! boundary, triangle-heavy boundary vertices are detached behind a pendant,
//! and matched interior pairs invisible to every boundary-pair cut are
//! bypassed at +1 each.

use std::collections::BTreeSet;

use bkernel::cutcover::CoverMode;
use bkernel::oracle::{check_gluing_equivalence, PartnerFamilySpec, ProblemSpec};
use bkernel::vc_oct::kernelize_vc_oct;
use bkernel::{Abg, Graph, Result, VertexId};

fn main() -> Result<()> {
    // a triangle resolved by the transversal {2}, a crown around 3
    // (leaves 4 and 6 force 3 into covers), and a matched tail 7-8 that no
    // boundary cut reaches
    let mut g = Graph::new();
    for (a, b) in [
        (0, 1),
        (1, 2),
        (2, 0),
        (2, 3),
        (3, 4),
        (3, 6),
        (3, 5),
        (5, 7),
        (7, 8),
    ] {
        g.add_edge(a, b);
    }
    let boundary: BTreeSet<VertexId> = [0].into_iter().collect();
    let abg = Abg::new(g, boundary)?;
    let solution: BTreeSet<VertexId> = [2].into_iter().collect();

    let result = kernelize_vc_oct(&abg, &solution, CoverMode::Oracle, 13)?;
    println!(
        "before: {} vertices, after: {} vertices, offset {}",
        abg.graph.order(),
        result.reduced.graph.order(),
        result.delta
    );
    for step in &result.trace {
        println!(
            "  rule {:<24} affected {:?} (offset {:+})",
            step.rule, step.affected, step.delta
        );
    }
    println!("reduced edges: {:?}", result.reduced.graph.edge_list().collect::<Vec<_>>());

    let problem = ProblemSpec::VertexCover;
    let family = PartnerFamilySpec::exhaustive(problem, 3);
    let report = check_gluing_equivalence(problem, &abg, &result.reduced, result.delta, &family)?;
    println!(
        "\ngluing equivalence: {} ({} partners checked)",
        if report.equivalent() { "PASS" } else { "FAIL" },
        report.partners_checked
    );
    Ok(())
}
