//! Randomized linear representations of gammoids and representative families.
//!
//! In a gammoid over a digraph, a vertex set is independent when it can be
//! reached from the sources by vertex-disjoint paths. A random matrix over a
//! large prime field represents it with one-sided error; rank computations
//! then replace path searches, and a representative family keeps only the
//! sets that still matter for extension queries.

use std::collections::BTreeSet;

use bkernel::flow::is_linked;
use bkernel::matroid::{
    gammoid_failure_bound, gammoid_representation, representative_family, truncate, PrimeField,
};
use bkernel::{Graph, Result, VertexId};

fn main() -> Result<()> {
    // layered digraph: 3 sources fan out to 4 middles, middles to 3 sinks
    let mut d = Graph::new();
    for (a, b) in [(0, 2), (0, 3), (1, 3), (1, 4), (1, 5), (9, 4), (9, 5)] {
        d.add_arc(a, b);
    }
    for (a, b) in [(2, 6), (3, 6), (3, 7), (4, 7), (5, 8)] {
        d.add_arc(a, b);
    }
    let sources: BTreeSet<VertexId> = [0, 1, 9].into_iter().collect();
    let field = PrimeField::from_env();
    let rep = gammoid_representation(&d, &sources, field, 42);

    // independence in the representation must equal linkage from the
    // sources; {4,5,8} fails because reaching 8 means crossing 5
    for cand in [vec![6, 7], vec![2, 3, 4], vec![4, 5, 8]] {
        let set: BTreeSet<VertexId> = cand.iter().copied().collect();
        let algebraic = rep.is_independent(&set);
        let combinatorial = is_linked(&d, &sources, &set);
        println!(
            "{set:?}: rank says {algebraic}, disjoint paths say {combinatorial}"
        );
        assert_eq!(algebraic, combinatorial);
    }

    // a 1-representative family of pairs: for any single extension vertex x,
    // if some pair extends independently with x, a kept pair does too;
    // at most C(1+2, 2) = 3 pairs survive
    let pairs: Vec<BTreeSet<VertexId>> = [(2, 3), (2, 4), (3, 4), (2, 5), (4, 5)]
        .iter()
        .map(|&(a, b)| [a, b].into_iter().collect())
        .collect();
    let fam = representative_family(&rep, &pairs, 1)?;
    println!(
        "\nrepresentative family keeps {} of {} pairs ({} dropped as dependent): {:?}",
        fam.kept.len(),
        pairs.len(),
        fam.dropped_dependent,
        fam.kept
    );

    // truncating the matroid to rank 1 makes every 2-set dependent
    let rank1 = truncate(&rep, 1, 7);
    println!(
        "after rank-1 truncation, {{6,7}} independent: {}",
        rank1.is_independent(&[6, 7].into_iter().collect())
    );

    let (expr, value) = gammoid_failure_bound(d.order(), field.p);
    println!("\nfailure probability bound: {expr} = {value:.3e}");
    Ok(())
}
