//! Scratch reproduction harness (not part of the acceptance gate).

use bkernel::cutcover::random_graph;
use bkernel::flow::{min_vertex_cut, CutQuery, CutResult};
use bkernel::graph::{Abg, Graph};
use bkernel::oracle::{solve_exact, ProblemSpec};
use bkernel::vc_oct::{build_vc_auxiliary, conflict, rr_vc_clean_pipeline, VcInstance};
use bkernel::VertexId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn pick_distinct(rng: &mut ChaCha8Rng, pool: &[VertexId], k: usize) -> BTreeSet<VertexId> {
    let mut v = pool.to_vec();
    let k = k.min(v.len());
    for i in 0..k {
        let j = rng.gen_range(i..v.len());
        v.swap(i, j);
    }
    v.into_iter().take(k).collect()
}

fn draw_b_size(rng: &mut ChaCha8Rng) -> usize {
    match rng.gen_range(0u32..100) {
        0..=34 => 1,
        35..=69 => 2,
        _ => 3,
    }
}

fn gen_vc(rng: &mut ChaCha8Rng) -> (Abg, BTreeSet<VertexId>) {
    let n = rng.gen_range(4..=10u32);
    let p = [0.15, 0.25, 0.4][rng.gen_range(0..3usize)];
    let g = random_graph(n, p, rng);
    let verts: Vec<VertexId> = (0..n).collect();
    let bsz = draw_b_size(rng);
    let b = pick_distinct(rng, &verts, bsz);
    let abg = Abg::new(g, b).unwrap();
    let sol = solve_exact(ProblemSpec::OddCycleTransversal, &abg).unwrap();
    (abg, sol.witness)
}

fn show(g: &Graph) -> String {
    let vs: Vec<String> = g.vertices().map(|v| v.to_string()).collect();
    let es: Vec<String> = g.edge_list().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("V {{{}}} E {{{}}}", vs.join(","), es.join(","))
}

#[test]
fn reproduce() {
    let mut r = ChaCha8Rng::seed_from_u64(502);
    let mut done = 0usize;
    while done < 500 {
        let (abg, witness) = gen_vc(&mut r);
        let Ok(mut inst) = VcInstance::new(&abg, &witness) else {
            continue;
        };
        rr_vc_clean_pipeline(&mut inst).unwrap();
        if inst.b_hat.len() > 5 {
            continue;
        }
        let aux = build_vc_auxiliary(&inst, None);
        let f = inst.f_set();
        let bvec: Vec<VertexId> = inst.b_hat.iter().copied().collect();
        for mask in 0u32..(1 << bvec.len()) {
            let sub: BTreeSet<VertexId> = bvec
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let sources: BTreeSet<VertexId> = sub.iter().map(|x| aux.left[x]).collect();
            let sinks: BTreeSet<VertexId> = sub.iter().map(|x| aux.right[x]).collect();
            let cut = match min_vertex_cut(&CutQuery {
                graph: &aux.g_star,
                sources,
                sinks,
                undeletable: BTreeSet::new(),
            }) {
                CutResult::Finite { size, .. } => size as u64,
                CutResult::Infinite => unreachable!(),
            };
            let conf = conflict(&inst.graph, &f, &sub).unwrap();
            let independent = sub
                .iter()
                .all(|&x| inst.graph.neighbors(x).intersection(&sub).next().is_none());
            if cut > conf || (independent && cut != conf) {
                println!("done={done} sub={sub:?} cut={cut} conf={conf} indep={independent}");
                println!("inst.graph: {}", show(&inst.graph));
                println!("b_hat: {:?}", inst.b_hat);
                println!("f: {f:?}");
                for &x in &sub {
                    let nb: Vec<VertexId> = inst.graph.neighbors(x).iter().copied().collect();
                    println!("  N({x}) = {nb:?}");
                }
                return;
            }
        }
        done += 1;
    }
    println!("no violation in 500 clean instances");
}
