mod common;

use barnette::checkers::*;
use barnette::coloring::*;
use barnette::fragments::*;
use barnette::generation::enumerate;
use barnette::graph::{complete, cube, grid, prism};
use barnette::hamiltonicity::*;
use barnette::planarity::planar_embedding;
use barnette::steinitz::*;
use barnette::{canonical_key, Graph};
use common::random_3c_planar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn planar_key(g: &Graph) -> barnette::CanonicalKey {
    canonical_key(g, Some(&planar_embedding(g).unwrap())).unwrap()
}

#[test]
fn bbl_38_structure() {
    let g = bbl_38().graph;
    assert!(is_cubic(&g));
    assert!(bipartition(&g).is_err());
    assert!(is_3_connected(&g));
    assert!(planar_embedding(&g).is_some());
}

#[test]
fn tutte_46_from_fragments() {
    let t = tutte_46();
    let f = tutte_fragment().fragment.unwrap();
    assert!(f.is_cubic_compatible());
    let composed = compose_triple(&f, Composition::HubAndRing);
    assert_eq!(planar_key(&composed), planar_key(&t.graph));
    assert!(is_cubic(&t.graph) && is_3_connected(&t.graph));
    let r = find_ham_cycle(&t.graph, &ConstraintSet::none(), Budget::UNLIMITED).unwrap();
    assert_eq!(r.verdict, Verdict::NotFound);
}

#[test]
fn lemma_suite_within_a_minute_each() {
    for name in LEMMA_NAMES {
        let t = Instant::now();
        let (what, res) = verify_named_lemma(name, Budget::time(Duration::from_secs(60))).unwrap();
        assert!(res.holds(), "{name}: {what}: {res:?}");
        assert!(t.elapsed() <= Duration::from_secs(60), "{name} took {:?}", t.elapsed());
    }
}

#[test]
fn bipartite_counterexamples() {
    for n in [horton_96(), horton_92(), georges_50()] {
        let g = &n.graph;
        assert!(is_cubic(g), "{}", n.name);
        assert!(bipartition(g).is_ok(), "{}", n.name);
        assert!(is_3_connected(g), "{}", n.name);
        let r = find_ham_cycle(g, &ConstraintSet::none(), Budget::UNLIMITED).unwrap();
        assert_eq!(r.verdict, Verdict::NotFound, "{}", n.name);
    }
}

#[test]
fn colorings_validate() {
    let mut graphs = vec![pentagonal_prism().graph, cube(), prism(6)];
    let cat = enumerate(14, 1).unwrap();
    graphs.extend(cat.entries().map(|e| e.graph.clone()));
    for g in graphs {
        let emb = planar_embedding(&g).unwrap();
        let (tours, _) = all_ham_cycles(&g, &ConstraintSet::none(), 20, Budget::UNLIMITED).unwrap();
        assert!(!tours.is_empty());
        for t in tours {
            let ec = tait_edge_coloring(&g, &t).unwrap();
            assert!(validate_edge_coloring(&g, &ec));
            let fc = face_four_coloring(&g, &emb, &t).unwrap();
            assert!(validate_face_coloring(&g, &emb, &fc));
            assert_eq!(fc.len(), emb.faces().len());
        }
    }
}

#[test]
fn colorings_reject_non_cycles() {
    let g = cube();
    let r = find_ham_path(&g, &ConstraintSet::none(), Budget::UNLIMITED).unwrap();
    let mut t = r.tour.unwrap();
    t.edges.truncate(t.edges.len() - 1);
    assert!(tait_edge_coloring(&g, &t).is_err());
}

#[test]
fn grid_reduces_to_k4() {
    let g = grid(3, 3);
    let trace = reduce_to_k4(&g).unwrap();
    assert!(is_k4(&trace.replay(&g).unwrap()));
    let text = trace.to_text();
    let steps: Vec<Step> = text.lines().filter_map(Step::parse).collect();
    assert_eq!(steps, trace.steps);
}

/// K4, one wye-delta, three parallel reductions, one serial reduction: a
/// digon.
#[test]
fn k4_to_digon_script() {
    let mut g = y_to_delta(&complete(4), 0).unwrap();
    assert_eq!((g.n(), g.m()), (3, 6));
    for _ in 0..3 {
        let (a, b) = (0..g.m())
            .flat_map(|a| (a + 1..g.m()).map(move |b| (a, b)))
            .find(|&(a, b)| parallel_reduce(&g, a, b).is_ok())
            .unwrap();
        g = parallel_reduce(&g, a, b).unwrap();
    }
    assert_eq!((g.n(), g.m()), (3, 3));
    g = serial_reduce(&g, 0).unwrap();
    assert_eq!((g.n(), g.m()), (2, 2));
    assert_eq!(g.edges_between(0, 1).len(), 2);
}

#[test]
fn y_to_delta_keeps_three_connected() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 20 {
        let n = rng.gen_range(6..14);
        let g = random_3c_planar(&mut rng, n);
        let Some(w) = (0..g.n()).find(|&v| g.degree(v) == 3) else { continue };
        let h = y_to_delta(&g, w).unwrap();
        assert!(is_3_connected(&h));
        done += 1;
    }
}

#[test]
fn random_planar_graphs_reduce() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let n = rng.gen_range(4..16);
        let g = random_3c_planar(&mut rng, n);
        let trace = reduce_to_k4(&g).unwrap();
        let end = trace.replay(&g).unwrap();
        assert!(is_k4(&end));
        assert_eq!(trace_key(&end).unwrap(), trace.end_key);
        assert_eq!(trace_key(&g).unwrap(), trace.start_key);
    }
}
