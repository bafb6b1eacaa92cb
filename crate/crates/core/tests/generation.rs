mod common;

use barnette::checkers::{check_c3cbp, edge_3cuts};
use barnette::embedding::face_size_histogram;
use barnette::generation::*;
use barnette::hamiltonicity::*;
use barnette::planarity::planar_embedding;
use barnette::canonical_key;
use common::census_keys;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn catalog(max_n: usize) -> Catalog {
    enumerate(max_n, 1).unwrap()
}

#[test]
fn known_counts() {
    let cat = catalog(20);
    let counts: Vec<usize> = (8..=20).step_by(2).map(|n| cat.count(n)).collect();
    assert_eq!(counts, [1, 0, 1, 1, 2, 2, 8]);
}

#[test]
fn census_agrees() {
    let cat = catalog(12);
    for k in [4, 5, 6] {
        let want = census_keys(k);
        let got: BTreeSet<_> = cat.level(2 * k).iter().map(|e| e.key.clone()).collect();
        assert_eq!(got, want, "n = {}", 2 * k);
    }
}

#[test]
fn entries_are_valid() {
    let cat = catalog(18);
    for e in cat.entries() {
        let rep = check_c3cbp(&e.graph);
        assert!(rep.is_c3cbp());
        let emb = planar_embedding(&e.graph).unwrap();
        assert_eq!(canonical_key(&e.graph, Some(&emb)).unwrap(), e.key);
        let hist = face_size_histogram(&e.embedding.faces());
        assert!(hist.get(4).copied().unwrap_or(0) >= 6);
        let r = find_ham_cycle(&e.graph, &ConstraintSet::none(), Budget::UNLIMITED).unwrap();
        validate_tour(&e.graph, r.tour.as_ref().unwrap(), &ConstraintSet::none(), true).unwrap();
        if let Some(p) = &e.provenance {
            let parent = cat.get(e.graph.n() - p.site.added_vertices(), &p.parent).unwrap();
            let (h, hemb) = expand(&parent.graph, &parent.embedding, p.site).unwrap();
            assert_eq!(canonical_key(&h, Some(&hemb)).unwrap(), e.key);
        }
    }
}

#[test]
fn every_graph_reduces_into_catalog() {
    let cat = catalog(18);
    for e in cat.entries().filter(|e| e.graph.n() > 8) {
        let hit = reductions(&e.graph, &e.embedding).into_iter().any(|(_, h, hemb)| {
            let k = canonical_key(&h, Some(&hemb)).unwrap();
            cat.contains(h.n(), &k)
        });
        assert!(hit, "{} has no reduction into the catalog", e.key);
    }
}

#[test]
fn small_graphs_are_plus_minus() {
    let cat = catalog(14);
    for e in cat.entries() {
        let c = classify(&e.graph, Budget::UNLIMITED).unwrap();
        assert!(c.plus_minus.holds(), "{}", e.key);
        assert!(c.plus.holds() && c.minus.holds());
    }
}

#[test]
fn no_lemma_findings() {
    let cat = catalog(20);
    assert!(cat.findings.values().all(Vec::is_empty));
}

#[test]
fn nontrivial_three_cuts_cut_off_a_cube() {
    // only an R4 expansion creates a nontrivial 3-edge cut
    for e in catalog(18).entries() {
        for c in edge_3cuts(&e.graph) {
            assert_eq!(c.side_a.len().min(c.side_b.len()), 7);
        }
    }
}

#[test]
fn jobs_do_not_change_result() {
    let a = enumerate(16, 1).unwrap();
    let b = enumerate(16, 3).unwrap();
    let keys = |c: &Catalog| c.entries().map(|e| (e.key.clone(), e.provenance.clone())).collect::<Vec<_>>();
    assert_eq!(keys(&a), keys(&b));
}

fn random_cycle(rng: &mut ChaCha8Rng, g: &barnette::Graph) -> Tour {
    let (tours, _) = all_ham_cycles(g, &ConstraintSet::none(), 200, Budget::UNLIMITED).unwrap();
    tours.choose(rng).unwrap().clone()
}

#[test]
fn r4_extension_samples() {
    let cat = catalog(16);
    let entries: Vec<_> = cat.entries().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let e = entries.choose(&mut rng).unwrap();
        let t = random_cycle(&mut rng, &e.graph);
        let v = rng.gen_range(0..e.graph.n());
        let exp = barnette::generation::expand_r4_raw(&e.graph, v).unwrap();
        let ext = extend_ham_r4(&e.graph, &t, &exp).unwrap();
        validate_tour(&exp.graph, &ext, &ConstraintSet::none(), true).unwrap();
        assert_eq!(ext.vertices.len(), e.graph.n() + 6);
    }
}

#[test]
fn r0_extension_samples() {
    let cat = catalog(16);
    let entries: Vec<_> = cat.entries().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut validated = 0;
    let mut case4 = 0;
    let mut seen = [0usize; 5];
    while validated < 50 {
        let e = entries.choose(&mut rng).unwrap();
        let sites: Vec<_> = expansion_sites(&e.graph, &e.embedding)
            .into_iter()
            .filter(|s| matches!(s, ExpansionSite::R0 { .. }))
            .collect();
        let site = *sites.choose(&mut rng).unwrap();
        let t = random_cycle(&mut rng, &e.graph);
        let r = classify_r0_case(&e.graph, &t, site, Budget::UNLIMITED).unwrap();
        seen[r.number() as usize] += 1;
        let ExpansionSite::R0 { e1, e2, flip } = site else { unreachable!() };
        let exp = barnette::generation::expand_r0_raw(&e.graph, e1, e2, flip).unwrap();
        match &r {
            R0Case::Neither(rep) => {
                case4 += 1;
                println!(
                    "case 4 on {} site {}: cycle through both edges {:?}, through the matching {:?}, rescued {}",
                    e.key,
                    site,
                    rep.both_edges.verdict,
                    rep.through_matching.verdict,
                    rep.rescued.is_some()
                );
                if let Some(t2) = &rep.rescued {
                    validate_tour(&exp.graph, t2, &ConstraintSet::none(), true).unwrap();
                }
            }
            _ => {
                let ext = r.extended().unwrap();
                validate_tour(&exp.graph, ext, &ConstraintSet::none(), true).unwrap();
                validated += 1;
            }
        }
    }
    println!("cases seen {:?}, case 4 logged {case4}", &seen[1..]);
    assert!(seen[1] > 0 && seen[2] + seen[3] > 0);
}
