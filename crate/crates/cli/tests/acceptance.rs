//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the table; the test fails if any line fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use barnette::checkers::{bipartition, is_3_connected, is_cubic};
use barnette::coloring::*;
use barnette::embedding::face_size_histogram;
use barnette::fragments::*;
use barnette::generation::*;
use barnette::graph::{complete, cube, grid};
use barnette::hamiltonicity::*;
use barnette::planarity::planar_embedding;
use barnette::sat::*;
use barnette::steinitz::*;
use barnette::{canonical_key, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn none() -> ConstraintSet {
    ConstraintSet::none()
}

fn catalog_14() -> &'static (Catalog, Duration) {
    static CAT: OnceLock<(Catalog, Duration)> = OnceLock::new();
    CAT.get_or_init(|| {
        let t = Instant::now();
        let c = enumerate(14, 1).unwrap();
        (c, t.elapsed())
    })
}

fn planar_key(g: &Graph) -> barnette::CanonicalKey {
    canonical_key(g, Some(&planar_embedding(g).unwrap())).unwrap()
}

fn c1_bbl_38() -> Outcome {
    let t0 = Instant::now();
    let g = bbl_38().graph;
    ensure(is_cubic(&g), "not cubic")?;
    let odd = bipartition(&g).err().ok_or("bipartite")?;
    ensure(odd.edges.len() % 2 == 1 && odd.vertices.first() == odd.vertices.last(), "bad odd-cycle witness")?;
    ensure(is_3_connected(&g), "not 3-connected")?;
    ensure(planar_embedding(&g).is_some(), "not planar")?;
    let c = find_ham_cycle(&g, &none(), Budget::UNLIMITED).unwrap();
    ensure(c.verdict == Verdict::NotFound, format!("cycle search: {:?}", c.verdict))?;
    let p = find_ham_path(&g, &none(), Budget::UNLIMITED).unwrap();
    let t = p.tour.ok_or("no Hamiltonian path")?;
    validate_tour(&g, &t, &none(), false)?;
    ensure(t0.elapsed() <= Duration::from_secs(300), format!("took {:?}", t0.elapsed()))?;
    Ok(format!("no cycle ({} nodes), path found", c.nodes_expanded))
}

fn c2_tutte_46() -> Outcome {
    let t = tutte_46().graph;
    let r = find_ham_cycle(&t, &none(), Budget::time(Duration::from_secs(1800))).unwrap();
    ensure(r.verdict == Verdict::NotFound, format!("{:?}", r.verdict))?;
    let f = tutte_fragment().fragment.unwrap();
    let composed = compose_triple(&f, Composition::HubAndRing);
    ensure(planar_key(&composed) == planar_key(&t), "composed key differs")?;
    Ok(format!("non-Hamiltonian ({} nodes), keys equal", r.nodes_expanded))
}

fn c3_fragments() -> Outcome {
    let mut parts = Vec::new();
    for name in LEMMA_NAMES {
        let t = Instant::now();
        let (what, res) = verify_named_lemma(name, Budget::time(Duration::from_secs(60))).unwrap();
        let el = t.elapsed();
        ensure(res.holds(), format!("{name}: {what}: {res:?}"))?;
        ensure(el <= Duration::from_secs(60), format!("{name} took {el:?}"))?;
        parts.push(format!("{name} {:.0?}", el));
    }
    Ok(parts.join(", "))
}

fn c4_enumerator() -> Outcome {
    let (cat, el) = catalog_14();
    ensure(*el <= Duration::from_secs(600), format!("took {el:?}"))?;
    ensure(cat.count(8) == 1, format!("{} graphs at n=8", cat.count(8)))?;
    for k in [5, 6] {
        let want = common::census_keys(k);
        let got: BTreeSet<_> = cat.level(2 * k).iter().map(|e| e.key.clone()).collect();
        ensure(got == want, format!("census mismatch at n={}", 2 * k))?;
    }
    for e in cat.entries() {
        let hist = face_size_histogram(&e.embedding.faces());
        ensure(hist.get(4).copied().unwrap_or(0) >= 6, format!("{} has fewer than six 4-faces", e.key))?;
        let r = find_ham_cycle(&e.graph, &none(), Budget::UNLIMITED).unwrap();
        ensure(r.found(), format!("{} not Hamiltonian", e.key))?;
        if e.graph.n() > 8 {
            let hit = reductions(&e.graph, &e.embedding)
                .into_iter()
                .any(|(_, h, hemb)| cat.contains(h.n(), &canonical_key(&h, Some(&hemb)).unwrap()));
            ensure(hit, format!("{} does not reduce into the catalog", e.key))?;
        }
    }
    let counts: Vec<String> = cat.levels.iter().map(|(n, l)| format!("{n}:{}", l.len())).collect();
    Ok(format!("counts {} in {el:.1?}", counts.join(" ")))
}

fn c5_plus_minus() -> Outcome {
    let (cat, _) = catalog_14();
    for e in cat.entries() {
        let c = classify(&e.graph, Budget::UNLIMITED).unwrap();
        ensure(c.plus_minus.holds(), format!("{}: {:?}", e.key, c.plus_minus))?;
    }
    Ok(format!("{} graphs", cat.len()))
}

fn c6_parity() -> Outcome {
    let cc = |g: &Graph| count_ham_cycles(g, &none(), Budget::UNLIMITED).unwrap();
    ensure(cc(&cube()).total == 6, "cube total")?;
    ensure(cc(&complete(4)).total == 3, "K4 total")?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut graphs: Vec<Graph> = catalog_14().0.entries().map(|e| e.graph.clone()).collect();
    for name in NAMES {
        if let Ok(nm) = named_graph(name) {
            let g = nm.graph;
            if g.n() <= 16 && is_cubic(&g) && find_ham_cycle(&g, &none(), Budget::UNLIMITED).unwrap().found() {
                graphs.push(g);
            }
        }
    }
    graphs.push(enumerate(16, 1).unwrap().level(16)[0].graph.clone());
    for n in (4..=16).step_by(2) {
        for _ in 0..4 {
            graphs.push(common::random_cubic_planar(&mut rng, n));
        }
    }
    for g in &graphs {
        let c = cc(g);
        ensure(c.complete, "count incomplete")?;
        ensure(c.per_edge.iter().all(|x| x % 2 == 0), format!("odd per-edge count {:?}", c.per_edge))?;
    }
    Ok(format!("{} cubic graphs, cube 6, K4 3", graphs.len()))
}

fn c7_colorings() -> Outcome {
    let mut graphs = vec![pentagonal_prism().graph, cube()];
    graphs.extend(catalog_14().0.entries().map(|e| e.graph.clone()));
    for g in &graphs {
        let emb = planar_embedding(g).unwrap();
        let t = find_ham_cycle(g, &none(), Budget::UNLIMITED).unwrap().tour.ok_or("no cycle")?;
        let ec = tait_edge_coloring(g, &t).unwrap();
        ensure(validate_edge_coloring(g, &ec), "edge colouring invalid")?;
        let fc = face_four_coloring(g, &emb, &t).unwrap();
        ensure(validate_face_coloring(g, &emb, &fc), "face colouring invalid")?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn c8_steinitz() -> Outcome {
    let g = grid(3, 3);
    let tr = reduce_to_k4(&g).map_err(|s| s.reason)?;
    ensure(is_k4(&tr.replay(&g).unwrap()), "grid replay is not K4")?;
    let mut d = y_to_delta(&complete(4), 0).unwrap();
    for _ in 0..3 {
        let (a, b) = (0..d.m())
            .flat_map(|a| (a + 1..d.m()).map(move |b| (a, b)))
            .find(|&(a, b)| parallel_reduce(&d, a, b).is_ok())
            .ok_or("no parallel pair")?;
        d = parallel_reduce(&d, a, b).unwrap();
    }
    d = serial_reduce(&d, 0).unwrap();
    ensure(d.n() == 2 && d.edges_between(0, 1).len() == 2, "script did not end in a digon")?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 20 {
        let n = rng.gen_range(6..16);
        let g = common::random_3c_planar(&mut rng, n);
        let Some(w) = (0..g.n()).find(|&v| g.degree(v) == 3) else { continue };
        let mut h = y_to_delta(&g, w).unwrap();
        ensure(is_3_connected(&h), "y_to_delta broke 3-connectivity")?;
        while let Some((a, b)) = (0..h.m())
            .flat_map(|a| (a + 1..h.m()).map(move |b| (a, b)))
            .find(|&(a, b)| parallel_reduce(&h, a, b).is_ok())
        {
            h = parallel_reduce(&h, a, b).unwrap();
        }
        ensure(h.is_simple() && is_3_connected(&h), "cleanup broke 3-connectivity")?;
        done += 1;
    }
    Ok(format!("grid(3,3) in {} steps, digon script, 20 random graphs", tr.steps.len()))
}

/// Clauses as sorted literal triples (repetition allowed) over `vars`
/// variables; literal code `2 * var + negated`.
fn clause_multisets(vars: usize) -> Vec<[usize; 3]> {
    let k = 2 * vars;
    let mut out = Vec::new();
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Every formula with 1 to 3 variables and at most 3 clauses, up to clause
/// order and literal order within a clause.
fn all_small_formulas() -> Vec<Formula> {
    let lit = |c: usize| Literal {
        var: c / 2,
        negated: c % 2 == 1,
    };
    let mut out = Vec::new();
    for vars in 1..=3 {
        let cl = clause_multisets(vars);
        let mk = |idx: &[usize]| Formula::new(vars, idx.iter().map(|&i| cl[i].map(lit)).collect()).unwrap();
        out.push(mk(&[]));
        for a in 0..cl.len() {
            out.push(mk(&[a]));
            for b in a..cl.len() {
                out.push(mk(&[a, b]));
                for c in b..cl.len() {
                    out.push(mk(&[a, b, c]));
                }
            }
        }
    }
    out
}

fn c9_sat() -> Outcome {
    let t0 = Instant::now();
    let formulas = all_small_formulas();
    for f in &formulas {
        for mode in [HamMode::Cycle, HamMode::Path] {
            let ri = build_instance(f, mode);
            for b in 0..1usize << f.vars {
                let a: Vec<bool> = (0..f.vars).map(|i| b >> i & 1 == 1).collect();
                let mut c = ri.constraints.clone();
                for (i, &v) in a.iter().enumerate() {
                    let role = if v { EdgeRole::VarTrue(i) } else { EdgeRole::VarFalse(i) };
                    c.required.extend(ri.edges_with_role(|r| r == role));
                }
                let r = match mode {
                    HamMode::Cycle => find_ham_cycle(&ri.graph, &c, Budget::UNLIMITED).unwrap(),
                    HamMode::Path => find_ham_path(&ri.graph, &c, Budget::UNLIMITED).unwrap(),
                };
                ensure(r.found() == f.is_satisfied_by(&a), format!("{f:?} {mode:?} {a:?}"))?;
            }
        }
    }
    let ex = build_instance(&example_formula(), HamMode::Cycle);
    let t = encode_assignment(&ex, &[false, false, true]).unwrap();
    ensure(decode_assignment(&ex, &t).unwrap() == [false, false, true], "example decode")?;
    let f = all_sign_patterns_formula();
    ensure(size_estimate(&f, 0) == 5148, format!("size_estimate {}", size_estimate(&f, 0)))?;
    for mode in [HamMode::Cycle, HamMode::Path] {
        let (out, _) = solve_instance(&build_instance(&f, mode), Budget::UNLIMITED).unwrap();
        ensure(matches!(out, SatOutcome::Unsatisfiable), format!("{mode:?}: not UNSAT"))?;
    }
    let el = t0.elapsed();
    ensure(el <= Duration::from_secs(300), format!("took {el:?}"))?;
    Ok(format!("{} formulas x 2 modes, example (0,0,1), UNSAT, 5148, {el:.1?}", formulas.len()))
}

fn c10_extensions() -> Outcome {
    let cat = enumerate(16, 1).unwrap();
    let entries: Vec<_> = cat.entries().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cycle = |rng: &mut ChaCha8Rng, g: &Graph| {
        let (ts, _) = all_ham_cycles(g, &none(), 200, Budget::UNLIMITED).unwrap();
        ts.choose(rng).unwrap().clone()
    };
    for _ in 0..50 {
        let e = entries.choose(&mut rng).unwrap();
        let t = cycle(&mut rng, &e.graph);
        let exp = expand_r4_raw(&e.graph, rng.gen_range(0..e.graph.n())).unwrap();
        let ext = extend_ham_r4(&e.graph, &t, &exp).map_err(|x| x.to_string())?;
        validate_tour(&exp.graph, &ext, &none(), true)?;
    }
    let (mut ok, mut case4) = (0, 0);
    while ok < 50 {
        let e = entries.choose(&mut rng).unwrap();
        let sites: Vec<_> = expansion_sites(&e.graph, &e.embedding)
            .into_iter()
            .filter(|s| matches!(s, ExpansionSite::R0 { .. }))
            .collect();
        let site = *sites.choose(&mut rng).unwrap();
        let t = cycle(&mut rng, &e.graph);
        let r = classify_r0_case(&e.graph, &t, site, Budget::UNLIMITED).unwrap();
        let ExpansionSite::R0 { e1, e2, flip } = site else { unreachable!() };
        let g2 = expand_r0_raw(&e.graph, e1, e2, flip).unwrap().graph;
        match &r {
            R0Case::Neither(rep) => {
                case4 += 1;
                println!(
                    "  case 4 logged: {} {site}: both-edge cycle {:?}, matching cycle {:?}",
                    e.key, rep.both_edges.verdict, rep.through_matching.verdict
                );
            }
            _ => {
                validate_tour(&g2, r.extended().unwrap(), &none(), true)?;
                ok += 1;
            }
        }
    }
    Ok(format!("50 R4, 50 R0 cases 1-3, {case4} case 4 logged"))
}

fn gen_stdout(jobs: &str) -> Result<String, String> {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat");
    let o = Command::new(env!("CARGO_BIN_EXE_barnette"))
        .args(["gen", "--max-n", "12", "--jobs", jobs, "--out"])
        .arg(&out)
        .output()
        .unwrap();
    ensure(o.status.success(), String::from_utf8_lossy(&o.stderr).into_owned())?;
    let s = String::from_utf8_lossy(&o.stdout);
    // skip the echoed command line
    let mut body: String = s.lines().skip(1).map(|l| format!("{l}\n")).collect();
    for n in (8..=12).step_by(2) {
        let d = out.join(format!("n{n:03}"));
        let mut names: Vec<_> = std::fs::read_dir(&d).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        for name in names {
            body.push_str(&std::fs::read_to_string(d.join(&name)).unwrap());
        }
    }
    Ok(body)
}

fn c11_gen_jobs() -> Outcome {
    let a = gen_stdout("1")?;
    for j in ["2", "4"] {
        ensure(gen_stdout(j)? == a, format!("--jobs {j} output differs"))?;
    }
    Ok("--jobs 1, 2, 4 identical".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("BBL-38 structure and traversals", c1_bbl_38),
        ("Tutte-46 non-Hamiltonian, composed key", c2_tutte_46),
        ("fragment lemmas within 60 s each", c3_fragments),
        ("enumerator through n=14", c4_enumerator),
        ("catalog n<=14 is H+-", c5_plus_minus),
        ("even per-edge cycle counts", c6_parity),
        ("colourings validate", c7_colorings),
        ("Steinitz reductions", c8_steinitz),
        ("SAT encoding", c9_sat),
        ("Hamiltonian cycle extension", c10_extensions),
        ("gen output independent of --jobs", c11_gen_jobs),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match r {
            Ok(d) => println!("criterion {:>2}: PASS  {name}: {d} [{:.1?}]", i + 1, t.elapsed()),
            Err(d) => {
                println!("criterion {:>2}: FAIL  {name}: {d} [{:.1?}]", i + 1, t.elapsed());
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
