//! Brute-force oracles and seeded graph generators shared by the
//! integration tests.
#![allow(dead_code)]

use barnette::checkers::{is_3_connected, is_cubic};
use barnette::planarity::planar_embedding;
use barnette::{canonical_key, CanonicalKey, EdgeId, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Every Hamiltonian cycle as a sorted edge set, by plain DFS from vertex 0.
pub fn naive_ham_cycles(g: &Graph) -> BTreeSet<Vec<EdgeId>> {
    let mut out = BTreeSet::new();
    let n = g.n();
    if n < 3 {
        // a digon (two parallel edges) is the only closed tour on two vertices
        if n == 2 {
            let es = g.edges_between(0, 1);
            for i in 0..es.len() {
                for j in i + 1..es.len() {
                    out.insert(vec![es[i], es[j]]);
                }
            }
        }
        return out;
    }
    let mut seen = vec![false; n];
    let mut path = Vec::new();
    seen[0] = true;
    dfs(g, 0, 1, &mut seen, &mut path, &mut out);
    out
}

fn dfs(g: &Graph, v: usize, depth: usize, seen: &mut [bool], path: &mut Vec<EdgeId>, out: &mut BTreeSet<Vec<EdgeId>>) {
    for &e in g.incident(v) {
        let w = g.other_end(e, v);
        if depth == g.n() {
            if w == 0 && !path.contains(&e) {
                let mut c = path.clone();
                c.push(e);
                c.sort_unstable();
                out.insert(c);
            }
            continue;
        }
        if seen[w] {
            continue;
        }
        seen[w] = true;
        path.push(e);
        dfs(g, w, depth + 1, seen, path, out);
        path.pop();
        seen[w] = false;
    }
}

/// Whether some Hamiltonian path exists, by DFS from every start.
pub fn naive_has_ham_path(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    fn go(g: &Graph, v: usize, depth: usize, seen: &mut [bool]) -> bool {
        if depth == g.n() {
            return true;
        }
        for w in g.neighbors(v).collect::<Vec<_>>() {
            if !seen[w] {
                seen[w] = true;
                if go(g, w, depth + 1, seen) {
                    return true;
                }
                seen[w] = false;
            }
        }
        false
    }
    (0..n).any(|s| {
        let mut seen = vec![false; n];
        seen[s] = true;
        go(g, s, 1, &mut seen)
    })
}

/// Random 3-connected planar graph: start from K4, then repeatedly add a
/// vertex inside a face joined to three or more of its corners, or a chord
/// across a face.
pub fn random_3c_planar(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = barnette::graph::complete(4);
    while g.n() < n {
        let emb = planar_embedding(&g).expect("planar by construction");
        let faces = emb.faces();
        let f = faces.choose(rng).unwrap();
        let mut corners = f.vertices(&g);
        corners.sort_unstable();
        corners.dedup();
        if rng.gen_bool(0.25) && corners.len() >= 4 {
            let cyc = f.vertices(&g);
            let i = rng.gen_range(0..cyc.len());
            let j = (i + 2 + rng.gen_range(0..cyc.len() - 3)) % cyc.len();
            if g.find_edge(cyc[i], cyc[j]).is_none() {
                g.add_edge(cyc[i], cyc[j]);
            }
            continue;
        }
        let k = rng.gen_range(3..=corners.len());
        let pick: Vec<usize> = corners.choose_multiple(rng, k).copied().collect();
        let v = g.add_vertex();
        for c in pick {
            g.add_edge(v, c);
        }
    }
    assert!(is_3_connected(&g));
    g
}

/// Random cubic 3-connected planar graph on `n` vertices (even, at least 4):
/// from K4, subdivide two edges of one face and join the new vertices.
pub fn random_cubic_planar(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    assert!(n >= 4 && n % 2 == 0);
    let mut g = barnette::graph::complete(4);
    while g.n() < n {
        let emb = planar_embedding(&g).expect("planar by construction");
        let faces = emb.faces();
        let f = faces.choose(rng).unwrap();
        let es = f.edges();
        let pick: Vec<EdgeId> = es.choose_multiple(rng, 2).copied().collect();
        let h = subdivide_and_join(&g, pick[0], pick[1]);
        if is_3_connected(&h) && h.is_simple() {
            g = h;
        }
    }
    assert!(is_cubic(&g));
    g
}

fn subdivide_and_join(g: &Graph, e1: EdgeId, e2: EdgeId) -> Graph {
    let (mut h, _) = g.delete_edges(&[e1, e2]).unwrap();
    let (a, b) = g.endpoints(e1);
    let (c, d) = g.endpoints(e2);
    let x = h.add_vertex();
    let y = h.add_vertex();
    h.add_edge(a, x);
    h.add_edge(x, b);
    h.add_edge(c, y);
    h.add_edge(y, d);
    h.add_edge(x, y);
    h
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Planar keys of all cubic 3-connected bipartite planar graphs on `2k`
/// vertices, from every 3-regular k x k biadjacency matrix whose first row
/// is `1 1 1 0 ...` (any graph has such a labelling).
pub fn census_keys(k: usize) -> BTreeSet<CanonicalKey> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut idx = vec![0, 1, 2];
    loop {
        rows.push(idx.clone());
        if !next_combination(&mut idx, k) {
            break;
        }
    }
    let mut out = BTreeSet::new();
    let mut chosen: Vec<usize> = vec![0];
    let mut col = vec![0usize; k];
    for &c in &rows[0] {
        col[c] += 1;
    }
    fill(k, &rows, &mut chosen, &mut col, &mut out);
    out
}

fn fill(k: usize, rows: &[Vec<usize>], chosen: &mut Vec<usize>, col: &mut [usize], out: &mut BTreeSet<CanonicalKey>) {
    if chosen.len() == k {
        let mut g = Graph::new(2 * k);
        for (r, &ri) in chosen.iter().enumerate() {
            for &c in &rows[ri] {
                g.add_edge(r, k + c);
            }
        }
        if g.is_connected() && is_3_connected(&g) {
            if let Some(emb) = planar_embedding(&g) {
                out.insert(canonical_key(&g, Some(&emb)).unwrap());
            }
        }
        return;
    }
    for (ri, r) in rows.iter().enumerate() {
        if r.iter().any(|&c| col[c] == 3) {
            continue;
        }
        for &c in r {
            col[c] += 1;
        }
        chosen.push(ri);
        fill(k, rows, chosen, col, out);
        chosen.pop();
        for &c in r {
            col[c] -= 1;
        }
    }
}
