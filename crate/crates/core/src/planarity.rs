//! Planarity testing by path addition over biconnected blocks.
//!
//! Each block is embedded by repeatedly choosing a bridge of the embedded
//! part, preferring bridges that fit in only one face, and drawing a path of
//! it through an admissible face. A bridge with no admissible face proves the
//! block non-planar. Non-planar inputs get a Kuratowski subgraph, found by
//! deleting edges while the rest stays non-planar.

use crate::embedding::{Dart, Embedding};
use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar(_) => None,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Test a connected multigraph for planarity.
pub fn is_planar(g: &Graph) -> Result<Planarity> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let adj = simple_adjacency(g, None);
    match simple_rotation(&adj) {
        Some(rot) => {
            let emb = darts_from_rotation(g, &rot);
            debug_assert!(emb.is_planar_for(g));
            Ok(Planarity::Planar(emb))
        }
        None => Ok(Planarity::NonPlanar(kuratowski(g))),
    }
}

/// Embedding of a connected planar graph, or `None`.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    match is_planar(g) {
        Ok(Planarity::Planar(e)) => Some(e),
        _ => None,
    }
}

/// Sorted, deduplicated neighbour lists without loops, optionally restricted to an edge mask.
fn simple_adjacency(g: &Graph, mask: Option<&[bool]>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() || mask.is_some_and(|m| !m[i]) {
            continue;
        }
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    adj
}

/// Turn a neighbour rotation of the underlying simple graph into a dart rotation.
/// Parallel edges are placed side by side, in reverse order at the far end, and
/// loops are inserted as adjacent dart pairs, so each extra edge bounds its own face.
fn darts_from_rotation(g: &Graph, rot: &[Vec<usize>]) -> Embedding {
    let mut out: Vec<Vec<Dart>> = vec![Vec::new(); g.n()];
    for v in 0..g.n() {
        for &w in &rot[v] {
            let es = g.edges_between(v, w);
            let darts = es.iter().map(|&e| if g.edge(e).u == v { 2 * e } else { 2 * e + 1 });
            if v < w {
                out[v].extend(darts);
            } else {
                out[v].extend(darts.rev());
            }
        }
        let mut loops: Vec<EdgeId> = g.incident(v).iter().copied().filter(|&e| g.edge(e).is_loop()).collect();
        loops.sort_unstable();
        loops.dedup();
        for e in loops {
            out[v].push(2 * e);
            out[v].push(2 * e + 1);
        }
    }
    Embedding::new(g, out).expect("rotation built from incidence lists")
}

/// Planar neighbour rotation for a simple graph given as adjacency lists
/// (any number of components), or `None` when some block is non-planar.
pub(crate) fn simple_rotation(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut rot = vec![Vec::new(); n];
    for block in biconnected_blocks(adj) {
        if block.len() == 1 {
            let (a, b) = block[0];
            rot[a].push(b);
            rot[b].push(a);
            continue;
        }
        let part = embed_block(&block)?;
        for (v, order) in part {
            rot[v].extend(order);
        }
    }
    Some(rot)
}

/// Edge sets of the biconnected blocks (Hopcroft-Tarjan with an edge stack).
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Path-addition embedding of one biconnected block with at least 3 vertices.
/// Returns `(vertex, neighbours in rotation order)` pairs.
fn embed_block(edges: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let k = verts.len();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let total_edges = edges.len();

    // Initial cycle through edge (0, first neighbour).
    let a0 = adj[0][0];
    let mut prev = vec![usize::MAX; k];
    prev[a0] = a0;
    let mut q = VecDeque::from([a0]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if prev[y] == usize::MAX && !(x == a0 && y == 0) {
                prev[y] = x;
                q.push_back(y);
            }
        }
    }
    let mut cyc = vec![0];
    let mut x = 0;
    while x != a0 {
        x = prev[x];
        cyc.push(x);
    }
    let mut in_v = vec![false; k];
    let mut in_e = vec![false; k * k];
    for i in 0..cyc.len() {
        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        in_v[a] = true;
        in_e[a * k + b] = true;
        in_e[b * k + a] = true;
    }
    let mut embedded = cyc.len();
    let mut rev = cyc.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cyc, rev];

    while embedded < total_edges {
        // Bridges: components of non-embedded vertices, and loose chords.
        let mut comp = vec![usize::MAX; k];
        let mut bridges: Vec<(Option<usize>, Vec<usize>)> = Vec::new();
        for s in 0..k {
            if in_v[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = bridges.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut att = Vec::new();
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if in_v[y] {
                        att.push(y);
                    } else if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            att.sort_unstable();
            att.dedup();
            bridges.push((Some(s), att));
        }
        for a in 0..k {
            if !in_v[a] {
                continue;
            }
            for &b in &adj[a] {
                if a < b && in_v[b] && !in_e[a * k + b] {
                    bridges.push((None, vec![a, b]));
                }
            }
        }
        let member: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; k];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut choice: Option<(usize, usize)> = None;
        let mut fallback: Option<(usize, usize)> = None;
        for (bi, (_, att)) in bridges.iter().enumerate() {
            let adm: Vec<usize> = (0..faces.len())
                .filter(|&fi| att.iter().all(|&v| member[fi][v]))
                .collect();
            match adm.len() {
                0 => return None,
                1 => {
                    if choice.is_none() {
                        choice = Some((bi, adm[0]));
                    }
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((bi, adm[0]));
                    }
                }
            }
        }
        let (bi, fi) = choice.or(fallback).expect("some bridge remains");
        let path = match &bridges[bi] {
            (None, att) => att.clone(),
            (Some(_), att) => {
                let start = att[0];
                let cid = comp[bridges[bi].0.unwrap()];
                let mut prev = vec![usize::MAX; k];
                prev[start] = start;
                let mut q = VecDeque::from([start]);
                let mut end = usize::MAX;
                'bfs: while let Some(x) = q.pop_front() {
                    for &y in &adj[x] {
                        if prev[y] != usize::MAX {
                            continue;
                        }
                        if !in_v[y] && comp[y] == cid {
                            prev[y] = x;
                            q.push_back(y);
                        } else if in_v[y] && x != start && y != start {
                            prev[y] = x;
                            end = y;
                            break 'bfs;
                        }
                    }
                }
                let mut p = vec![end];
                let mut x = end;
                while x != start {
                    x = prev[x];
                    p.push(x);
                }
                p.reverse();
                p
            }
        };
        for w in path.windows(2) {
            in_e[w[0] * k + w[1]] = true;
            in_e[w[1] * k + w[0]] = true;
            embedded += 1;
        }
        for &v in &path {
            in_v[v] = true;
        }
        // Split the face along the path.
        let face = faces.swap_remove(fi);
        let a = path[0];
        let b = *path.last().unwrap();
        let ia = face.iter().position(|&v| v == a).unwrap();
        let rotated: Vec<usize> = face[ia..].iter().chain(face[..ia].iter()).copied().collect();
        let ib = rotated.iter().position(|&v| v == b).unwrap();
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = rotated[..=ib].to_vec();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = rotated[ib..].to_vec();
        f2.push(a);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }

    // succ[v][a] = b for each boundary corner a -> v -> b.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            let (a, v, b) = (f[(i + l - 1) % l], f[i], f[(i + 1) % l]);
            succ[v].push((a, b));
        }
    }
    let mut out = Vec::with_capacity(k);
    for v in 0..k {
        let pairs = &succ[v];
        let start = adj[v][0];
        let mut order = vec![verts[start]];
        let mut cur = start;
        loop {
            let nx = pairs.iter().find(|&&(a, _)| a == cur).map(|&(_, b)| b)?;
            if nx == start {
                break;
            }
            order.push(verts[nx]);
            cur = nx;
            if order.len() > adj[v].len() {
                return None;
            }
        }
        if order.len() != adj[v].len() {
            return None;
        }
        out.push((verts[v], order));
    }
    Some(out)
}

/// Minimal non-planar edge subset, classified by its branch vertices.
fn kuratowski(g: &Graph) -> KuratowskiWitness {
    // One representative edge per vertex pair.
    let mut mask = vec![false; g.m()];
    for (i, e) in g.edges().iter().enumerate() {
        if !e.is_loop() && g.find_edge(e.u, e.v) == Some(i) {
            mask[i] = true;
        }
    }
    for i in 0..g.m() {
        if !mask[i] {
            continue;
        }
        mask[i] = false;
        if simple_rotation(&simple_adjacency(g, Some(&mask))).is_some() {
            mask[i] = true;
        }
    }
    let edges: Vec<EdgeId> = (0..g.m()).filter(|&i| mask[i]).collect();
    let mut deg = vec![0usize; g.n()];
    for &e in &edges {
        let ed = g.edge(e);
        deg[ed.u] += 1;
        deg[ed.v] += 1;
    }
    let branch_vertices: Vec<VertexId> = (0..g.n()).filter(|&v| deg[v] >= 3).collect();
    let kind = if branch_vertices.len() == 5 {
        KuratowskiKind::K5
    } else {
        debug_assert_eq!(branch_vertices.len(), 6);
        KuratowskiKind::K33
    };
    KuratowskiWitness {
        kind,
        branch_vertices,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn planar(g: &Graph) -> bool {
        is_planar(g).unwrap().is_planar()
    }

    #[test]
    fn small_planar_graphs() {
        for g in [complete(4), cube(), prism(5), grid(3, 4), cycle(6), path(4), ladder(4)] {
            let p = is_planar(&g).unwrap();
            let emb = p.embedding().expect("planar");
            assert!(emb.is_planar_for(&g));
        }
    }

    #[test]
    fn kuratowski_graphs() {
        match is_planar(&complete(5)).unwrap() {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, KuratowskiKind::K5);
                assert_eq!(w.edges.len(), 10);
            }
            _ => panic!("K5 reported planar"),
        }
        match is_planar(&complete_bipartite(3, 3)).unwrap() {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, KuratowskiKind::K33);
                assert_eq!(w.branch_vertices.len(), 6);
            }
            _ => panic!("K3,3 reported planar"),
        }
        assert!(!planar(&complete(6)));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        match is_planar(&g).unwrap() {
            Planarity::NonPlanar(w) => assert_eq!(w.kind, KuratowskiKind::K33),
            _ => panic!("Petersen reported planar"),
        }
    }

    #[test]
    fn multigraph_and_cut_vertices() {
        let mut g = cycle(3);
        g.add_edge(0, 1);
        g.add_edge(2, 2);
        let v = g.add_vertex();
        g.add_edge(2, v);
        let emb = is_planar(&g).unwrap().embedding().cloned().unwrap();
        assert!(emb.is_planar_for(&g));
    }

    #[test]
    fn disconnected_is_rejected() {
        assert_eq!(is_planar(&Graph::new(2)).unwrap_err(), GraphError::Disconnected);
    }
}
