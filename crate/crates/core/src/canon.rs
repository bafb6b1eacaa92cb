//! Canonical keys.
//!
//! With an embedding the key is the smallest face-walk code over every
//! starting dart and both orientations; for 3-connected planar graphs this
//! identifies the graph up to isomorphism because the embedding is unique up
//! to reflection. Without an embedding, small graphs get the largest
//! column-wise adjacency code over vertex orderings compatible with a colour
//! refinement. Keys from the two paths carry different tags and never compare
//! equal.

use crate::embedding::{head, reverse, tail, Dart, Embedding};
use crate::error::{GraphError, Result};
use crate::graph::{Graph, VertexId};
use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count accepted by the adjacency-code path.
pub const ADJACENCY_KEY_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 != 0 {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalKey)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

const TAG_PLANAR: u8 = b'P';
const TAG_ADJ: u8 = b'A';

fn push_num(out: &mut Vec<u8>, x: usize, wide: bool) {
    if wide {
        out.extend_from_slice(&(x as u32).to_be_bytes());
    } else {
        out.push(x as u8);
    }
}

pub fn canonical_key(g: &Graph, emb: Option<&Embedding>) -> Result<CanonicalKey> {
    match emb {
        Some(e) => Ok(canonical_form_planar(g, e)?.0),
        None => Ok(canonical_form_adjacency(g)?.0),
    }
}

/// Face-walk code from a starting dart; `flip` walks rotations backwards.
/// Returns the code and the visiting order of vertices.
fn walk_code(
    g: &Graph,
    emb: &Embedding,
    start: Dart,
    flip: bool,
    best: Option<&[u32]>,
) -> Option<(Vec<u32>, Vec<VertexId>)> {
    let n = g.n();
    let mut number = vec![0u32; n];
    let mut first = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let s = tail(g, start);
    number[s] = 1;
    first[s] = start;
    order.push(s);
    let mut next_num = 2;
    let mut code: Vec<u32> = Vec::with_capacity(2 * g.m() + n);
    let mut tied = best.is_some();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        let d0 = first[x];
        let mut d = d0;
        let mut emit = |val: u32, code: &mut Vec<u32>| -> bool {
            code.push(val);
            if tied {
                let b = best.unwrap();
                match val.cmp(&b[code.len() - 1]) {
                    Ordering::Less => tied = false,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
            true
        };
        loop {
            let y = head(g, d);
            if number[y] == 0 {
                number[y] = next_num;
                next_num += 1;
                first[y] = reverse(d);
                order.push(y);
            }
            if !emit(number[y], &mut code) {
                return None;
            }
            d = if flip { emb.rot_prev(d) } else { emb.rot_next(d) };
            if d == d0 {
                break;
            }
        }
        if !emit(0, &mut code) {
            return None;
        }
    }
    Some((code, order))
}

/// Planar key plus the canonical relabelling `perm[old] = new`.
pub fn canonical_form_planar(g: &Graph, emb: &Embedding) -> Result<(CanonicalKey, Vec<VertexId>)> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if !emb.is_planar_for(g) {
        return Err(GraphError::InvalidEmbedding("embedding is not planar".into()));
    }
    let mut best: Option<(Vec<u32>, Vec<VertexId>)> = None;
    for d in 0..2 * g.m() {
        for flip in [false, true] {
            if let Some((code, order)) = walk_code(g, emb, d, flip, best.as_ref().map(|b| b.0.as_slice())) {
                if best.as_ref().map_or(true, |b| code < b.0) {
                    best = Some((code, order));
                }
            }
        }
    }
    let wide = g.n() >= 255 || g.m() >= 255;
    let mut out = vec![TAG_PLANAR, wide as u8];
    push_num(&mut out, g.n(), wide);
    push_num(&mut out, g.m(), wide);
    let mut perm = vec![0; g.n()];
    if let Some((code, order)) = best {
        for x in code {
            push_num(&mut out, x as usize, wide);
        }
        for (i, v) in order.into_iter().enumerate() {
            perm[v] = i;
        }
    }
    Ok((CanonicalKey(out), perm))
}

/// Colour refinement with canonically numbered colours.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let new: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        let classes_before = {
            let mut c = color.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        color = new;
        if uniq.len() == classes_before {
            return color;
        }
    }
}

struct AdjSearch<'a> {
    n: usize,
    mult: &'a [u8],
    slots: Vec<usize>,
    color: &'a [usize],
    best: Option<Vec<u8>>,
    best_perm: Vec<VertexId>,
}

impl AdjSearch<'_> {
    fn column(&self, perm: &[VertexId], v: VertexId) -> Vec<u8> {
        let mut col: Vec<u8> = perm.iter().map(|&p| self.mult[p * self.n + v]).collect();
        col.push(self.mult[v * self.n + v]);
        col
    }

    fn dfs(&mut self, perm: &mut Vec<VertexId>, used: &mut [bool], code: &mut Vec<u8>) {
        let j = perm.len();
        if j == self.n {
            if self.best.as_ref().map_or(true, |b| code.as_slice() > b.as_slice()) {
                self.best = Some(code.clone());
                self.best_perm = perm.clone();
            }
            return;
        }
        for v in 0..self.n {
            if used[v] || self.color[v] != self.slots[j] {
                continue;
            }
            let col = self.column(perm, v);
            let start = code.len();
            code.extend_from_slice(&col);
            let prune = self
                .best
                .as_ref()
                .is_some_and(|b| code.as_slice() < &b[..code.len()]);
            if !prune {
                used[v] = true;
                perm.push(v);
                self.dfs(perm, used, code);
                perm.pop();
                used[v] = false;
            }
            code.truncate(start);
        }
    }
}

/// Adjacency key plus the canonical relabelling `perm[old] = new`.
pub fn canonical_form_adjacency(g: &Graph) -> Result<(CanonicalKey, Vec<VertexId>)> {
    let n = g.n();
    if n > ADJACENCY_KEY_LIMIT {
        return Err(GraphError::TooLargeForKey(n, ADJACENCY_KEY_LIMIT));
    }
    let mut mult = vec![0u8; n * n];
    for e in g.edges() {
        mult[e.u * n + e.v] = mult[e.u * n + e.v].saturating_add(1);
        if e.u != e.v {
            mult[e.v * n + e.u] = mult[e.v * n + e.u].saturating_add(1);
        }
    }
    let color = refine_colors(g);
    let mut slots = color.clone();
    slots.sort_unstable();
    let mut s = AdjSearch {
        n,
        mult: &mult,
        slots: slots.clone(),
        color: &color,
        best: None,
        best_perm: Vec::new(),
    };
    s.dfs(&mut Vec::new(), &mut vec![false; n], &mut Vec::new());
    let mut out = vec![TAG_ADJ, n as u8];
    out.extend(slots.iter().map(|&c| c as u8));
    out.extend(s.best.unwrap_or_default());
    let mut perm = vec![0; n];
    for (i, &v) in s.best_perm.iter().enumerate() {
        perm[v] = i;
    }
    Ok((CanonicalKey(out), perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::planarity::planar_embedding;

    fn pkey(g: &Graph) -> CanonicalKey {
        canonical_key(g, Some(&planar_embedding(g).unwrap())).unwrap()
    }

    #[test]
    fn planar_key_ignores_labels() {
        let g = cube();
        let perm = [5, 2, 7, 0, 1, 6, 3, 4];
        let h = g.relabeled(&perm);
        assert_eq!(pkey(&g), pkey(&h));
        assert_ne!(pkey(&g), pkey(&prism(5)));
    }

    #[test]
    fn planar_key_separates() {
        assert_eq!(pkey(&cube()), pkey(&prism(4)));
        assert_ne!(pkey(&prism(5)), pkey(&prism(6)));
        assert_ne!(pkey(&complete(4)), pkey(&prism(3)));
    }

    #[test]
    fn adjacency_key_ignores_labels() {
        let g = prism(5);
        let perm = [3, 9, 1, 0, 8, 2, 7, 5, 4, 6];
        let h = g.relabeled(&perm);
        assert_eq!(canonical_key(&g, None).unwrap(), canonical_key(&h, None).unwrap());
        assert_ne!(canonical_key(&g, None).unwrap(), canonical_key(&grid(2, 5), None).unwrap());
    }

    #[test]
    fn adjacency_key_limit() {
        assert!(canonical_key(&cycle(13), None).is_err());
    }

    #[test]
    fn relabelling_is_canonical() {
        let g = cube();
        let (_, p1) = canonical_form_planar(&g, &planar_embedding(&g).unwrap()).unwrap();
        let h = g.relabeled(&[7, 6, 5, 4, 3, 2, 1, 0]);
        let (_, p2) = canonical_form_planar(&h, &planar_embedding(&h).unwrap()).unwrap();
        assert_eq!(g.relabeled(&p1), h.relabeled(&p2));
    }

    #[test]
    fn hex_roundtrip() {
        let k = pkey(&cube());
        assert_eq!(CanonicalKey::from_hex(&k.to_hex()), Some(k));
    }
}
