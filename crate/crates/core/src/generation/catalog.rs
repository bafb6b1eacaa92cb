//! Breadth-first closure from the cube and its on-disk form.
//!
//! Layout: `<dir>/n<NNN>/` per vertex count holding `<key>.graph` edge lists,
//! `findings.txt` and `manifest.txt` (written last, so a level with a
//! manifest is complete). `<dir>/summary.txt` lists counts per n.

use super::{expand, expansion_sites, r0_lemma_violations, ExpansionSite};
use crate::canon::{canonical_form_planar, CanonicalKey};
use crate::checkers::c3cbp_embedding;
use crate::embedding::Embedding;
use crate::error::{GraphError, Result};
use crate::graph::{cube, Graph};
use crate::io::{parse_edge_list, to_edge_list};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub parent: CanonicalKey,
    /// In terms of the parent's stored (canonically labelled) graph.
    pub site: ExpansionSite,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: CanonicalKey,
    /// Canonically relabelled, edges sorted.
    pub graph: Graph,
    pub embedding: Embedding,
    pub provenance: Option<Provenance>,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    /// Entries per vertex count, sorted by key.
    pub levels: BTreeMap<usize, Vec<CatalogEntry>>,
    /// Lemma violations found while enumerating (expected empty).
    pub findings: BTreeMap<usize, Vec<String>>,
}

impl Catalog {
    pub fn level(&self, n: usize) -> &[CatalogEntry] {
        self.levels.get(&n).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, n: usize) -> usize {
        self.level(n).len()
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, n: usize, key: &CanonicalKey) -> bool {
        self.level(n).binary_search_by(|e| e.key.cmp(key)).is_ok()
    }

    pub fn get(&self, n: usize, key: &CanonicalKey) -> Option<&CatalogEntry> {
        let l = self.level(n);
        l.binary_search_by(|e| e.key.cmp(key)).ok().map(|i| &l[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.levels.values().flatten()
    }

    pub fn max_n(&self) -> Option<usize> {
        self.levels.keys().next_back().copied()
    }
}

/// Canonical relabelling of a C3CBP together with its key and embedding.
fn canonical_entry(g: &Graph, emb: &Embedding, provenance: Option<Provenance>) -> Result<CatalogEntry> {
    let (key, perm) = canonical_form_planar(g, emb)?;
    let graph = g.relabeled(&perm);
    let embedding = c3cbp_embedding(&graph)
        .ok_or_else(|| GraphError::InvalidEmbedding("relabelled graph lost its embedding".into()))?;
    Ok(CatalogEntry {
        key,
        graph,
        embedding,
        provenance,
    })
}

type Child = (usize, CatalogEntry);

fn children(parent: &CatalogEntry, max_n: usize) -> Vec<Child> {
    let n = parent.graph.n();
    let mut seen: BTreeMap<(usize, CanonicalKey), ()> = BTreeMap::new();
    let mut out = Vec::new();
    for site in expansion_sites(&parent.graph, &parent.embedding) {
        let cn = n + site.added_vertices();
        if cn > max_n {
            continue;
        }
        let Ok((h, hemb)) = expand(&parent.graph, &parent.embedding, site) else {
            continue;
        };
        let prov = Provenance {
            parent: parent.key.clone(),
            site,
        };
        let Ok(entry) = canonical_entry(&h, &hemb, Some(prov)) else {
            continue;
        };
        if seen.insert((cn, entry.key.clone()), ()).is_none() {
            out.push((cn, entry));
        }
    }
    out
}

fn level_findings(entries: &[CatalogEntry]) -> Vec<String> {
    let per: Vec<Vec<String>> = entries
        .par_iter()
        .map(|e| {
            r0_lemma_violations(&e.graph, &e.embedding)
                .into_iter()
                .map(|f| format!("{} face {}: no R0 orientation reduces", e.key, f))
                .collect()
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Closure from the cube up to `max_n` vertices using `jobs` worker threads
/// (0 = rayon default). The result does not depend on `jobs`.
pub fn enumerate(max_n: usize, jobs: usize) -> Result<Catalog> {
    enumerate_with(max_n, jobs, Catalog::default(), |_, _| Ok(()))
}

/// Like [`enumerate`], continuing from the complete levels of `start` and
/// calling `on_level` once per finished level in increasing order.
pub fn enumerate_with<F>(max_n: usize, jobs: usize, start: Catalog, mut on_level: F) -> Result<Catalog>
where
    F: FnMut(&Catalog, usize) -> Result<()>,
{
    if max_n < 8 || max_n % 2 != 0 {
        return Err(GraphError::Precondition(format!("max_n must be even and at least 8, got {max_n}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| GraphError::Precondition(format!("thread pool: {e}")))?;
    run(&pool, max_n, start, &mut on_level)
}

fn run<F>(pool: &rayon::ThreadPool, max_n: usize, start: Catalog, on_level: &mut F) -> Result<Catalog>
where
    F: FnMut(&Catalog, usize) -> Result<()>,
{
    let mut cat = Catalog::default();
    // First level not supplied by `start`.
    let mut n = 8;
    while n <= max_n && start.levels.contains_key(&n) {
        cat.levels.insert(n, start.levels[&n].clone());
        if let Some(f) = start.findings.get(&n) {
            cat.findings.insert(n, f.clone());
        }
        n += 2;
    }
    let resume_from = n;
    let mut pending: BTreeMap<usize, BTreeMap<CanonicalKey, CatalogEntry>> = BTreeMap::new();
    if resume_from == 8 {
        let c = cube();
        let emb = c3cbp_embedding(&c).expect("cube is a C3CBP");
        let e = canonical_entry(&c, &emb, None)?;
        pending.entry(8).or_default().insert(e.key.clone(), e);
    } else {
        // Regenerate the contributions of loaded levels to later ones.
        for m in [resume_from - 6, resume_from - 4, resume_from - 2] {
            if m >= 8 {
                merge(&mut pending, pool.install(|| expand_level(cat.level(m), max_n)), resume_from);
            }
        }
    }
    for n in (resume_from..=max_n).step_by(2) {
        let entries: Vec<CatalogEntry> = pending.remove(&n).unwrap_or_default().into_values().collect();
        cat.findings.insert(n, pool.install(|| level_findings(&entries)));
        let kids = pool.install(|| expand_level(&entries, max_n));
        cat.levels.insert(n, entries);
        merge(&mut pending, kids, n + 2);
        on_level(&cat, n)?;
    }
    Ok(cat)
}

fn expand_level(entries: &[CatalogEntry], max_n: usize) -> Vec<Vec<Child>> {
    entries.par_iter().map(|p| children(p, max_n)).collect()
}

/// First generator wins: parents arrive in (level, key) order, sites in
/// their fixed order, so provenance does not depend on scheduling.
fn merge(pending: &mut BTreeMap<usize, BTreeMap<CanonicalKey, CatalogEntry>>, kids: Vec<Vec<Child>>, min_n: usize) {
    for (cn, e) in kids.into_iter().flatten() {
        if cn < min_n {
            continue;
        }
        pending.entry(cn).or_default().entry(e.key.clone()).or_insert(e);
    }
}

fn level_dir(dir: &Path, n: usize) -> std::path::PathBuf {
    dir.join(format!("n{n:03}"))
}

fn io_err(path: &Path, e: std::io::Error) -> GraphError {
    GraphError::Precondition(format!("{}: {e}", path.display()))
}

/// Persist one level of `cat` under `dir`, plus the summary.
pub fn write_level(dir: &Path, cat: &Catalog, n: usize) -> Result<()> {
    let ld = level_dir(dir, n);
    fs::create_dir_all(&ld).map_err(|e| io_err(&ld, e))?;
    let mut manifest = String::new();
    for e in cat.level(n) {
        let p = ld.join(format!("{}.graph", e.key.to_hex()));
        fs::write(&p, to_edge_list(&e.graph)).map_err(|er| io_err(&p, er))?;
        match &e.provenance {
            Some(pr) => writeln!(manifest, "{} {} {}", e.key, pr.parent, pr.site).unwrap(),
            None => writeln!(manifest, "{} - -", e.key).unwrap(),
        }
    }
    let mut findings = String::new();
    for f in cat.findings.get(&n).into_iter().flatten() {
        writeln!(findings, "{f}").unwrap();
    }
    let p = ld.join("findings.txt");
    fs::write(&p, findings).map_err(|e| io_err(&p, e))?;
    let p = ld.join("manifest.txt");
    fs::write(&p, manifest).map_err(|e| io_err(&p, e))?;
    let mut summary = String::new();
    for (k, v) in &cat.levels {
        writeln!(summary, "{} {}", k, v.len()).unwrap();
    }
    let p = dir.join("summary.txt");
    fs::write(&p, summary).map_err(|e| io_err(&p, e))
}

/// Load every complete level (those with a manifest) from `dir`, stopping
/// at the first missing one. A missing directory yields an empty catalog.
pub fn load_catalog(dir: &Path) -> Result<Catalog> {
    let mut cat = Catalog::default();
    let mut n = 8;
    loop {
        let ld = level_dir(dir, n);
        let mp = ld.join("manifest.txt");
        let Ok(text) = fs::read_to_string(&mp) else { break };
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bad = |msg: &str| GraphError::Parse {
                line: i + 1,
                msg: format!("{}: {msg}", mp.display()),
            };
            let t: Vec<&str> = line.splitn(3, ' ').collect();
            if t.len() != 3 {
                return Err(bad("expected key, parent and site"));
            }
            let key = CanonicalKey::from_hex(t[0]).ok_or_else(|| bad("bad key"))?;
            let provenance = if t[1] == "-" {
                None
            } else {
                Some(Provenance {
                    parent: CanonicalKey::from_hex(t[1]).ok_or_else(|| bad("bad parent key"))?,
                    site: ExpansionSite::parse(t[2]).ok_or_else(|| bad("bad site"))?,
                })
            };
            let gp = ld.join(format!("{}.graph", t[0]));
            let g = parse_edge_list(&fs::read_to_string(&gp).map_err(|e| io_err(&gp, e))?)?;
            let embedding = c3cbp_embedding(&g).ok_or_else(|| bad("stored graph is not a C3CBP"))?;
            entries.push(CatalogEntry {
                key,
                graph: g,
                embedding,
                provenance,
            });
        }
        entries.sort_by(|a, b| a.key.cmp(&b.key));
        let fp = ld.join("findings.txt");
        let findings = fs::read_to_string(&fp).unwrap_or_default();
        cat.findings.insert(n, findings.lines().map(str::to_string).collect());
        cat.levels.insert(n, entries);
        n += 2;
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let cat = enumerate(12, 1).unwrap();
        assert_eq!(cat.count(8), 1);
        assert_eq!(cat.count(10), 0);
        assert_eq!(cat.count(12), 1);
        assert!(cat.findings.values().all(Vec::is_empty));
        let e = &cat.level(12)[0];
        assert!(cat.contains(8, &e.provenance.as_ref().unwrap().parent));
    }

    #[test]
    fn rejects_odd_bound() {
        assert!(enumerate(9, 1).is_err());
        assert!(enumerate(6, 1).is_err());
    }

    #[test]
    fn persist_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let full = enumerate(16, 1).unwrap();
        let partial = enumerate_with(12, 1, Catalog::default(), |c, n| write_level(dir.path(), c, n)).unwrap();
        assert_eq!(partial.len(), 2);
        let loaded = load_catalog(dir.path()).unwrap();
        assert_eq!(loaded.max_n(), Some(12));
        let resumed = enumerate_with(16, 1, loaded, |_, _| Ok(())).unwrap();
        for n in (8..=16).step_by(2) {
            let a: Vec<_> = full.level(n).iter().map(|e| (&e.key, &e.provenance)).collect();
            let b: Vec<_> = resumed.level(n).iter().map(|e| (&e.key, &e.provenance)).collect();
            assert_eq!(a, b, "level {n}");
        }
    }
}
