//! `barnette`: checks, Hamiltonian search, generation, gadgets, colourings,
//! Steinitz reductions and the 3-SAT encoding from the command line.
//!
//! Exit codes: 0 when every verdict was computed, 2 on parse or usage
//! errors, 3 when a search ran out of budget.

mod report;

use anyhow::{anyhow, bail, Context, Result};
use barnette::checkers::{
    bipartition, classify_4cuts, cyclically_4_edge_connected, edge_3cuts, is_cubic, vertex_connectivity_at_least,
    ConnectivityViolation, CutClass,
};
use barnette::coloring::{face_four_coloring, tait_edge_coloring, validate_edge_coloring, validate_face_coloring};
use barnette::fragments::{named_graph, verify_named_lemma, LemmaCheck, NAMES};
use barnette::generation::{enumerate_with, load_catalog, write_level, Catalog};
use barnette::hamiltonicity::{
    classify, count_ham_cycles, find_ham_cycle, find_ham_path, validate_tour, Budget, ConstraintSet, HamResult,
    Property, Tour, Verdict,
};
use barnette::io::{parse_edge_list_prefix, to_dot_styled, to_edge_list, DotStyle};
use barnette::planarity::{is_planar, KuratowskiKind, Planarity};
use barnette::sat::{
    build_instance, decode_assignment, encode_assignment, parse_constraints, parse_formula, size_estimate, HamMode,
    SatOutcome,
};
use barnette::steinitz::reduce_to_k4;
use barnette::{embedding::face_size_histogram, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{ids, Answer, Report};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "barnette", version, about = "Workbench for cubic 3-connected bipartite planar graphs")]
struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural checks on a graph.
    Check(CheckArgs),
    /// Search for a Hamiltonian cycle or path.
    Ham(HamArgs),
    /// Enumerate the catalog from the cube.
    Gen(GenArgs),
    /// Print a built-in graph.
    Named(NamedArgs),
    /// Verify the lemma attached to a built-in gadget.
    FragmentVerify(FragmentArgs),
    /// Edge and face colourings from a Hamiltonian cycle.
    Color(ColorArgs),
    /// Reduce a planar graph to K4 and print the trace.
    Steinitz(SteinitzArgs),
    /// Encode a 3-CNF formula as a constrained Hamiltonicity instance.
    Sat(SatArgs),
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Node budget per search.
    #[arg(long, default_value_t = 1_000_000_000)]
    max_nodes: u64,
    /// Time budget per search, in seconds.
    #[arg(long, default_value_t = 600.0)]
    max_seconds: f64,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            max_nodes: Some(self.max_nodes),
            max_time: Some(Duration::from_secs_f64(self.max_seconds)),
        }
    }
}

/// Graph source: a file path, `-` for stdin, or `named:<name>`.
#[derive(Args)]
struct Input {
    input: String,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    src: Input,
    #[arg(long)]
    cubic: bool,
    #[arg(long)]
    bipartite: bool,
    /// Check vertex connectivity at least K.
    #[arg(long, value_name = "K")]
    connectivity: Option<usize>,
    #[arg(long)]
    planar: bool,
    /// Small edge cuts: 3-cuts, cyclic 4-edge-connectivity, 4-cut classes.
    #[arg(long)]
    cuts: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Shape {
    Cycle,
    Path,
}

#[derive(Args)]
struct HamArgs {
    #[command(flatten)]
    src: Input,
    #[arg(long, value_enum, default_value_t = Shape::Cycle)]
    mode: Shape,
    /// Edge (1-based) the tour must use.
    #[arg(long, value_name = "E")]
    require: Vec<usize>,
    /// Edge (1-based) the tour must avoid.
    #[arg(long, value_name = "E")]
    forbid: Vec<usize>,
    /// Exactly one of two edges: `E1,E2`.
    #[arg(long, value_name = "E1,E2")]
    xor: Vec<String>,
    /// At least one of two or three edges: `E1,E2[,E3]`.
    #[arg(long, value_name = "E1,E2[,E3]")]
    or: Vec<String>,
    /// Count all cycles, in total and per edge.
    #[arg(long)]
    count: bool,
    /// Decide H, H+, H- and H+- by exhaustive pair testing.
    #[arg(long)]
    classify: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Continue from the complete levels already in `--out`.
    #[arg(long)]
    resume: bool,
    /// Replace an existing catalog in `--out`.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Dot,
    Labels,
}

#[derive(Args)]
struct NamedArgs {
    /// Graph name; see `--list`.
    name: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Edges)]
    format: Format,
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct FragmentArgs {
    name: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    src: Input,
    /// Find the cycle by search (the default when `--cycle` is absent).
    #[arg(long)]
    cycle_from_search: bool,
    /// Hamiltonian cycle as 1-based vertices, space or comma separated.
    #[arg(long)]
    cycle: Option<String>,
    #[arg(long)]
    dot: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct SteinitzArgs {
    #[command(flatten)]
    src: Input,
    /// Write the trace here as well.
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

#[derive(Args)]
struct SatArgs {
    /// DIMACS file, one-line formula file, or `-`.
    formula: String,
    #[arg(long, value_enum, default_value_t = Shape::Cycle)]
    mode: Shape,
    /// Write the instance (edge list and constraint lines) here.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Crossings to add to the size estimate.
    #[arg(long, default_value_t = 0)]
    crossings: usize,
    /// Only build and size the instance.
    #[arg(long)]
    no_solve: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

/// Graph, optional vertex labels, and any constraint lines after the edges.
struct Loaded {
    graph: Graph,
    labels: Option<Vec<String>>,
    constraints: ConstraintSet,
}

fn load(src: &str) -> Result<Loaded> {
    if let Some(name) = src.strip_prefix("named:") {
        let n = named_graph(name)?;
        return Ok(Loaded {
            graph: n.graph,
            labels: Some(n.labels),
            constraints: ConstraintSet::none(),
        });
    }
    let text = read_source(src)?;
    let (graph, rest) = parse_edge_list_prefix(&text).with_context(|| format!("parsing {src}"))?;
    let constraints = parse_constraints(&rest, graph.m()).with_context(|| format!("parsing {src}"))?;
    Ok(Loaded {
        graph,
        labels: None,
        constraints,
    })
}

fn vertex_names(l: &Loaded, vs: &[usize]) -> String {
    match &l.labels {
        Some(lab) if lab.iter().enumerate().any(|(i, s)| *s != (i + 1).to_string()) => {
            vs.iter().map(|&v| lab[v].as_str()).collect::<Vec<_>>().join(" ")
        }
        _ => ids(vs),
    }
}

fn edge_id(e: usize, m: usize) -> Result<usize> {
    if e == 0 || e > m {
        bail!("edge id {e} out of range 1..={m}");
    }
    Ok(e - 1)
}

fn edge_tuple(s: &str, m: usize, arity: &[usize]) -> Result<Vec<usize>> {
    let es: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad edge id {t:?} in {s:?}")))
        .collect::<Result<_>>()?;
    if !arity.contains(&es.len()) {
        bail!("{s:?}: expected {arity:?} edge ids");
    }
    es.into_iter().map(|e| edge_id(e, m)).collect()
}

fn cmd_check(a: &CheckArgs, rep: &mut Report) -> Result<()> {
    let l = load(&a.src.input)?;
    let g = &l.graph;
    rep.kv("vertices", g.n());
    rep.kv("edges", g.m());
    let all = !(a.cubic || a.bipartite || a.connectivity.is_some() || a.planar || a.cuts);
    if all || a.cubic {
        rep.verdict("cubic", Answer::from_bool(is_cubic(g)), None);
    }
    if all || a.bipartite {
        match bipartition(g) {
            Ok(b) => {
                let (x, y) = b.part_sizes();
                rep.verdict("bipartite", Answer::Yes, Some(format!("parts {x} and {y}")));
            }
            Err(odd) => {
                let closed = odd.vertices.len() == odd.edges.len() + 1
                    && odd.edges.len() % 2 == 1
                    && odd.vertices.first() == odd.vertices.last();
                if !closed {
                    bail!("internal error: odd cycle witness failed validation");
                }
                let vs = &odd.vertices[..odd.vertices.len() - 1];
                rep.verdict("bipartite", Answer::No, Some(format!("odd cycle {}", vertex_names(&l, vs))));
            }
        }
    }
    let ks: Vec<usize> = match a.connectivity {
        Some(k) => vec![k],
        None if all => vec![3],
        None => vec![],
    };
    for k in ks {
        let key = format!("{k}-connected");
        match vertex_connectivity_at_least(g, k) {
            Ok(()) => rep.verdict(&key, Answer::Yes, None),
            Err(ConnectivityViolation::TooFewVertices) => {
                rep.verdict(&key, Answer::No, Some(format!("at most {k} vertices")))
            }
            Err(ConnectivityViolation::Separator(s)) => {
                let (h, _) = g.delete_vertices(&s)?;
                if h.is_connected() {
                    bail!("internal error: separator witness failed validation");
                }
                rep.verdict(&key, Answer::No, Some(format!("separator {}", vertex_names(&l, &s))));
            }
        }
    }
    let mut emb = None;
    if all || a.planar || a.cuts {
        match is_planar(g) {
            Ok(Planarity::Planar(e)) => {
                let hist = face_size_histogram(&e.faces());
                let parts: Vec<String> = hist
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(s, c)| format!("{c}x{s}"))
                    .collect();
                if all || a.planar {
                    rep.verdict("planar", Answer::Yes, Some(format!("faces {}", parts.join(" "))));
                }
                emb = Some(e);
            }
            Ok(Planarity::NonPlanar(w)) => {
                if all || a.planar {
                    let kind = match w.kind {
                        KuratowskiKind::K5 => "K5",
                        KuratowskiKind::K33 => "K3,3",
                    };
                    rep.verdict(
                        "planar",
                        Answer::No,
                        Some(format!("{kind} subdivision on branch vertices {}", vertex_names(&l, &w.branch_vertices))),
                    );
                }
            }
            Err(e) => {
                if all || a.planar {
                    rep.verdict("planar", Answer::No, Some(e.to_string()));
                }
            }
        }
    }
    if a.cuts {
        let cuts = edge_3cuts(g);
        rep.kv("nontrivial 3-edge cuts", cuts.len());
        for c in &cuts {
            rep.line(format!(
                "  cut {} sides {}/{}",
                ids(&c.edges),
                c.side_a.len(),
                c.side_b.len()
            ));
        }
        rep.verdict("cyclically 4-edge-connected", Answer::from_bool(cyclically_4_edge_connected(g)), None);
        if let Some(e) = &emb {
            if is_cubic(g) {
                let fc = classify_4cuts(g, e);
                let count = |k: CutClass| fc.iter().filter(|c| c.classification == k).count();
                rep.kv("4-edge cuts", fc.len());
                rep.kv("  around a 4-face", count(CutClass::Plain));
                rep.kv("  essential, around a ladder", count(CutClass::Essential));
                rep.kv("  major", count(CutClass::Major));
            }
        }
    }
    Ok(())
}

fn render_tour(rep: &mut Report, l: &Loaded, key: &str, r: &HamResult, closed: bool, c: &ConstraintSet) -> Result<()> {
    match r.verdict {
        Verdict::Found => {
            let t = r.tour.as_ref().ok_or_else(|| anyhow!("internal error: found without a tour"))?;
            validate_tour(&l.graph, t, c, closed).map_err(|e| anyhow!("internal error: witness invalid: {e}"))?;
            rep.verdict(key, Answer::Yes, None);
            rep.kv("tour", vertex_names(l, &t.vertices));
        }
        Verdict::NotFound => rep.verdict(key, Answer::No, Some("exhaustive".into())),
        Verdict::Inconclusive => rep.verdict(key, Answer::Inconclusive, Some("budget exhausted".into())),
    }
    rep.kv("nodes", r.nodes_expanded);
    Ok(())
}

fn property_line(rep: &mut Report, key: &str, p: &Property, l: &Loaded) {
    match p {
        Property::Holds => rep.verdict(key, Answer::Yes, None),
        Property::Inconclusive => rep.verdict(key, Answer::Inconclusive, None),
        Property::Fails(es) if es.is_empty() => rep.verdict(key, Answer::No, None),
        Property::Fails(es) => {
            let desc: Vec<String> = es
                .iter()
                .map(|&e| {
                    let (u, v) = l.graph.endpoints(e);
                    format!("edge {} ({}-{})", e + 1, vertex_names(l, &[u]), vertex_names(l, &[v]))
                })
                .collect();
            rep.verdict(key, Answer::No, Some(desc.join(", ")))
        }
    }
}

fn cmd_ham(a: &HamArgs, rep: &mut Report) -> Result<()> {
    let l = load(&a.src.input)?;
    let m = l.graph.m();
    let mut c = l.constraints.clone();
    for &e in &a.require {
        c.required.push(edge_id(e, m)?);
    }
    for &e in &a.forbid {
        c.forbidden.push(edge_id(e, m)?);
    }
    for s in &a.xor {
        let es = edge_tuple(s, m, &[2])?;
        c.xor_pairs.push((es[0], es[1]));
    }
    for s in &a.or {
        c.or_sets.push(edge_tuple(s, m, &[2, 3])?);
    }
    let budget = a.budget.budget();
    rep.kv("vertices", l.graph.n());
    rep.kv("edges", m);
    if a.classify {
        if !c.is_empty() {
            bail!("--classify takes no constraints");
        }
        let cl = classify(&l.graph, budget)?;
        property_line(rep, "hamiltonian", &cl.hamiltonian, &l);
        property_line(rep, "every edge on a cycle", &cl.plus, &l);
        property_line(rep, "every edge avoidable", &cl.minus, &l);
        property_line(rep, "every ordered edge pair", &cl.plus_minus, &l);
        rep.kv("searches", cl.searches);
        return Ok(());
    }
    if a.count {
        if a.mode == Shape::Path {
            bail!("--count supports cycles only");
        }
        let cc = count_ham_cycles(&l.graph, &c, budget)?;
        if !cc.complete {
            rep.verdict("count complete", Answer::Inconclusive, None);
        }
        rep.kv("cycles", cc.total);
        let per: Vec<String> = cc.per_edge.iter().map(|x| x.to_string()).collect();
        rep.kv("per edge", per.join(" "));
        rep.kv("nodes", cc.nodes_expanded);
        return Ok(());
    }
    match a.mode {
        Shape::Cycle => {
            let r = find_ham_cycle(&l.graph, &c, budget)?;
            render_tour(rep, &l, "hamiltonian cycle", &r, true, &c)
        }
        Shape::Path => {
            let r = find_ham_path(&l.graph, &c, budget)?;
            render_tour(rep, &l, "hamiltonian path", &r, false, &c)
        }
    }
}

fn cmd_gen(a: &GenArgs, rep: &mut Report) -> Result<()> {
    let dir = &a.out;
    let existing = dir.join("summary.txt").exists() || dir.join("n008").exists();
    let start = if a.resume {
        load_catalog(dir)?
    } else {
        if existing {
            if !a.force {
                bail!("{} already holds a catalog; pass --resume or --force", dir.display());
            }
            clear_catalog(dir)?;
        }
        Catalog::default()
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let loaded = start.max_n();
    let t0 = Instant::now();
    let cat = enumerate_with(a.max_n, a.jobs, start, |c, n| {
        if loaded.is_some_and(|l| n <= l) {
            return Ok(());
        }
        write_level(dir, c, n)?;
        eprintln!("n={n}: {} graphs ({:.1?})", c.count(n), t0.elapsed());
        Ok(())
    })?;
    for (n, l) in &cat.levels {
        rep.kv(&format!("n={n}"), l.len());
    }
    let findings: usize = cat.findings.values().map(Vec::len).sum();
    rep.kv("total", cat.len());
    rep.kv("lemma findings", findings);
    for (n, fs) in &cat.findings {
        for f in fs {
            rep.line(format!("  n={n} {f}"));
        }
    }
    Ok(())
}

fn clear_catalog(dir: &Path) -> Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().to_string();
        let is_level = name.len() == 4 && name.starts_with('n') && name[1..].chars().all(|c| c.is_ascii_digit());
        if is_level {
            std::fs::remove_dir_all(entry.path())?;
        } else if name == "summary.txt" {
            std::fs::remove_file(entry.path())?;
        }
    }
    Ok(())
}

fn cmd_named(a: &NamedArgs) -> Result<String> {
    if a.list {
        return Ok(NAMES.join("\n") + "\n");
    }
    let name = a.name.as_deref().ok_or_else(|| anyhow!("missing graph name (or --list)"))?;
    let n = named_graph(name)?;
    Ok(match a.format {
        Format::Edges => {
            let mut s = format!("# {}\n", n.name);
            if !n.marked.is_empty() {
                s.push_str(&format!("# marked edges: {}\n", ids(&n.marked)));
            }
            s + &to_edge_list(&n.graph)
        }
        Format::Dot => to_dot_styled(
            &n.graph,
            &DotStyle {
                name: Some(&n.name),
                labels: Some(&n.labels),
                edge_colors: None,
                highlight: Some(&n.marked),
            },
        ),
        Format::Labels => n
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{} {l}\n", i + 1))
            .collect(),
    })
}

fn cmd_fragment(a: &FragmentArgs, rep: &mut Report) -> Result<()> {
    let t = Instant::now();
    let (what, res) = verify_named_lemma(&a.name, a.budget.budget())?;
    rep.kv("lemma", &what);
    match res {
        LemmaCheck::Holds => rep.verdict("holds", Answer::Yes, None),
        LemmaCheck::Inconclusive => rep.verdict("holds", Answer::Inconclusive, None),
        LemmaCheck::Fails { reason, witness } => {
            rep.verdict("holds", Answer::No, Some(reason));
            if let Some(w) = witness {
                rep.kv("witness", ids(&w.vertices));
            }
        }
    }
    eprintln!("elapsed {:.1?}", t.elapsed());
    Ok(())
}

fn parse_vertex_list(s: &str, n: usize) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: usize = t.parse().map_err(|_| anyhow!("bad vertex {t:?}"))?;
            if v == 0 || v > n {
                bail!("vertex {v} out of range 1..={n}");
            }
            Ok(v - 1)
        })
        .collect()
}

fn cmd_color(a: &ColorArgs, rep: &mut Report) -> Result<Option<String>> {
    let l = load(&a.src.input)?;
    let g = &l.graph;
    let emb = barnette::planarity::planar_embedding(g).ok_or_else(|| anyhow!("graph is not connected and planar"))?;
    let tour: Tour = match &a.cycle {
        Some(s) if !a.cycle_from_search => Tour::from_vertices(g, &parse_vertex_list(s, g.n())?, true)?,
        _ => {
            let r = find_ham_cycle(g, &ConstraintSet::none(), a.budget.budget())?;
            match r.verdict {
                Verdict::Found => r.tour.unwrap(),
                Verdict::NotFound => {
                    rep.verdict("hamiltonian cycle", Answer::No, Some("exhaustive".into()));
                    return Ok(None);
                }
                Verdict::Inconclusive => {
                    rep.verdict("hamiltonian cycle", Answer::Inconclusive, None);
                    return Ok(None);
                }
            }
        }
    };
    rep.kv("cycle", vertex_names(&l, &tour.vertices));
    let ec = tait_edge_coloring(g, &tour)?;
    let fc = face_four_coloring(g, &emb, &tour)?;
    rep.verdict("edge colouring proper", Answer::from_bool(validate_edge_coloring(g, &ec)), None);
    rep.verdict("face colouring proper", Answer::from_bool(validate_face_coloring(g, &emb, &fc)), None);
    for (e, c) in ec.colors.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        rep.line(format!("edge {} {}-{} {}", e + 1, vertex_names(&l, &[u]), vertex_names(&l, &[v]), c.name()));
    }
    for (i, f) in emb.faces().iter().enumerate() {
        rep.line(format!(
            "face {} [{}] {:?}",
            i + 1,
            vertex_names(&l, &f.vertices(g)),
            fc.color(i)
        ));
    }
    if a.dot {
        let names: Vec<&str> = ec.colors.iter().map(|c| c.name()).collect();
        let dot = to_dot_styled(
            g,
            &DotStyle {
                name: Some("coloring"),
                labels: l.labels.as_deref(),
                edge_colors: Some(&names),
                highlight: None,
            },
        );
        return Ok(Some(dot));
    }
    Ok(None)
}

fn cmd_steinitz(a: &SteinitzArgs, rep: &mut Report) -> Result<()> {
    let l = load(&a.src.input)?;
    match reduce_to_k4(&l.graph) {
        Ok(trace) => {
            rep.verdict("reached K4", Answer::Yes, Some(format!("{} steps", trace.steps.len())));
            let text = trace.to_text();
            for line in text.lines() {
                rep.line(line);
            }
            if let Some(p) = &a.trace_out {
                std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Err(stuck) => {
            rep.verdict("reached K4", Answer::No, Some(stuck.reason.clone()));
            rep.kv("steps taken", stuck.steps.len());
            rep.kv("stuck at", format!("{} vertices, {} edges", stuck.graph.n(), stuck.graph.m()));
        }
    }
    Ok(())
}

fn cmd_sat(a: &SatArgs, rep: &mut Report) -> Result<()> {
    let f = parse_formula(&read_source(&a.formula)?).with_context(|| format!("parsing {}", a.formula))?;
    let mode = match a.mode {
        Shape::Cycle => HamMode::Cycle,
        Shape::Path => HamMode::Path,
    };
    let ri = build_instance(&f, mode);
    rep.kv("variables", f.vars);
    rep.kv("clauses", f.clauses.len());
    rep.kv("skeleton", format!("{} vertices, {} edges", ri.graph.n(), ri.graph.m()));
    rep.kv(
        "constraints",
        format!("{} xor, {} or", ri.constraints.xor_pairs.len(), ri.constraints.or_sets.len()),
    );
    rep.kv("size_estimate", size_estimate(&f, a.crossings));
    if let Some(p) = &a.emit {
        std::fs::write(p, ri.to_text()).with_context(|| format!("writing {}", p.display()))?;
    }
    if a.no_solve {
        return Ok(());
    }
    let (out, r) = barnette::sat::solve_instance(&ri, a.budget.budget())?;
    rep.kv("nodes", r.nodes_expanded);
    match out {
        SatOutcome::Satisfiable { assignment, tour } => {
            decode_assignment(&ri, &tour)?;
            encode_assignment(&ri, &assignment)?;
            let bits: Vec<String> = assignment.iter().map(|&b| (b as u8).to_string()).collect();
            rep.verdict("satisfiable", Answer::Yes, None);
            rep.kv("assignment", bits.join(" "));
        }
        SatOutcome::Unsatisfiable => rep.verdict("satisfiable", Answer::No, Some("UNSAT".into())),
        SatOutcome::Inconclusive => rep.verdict("satisfiable", Answer::Inconclusive, None),
    }
    Ok(())
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<(Report, Option<String>)> {
    let mut rep = Report::new(&command_line());
    let mut extra = None;
    match &cli.cmd {
        Cmd::Check(a) => cmd_check(a, &mut rep)?,
        Cmd::Ham(a) => cmd_ham(a, &mut rep)?,
        Cmd::Gen(a) => cmd_gen(a, &mut rep)?,
        Cmd::Named(a) => return Ok((Report::default(), Some(cmd_named(a)?))),
        Cmd::FragmentVerify(a) => cmd_fragment(a, &mut rep)?,
        Cmd::Color(a) => extra = cmd_color(a, &mut rep)?,
        Cmd::Steinitz(a) => cmd_steinitz(a, &mut rep)?,
        Cmd::Sat(a) => cmd_sat(a, &mut rep)?,
    }
    Ok((rep, extra))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((rep, extra)) => {
            let mut text = match &extra {
                Some(x) if matches!(cli.cmd, Cmd::Named(_)) => x.clone(),
                _ => rep.text(),
            };
            if let (Some(x), Cmd::Color(_)) = (&extra, &cli.cmd) {
                text.push_str(x);
            }
            print!("{text}");
            if let Some(p) = &cli.report {
                if let Err(e) = std::fs::write(p, &text) {
                    eprintln!("error: writing {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if rep.inconclusive {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
