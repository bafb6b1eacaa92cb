//! Edge-list text format and DOT export.
//!
//! Edge-list files start with `n m`, followed by `m` lines `u v` using 1-based
//! vertex numbers. Everything after `#` on a line is ignored.

use crate::error::{GraphError, Result};
use crate::graph::Graph;
use std::fmt::Write as _;

/// Lines with comments stripped, paired with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let body = body.trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("expected a non-negative integer, got {tok:?}"),
    })
}

/// Parse an edge list, ignoring any lines after the `m` edge lines.
/// Returns the graph and the remaining content lines.
pub fn parse_edge_list_prefix(text: &str) -> Result<(Graph, Vec<(usize, String)>)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing header `n m`".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(GraphError::Parse {
            line: hl,
            msg: "header must be `n m`".into(),
        });
    }
    let n = parse_usize(toks[0], hl)?;
    let m = parse_usize(toks[1], hl)?;
    let mut g = Graph::new(n);
    for k in 0..m {
        let (ln, body) = lines.next().ok_or(GraphError::Parse {
            line: hl,
            msg: format!("expected {m} edges, found {k}"),
        })?;
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(GraphError::Parse {
                line: ln,
                msg: "edge line must be `u v`".into(),
            });
        }
        let u = parse_usize(toks[0], ln)?;
        let v = parse_usize(toks[1], ln)?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(GraphError::Parse {
                line: ln,
                msg: format!("vertex out of range in pair ({u}, {v})"),
            });
        }
        g.add_edge(u - 1, v - 1);
    }
    let rest = lines.map(|(l, s)| (l, s.to_string())).collect();
    Ok((g, rest))
}

/// Parse a complete edge-list file; trailing content is an error.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let (g, rest) = parse_edge_list_prefix(text)?;
    if let Some((line, _)) = rest.first() {
        return Err(GraphError::Parse {
            line: *line,
            msg: "unexpected content after the edge list".into(),
        });
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.u + 1, e.v + 1);
    }
    s
}

/// Options for DOT output.
#[derive(Debug, Clone, Default)]
pub struct DotStyle<'a> {
    pub name: Option<&'a str>,
    pub labels: Option<&'a [String]>,
    /// Per-edge colour attribute.
    pub edge_colors: Option<&'a [&'a str]>,
    /// Edges drawn bold.
    pub highlight: Option<&'a [usize]>,
}

pub fn to_dot(g: &Graph) -> String {
    to_dot_styled(g, &DotStyle::default())
}

pub fn to_dot_styled(g: &Graph, style: &DotStyle<'_>) -> String {
    let mut s = format!("graph {} {{\n", style.name.unwrap_or("G"));
    for v in 0..g.n() {
        match style.labels {
            Some(l) => {
                let _ = writeln!(s, "  {} [label=\"{}\"];", v + 1, l[v]);
            }
            None => {
                let _ = writeln!(s, "  {};", v + 1);
            }
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        let mut attrs = Vec::new();
        if let Some(c) = style.edge_colors {
            attrs.push(format!("color={}", c[i]));
        }
        if style.highlight.is_some_and(|h| h.contains(&i)) {
            attrs.push("penwidth=3".to_string());
        }
        if attrs.is_empty() {
            let _ = writeln!(s, "  {} -- {};", e.u + 1, e.v + 1);
        } else {
            let _ = writeln!(s, "  {} -- {} [{}];", e.u + 1, e.v + 1, attrs.join(","));
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cube;

    #[test]
    fn roundtrip_with_comments() {
        let text = "# triangle\n3 3\n1 2\n2 3 # side\n\n3 1\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn empty_graph() {
        let g = parse_edge_list("0 0\n").unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(to_edge_list(&g), "0 0\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_edge_list("2 1\n1 3\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_edge_list("2 2\n1 2\n").is_err());
        assert!(parse_edge_list("x 1\n").is_err());
    }

    #[test]
    fn dot_counts() {
        let d = to_dot(&cube());
        assert_eq!(d.matches(" -- ").count(), 12);
        assert_eq!(d.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count(), 8);
    }
}
