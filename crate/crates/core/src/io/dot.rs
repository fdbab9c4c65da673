use std::fmt::Write;

use crate::model::Structure;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph with one node statement per variable and one edge per arc.
pub fn to_dot(s: &Structure, graph_name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(graph_name));
    for v in s.variables() {
        let _ = writeln!(out, "  {};", quote(v.name()));
    }
    for (p, c) in s.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote(s.variable(p).name()),
            quote(s.variable(c).name())
        );
    }
    out.push_str("}\n");
    out
}

fn unquote(s: &str) -> String {
    let s = s.trim().trim_end_matches(';').trim();
    let inner = s
        .strip_prefix('"')
        .and_then(|x| x.strip_suffix('"'))
        .unwrap_or(s);
    inner.replace("\\\"", "\"").replace("\\\\", "\\")
}

/// Edge list `(parent, child)` of a digraph in the form written by [`to_dot`].
pub fn parse_dot_edges(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|line| {
            let (a, b) = line.split_once("->")?;
            Some((unquote(a), unquote(b)))
        })
        .collect()
}
