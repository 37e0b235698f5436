//! Text formats: graph files, certificate files and DOT export.
//!
//! Graph file:
//!
//! ```text
//! # comment lines start with '#'; blank lines are ignored
//! n 6 k 2        header: order, optionally followed by "k <k>"
//! 0 1            one edge per line, 0-based ids
//! ```
//!
//! Certificate file:
//!
//! ```text
//! base a b c
//! O1 v1 v2 u1 u2 u3
//! O2 v1 v2 v3 v4 u0 u1 u2
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{Certificate, Step};
use crate::graph::{Graph, Triangle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub k: Option<usize>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| parse_err(line, format!("expected a vertex id, found {f:?}"))))
        .collect()
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"n <order>\""))?;
    let (n, k) = match header.as_slice() {
        ["n", n] => (numbers(hline, &[n])?[0], None),
        ["n", n, "k", k] => {
            let v = numbers(hline, &[n, k])?;
            (v[0], Some(v[1]))
        }
        _ => return Err(parse_err(hline, "malformed header, expected \"n <order> [k <k>]\"")),
    };
    let mut edges = Vec::new();
    for (line, fields) in lines {
        if fields.len() != 2 {
            return Err(parse_err(line, "an edge line needs exactly two vertex ids"));
        }
        let v = numbers(line, &fields)?;
        if v[0] >= n || v[1] >= n {
            return Err(parse_err(line, format!("edge ({}, {}) has an endpoint outside 0..{n}", v[0], v[1])));
        }
        if v[0] == v[1] {
            return Err(parse_err(line, format!("self-loop at vertex {}", v[0])));
        }
        edges.push((v[0], v[1]));
    }
    Ok(GraphFile { graph: Graph::new(n, edges)?, k })
}

pub fn write_graph(g: &Graph, k: Option<usize>) -> String {
    let mut out = String::new();
    match k {
        Some(k) => writeln!(out, "n {} k {k}", g.order()).unwrap(),
        None => writeln!(out, "n {}", g.order()).unwrap(),
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut lines = content_lines(text);
    let (bline, header) = lines.next().ok_or_else(|| parse_err(1, "missing \"base a b c\" line"))?;
    let base = match header.as_slice() {
        ["base", rest @ ..] if rest.len() == 3 => {
            let v = numbers(bline, rest)?;
            if v[0] == v[1] || v[0] == v[2] || v[1] == v[2] {
                return Err(parse_err(bline, "base vertices must be distinct"));
            }
            Triangle::new(v[0], v[1], v[2])
        }
        _ => return Err(parse_err(bline, "expected \"base a b c\"")),
    };
    let mut steps = Vec::new();
    for (line, fields) in lines {
        let step = match fields.as_slice() {
            ["O1", rest @ ..] if rest.len() == 5 => {
                let v = numbers(line, rest)?;
                Step::O1 { v1: v[0], v2: v[1], u1: v[2], u2: v[3], u3: v[4] }
            }
            ["O2", rest @ ..] if rest.len() == 7 => {
                let v = numbers(line, rest)?;
                Step::O2 { v1: v[0], v2: v[1], v3: v[2], v4: v[3], u0: v[4], u1: v[5], u2: v[6] }
            }
            _ => return Err(parse_err(line, "expected \"O1\" with 5 ids or \"O2\" with 7 ids")),
        };
        steps.push(step);
    }
    Ok(Certificate { base, steps })
}

pub fn write_certificate(cert: &Certificate) -> String {
    let [a, b, c] = cert.base.vertices();
    let mut out = format!("base {a} {b} {c}\n");
    for step in &cert.steps {
        writeln!(out, "{step}").unwrap();
    }
    out
}

const RED_FILLS: [&str; 4] = ["#f4cccc", "#ea9999", "#f9cb9c", "#fce5cd"];

/// DOT rendering. Every triangle is announced by a `// red a b c` or
/// `// blue a b c` comment; red triangles share a fill colour across their
/// three vertices and their edges are drawn red, blue triangle edges blue.
pub fn to_dot(g: &Graph, red: &[Triangle], blue: &[Triangle], labels: bool) -> String {
    let n = g.order();
    let mut fill: Vec<Option<&str>> = vec![None; n];
    for (i, t) in red.iter().enumerate() {
        for v in t.vertices() {
            fill[v] = Some(RED_FILLS[i % RED_FILLS.len()]);
        }
    }
    let edge_colour = |u: usize, v: usize| {
        let inside = |t: &Triangle| t.contains(u) && t.contains(v);
        if red.iter().any(inside) {
            Some("red")
        } else if blue.iter().any(inside) {
            Some("blue")
        } else {
            None
        }
    };

    let mut out = String::from("graph G {\n");
    if labels {
        out.push_str("  node [shape=circle, style=filled, fillcolor=white];\n");
    } else {
        out.push_str("  node [shape=point, width=0.15, style=filled, fillcolor=black];\n");
    }
    for t in red {
        let [a, b, c] = t.vertices();
        writeln!(out, "  // red {a} {b} {c}").unwrap();
    }
    for t in blue {
        let [a, b, c] = t.vertices();
        writeln!(out, "  // blue {a} {b} {c}").unwrap();
    }
    for (v, colour) in fill.iter().enumerate() {
        let mut attrs = Vec::new();
        if labels {
            attrs.push(format!("label=\"{v}\""));
        }
        if let Some(c) = colour {
            attrs.push(format!("fillcolor=\"{c}\""));
        }
        if attrs.is_empty() {
            writeln!(out, "  {v};").unwrap();
        } else {
            writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        match edge_colour(u, v) {
            Some("red") => writeln!(out, "  {u} -- {v} [color=red, penwidth=2];").unwrap(),
            Some(c) => writeln!(out, "  {u} -- {v} [color={c}];").unwrap(),
            None => writeln!(out, "  {u} -- {v};").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}
