//! Plain-text graph format.
//!
//! ```text
//! 4
//! 0 1
//! 1 2
//! label 3 red
//! ```
//!
//! The first line is the vertex count, then one `u v` line per edge
//! (0-based, `u < v`), then optional `label v NAME` lines. The writer emits
//! edges and labels in sorted order, so reading and writing canonical text is
//! the identity. Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for (v, names) in g.label_map() {
        for name in names {
            writeln!(out, "label {v} {name}").unwrap();
        }
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(first, format!("expected vertex count, found `{header}`")))?;
    let mut g = Graph::new(n);
    let mut seen = BTreeSet::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["label", v, name] => {
                let v: usize = v
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad vertex `{v}`")))?;
                g.add_label(v, name)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
            }
            [u, v] => {
                let u: usize = u
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad vertex `{u}`")))?;
                let v: usize = v
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad vertex `{v}`")))?;
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
                }
                g.add_edge(u, v)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
            }
            _ => return Err(parse_err(lineno, format!("unrecognised line `{line}`"))),
        }
    }
    Ok(g)
}
