//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n 4
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! Edges are emitted sorted lexicographically with the smaller label first.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::tree::Tree;

pub fn to_edge_list(tree: &Tree) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", tree.n()).unwrap();
    for &(u, v) in tree.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Tree> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["n", count]) => {
                n = Some(count.parse().map_err(|_| parse_err("bad vertex count"))?);
            }
            (None, _) => return Err(parse_err("expected header `n <N>`")),
            (Some(_), [u, v]) => {
                let u = u.parse().map_err(|_| parse_err("bad vertex label"))?;
                let v = v.parse().map_err(|_| parse_err("bad vertex label"))?;
                edges.push((u, v));
            }
            (Some(_), _) => return Err(parse_err("expected `<u> <v>`")),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing header `n <N>`".into(),
    })?;
    Tree::new(n, edges)
}
