//! Center-rooted AHU encoding for free-tree isomorphism.

use std::fmt;

use crate::tree::{Tree, Vertex};
use crate::wiener::{bfs_distances, dfs_order};

/// Balanced-parenthesis code (`1` = open, `0` = close) of a tree rooted at
/// its center. Two trees have equal codes iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bits(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "(" } else { ")" })?;
        }
        Ok(())
    }
}

pub fn canonical_code(tree: &Tree) -> CanonicalCode {
    centers(tree)
        .into_iter()
        .map(|c| CanonicalCode(rooted_code(tree, c)))
        .min()
        .expect("a tree has at least one center")
}

/// The one or two vertices minimizing eccentricity.
pub fn centers(tree: &Tree) -> Vec<Vertex> {
    // double sweep: the middle of a longest path
    let far = |src: Vertex| {
        let d = bfs_distances(tree, src);
        let (v, _) = d.iter().enumerate().max_by_key(|&(_, &x)| x).unwrap();
        (v, d)
    };
    let (a, _) = far(0);
    let (b, from_a) = far(a);
    let diameter = from_a[b];
    let from_b = bfs_distances(tree, b);
    (0..tree.n())
        .filter(|&v| {
            from_a[v] + from_b[v] == diameter
                && (from_a[v] == diameter / 2 || from_a[v] == diameter.div_ceil(2))
        })
        .collect()
}

/// AHU code of `tree` rooted at `root`: children's codes sorted, wrapped in
/// a parenthesis pair.
pub fn rooted_code(tree: &Tree, root: Vertex) -> Vec<u8> {
    let (order, parent) = dfs_order(tree, root);
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); tree.n()];
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); tree.n()];
    for &v in &order {
        if parent[v] != usize::MAX {
            children[parent[v]].push(v);
        }
    }
    for &v in order.iter().rev() {
        let mut kids: Vec<Vec<u8>> = children[v]
            .iter()
            .map(|&c| std::mem::take(&mut codes[c]))
            .collect();
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(1);
        for k in kids {
            code.extend(k);
        }
        code.push(0);
        codes[v] = code;
    }
    std::mem::take(&mut codes[root])
}
