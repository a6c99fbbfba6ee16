//! Wiener index and distance sums.
//!
//! [`wiener`] is the production path: every edge contributes the product of
//! the two component sizes left after deleting it. [`wiener_reference`] sums
//! breadth-first distances over all pairs and is kept as an independent check.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::tree::{Tree, Vertex};

pub type WienerValue = u64;

/// Wiener index by edge contributions, `O(n)`.
pub fn wiener(tree: &Tree) -> Result<WienerValue> {
    let n = tree.n();
    let (order, parent) = dfs_order(tree, 0);
    let mut size = vec![1u64; n];
    let mut total: u64 = 0;
    for &v in order.iter().rev() {
        let p = parent[v];
        if p == usize::MAX {
            continue;
        }
        size[p] += size[v];
        let contribution = size[v]
            .checked_mul(n as u64 - size[v])
            .ok_or(Error::Overflow("wiener"))?;
        total = total
            .checked_add(contribution)
            .ok_or(Error::Overflow("wiener"))?;
    }
    Ok(total)
}

/// Wiener index as the literal sum of all pairwise BFS distances, `O(n^2)`.
pub fn wiener_reference(tree: &Tree) -> Result<WienerValue> {
    let mut total: u64 = 0;
    for u in 0..tree.n() {
        let dist = bfs_distances(tree, u);
        for &d in &dist[u + 1..] {
            total = total
                .checked_add(d as u64)
                .ok_or(Error::Overflow("wiener_reference"))?;
        }
    }
    Ok(total)
}

/// Sum of distances from `u` to every vertex of `set`.
pub fn distance_sum(tree: &Tree, u: Vertex, set: &[Vertex]) -> Result<u64> {
    let n = tree.n();
    if let Some(&bad) = std::iter::once(&u).chain(set).find(|&&v| v >= n) {
        return Err(Error::LabelOutOfRange { n, label: bad });
    }
    let dist = bfs_distances(tree, u);
    set.iter().try_fold(0u64, |acc, &v| {
        acc.checked_add(dist[v] as u64)
            .ok_or(Error::Overflow("distance_sum"))
    })
}

/// Distances from `source` to every vertex.
pub fn bfs_distances(tree: &Tree, source: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; tree.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in tree.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Preorder from `root` and the parent of every vertex (`usize::MAX` at the root).
pub(crate) fn dfs_order(tree: &Tree, root: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let n = tree.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in tree.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    (order, parent)
}

/// `W(P_n) = C(n+1, 3)`.
pub fn path_wiener(n: u64) -> Result<WienerValue> {
    // (n+1) n (n-1) / 6, dividing early to stay in range
    let (a, b, c) = (n + 1, n, n.saturating_sub(1));
    let mut factors = [a, b, c];
    for div in [2u64, 3] {
        if let Some(f) = factors.iter_mut().find(|f| **f % div == 0) {
            *f /= div;
        }
    }
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .ok_or(Error::Overflow("path_wiener"))
}

/// `W(S_n) = (n-1)^2`.
pub fn star_wiener(n: u64) -> Result<WienerValue> {
    let m = n.saturating_sub(1);
    m.checked_mul(m).ok_or(Error::Overflow("star_wiener"))
}
