//! Immutable labeled trees.
//!
//! Vertices are dense `0..n` labels. Edges are stored normalized (`u < v`) and
//! sorted, so two trees built from the same edge set compare equal and
//! serialize identically regardless of input order.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    offsets: Vec<usize>,
    adjacency: Vec<Vertex>,
}

/// Degree, leaf and petal flags for every vertex of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexProfile {
    pub degree: Vec<usize>,
    pub is_leaf: Vec<bool>,
    pub is_petal: Vec<bool>,
}

impl Tree {
    /// Validates an edge list and builds the tree.
    pub fn new<I>(n: usize, edges: I) -> Result<Tree>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut normalized = Vec::with_capacity(n - 1);
        for (u, v) in edges {
            for label in [u, v] {
                if label >= n {
                    return Err(Error::LabelOutOfRange { n, label });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        if normalized.len() != n - 1 {
            return Err(Error::WrongEdgeCount {
                n,
                expected: n - 1,
                got: normalized.len(),
            });
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let tree = Tree::from_sorted_edges(n, normalized);
        if !tree.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(tree)
    }

    fn from_sorted_edges(n: usize, edges: Vec<(Vertex, Vertex)>) -> Tree {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0; offsets[n]];
        for &(u, v) in &edges {
            adjacency[fill[u]] = v;
            fill[u] += 1;
            adjacency[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Tree {
            n,
            edges,
            offsets,
            adjacency,
        }
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Tree> {
        Tree::new(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Star with center `0`.
    pub fn star(n: usize) -> Result<Tree> {
        Tree::new(n, (1..n).map(|v| (0, v)))
    }

    /// Uniformly random labeled tree on `n` vertices, decoded from a random
    /// Prüfer sequence.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tree> {
        if n <= 2 {
            return Tree::path(n);
        }
        let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        Tree::new(n, prufer_decode(n, &code))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, normalized edges.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending label order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| self.is_leaf(v))
    }

    pub fn profile(&self) -> VertexProfile {
        let degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let is_leaf: Vec<bool> = degree.iter().map(|&d| d == 1).collect();
        let is_petal = (0..self.n)
            .map(|v| self.neighbors(v).iter().any(|&w| is_leaf[w]))
            .collect();
        VertexProfile {
            degree,
            is_leaf,
            is_petal,
        }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Tree> {
        let distinct: HashSet<_> = perm.iter().copied().collect();
        if perm.len() != self.n || distinct.len() != self.n {
            return Err(Error::InvalidSpec("relabeling is not a permutation".into()));
        }
        Tree::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Interior (non-leaf) vertices ordered along the path they induce, or
    /// `None` if they do not induce a path. Oriented so the first vertex has
    /// the smaller label. Trees with at most two vertices have no interior.
    pub fn interior_path(&self) -> Option<Vec<Vertex>> {
        if self.n <= 2 {
            return Some(Vec::new());
        }
        let interior: Vec<Vertex> = (0..self.n).filter(|&v| !self.is_leaf(v)).collect();
        let is_interior = |v: Vertex| !self.is_leaf(v);
        let interior_degree = |v: Vertex| {
            self.neighbors(v)
                .iter()
                .filter(|&&w| is_interior(w))
                .count()
        };
        if interior.len() == 1 {
            return Some(interior);
        }
        let mut ends = interior
            .iter()
            .copied()
            .filter(|&v| interior_degree(v) == 1);
        let start = ends.next()?;
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&w| w != prev && is_interior(w))
                .collect::<Vec<_>>();
            match next.as_slice() {
                [] => break,
                [w] => {
                    prev = cur;
                    cur = *w;
                    path.push(cur);
                }
                _ => return None,
            }
        }
        if path.len() != interior.len() {
            return None;
        }
        if path[0] > path[path.len() - 1] {
            path.reverse();
        }
        Some(path)
    }

    pub fn is_caterpillar(&self) -> bool {
        self.interior_path().is_some()
    }
}

fn prufer_decode(n: usize, code: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<Vertex>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("prufer leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(std::cmp::Reverse(c));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("prufer tail");
    let std::cmp::Reverse(b) = leaves.pop().expect("prufer tail");
    edges.push((a, b));
    edges
}
