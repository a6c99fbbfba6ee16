//! Exhaustive free-tree enumeration for small `n`.
//!
//! The fast path walks canonical level sequences with the constant amortized
//! time successor rule of Wright, Richmond, Odlyzko and McKay: start from the
//! path rooted at its center and repeatedly jump to the next level sequence
//! that is the canonical encoding of a free tree rooted at its center. A slow
//! generator (grow every tree by one leaf, dedup by canonical code) is kept to
//! cross-check it.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::canon::canonical_code;
use crate::error::{Error, Result};
use crate::spectrum::IntervalReport;
use crate::tree::Tree;
use crate::wiener::{wiener, WienerValue};

/// Hard cap on exhaustive enumeration.
pub const MAX_N: usize = 22;
/// Cap for the slow dedup enumerator.
pub const SLOW_MAX_N: usize = 12;

/// Level sequence of a rooted tree in preorder, root at level 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSequence(Vec<u32>);

impl LevelSequence {
    pub fn levels(&self) -> &[u32] {
        &self.0
    }

    /// Parent of every vertex (`usize::MAX` for the root).
    pub fn parents(&self) -> Vec<usize> {
        let mut last_at_level: Vec<usize> = Vec::new();
        let mut parent = Vec::with_capacity(self.0.len());
        for (i, &lvl) in self.0.iter().enumerate() {
            let lvl = lvl as usize;
            parent.push(if lvl == 0 {
                usize::MAX
            } else {
                last_at_level[lvl - 1]
            });
            last_at_level.truncate(lvl);
            last_at_level.push(i);
        }
        parent
    }

    pub fn to_tree(&self) -> Tree {
        let parent = self.parents();
        Tree::new(self.0.len(), (1..self.0.len()).map(|v| (parent[v], v)))
            .expect("level sequence encodes a tree")
    }

    /// Wiener index straight from the parent array.
    pub fn wiener(&self) -> WienerValue {
        let n = self.0.len();
        let parent = self.parents();
        let mut size = vec![1u64; n];
        let mut total = 0;
        for v in (1..n).rev() {
            total += size[v] * (n as u64 - size[v]);
            size[parent[v]] += size[v];
        }
        total
    }
}

/// Iterator over all free trees on `n` vertices, one level sequence each.
pub struct FreeTrees {
    next: Option<Vec<u32>>,
    single: bool,
}

impl FreeTrees {
    pub fn new(n: usize) -> Result<FreeTrees> {
        check_n(n)?;
        if n == 1 {
            return Ok(FreeTrees {
                next: Some(vec![0]),
                single: true,
            });
        }
        // path rooted at its center
        let mut start: Vec<u32> = (0..=(n / 2) as u32).collect();
        start.extend(1..n.div_ceil(2) as u32);
        Ok(FreeTrees {
            next: next_free(start),
            single: false,
        })
    }
}

impl Iterator for FreeTrees {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        let current = self.next.take()?;
        if !self.single {
            self.next = next_rooted(&current, None).and_then(next_free);
        }
        Some(LevelSequence(current))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_N {
        return Err(Error::TooLarge { n, cap: MAX_N });
    }
    Ok(())
}

/// Splits off the first subtree of the root: its levels shifted down by one,
/// and the remainder with the root kept.
fn split(seq: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let m = seq
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map(|(i, _)| i)
        .unwrap_or(seq.len());
    let left = seq[1..m].iter().map(|&l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&seq[m..]);
    (left, rest)
}

/// Next rooted level sequence; `p` overrides the position to increment.
fn next_rooted(seq: &[u32], p: Option<usize>) -> Option<Vec<u32>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = seq.len() - 1;
            while seq[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while seq[q] != seq[p] - 1 {
        q -= 1;
    }
    let mut out = seq.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Returns `candidate` if it is the canonical sequence of a free tree,
/// otherwise jumps ahead to the next one that is.
fn next_free(candidate: Vec<u32>) -> Option<Vec<u32>> {
    let (left, rest) = split(&candidate);
    let left_height = left.iter().max().copied().unwrap_or(0);
    let rest_height = rest.iter().max().copied().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid
        && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
    {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut jumped = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&jumped);
        let h = new_left.iter().max().copied().unwrap_or(0);
        let len = jumped.len();
        let suffix: Vec<u32> = (1..=h + 1).collect();
        jumped[len - suffix.len()..].copy_from_slice(&suffix);
    }
    Some(jumped)
}

/// Visits every free tree on `n` vertices once; returns the count.
pub fn enumerate_trees<F>(n: usize, mut visitor: F) -> Result<u64>
where
    F: FnMut(&Tree),
{
    let mut count = 0;
    for seq in FreeTrees::new(n)? {
        visitor(&seq.to_tree());
        count += 1;
    }
    Ok(count)
}

/// All free trees on `n` vertices by growing every tree on `n - 1` vertices
/// by one leaf and deduplicating by canonical code. Sorted by code.
pub fn enumerate_trees_slow(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > SLOW_MAX_N {
        return Err(Error::TooLarge { n, cap: SLOW_MAX_N });
    }
    let mut level: BTreeMap<_, Tree> = BTreeMap::new();
    let p1 = Tree::path(1)?;
    level.insert(canonical_code(&p1), p1);
    for size in 2..=n {
        let mut grown = BTreeMap::new();
        for tree in level.values() {
            for v in 0..tree.n() {
                let edges = tree.edges().iter().copied().chain([(v, size - 1)]);
                let t = Tree::new(size, edges)?;
                grown.entry(canonical_code(&t)).or_insert(t);
            }
        }
        level = grown;
    }
    Ok(level.into_values().collect())
}

/// Exact set of Wiener values over all trees on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSpectrum {
    pub n: usize,
    pub values: Vec<WienerValue>,
    pub tree_count: u64,
    pub min: WienerValue,
    pub max: WienerValue,
}

impl ExactSpectrum {
    /// One value per line, ascending, after a `#` summary header.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "# n={} trees={} count={} min={} max={}\n",
            self.n,
            self.tree_count,
            self.values.len(),
            self.min,
            self.max
        );
        for v in &self.values {
            writeln!(out, "{v}").unwrap();
        }
        out
    }
}

pub fn exact_spectrum(n: usize) -> Result<ExactSpectrum> {
    let mut values = Vec::new();
    let mut tree_count = 0;
    for seq in FreeTrees::new(n)? {
        values.push(seq.wiener());
        tree_count += 1;
    }
    values.sort_unstable();
    values.dedup();
    Ok(ExactSpectrum {
        n,
        min: values[0],
        max: *values.last().unwrap(),
        values,
        tree_count,
    })
}

/// Largest contiguous run of the exact spectrum (step 2 for odd `n`).
pub fn exact_interval(n: usize) -> Result<IntervalReport> {
    let spec = exact_spectrum(n)?;
    IntervalReport::from_values(n, &spec.values, None, 0)
}

/// First enumerated tree with Wiener index `w`, if any.
pub fn find_tree(n: usize, w: WienerValue) -> Result<Option<Tree>> {
    for seq in FreeTrees::new(n)? {
        if seq.wiener() == w {
            let tree = seq.to_tree();
            debug_assert_eq!(wiener(&tree).ok(), Some(w));
            return Ok(Some(tree));
        }
    }
    Ok(None)
}
