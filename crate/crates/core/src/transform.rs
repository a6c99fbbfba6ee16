//! The +4 leaf move and its repeated scheduling.
//!
//! A move takes a path vertex `u` with at least two leaf neighbors and exactly
//! two non-leaf neighbors `w1 < w2`, and hands one leaf to each of them. Only
//! the two moved leaves change their distances, and the Wiener index grows by
//! exactly 4.
//!
//! Along the interior path the leaf counts behave like a sandpile with
//! threshold 2: a vertex holding two or more leaves fires, sending one leaf to
//! each path neighbor. Moves are confined to a window of `2k - 1` consecutive
//! path vertices around a seed; the two vertices just outside the window only
//! absorb. A clean window (two leaves on the seed, one on every other window
//! vertex) stabilizes after exactly `k^2` moves.

use rand::Rng;
use serde::Serialize;

use crate::caterpillar::{layout, CaterpillarLayout, CaterpillarSpec, Family};
use crate::error::{Error, Result};
use crate::tree::{Tree, Vertex};
use crate::wiener::{wiener, WienerValue};

/// Leaf counts along the interior path of a caterpillar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafProfile {
    /// Interior path, oriented so its first vertex has the smaller label.
    pub path: Vec<Vertex>,
    /// `counts[i]` is the number of leaf neighbors of `path[i]`.
    pub counts: Vec<usize>,
}

impl LeafProfile {
    pub fn of(tree: &Tree) -> Result<LeafProfile> {
        let path = tree.interior_path().ok_or(Error::NotCaterpillar)?;
        let counts = path
            .iter()
            .map(|&v| {
                tree.neighbors(v)
                    .iter()
                    .filter(|&&w| tree.is_leaf(w))
                    .count()
            })
            .collect();
        Ok(LeafProfile { path, counts })
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.path.iter().position(|&p| p == v)
    }
}

/// Window of path vertices `center ± (halfwidth - 1)`, identified by the
/// tree label of its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ToppleWindow {
    pub center: Vertex,
    pub halfwidth: usize,
}

/// The arithmetic progression `base_w + 4t`, `0 <= t <= count`, realized by
/// scheduling moves on `witness`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub base_w: WienerValue,
    pub step: u64,
    pub count: u64,
    pub witness: CaterpillarSpec,
}

impl Progression {
    pub fn last(&self) -> WienerValue {
        self.base_w + self.step * self.count
    }

    /// Step index `t` reaching `w`, if `w` lies on the progression.
    pub fn index_of(&self, w: WienerValue) -> Option<u64> {
        if w < self.base_w || !(w - self.base_w).is_multiple_of(self.step) {
            return None;
        }
        let t = (w - self.base_w) / self.step;
        (t <= self.count).then_some(t)
    }
}

/// Window positions on the interior path, as an inclusive index range.
fn window_range(profile: &LeafProfile, window: ToppleWindow) -> Result<Option<(usize, usize)>> {
    if window.halfwidth == 0 {
        return Ok(None);
    }
    let c = profile
        .position(window.center)
        .ok_or_else(|| Error::BadWindow(format!("vertex {} is not interior", window.center)))?;
    let r = window.halfwidth - 1;
    if c < r || c + r >= profile.path.len() {
        return Err(Error::BadWindow(format!(
            "halfwidth {} around position {c} leaves a path of {} vertices",
            window.halfwidth,
            profile.path.len()
        )));
    }
    Ok(Some((c - r, c + r)))
}

fn non_leaf_neighbors(tree: &Tree, u: Vertex) -> Vec<Vertex> {
    tree.neighbors(u)
        .iter()
        .copied()
        .filter(|&w| !tree.is_leaf(w))
        .collect()
}

fn leaf_neighbors(tree: &Tree, u: Vertex) -> Vec<Vertex> {
    tree.neighbors(u)
        .iter()
        .copied()
        .filter(|&w| tree.is_leaf(w))
        .collect()
}

pub fn is_eligible(tree: &Tree, u: Vertex) -> bool {
    u < tree.n() && leaf_neighbors(tree, u).len() >= 2 && non_leaf_neighbors(tree, u).len() == 2
}

/// Window vertices that admit a move, in path order.
pub fn eligible(tree: &Tree, window: ToppleWindow) -> Result<Vec<Vertex>> {
    let profile = LeafProfile::of(tree)?;
    let Some((lo, hi)) = window_range(&profile, window)? else {
        return Ok(Vec::new());
    };
    Ok(profile.path[lo..=hi]
        .iter()
        .copied()
        .filter(|&u| is_eligible(tree, u))
        .collect())
}

/// One move at `u`: its two smallest-labeled leaves go to its non-leaf
/// neighbors, the smaller leaf to the smaller neighbor.
///
/// The Wiener index rises by `2c`, where `c` is the number of leaves on `u`
/// before the move; that is `+4` exactly when `u` has two leaves.
pub fn apply_move(tree: &Tree, u: Vertex) -> Result<Tree> {
    if !is_eligible(tree, u) {
        return Err(Error::Ineligible(u));
    }
    let leaves = leaf_neighbors(tree, u);
    let targets = non_leaf_neighbors(tree, u);
    let (l1, l2) = (leaves[0], leaves[1]);
    let (w1, w2) = (targets[0], targets[1]);
    let edges = tree.edges().iter().map(|&(a, b)| {
        let e = (a.min(b), a.max(b));
        if e == (u.min(l1), u.max(l1)) {
            (w1, l1)
        } else if e == (u.min(l2), u.max(l2)) {
            (w2, l2)
        } else {
            e
        }
    });
    Tree::new(tree.n(), edges)
}

/// Moves at canonical positions on a caterpillar layout.
///
/// The canonical order fires the eligible window vertex closest to the seed,
/// ties broken toward the left.
#[derive(Clone, Debug)]
pub struct Scheduler {
    layout: CaterpillarLayout,
    center: i64,
    lo: i64,
    hi: i64,
    steps: u64,
}

impl Scheduler {
    pub fn new(spec: &CaterpillarSpec) -> Result<Scheduler> {
        let layout = layout(spec)?;
        let k = spec.k_usable();
        let center = spec.s.unwrap_or(0);
        // an empty range when k <= 0
        let (lo, hi) = (center - (k - 1), center + (k - 1));
        Ok(Scheduler {
            layout,
            center,
            lo,
            hi,
            steps: 0,
        })
    }

    pub fn layout(&self) -> &CaterpillarLayout {
        &self.layout
    }

    pub fn tree(&self) -> Tree {
        self.layout.to_tree()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Window positions `j` (relative to `u_0`) currently able to fire.
    pub fn eligible_positions(&self) -> Vec<i64> {
        (self.lo..=self.hi)
            .filter(|&j| self.layout.leaf_count(j) >= 2)
            .collect()
    }

    fn canonical_choice(&self) -> Option<i64> {
        self.eligible_positions()
            .into_iter()
            .min_by_key(|&j| ((j - self.center).abs(), j))
    }

    /// Fires position `j`. Returns the spine vertex that moved its leaves.
    pub fn fire(&mut self, j: i64) -> Result<Vertex> {
        let u = self.layout.spine(j);
        if j < self.lo || j > self.hi || self.layout.leaves[u].len() < 2 {
            return Err(Error::Ineligible(u));
        }
        let leaves = &mut self.layout.leaves[u];
        leaves.sort_unstable();
        let l1 = leaves.remove(0);
        let l2 = leaves.remove(0);
        for (target, leaf) in [(u - 1, l1), (u + 1, l2)] {
            let ls = &mut self.layout.leaves[target];
            ls.push(leaf);
            ls.sort_unstable();
        }
        self.steps += 1;
        Ok(u)
    }

    /// Performs the next canonical move, or returns `None` once stable.
    pub fn step(&mut self) -> Option<Vertex> {
        let j = self.canonical_choice()?;
        Some(self.fire(j).expect("canonical choice is eligible"))
    }

    /// Runs canonical moves until stable and returns the total.
    pub fn run_to_end(&mut self) -> u64 {
        while self.step().is_some() {}
        self.steps
    }

    /// Runs to the end firing a uniformly random eligible position each time.
    pub fn run_random<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u64 {
        loop {
            let ready = self.eligible_positions();
            if ready.is_empty() {
                return self.steps;
            }
            let j = ready[rng.gen_range(0..ready.len())];
            self.fire(j).expect("eligible position");
        }
    }
}

/// Tree after `t` canonical moves on `construct(spec)`.
pub fn schedule(spec: &CaterpillarSpec, t: u64) -> Result<Tree> {
    let mut sched = Scheduler::new(spec)?;
    for done in 0..t {
        if sched.step().is_none() {
            debug_assert_eq!(done, sched.steps());
            return Err(Error::TooManySteps {
                requested: t,
                max: sched.steps(),
            });
        }
    }
    Ok(sched.tree())
}

/// Number of moves before the window of `spec` stabilizes.
pub fn max_steps(spec: &CaterpillarSpec) -> Result<u64> {
    let mut sched = Scheduler::new(spec)?;
    // order does not change the total; a worklist avoids rescanning
    let mut pending: Vec<i64> = sched.eligible_positions();
    while let Some(j) = pending.pop() {
        if sched.layout.leaf_count(j) < 2 {
            continue;
        }
        sched.fire(j)?;
        for p in [j - 1, j, j + 1] {
            if p >= sched.lo && p <= sched.hi && sched.layout.leaf_count(p) >= 2 {
                pending.push(p);
            }
        }
    }
    Ok(sched.steps())
}

/// Window half-width stated for each G family, `None` for B1/B2.
pub fn lemma_k(spec: &CaterpillarSpec) -> Option<i64> {
    let (n, d) = (spec.n as i64, spec.d as i64);
    match spec.family {
        Family::B1 | Family::B2 => None,
        Family::G1 => Some(n / 2 - d - 4),
        Family::G2 => Some(d - 3),
        Family::G3 => Some((n - 2 * d - 5) / 2),
        Family::G4 => Some(d - 2),
    }
}

pub fn progression(spec: &CaterpillarSpec) -> Result<Progression> {
    let base_w = wiener(&crate::caterpillar::construct(spec)?)?;
    let count = max_steps(spec)?;
    Ok(Progression {
        base_w,
        step: 4,
        count,
        witness: *spec,
    })
}

/// Walks the full canonical schedule recomputing the Wiener index after
/// every move; fails on the first move whose increment is not +4.
pub fn verify_schedule(spec: &CaterpillarSpec) -> Result<u64> {
    let mut sched = Scheduler::new(spec)?;
    let mut w = wiener(&sched.tree())?;
    while let Some(u) = sched.step() {
        let next = wiener(&sched.tree())?;
        let delta = next as i128 - w as i128;
        if delta != 4 {
            return Err(Error::MoveInvariant { vertex: u, delta });
        }
        w = next;
    }
    Ok(sched.steps())
}

/// Caterpillar with a clean window of half-width `k`: path `v_0 .. v_{2k}`,
/// one leaf on each of `v_1 .. v_{2k-1}`, a second leaf on the middle vertex
/// `v_k`, and one leaf on each path end so the absorbing vertices stay
/// interior. The window is centered on `v_k`.
pub fn clean_window_tree(k: usize) -> Result<(Tree, ToppleWindow)> {
    if k == 0 {
        return Err(Error::BadWindow("half-width must be positive".into()));
    }
    let path_len = 2 * k + 1;
    let mut edges: Vec<(Vertex, Vertex)> = (1..path_len).map(|v| (v - 1, v)).collect();
    let mut next = path_len;
    let mut attach = |v: Vertex| {
        edges.push((v, next));
        next += 1;
    };
    for v in 0..path_len {
        attach(v);
    }
    attach(k);
    let tree = Tree::new(next, edges)?;
    Ok((
        tree,
        ToppleWindow {
            center: k,
            halfwidth: k,
        },
    ))
}

/// Repeatedly applies [`apply_move`] inside `window` until no vertex is
/// eligible, choosing among eligible vertices with `pick`. Returns the number
/// of moves and the final tree.
pub fn stabilize<F>(tree: &Tree, window: ToppleWindow, mut pick: F) -> Result<(u64, Tree)>
where
    F: FnMut(&[Vertex]) -> usize,
{
    let mut current = tree.clone();
    let mut moves = 0;
    loop {
        let ready = eligible(&current, window)?;
        if ready.is_empty() {
            return Ok((moves, current));
        }
        let u = ready[pick(&ready)];
        current = apply_move(&current, u)?;
        moves += 1;
    }
}
