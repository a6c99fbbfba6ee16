//! Constructively reachable Wiener values for a fixed vertex count.
//!
//! The index enumerates every admissible `G1`/`G2` spec (even `n`) or
//! `G3`/`G4` spec (odd `n`), records the progression each one generates under
//! leaf moves, and stores membership as a bitmap over `[W(S_n), W(P_n)]`.

use serde::Serialize;

use crate::caterpillar::{param_domain, CaterpillarSpec, Family};
use crate::error::{Error, Result};
use crate::exact::{ceil_affine_sqrt, floor_affine_sqrt};
use crate::oracle;
use crate::transform::{progression, schedule, Progression};
use crate::tree::Tree;
use crate::wiener::{path_wiener, star_wiener, wiener, WienerValue};

/// Smallest `n` for which the even-`n` families exist.
pub const MIN_EVEN_N: usize = 20;
/// Smallest `n` for which the odd-`n` families exist.
pub const MIN_ODD_N: usize = 19;
/// Largest `n` answered by exhaustive lookup instead of the index.
pub const ORACLE_SOLVE_MAX_N: usize = 16;

/// Integer versions of the `d`/`x` thresholds quoted for the main interval
/// theorems. Thresholds with square roots are rounded exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "parity", rename_all = "lowercase")]
pub enum ParameterBounds {
    Even {
        n: usize,
        /// `⌈(n-4)/4⌉`
        d1_min: i64,
        /// `⌊(n - √(2n-8) - 8) / 2⌋`
        d1_max: i64,
        /// `⌈(√(2n-8) + 6) / 2⌉`
        d2_min: i64,
        /// `⌊(n-2)/4⌋`
        d2_max: i64,
        /// `((n-2) - 4·d2_min + 2) / 2`
        x2_max: i64,
        /// `⌊(n - √(n+3) - 6) / 2⌋`
        g1_step_d: i64,
        /// `⌈(√(n+3) + 8) / 2⌉`
        g2_step_d: i64,
    },
    Odd {
        n: usize,
        /// `⌈(n-3)/4⌉`
        d3_min: i64,
        /// `⌊(n - √(2n-6) - 5) / 2⌋`
        d3_max: i64,
        /// `⌈(√(2n-6) + 4) / 2⌉`
        d4_min: i64,
        /// `⌊(n-1)/4⌋`
        d4_max: i64,
        /// `((n-1) - 4·d4_min + 2) / 2`
        x4_max: i64,
    },
}

impl ParameterBounds {
    pub fn n(&self) -> usize {
        match *self {
            ParameterBounds::Even { n, .. } | ParameterBounds::Odd { n, .. } => n,
        }
    }

    /// Endpoint trees of the claimed interval: `G2(n, d2_min, x2_max, -1)`
    /// and `G1(n, d1_max, 1, 1)` for even `n`; `G4(n, d4_min, x4_max, 0)`
    /// and `G3(n, d3_max, 1, 1)` for odd `n`.
    pub fn claimed_endpoints(&self) -> (CaterpillarSpec, CaterpillarSpec) {
        let spec = |f, n, d: i64, x: i64, s| {
            CaterpillarSpec::seeded(f, n, d.max(0) as usize, x.max(0) as usize, s)
        };
        match *self {
            ParameterBounds::Even {
                n,
                d1_max,
                d2_min,
                x2_max,
                ..
            } => (
                spec(Family::G2, n, d2_min, x2_max, -1),
                spec(Family::G1, n, d1_max, 1, 1),
            ),
            ParameterBounds::Odd {
                n,
                d3_max,
                d4_min,
                x4_max,
                ..
            } => (
                spec(Family::G4, n, d4_min, x4_max, 0),
                spec(Family::G3, n, d3_max, 1, 1),
            ),
        }
    }
}

pub fn bounds(n: usize) -> Result<ParameterBounds> {
    let min = if n.is_multiple_of(2) {
        MIN_EVEN_N
    } else {
        MIN_ODD_N
    };
    if n < min {
        return Err(Error::TooSmall {
            what: "parameter bounds".into(),
            n,
            min,
        });
    }
    let ni = n as i64;
    let nu = n as u64;
    Ok(if n.is_multiple_of(2) {
        let d2_min = ceil_affine_sqrt(6, 1, 2 * nu - 8, 2);
        ParameterBounds::Even {
            n,
            d1_min: (ni - 4 + 3).div_euclid(4),
            d1_max: floor_affine_sqrt(ni - 8, -1, 2 * nu - 8, 2),
            d2_min,
            d2_max: (ni - 2).div_euclid(4),
            x2_max: ((ni - 2) - 4 * d2_min + 2).div_euclid(2),
            g1_step_d: floor_affine_sqrt(ni - 6, -1, nu + 3, 2),
            g2_step_d: ceil_affine_sqrt(8, 1, nu + 3, 2),
        }
    } else {
        let d4_min = ceil_affine_sqrt(4, 1, 2 * nu - 6, 2);
        ParameterBounds::Odd {
            n,
            d3_min: (ni - 3 + 3).div_euclid(4),
            d3_max: floor_affine_sqrt(ni - 5, -1, 2 * nu - 6, 2),
            d4_min,
            d4_max: (ni - 1).div_euclid(4),
            x4_max: ((ni - 1) - 4 * d4_min + 2).div_euclid(2),
        }
    })
}

/// Step between consecutive admissible Wiener values: 2 for odd `n` (all
/// values are even), 1 otherwise.
pub fn parity_step(n: usize) -> u64 {
    if n % 2 == 1 && n >= 3 {
        2
    } else {
        1
    }
}

/// Fixed-range membership bitmap over `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueBitmap {
    lo: u64,
    hi: u64,
    words: Vec<u64>,
}

impl ValueBitmap {
    pub fn new(lo: u64, hi: u64) -> ValueBitmap {
        let len = (hi - lo + 1) as usize;
        ValueBitmap {
            lo,
            hi,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, v: u64) {
        assert!(
            v >= self.lo && v <= self.hi,
            "{v} outside [{}, {}]",
            self.lo,
            self.hi
        );
        let i = (v - self.lo) as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, v: u64) -> bool {
        if v < self.lo || v > self.hi {
            return false;
        }
        let i = (v - self.lo) as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Merges another bitmap over the same range.
    pub fn union_with(&mut self, other: &ValueBitmap) {
        assert_eq!((self.lo, self.hi), (other.lo, other.hi));
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (self.lo..=self.hi).filter(move |&v| self.contains(v))
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumIndex {
    pub n: usize,
    pub parity_step: u64,
    /// Sorted by `base_w`, then by witness.
    pub progressions: Vec<Progression>,
    pub members: ValueBitmap,
}

/// Longest run `lo, lo+step, ..., hi` among `values` (sorted, deduplicated),
/// ties going to the smallest start.
pub fn longest_run(values: &[u64], step: u64) -> Option<(u64, u64)> {
    let mut best: Option<(u64, u64)> = None;
    for residue in 0..step {
        let mut run: Option<(u64, u64)> = None;
        for &v in values.iter().filter(|&&v| v % step == residue) {
            run = match run {
                Some((lo, hi)) if v == hi + step => Some((lo, v)),
                _ => Some((v, v)),
            };
            let (lo, hi) = run.unwrap();
            let better = match best {
                None => true,
                Some((blo, bhi)) => hi - lo > bhi - blo || (hi - lo == bhi - blo && lo < blo),
            };
            if better {
                best = Some((lo, hi));
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalReport {
    pub n: usize,
    pub parity_step: u64,
    pub measured_lo: u64,
    pub measured_hi: u64,
    /// Number of values in the measured run.
    pub run_length: u64,
    pub claimed_lo: Option<u64>,
    pub claimed_hi: Option<u64>,
    /// Number of parity-respecting values in the claimed interval.
    pub claimed_length: Option<u64>,
    /// Parity-respecting values inside the claimed interval missing from the set.
    pub gaps: Vec<u64>,
    /// Distinct values in the underlying set.
    pub distinct_values: u64,
    pub progression_count: usize,
    /// Printed lower-bound expression for the interval size, where one exists.
    pub asymptotic_claim: Option<f64>,
}

impl IntervalReport {
    /// Builds a report for a sorted, deduplicated value set.
    pub fn from_values(
        n: usize,
        values: &[u64],
        claimed: Option<(u64, u64)>,
        progression_count: usize,
    ) -> Result<IntervalReport> {
        let step = parity_step(n);
        let (lo, hi) = longest_run(values, step).ok_or(Error::EmptyIndex)?;
        let gaps = match claimed {
            Some((clo, chi)) if clo <= chi => (clo..=chi)
                .filter(|v| (v - clo) % step == 0)
                .filter(|v| values.binary_search(v).is_err())
                .collect(),
            _ => Vec::new(),
        };
        Ok(IntervalReport {
            n,
            parity_step: step,
            measured_lo: lo,
            measured_hi: hi,
            run_length: (hi - lo) / step + 1,
            claimed_lo: claimed.map(|c| c.0),
            claimed_hi: claimed.map(|c| c.1),
            claimed_length: claimed.and_then(|(a, b)| (a <= b).then(|| (b - a) / step + 1)),
            gaps,
            distinct_values: values.len() as u64,
            progression_count,
            asymptotic_claim: None,
        })
    }

    /// Whether the measured run covers the claimed interval.
    pub fn covers_claim(&self) -> bool {
        match (self.claimed_lo, self.claimed_hi) {
            (Some(a), Some(b)) => self.measured_lo <= a && b <= self.measured_hi,
            _ => false,
        }
    }
}

/// Printed lower-bound expressions for `|W^int|` (display only).
pub fn asymptotic_claim(n: usize) -> f64 {
    let n = n as f64;
    if (n as u64).is_multiple_of(2) {
        n.powi(3) / 6.0 - (n.powi(5) - n.powi(4)).sqrt() / 2f64.sqrt() - 3.0 * n * n
            + 10.0 / 3.0 * (2.0 * n.powi(3) - 8.0 * n * n).sqrt()
            + 143.0 * n / 6.0
            + 25.0 * (2.0 * n - 8.0).sqrt()
            - 25.0
    } else {
        n.powi(3) / 12.0 - (n.powi(5) - 3.0 * n.powi(4)).sqrt() / (2.0 * 2f64.sqrt()) - n * n
            + 5.0 / 3.0 * (2.0 * n.powi(3) - 6.0 * n * n).sqrt()
            + 83.0 * n / 12.0
            + 11.0 * (n - 3.0).sqrt() / (6.0 * 2f64.sqrt())
            - 13.0
    }
}

pub fn build_index(n: usize) -> Result<SpectrumIndex> {
    let min = if n.is_multiple_of(2) {
        MIN_EVEN_N
    } else {
        MIN_ODD_N
    };
    if n < min {
        return Err(Error::TooSmall {
            what: "spectrum index".into(),
            n,
            min,
        });
    }
    let lo = star_wiener(n as u64)?;
    let hi = path_wiener(n as u64)?;
    let mut progressions = Vec::new();
    let mut members = ValueBitmap::new(lo, hi);
    for family in Family::for_parity(n) {
        let domain = param_domain(family, n)?;
        for spec in domain.specs() {
            let p = progression(&spec)?;
            for t in 0..=p.count {
                members.insert(p.base_w + 4 * t);
            }
            progressions.push(p);
        }
    }
    progressions.sort_by_key(|p| (p.base_w, p.witness));
    Ok(SpectrumIndex {
        n,
        parity_step: parity_step(n),
        progressions,
        members,
    })
}

/// How a solved tree was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Path,
    Star,
    /// Found by exhaustive enumeration.
    Oracle,
    /// `t` canonical moves on the caterpillar `spec`.
    Caterpillar {
        spec: CaterpillarSpec,
        t: u64,
    },
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub tree: Tree,
    pub witness: Witness,
    pub wiener: WienerValue,
}

impl SpectrumIndex {
    pub fn contains(&self, w: WienerValue) -> bool {
        self.members.contains(w)
    }

    pub fn values(&self) -> Vec<u64> {
        self.members.iter().collect()
    }

    pub fn claimed_interval(&self) -> Result<Option<(u64, u64)>> {
        let (lo_spec, hi_spec) = bounds(self.n)?.claimed_endpoints();
        if lo_spec.validate().is_err() || hi_spec.validate().is_err() {
            return Ok(None);
        }
        let lo = wiener(&crate::caterpillar::construct(&lo_spec)?)?;
        let hi = wiener(&crate::caterpillar::construct(&hi_spec)?)?;
        Ok(Some((lo, hi)))
    }

    pub fn measured_interval(&self) -> Result<IntervalReport> {
        if self.members.is_empty() {
            return Err(Error::EmptyIndex);
        }
        let claimed = self.claimed_interval()?;
        let mut report =
            IntervalReport::from_values(self.n, &self.values(), claimed, self.progressions.len())?;
        report.asymptotic_claim = Some(asymptotic_claim(self.n));
        Ok(report)
    }

    /// Preferred witness for `w`: smallest `d`, then `x`, then `|s|`, then `t`.
    pub fn witness_for(&self, w: WienerValue) -> Option<(CaterpillarSpec, u64)> {
        if !self.contains(w) {
            return None;
        }
        self.progressions
            .iter()
            .filter_map(|p| p.index_of(w).map(|t| (p.witness, t)))
            .min_by_key(|(spec, t)| {
                let s = spec.s.unwrap_or(0);
                (spec.d, spec.x, s.abs(), *t, s, spec.family)
            })
    }

    /// Solves `w` against this index and re-verifies the resulting tree.
    pub fn solve(&self, w: WienerValue) -> Result<Solution> {
        let (spec, t) = self
            .witness_for(w)
            .ok_or(Error::NotCovered { n: self.n, w })?;
        let tree = schedule(&spec, t)?;
        let got = wiener(&tree)?;
        if got != w {
            return Err(Error::WitnessMismatch { expected: w, got });
        }
        Ok(Solution {
            tree,
            witness: Witness::Caterpillar { spec, t },
            wiener: w,
        })
    }
}

/// Checks `w` against the parity and range constraints for `n` vertices.
pub fn check_query(n: usize, w: WienerValue) -> Result<()> {
    if n % 2 == 1 && n >= 3 && w % 2 == 1 {
        return Err(Error::ParityViolation { n, w });
    }
    let lo = star_wiener(n as u64)?;
    let hi = path_wiener(n as u64)?;
    if w < lo || w > hi {
        return Err(Error::OutOfRange { n, w, lo, hi });
    }
    Ok(())
}

/// Finds an `n`-vertex tree with Wiener index `w`.
///
/// Paths and stars are answered directly; `n` up to
/// [`ORACLE_SOLVE_MAX_N`] (and any `n` below the family minimum) by
/// exhaustive search; everything else through the constructive index.
pub fn solve(n: usize, w: WienerValue) -> Result<Solution> {
    if n == 0 {
        return Err(Error::Empty);
    }
    check_query(n, w)?;
    let verify = |tree: Tree, witness| -> Result<Solution> {
        let got = wiener(&tree)?;
        if got != w {
            return Err(Error::WitnessMismatch { expected: w, got });
        }
        Ok(Solution {
            tree,
            witness,
            wiener: w,
        })
    };
    if w == path_wiener(n as u64)? {
        return verify(Tree::path(n)?, Witness::Path);
    }
    if w == star_wiener(n as u64)? {
        return verify(Tree::star(n)?, Witness::Star);
    }
    let family_min = if n.is_multiple_of(2) {
        MIN_EVEN_N
    } else {
        MIN_ODD_N
    };
    if n <= ORACLE_SOLVE_MAX_N || n < family_min {
        return match oracle::find_tree(n, w)? {
            Some(tree) => verify(tree, Witness::Oracle),
            None => Err(Error::NotCovered { n, w }),
        };
    }
    build_index(n)?.solve(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_at_30() {
        let b = bounds(30).unwrap();
        let ParameterBounds::Even {
            d1_min,
            d1_max,
            d2_min,
            d2_max,
            x2_max,
            ..
        } = b
        else {
            panic!("even")
        };
        assert_eq!((d1_min, d1_max, d2_min, d2_max, x2_max), (7, 7, 7, 7, 1));
    }

    #[test]
    fn bounds_at_100() {
        let ParameterBounds::Even {
            d1_min,
            d1_max,
            d2_min,
            d2_max,
            ..
        } = bounds(100).unwrap()
        else {
            panic!("even")
        };
        assert_eq!((d2_min, d2_max, d1_min, d1_max), (10, 24, 24, 39));
    }

    #[test]
    fn bounds_too_small() {
        assert!(matches!(bounds(18), Err(Error::TooSmall { .. })));
        assert!(bounds(19).is_ok());
    }

    #[test]
    fn runs_on_synthetic_sets() {
        let mut v = vec![10, 14, 11, 12, 13, 15, 20];
        v.sort_unstable();
        assert_eq!(longest_run(&v, 1), Some((10, 15)));
        assert_eq!(longest_run(&[16, 18, 20, 26], 2), Some((16, 20)));
        assert_eq!(longest_run(&[], 1), None);
        assert_eq!(longest_run(&[5], 2), Some((5, 5)));
    }

    #[test]
    fn empty_values_report_error() {
        assert_eq!(
            IntervalReport::from_values(30, &[], None, 0).unwrap_err(),
            Error::EmptyIndex
        );
    }

    #[test]
    fn report_lists_gaps_in_claim() {
        let r = IntervalReport::from_values(30, &[1, 2, 3, 5, 6], Some((2, 6)), 0).unwrap();
        assert_eq!((r.measured_lo, r.measured_hi, r.run_length), (1, 3, 3));
        assert_eq!(r.gaps, vec![4]);
        assert!(!r.covers_claim());
    }

    #[test]
    fn bitmap_ops() {
        let mut a = ValueBitmap::new(10, 200);
        a.insert(10);
        a.insert(200);
        let mut b = ValueBitmap::new(10, 200);
        b.insert(77);
        a.union_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![10, 77, 200]);
        assert_eq!(a.len(), 3);
        assert!(!a.contains(9));
    }

    #[test]
    fn solve_special_cases() {
        let s = solve(10, 165).unwrap();
        assert_eq!(s.witness, Witness::Path);
        assert_eq!(s.tree, Tree::path(10).unwrap());
        assert_eq!(solve(10, 81).unwrap().witness, Witness::Star);
        assert_eq!(
            solve(31, 1001).unwrap_err(),
            Error::ParityViolation { n: 31, w: 1001 }
        );
        assert!(matches!(solve(10, 80), Err(Error::OutOfRange { .. })));
        assert!(matches!(solve(10, 166), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn solve_small_n_by_oracle() {
        let s = solve(5, 18).unwrap();
        assert_eq!(s.witness, Witness::Oracle);
        assert_eq!(wiener(&s.tree).unwrap(), 18);
    }
}
