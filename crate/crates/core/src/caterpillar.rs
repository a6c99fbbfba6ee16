//! The six caterpillar families and their parameter domains.
//!
//! Every family is built on the interior path `u_{-d} .. u_d`. The two base
//! families differ in where the extra leaves sit:
//!
//! * `B1(n, d, x)`: one leaf on each of `u_{-(k-1)} .. u_{k-1}` with
//!   `k = (n - 2d - 2) / 2`, plus one leaf on each of `u_{±(d+1-x)}`.
//! * `B2(n, d, x)`: one leaf on each of `u_{-(d-2)} .. u_{d-2}`, `x` leaves on
//!   each of `u_{±(d-1)}` and `r = (n - 4d - 2x + 2) / 2` leaves on each of
//!   `u_{±d}`.
//!
//! `G1`/`G2` add a leaf on `u_s` and one on `u_d` to `B1(n-2)`/`B2(n-2)`,
//! with `s ∈ {-1, 0, 1, 2}`. `G3`/`G4` add a single leaf on `u_s` to
//! `B1(n-1)`/`B2(n-1)`, with `s ∈ {0, 1}`.
//!
//! Labels are deterministic: path vertices first (`u_j ↦ j + d`), then the
//! central block leaves left to right, then the x-leaves (left group, right
//! group), then the r-leaves (left, right), then the leaf on `u_s`, then the
//! leaf on `u_d`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Tree, Vertex};

/// Smallest base vertex count admitted by the B-family definitions.
pub const MIN_BASE_N: usize = 18;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    B1,
    B2,
    G1,
    G2,
    G3,
    G4,
}

/// Which base caterpillar a family is built on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Base {
    B1,
    B2,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::B1,
        Family::B2,
        Family::G1,
        Family::G2,
        Family::G3,
        Family::G4,
    ];

    pub fn base(self) -> Base {
        match self {
            Family::B1 | Family::G1 | Family::G3 => Base::B1,
            Family::B2 | Family::G2 | Family::G4 => Base::B2,
        }
    }

    pub fn base_family(self) -> Family {
        match self.base() {
            Base::B1 => Family::B1,
            Base::B2 => Family::B2,
        }
    }

    /// Vertices added on top of the base caterpillar.
    pub fn added_vertices(self) -> usize {
        match self {
            Family::B1 | Family::B2 => 0,
            Family::G1 | Family::G2 => 2,
            Family::G3 | Family::G4 => 1,
        }
    }

    pub fn requires_odd_n(self) -> bool {
        matches!(self, Family::G3 | Family::G4)
    }

    pub fn is_g(self) -> bool {
        self.added_vertices() > 0
    }

    /// Admissible seed positions `s`.
    pub fn seeds(self) -> &'static [i64] {
        match self {
            Family::B1 | Family::B2 => &[],
            Family::G1 | Family::G2 => &[-1, 0, 1, 2],
            Family::G3 | Family::G4 => &[0, 1],
        }
    }

    /// Families whose progressions make up the spectrum for this parity of n.
    pub fn for_parity(n: usize) -> [Family; 2] {
        if n.is_multiple_of(2) {
            [Family::G1, Family::G2]
        } else {
            [Family::G3, Family::G4]
        }
    }

    pub fn min_n(self) -> usize {
        MIN_BASE_N + self.added_vertices()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{s}`")))
    }
}

/// One named member of a caterpillar family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CaterpillarSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub x: usize,
    /// Seed position; `None` for the base families.
    pub s: Option<i64>,
}

impl fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            Some(s) => write!(f, "{}({},{},{},{})", self.family, self.n, self.d, self.x, s),
            None => write!(f, "{}({},{},{})", self.family, self.n, self.d, self.x),
        }
    }
}

impl CaterpillarSpec {
    pub fn base(family: Family, n: usize, d: usize, x: usize) -> CaterpillarSpec {
        CaterpillarSpec {
            family,
            n,
            d,
            x,
            s: None,
        }
    }

    pub fn seeded(family: Family, n: usize, d: usize, x: usize, s: i64) -> CaterpillarSpec {
        CaterpillarSpec {
            family,
            n,
            d,
            x,
            s: Some(s),
        }
    }

    /// Vertex count of the underlying B caterpillar.
    pub fn base_n(&self) -> usize {
        self.n - self.family.added_vertices()
    }

    /// The B caterpillar this spec is built on (itself for B1/B2).
    pub fn base_spec(&self) -> CaterpillarSpec {
        CaterpillarSpec::base(self.family.base_family(), self.base_n(), self.d, self.x)
    }

    /// Half-width of the central leaf block: leaves sit on `u_j` for
    /// `|j| <= k_central - 1`.
    pub fn k_central(&self) -> i64 {
        let (nb, d) = (self.base_n() as i64, self.d as i64);
        match self.family.base() {
            Base::B1 => (nb - (2 * d + 1) - 1) / 2,
            Base::B2 => d - 1,
        }
    }

    /// Leaves on each endpoint in the B2 construction.
    pub fn r(&self) -> Option<i64> {
        match self.family.base() {
            Base::B1 => None,
            Base::B2 => {
                Some((self.base_n() as i64 - 4 * self.d as i64 - 2 * self.x as i64 + 2) / 2)
            }
        }
    }

    /// Half-width of the leaf-move window around the seed (0 for B families).
    pub fn k_usable(&self) -> i64 {
        match self.family {
            Family::B1 | Family::B2 => 0,
            Family::G1 | Family::G2 => self.k_central() - 2,
            Family::G3 | Family::G4 => self.k_central() - 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let domain = param_domain(self.family, self.n)?;
        let row = domain.rows.iter().find(|r| r.d == self.d).ok_or_else(|| {
            Error::InvalidSpec(format!(
                "{self}: d must lie in [{}, {}]",
                domain.d_min().unwrap_or(0),
                domain.d_max().unwrap_or(0)
            ))
        })?;
        if self.x < 1 || self.x > row.x_max {
            return Err(Error::InvalidSpec(format!(
                "{self}: x must lie in [1, {}]",
                row.x_max
            )));
        }
        match (self.family.is_g(), self.s) {
            (false, None) => {}
            (false, Some(_)) => {
                return Err(Error::InvalidSpec(format!(
                    "{}: base families take no seed",
                    self.family
                )))
            }
            (true, None) => {
                return Err(Error::InvalidSpec(format!(
                    "{}: missing seed s",
                    self.family
                )))
            }
            (true, Some(s)) => {
                if !self.family.seeds().contains(&s) {
                    return Err(Error::InvalidSpec(format!(
                        "{self}: s must be one of {:?}",
                        self.family.seeds()
                    )));
                }
                if s.abs() > self.k_central() - 1 {
                    return Err(Error::InvalidSpec(format!(
                        "{self}: seed u_{s} lies outside the central leaf block"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Admissible `x` values for one `d`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DomainRow {
    pub d: usize,
    pub x_max: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ParamDomain {
    pub family: Family,
    pub n: usize,
    pub rows: Vec<DomainRow>,
    pub seeds: Vec<i64>,
}

impl ParamDomain {
    pub fn d_min(&self) -> Option<usize> {
        self.rows.first().map(|r| r.d)
    }

    pub fn d_max(&self) -> Option<usize> {
        self.rows.last().map(|r| r.d)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every admissible spec, ordered by `d`, then `x`, then `s`.
    pub fn specs(&self) -> impl Iterator<Item = CaterpillarSpec> + '_ {
        let seeds: Vec<Option<i64>> = if self.seeds.is_empty() {
            vec![None]
        } else {
            self.seeds.iter().copied().map(Some).collect()
        };
        self.rows.iter().flat_map(move |row| {
            let seeds = seeds.clone();
            (1..=row.x_max).flat_map(move |x| {
                seeds.clone().into_iter().map(move |s| CaterpillarSpec {
                    family: self.family,
                    n: self.n,
                    d: row.d,
                    x,
                    s,
                })
            })
        })
    }

    pub fn len(&self) -> usize {
        let per_x = self.seeds.len().max(1);
        self.rows.iter().map(|r| r.x_max * per_x).sum()
    }
}

/// Integer ranges of `d`, `x` and `s` allowed by the family definitions.
pub fn param_domain(family: Family, n: usize) -> Result<ParamDomain> {
    let odd = n % 2 == 1;
    if odd != family.requires_odd_n() {
        return Err(Error::ParityMismatch {
            family,
            n,
            expected: if family.requires_odd_n() {
                "odd"
            } else {
                "even"
            },
        });
    }
    if n < family.min_n() {
        return Err(Error::TooSmall {
            what: family.to_string(),
            n,
            min: family.min_n(),
        });
    }
    let nb = n - family.added_vertices();
    let rows = match family.base() {
        Base::B1 => {
            let d_min = (nb - 2).div_ceil(4);
            let d_max = (nb - 8) / 2;
            (d_min..=d_max)
                .map(|d| DomainRow {
                    d,
                    x_max: (4 + 4 * d - nb) / 2,
                })
                .collect()
        }
        Base::B2 => (4..=nb / 4)
            .map(|d| DomainRow {
                d,
                x_max: (nb + 2 - 4 * d) / 2,
            })
            .collect(),
    };
    let seeds = family.seeds().to_vec();
    Ok(ParamDomain {
        family,
        n,
        rows,
        seeds,
    })
}

/// A constructed caterpillar together with its leaf assignment along the
/// interior path, kept mutable for leaf moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarLayout {
    pub n: usize,
    pub d: usize,
    /// `leaves[j + d]` holds the leaf labels attached to `u_j`.
    pub leaves: Vec<Vec<Vertex>>,
}

impl CaterpillarLayout {
    /// Label of the path vertex `u_j`.
    pub fn spine(&self, j: i64) -> Vertex {
        (j + self.d as i64) as Vertex
    }

    pub fn leaf_count(&self, j: i64) -> usize {
        self.leaves[self.spine(j)].len()
    }

    pub fn to_tree(&self) -> Tree {
        let path_len = 2 * self.d + 1;
        let spine_edges = (1..path_len).map(|v| (v - 1, v));
        let leaf_edges = self
            .leaves
            .iter()
            .enumerate()
            .flat_map(|(p, ls)| ls.iter().map(move |&l| (p, l)));
        Tree::new(self.n, spine_edges.chain(leaf_edges)).expect("layout is always a tree")
    }
}

pub fn construct(spec: &CaterpillarSpec) -> Result<Tree> {
    Ok(layout(spec)?.to_tree())
}

pub fn layout(spec: &CaterpillarSpec) -> Result<CaterpillarLayout> {
    spec.validate()?;
    let d = spec.d as i64;
    let path_len = 2 * spec.d + 1;
    let mut next = path_len;
    let mut leaves: Vec<Vec<Vertex>> = vec![Vec::new(); path_len];
    let mut attach = |j: i64, count: usize| {
        for _ in 0..count {
            leaves[(j + d) as usize].push(next);
            next += 1;
        }
    };
    let k = spec.k_central();
    for j in -(k - 1)..=(k - 1) {
        attach(j, 1);
    }
    match spec.family.base() {
        Base::B1 => {
            let x_pos = d + 1 - spec.x as i64;
            attach(-x_pos, 1);
            attach(x_pos, 1);
        }
        Base::B2 => {
            attach(-(d - 1), spec.x);
            attach(d - 1, spec.x);
            let r = spec.r().expect("B2 has r") as usize;
            attach(-d, r);
            attach(d, r);
        }
    }
    if let Some(s) = spec.s {
        attach(s, 1);
        if matches!(spec.family, Family::G1 | Family::G2) {
            attach(d, 1);
        }
    }
    if next != spec.n {
        return Err(Error::InvalidSpec(format!(
            "{spec}: built {next} vertices, expected {}",
            spec.n
        )));
    }
    Ok(CaterpillarLayout {
        n: spec.n,
        d: spec.d,
        leaves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiener::{wiener, wiener_reference};

    #[test]
    fn b1_domain_at_18() {
        let dom = param_domain(Family::B1, 18).unwrap();
        assert_eq!(
            dom.rows,
            vec![DomainRow { d: 4, x_max: 1 }, DomainRow { d: 5, x_max: 3 }]
        );
    }

    #[test]
    fn g1_domain_at_30_follows_definition() {
        let dom = param_domain(Family::G1, 30).unwrap();
        assert_eq!(dom.d_min(), Some(7));
        assert_eq!(dom.d_max(), Some(10));
        assert_eq!(dom.seeds, vec![-1, 0, 1, 2]);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            param_domain(Family::B1, 16),
            Err(Error::TooSmall { min: 18, .. })
        ));
        assert!(matches!(
            param_domain(Family::G3, 30),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            param_domain(Family::G1, 18),
            Err(Error::TooSmall { min: 20, .. })
        ));
    }

    #[test]
    fn frozen_base_values() {
        let cases = [
            (CaterpillarSpec::base(Family::B1, 18, 4, 1), 633),
            (CaterpillarSpec::base(Family::B2, 20, 4, 1), 841),
            (CaterpillarSpec::base(Family::B1, 20, 5, 2), 841),
            (CaterpillarSpec::base(Family::B2, 20, 5, 1), 841),
        ];
        for (spec, w) in cases {
            let t = construct(&spec).unwrap();
            assert_eq!(t.n(), spec.n);
            assert_eq!(wiener(&t).unwrap(), w, "{spec}");
            assert_eq!(wiener_reference(&t).unwrap(), w, "{spec}");
        }
    }

    #[test]
    fn labeling_is_documented_order() {
        // B2(20,4,1): path 0..=8, block on u_-2..u_2 -> 9..=13, x-leaves on
        // u_-3 (14) and u_3 (15), r = 2 leaves on u_-4 (16,17) and u_4 (18,19)
        let lay = layout(&CaterpillarSpec::base(Family::B2, 20, 4, 1)).unwrap();
        assert_eq!(lay.leaves[2], vec![9]);
        assert_eq!(lay.leaves[6], vec![13]);
        assert_eq!(lay.leaves[1], vec![14]);
        assert_eq!(lay.leaves[7], vec![15]);
        assert_eq!(lay.leaves[0], vec![16, 17]);
        assert_eq!(lay.leaves[8], vec![18, 19]);
        // G1 appends the u_s leaf, then the u_d leaf
        let lay = layout(&CaterpillarSpec::seeded(Family::G1, 30, 7, 1, 2)).unwrap();
        assert_eq!(lay.leaves[9], vec![22, 28]);
        assert_eq!(lay.leaves[14], vec![27, 29]);
    }

    #[test]
    fn every_spec_is_a_caterpillar_of_size_n() {
        for n in 18..=44 {
            for family in Family::ALL {
                let Ok(dom) = param_domain(family, n) else {
                    continue;
                };
                for spec in dom.specs() {
                    let t = construct(&spec).unwrap();
                    assert_eq!(t.n(), n);
                    assert!(t.is_caterpillar(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = [
            CaterpillarSpec::base(Family::B1, 18, 3, 1),
            CaterpillarSpec::base(Family::B1, 18, 4, 2),
            CaterpillarSpec::base(Family::B1, 18, 4, 0),
            CaterpillarSpec::seeded(Family::B1, 18, 4, 1, 0),
            CaterpillarSpec::base(Family::G1, 30, 7, 1),
            CaterpillarSpec::seeded(Family::G3, 21, 5, 1, 2),
        ];
        for spec in bad {
            assert!(
                matches!(construct(&spec), Err(Error::InvalidSpec(_))),
                "{spec}"
            );
        }
    }

    #[test]
    fn family_parse_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!("g3".parse::<Family>().unwrap(), Family::G3);
        assert!("G5".parse::<Family>().is_err());
    }
}
