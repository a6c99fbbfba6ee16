//! Exact polynomial refitting of family Wiener indices.
//!
//! Values are sampled from constructed trees on one grid, the coefficients of
//! a monomial basis in `(n, d, x, s)` are solved for exactly, and the result
//! is checked on a second, disjoint grid.

use std::fmt;

use serde::Serialize;

use crate::audit::{AuditGrid, DirectCache};
use crate::caterpillar::{CaterpillarSpec, Family};
use crate::error::{Error, Result};
use crate::formula::{formula_value, RationalValue};

/// Largest power allowed per variable, plus an optional total-degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCaps {
    pub n: u32,
    pub d: u32,
    pub x: u32,
    pub s: u32,
    pub total: Option<u32>,
}

impl DegreeCaps {
    pub fn new(n: u32, d: u32, x: u32, s: u32) -> DegreeCaps {
        DegreeCaps {
            n,
            d,
            x,
            s,
            total: None,
        }
    }

    pub fn with_total(self, total: u32) -> DegreeCaps {
        DegreeCaps {
            total: Some(total),
            ..self
        }
    }

    /// `(n:3, d:3, x:2)` with total degree 3, plus `s` for seeded families.
    pub fn default_for(family: Family) -> DegreeCaps {
        let s = match family {
            Family::B1 | Family::B2 => 0,
            Family::G1 | Family::G2 => 2,
            Family::G3 | Family::G4 => 1,
        };
        DegreeCaps::new(3, 3, 2, s).with_total(3)
    }

    /// All monomials within the caps, highest total degree first.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for n in 0..=self.n {
            for d in 0..=self.d {
                for x in 0..=self.x {
                    for s in 0..=self.s {
                        let m = Monomial { n, d, x, s };
                        if self.total.is_none_or(|t| m.degree() <= t) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| b.degree().cmp(&a.degree()).then(b.cmp(a)));
        out
    }
}

/// `n^n · d^d · x^x · s^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub n: u32,
    pub d: u32,
    pub x: u32,
    pub s: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.n + self.d + self.x + self.s
    }

    pub fn eval(&self, spec: &CaterpillarSpec) -> RationalValue {
        let vars = variables(spec);
        let mut acc = RationalValue::one();
        for (v, e) in vars.iter().zip([self.n, self.d, self.x, self.s]) {
            acc = &acc * &RationalValue::from(*v).pow(e);
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("n", self.n), ("d", self.d), ("x", self.x), ("s", self.s)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn variables(spec: &CaterpillarSpec) -> [i64; 4] {
    [
        spec.n as i64,
        spec.d as i64,
        spec.x as i64,
        spec.s.unwrap_or(0),
    ]
}

/// What is being fitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitTarget {
    /// `W` of the constructed tree.
    Direct,
    /// `W(G) - W(B_base)` on constructed trees; G families only.
    Increment,
    /// The printed closed form, for coefficient comparison.
    Printed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittedForm {
    pub family: Family,
    pub target: FitTarget,
    pub caps: DegreeCaps,
    /// Nonzero coefficients only, in basis order.
    pub terms: Vec<(Monomial, RationalValue)>,
    pub basis_size: usize,
    pub fit_points: usize,
    /// Held-out points reproduced exactly.
    pub verified_points: usize,
}

impl FittedForm {
    pub fn eval(&self, spec: &CaterpillarSpec) -> RationalValue {
        self.terms
            .iter()
            .fold(RationalValue::zero(), |acc, (m, c)| acc + c * &m.eval(spec))
    }

    pub fn coefficient(&self, m: &Monomial) -> RationalValue {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(RationalValue::zero)
    }

    /// Monomials whose coefficients differ, with `(self, other)` values.
    pub fn differences(&self, other: &FittedForm) -> Vec<(Monomial, RationalValue, RationalValue)> {
        let mut monomials: Vec<Monomial> = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|(m, _)| *m)
            .collect();
        monomials.sort_by(|a, b| b.degree().cmp(&a.degree()).then(b.cmp(a)));
        monomials.dedup();
        monomials
            .into_iter()
            .filter_map(|m| {
                let (a, b) = (self.coefficient(&m), other.coefficient(&m));
                (a != b).then_some((m, a, b))
            })
            .collect()
    }
}

impl fmt::Display for FittedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.numer().sign() == num_bigint::Sign::Minus;
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if mag == RationalValue::one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Default fitting grid: every admissible spec for `n` in
/// `[min, min + 40]` of the family's parity.
pub fn default_fit_grid(family: Family) -> Result<AuditGrid> {
    let min = family.min_n();
    AuditGrid::over_n(family, min..=min + 40)
}

/// Default held-out grid, disjoint from the fitting grid: `n` in
/// `[min + 42, min + 60]`.
pub fn default_holdout_grid(family: Family) -> Result<AuditGrid> {
    let min = family.min_n();
    AuditGrid::over_n(family, min + 42..=min + 60)
}

/// Fits the direct Wiener index of `family` on the default grids.
pub fn fit_closed_form(family: Family, caps: DegreeCaps) -> Result<FittedForm> {
    fit_with(
        family,
        FitTarget::Direct,
        caps,
        &default_fit_grid(family)?,
        &default_holdout_grid(family)?,
    )
}

/// The printed closed form expanded on the same basis, for comparison with
/// [`fit_closed_form`].
pub fn printed_form(family: Family, caps: DegreeCaps) -> Result<FittedForm> {
    fit_with(
        family,
        FitTarget::Printed,
        caps,
        &default_fit_grid(family)?,
        &default_holdout_grid(family)?,
    )
}

pub fn fit_with(
    family: Family,
    target: FitTarget,
    caps: DegreeCaps,
    fit_grid: &AuditGrid,
    holdout: &AuditGrid,
) -> Result<FittedForm> {
    for grid in [fit_grid, holdout] {
        if grid.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if grid.family() != family {
            return Err(Error::InvalidGrid(format!(
                "grid is for {}, not {family}",
                grid.family()
            )));
        }
    }
    if let Some(shared) = fit_grid
        .specs()
        .iter()
        .find(|s| holdout.specs().contains(s))
    {
        return Err(Error::InvalidGrid(format!(
            "{shared} appears in both the fitting and held-out grids"
        )));
    }
    if target == FitTarget::Increment && !family.is_g() {
        return Err(Error::InvalidGrid(format!("{family} has no increment")));
    }
    let basis = caps.basis();
    if fit_grid.len() <= basis.len() {
        return Err(Error::InvalidGrid(format!(
            "{} fitting points for {} monomials",
            fit_grid.len(),
            basis.len()
        )));
    }

    let mut cache = DirectCache::default();
    let mut value = |spec: &CaterpillarSpec| -> Result<RationalValue> {
        Ok(match target {
            FitTarget::Direct => RationalValue::from(cache.get(spec)?),
            FitTarget::Increment => {
                RationalValue::from(cache.get(spec)? - cache.get(&spec.base_spec())?)
            }
            FitTarget::Printed => formula_value(spec)?,
        })
    };

    let mut echelon = Echelon::new(basis.len());
    for spec in fit_grid.specs() {
        let row: Vec<RationalValue> = basis.iter().map(|m| m.eval(spec)).collect();
        // only evaluate the target when the row can raise the rank
        if echelon.is_independent(&row) {
            echelon.insert(row, value(spec)?);
            if echelon.rank() == basis.len() {
                break;
            }
        }
    }
    if echelon.rank() < basis.len() {
        return Err(Error::SingularSystem {
            rank: echelon.rank(),
            basis: basis.len(),
        });
    }
    let coefficients = echelon.solution();
    let form = FittedForm {
        family,
        target,
        caps,
        terms: basis
            .iter()
            .zip(coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c))
            .collect(),
        basis_size: basis.len(),
        fit_points: fit_grid.len(),
        verified_points: holdout.len(),
    };
    for spec in fit_grid.specs().iter().chain(holdout.specs()) {
        let actual = value(spec)?;
        let predicted = form.eval(spec);
        if predicted != actual {
            return Err(Error::VerificationFailure {
                point: spec.to_string(),
                predicted: predicted.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    Ok(form)
}

/// Reduced row echelon form over the rationals, grown one row at a time.
struct Echelon {
    width: usize,
    /// `(pivot column, row, rhs)`, each row normalized to 1 at its pivot and
    /// zero in every other pivot column.
    rows: Vec<(usize, Vec<RationalValue>, RationalValue)>,
}

impl Echelon {
    fn new(width: usize) -> Echelon {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(
        &self,
        mut row: Vec<RationalValue>,
        mut rhs: RationalValue,
    ) -> (Vec<RationalValue>, RationalValue) {
        for (pivot, prow, prhs) in &self.rows {
            let factor = row[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (a, b) in row.iter_mut().zip(prow) {
                *a = &*a - &(&factor * b);
            }
            rhs = &rhs - &(&factor * prhs);
        }
        (row, rhs)
    }

    fn is_independent(&self, row: &[RationalValue]) -> bool {
        let (reduced, _) = self.reduce(row.to_vec(), RationalValue::zero());
        reduced.iter().any(|c| !c.is_zero())
    }

    fn insert(&mut self, row: Vec<RationalValue>, rhs: RationalValue) {
        assert_eq!(row.len(), self.width);
        let (row, rhs) = self.reduce(row, rhs);
        let pivot = row
            .iter()
            .position(|c| !c.is_zero())
            .expect("row is independent");
        let inv = row[pivot].recip();
        let row: Vec<RationalValue> = row.iter().map(|c| c * &inv).collect();
        let rhs = &rhs * &inv;
        for (_, other, other_rhs) in &mut self.rows {
            let factor = other[pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (a, b) in other.iter_mut().zip(&row) {
                *a = &*a - &(&factor * b);
            }
            *other_rhs = &*other_rhs - &(&factor * &rhs);
        }
        self.rows.push((pivot, row, rhs));
    }

    /// Coefficients by column; requires full rank.
    fn solution(&self) -> Vec<RationalValue> {
        let mut out = vec![RationalValue::zero(); self.width];
        for (pivot, _, rhs) in &self.rows {
            out[*pivot] = rhs.clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_respects_caps() {
        let caps = DegreeCaps::new(3, 3, 2, 0).with_total(3);
        let basis = caps.basis();
        assert!(basis
            .iter()
            .all(|m| m.degree() <= 3 && m.x <= 2 && m.s == 0));
        assert_eq!(basis.len(), 19);
        assert_eq!(basis.last().unwrap().degree(), 0);
    }

    #[test]
    fn b2_fit_matches_printed() {
        let caps = DegreeCaps::default_for(Family::B2);
        let fitted = fit_closed_form(Family::B2, caps).unwrap();
        let printed = printed_form(Family::B2, caps).unwrap();
        assert!(
            fitted.differences(&printed).is_empty(),
            "{fitted}\n{printed}"
        );
        assert!(fitted.verified_points >= 20);
    }

    #[test]
    fn b1_fit_differs_from_printed() {
        let caps = DegreeCaps::default_for(Family::B1);
        let fitted = fit_closed_form(Family::B1, caps).unwrap();
        let spec = CaterpillarSpec::base(Family::B1, 18, 4, 1);
        assert_eq!(fitted.eval(&spec), RationalValue::from(633i64));
        let printed = printed_form(Family::B1, caps).unwrap();
        assert!(!fitted.differences(&printed).is_empty());
    }

    #[test]
    fn underfitting_is_detected() {
        let caps = DegreeCaps::new(2, 1, 1, 0);
        assert!(matches!(
            fit_closed_form(Family::B2, caps),
            Err(Error::VerificationFailure { .. })
        ));
    }

    #[test]
    fn constant_variable_is_singular() {
        // s is always 0 for base families
        let caps = DegreeCaps::new(1, 1, 1, 1);
        assert!(matches!(
            fit_closed_form(Family::B2, caps),
            Err(Error::SingularSystem { .. })
        ));
    }

    #[test]
    fn overlapping_grids_are_rejected() {
        let grid = AuditGrid::over_n(Family::B2, [30, 32]).unwrap();
        let caps = DegreeCaps::default_for(Family::B2);
        assert!(matches!(
            fit_with(Family::B2, FitTarget::Direct, caps, &grid, &grid),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn display_is_a_sum_of_monomials() {
        let form = FittedForm {
            family: Family::B2,
            target: FitTarget::Direct,
            caps: DegreeCaps::new(1, 1, 0, 0),
            terms: vec![
                (
                    Monomial {
                        n: 1,
                        d: 1,
                        x: 0,
                        s: 0,
                    },
                    RationalValue::new(1, 2),
                ),
                (
                    Monomial {
                        n: 1,
                        d: 0,
                        x: 0,
                        s: 0,
                    },
                    RationalValue::from(-1i64),
                ),
                (
                    Monomial {
                        n: 0,
                        d: 0,
                        x: 0,
                        s: 0,
                    },
                    RationalValue::from(-5i64),
                ),
            ],
            basis_size: 3,
            fit_points: 0,
            verified_points: 0,
        };
        assert_eq!(form.to_string(), "1/2*n*d - n - 5");
    }
}
