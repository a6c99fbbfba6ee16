//! Printed closed forms and step identities checked against constructed
//! trees.
//!
//! Each identity is evaluated at every grid point and compared with the
//! Wiener index of the constructed tree, exactly. An identity HOLDS when
//! every delta is zero and FAILS otherwise, with its first counterexample.

use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;

use crate::caterpillar::{construct, param_domain, CaterpillarSpec, Family};
use crate::error::{Error, Result};
use crate::formula::{base_formula, formula_value, increment_formula, RationalValue};
use crate::wiener::wiener;

/// A grid of admissible specs of one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditGrid {
    family: Family,
    specs: Vec<CaterpillarSpec>,
}

impl AuditGrid {
    pub fn new(specs: Vec<CaterpillarSpec>) -> Result<AuditGrid> {
        let first = specs
            .first()
            .ok_or_else(|| Error::InvalidGrid("grid is empty".into()))?;
        let family = first.family;
        for spec in &specs {
            if spec.family != family {
                return Err(Error::InvalidGrid(format!(
                    "mixed families {family} and {}",
                    spec.family
                )));
            }
            spec.validate()
                .map_err(|e| Error::InvalidGrid(format!("{spec} is not admissible: {e}")))?;
        }
        Ok(AuditGrid { family, specs })
    }

    /// Every admissible spec for each `n` in `ns` that matches the family's
    /// parity and minimum size.
    pub fn over_n<I: IntoIterator<Item = usize>>(family: Family, ns: I) -> Result<AuditGrid> {
        let mut specs = Vec::new();
        for n in ns {
            if let Ok(domain) = param_domain(family, n) {
                specs.extend(domain.specs());
            }
        }
        AuditGrid::new(specs)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn specs(&self) -> &[CaterpillarSpec] {
        &self.specs
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "s", rename_all = "snake_case")]
pub enum Identity {
    /// Printed closed form of `W`.
    Lemma,
    /// Printed `W(G) - W(B_base)`.
    Increment,
    /// Printed `W(G(x-1)) - W(G(x))`.
    XStep,
    /// `W(G(s)) - W(G(0))` equals the stated offset.
    SOffset(i64),
}

impl Identity {
    pub fn applicable(family: Family) -> Vec<Identity> {
        let mut out = vec![Identity::Lemma];
        if family.is_g() {
            out.push(Identity::Increment);
            out.push(Identity::XStep);
            out.extend(
                family
                    .seeds()
                    .iter()
                    .filter(|&&s| s != 0)
                    .map(|&s| Identity::SOffset(s)),
            );
        }
        out
    }

    pub fn statement(&self, family: Family) -> String {
        match self {
            Identity::Lemma => format!("W({family}) closed form"),
            Identity::Increment => format!("W({family}) - W(base) closed form"),
            Identity::XStep => {
                let rhs = match family {
                    Family::G1 => "2n-4x",
                    Family::G2 => "4d+4x-8",
                    Family::G3 => "2(n-2x+1)",
                    Family::G4 => "4(x+2d-2)",
                    _ => "-",
                };
                format!("W({family}, x-1) - W({family}, x) = {rhs}")
            }
            Identity::SOffset(s) => format!(
                "W({family}, s={s}) - W({family}, s=0) = {}",
                s_offset(family, *s).unwrap_or(0)
            ),
        }
    }
}

/// Stated offset of `W(G(s)) - W(G(0))`.
pub fn s_offset(family: Family, s: i64) -> Option<i64> {
    match (family, s) {
        (Family::G1 | Family::G2, 1) => Some(1),
        (Family::G1 | Family::G2, 2) => Some(6),
        (Family::G1 | Family::G2, -1) => Some(3),
        (Family::G3 | Family::G4, 1) => Some(2),
        (_, 0) => Some(0),
        _ => None,
    }
}

/// Stated `W(G(x-1)) - W(G(x))`.
pub fn x_step(spec: &CaterpillarSpec) -> Option<i64> {
    let (n, d, x) = (spec.n as i64, spec.d as i64, spec.x as i64);
    match spec.family {
        Family::G1 => Some(2 * n - 4 * x),
        Family::G2 => Some(4 * d + 4 * x - 8),
        Family::G3 => Some(2 * (n - 2 * x + 1)),
        Family::G4 => Some(4 * (x + 2 * d - 2)),
        Family::B1 | Family::B2 => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub spec: CaterpillarSpec,
    pub formula: RationalValue,
    pub direct: i128,
    /// `formula - direct`
    pub delta: RationalValue,
}

impl AuditRow {
    fn new(spec: CaterpillarSpec, formula: RationalValue, direct: i128) -> AuditRow {
        let delta = &formula - &RationalValue::from(direct);
        AuditRow {
            spec,
            formula,
            direct,
            delta,
        }
    }

    pub fn agrees(&self) -> bool {
        self.delta.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityAudit {
    pub identity: Identity,
    pub statement: String,
    pub verdict: Verdict,
    pub failures: usize,
    /// Rows where the printed expression is not an integer.
    pub non_integer: usize,
    pub counterexample: Option<AuditRow>,
    pub rows: Vec<AuditRow>,
}

impl IdentityAudit {
    fn from_rows(identity: Identity, family: Family, rows: Vec<AuditRow>) -> IdentityAudit {
        let failures = rows.iter().filter(|r| !r.agrees()).count();
        IdentityAudit {
            identity,
            statement: identity.statement(family),
            verdict: if failures == 0 {
                Verdict::Holds
            } else {
                Verdict::Fails
            },
            failures,
            non_integer: rows.iter().filter(|r| !r.formula.is_integer()).count(),
            counterexample: rows.iter().find(|r| !r.agrees()).cloned(),
            rows,
        }
    }

    pub fn row(&self, spec: &CaterpillarSpec) -> Option<&AuditRow> {
        self.rows.iter().find(|r| &r.spec == spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub family: Family,
    pub grid_points: usize,
    pub identities: Vec<IdentityAudit>,
}

impl AuditReport {
    pub fn identity(&self, identity: Identity) -> Option<&IdentityAudit> {
        self.identities.iter().find(|a| a.identity == identity)
    }

    pub fn verdicts(&self) -> Vec<(Identity, Verdict)> {
        self.identities
            .iter()
            .map(|a| (a.identity, a.verdict))
            .collect()
    }

    /// Tabular text: a verdict summary, then every failing row.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# audit {} over {} grid points",
            self.family, self.grid_points
        )
        .unwrap();
        for a in &self.identities {
            writeln!(
                out,
                "{:<5} {:<48} rows={:<5} failures={:<5} non_integer={}",
                format!("{:?}", a.verdict).to_uppercase(),
                a.statement,
                a.rows.len(),
                a.failures,
                a.non_integer
            )
            .unwrap();
        }
        for a in self.identities.iter().filter(|a| a.failures > 0) {
            writeln!(out, "\n## {}", a.statement).unwrap();
            writeln!(
                out,
                "{:<20} {:>14} {:>10} {:>14}",
                "spec", "formula", "direct", "delta"
            )
            .unwrap();
            for r in a.rows.iter().filter(|r| !r.agrees()) {
                writeln!(
                    out,
                    "{:<20} {:>14} {:>10} {:>14}",
                    r.spec.to_string(),
                    r.formula.to_string(),
                    r.direct,
                    r.delta.to_string()
                )
                .unwrap();
            }
        }
        out
    }
}

/// Memoized direct Wiener values.
#[derive(Default)]
pub(crate) struct DirectCache(HashMap<CaterpillarSpec, i128>);

impl DirectCache {
    pub(crate) fn get(&mut self, spec: &CaterpillarSpec) -> Result<i128> {
        if let Some(&w) = self.0.get(spec) {
            return Ok(w);
        }
        let w = wiener(&construct(spec)?)? as i128;
        self.0.insert(*spec, w);
        Ok(w)
    }
}

pub fn audit_family(family: Family, grid: &AuditGrid) -> Result<AuditReport> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if grid.family() != family {
        return Err(Error::InvalidGrid(format!(
            "grid is for {}, not {family}",
            grid.family()
        )));
    }
    let mut cache = DirectCache::default();
    let mut identities = Vec::new();
    for identity in Identity::applicable(family) {
        let mut rows = Vec::new();
        for spec in grid.specs() {
            let row = match identity {
                Identity::Lemma => {
                    Some(AuditRow::new(*spec, formula_value(spec)?, cache.get(spec)?))
                }
                Identity::Increment => {
                    let direct = cache.get(spec)? - cache.get(&spec.base_spec())?;
                    Some(AuditRow::new(*spec, increment_formula(spec), direct))
                }
                Identity::XStep if spec.x >= 2 => {
                    let prev = CaterpillarSpec {
                        x: spec.x - 1,
                        ..*spec
                    };
                    let direct = cache.get(&prev)? - cache.get(spec)?;
                    let stated = x_step(spec).expect("G family");
                    Some(AuditRow::new(*spec, RationalValue::from(stated), direct))
                }
                Identity::SOffset(s) if spec.s == Some(s) => {
                    let zero = CaterpillarSpec {
                        s: Some(0),
                        ..*spec
                    };
                    let direct = cache.get(spec)? - cache.get(&zero)?;
                    let stated = s_offset(family, s).expect("listed seed");
                    Some(AuditRow::new(*spec, RationalValue::from(stated), direct))
                }
                _ => None,
            };
            rows.extend(row);
        }
        identities.push(IdentityAudit::from_rows(identity, family, rows));
    }
    Ok(AuditReport {
        family,
        grid_points: grid.len(),
        identities,
    })
}

/// Printed base closed form alone, for B-part diagnostics on G specs.
pub fn base_part_row(spec: &CaterpillarSpec) -> Result<AuditRow> {
    let mut cache = DirectCache::default();
    let base = spec.base_spec();
    Ok(AuditRow::new(base, base_formula(spec), cache.get(&base)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_rejected() {
        assert!(matches!(AuditGrid::new(vec![]), Err(Error::InvalidGrid(_))));
        assert!(matches!(
            AuditGrid::over_n(Family::B1, [16]),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn inadmissible_points_are_rejected() {
        let bad = CaterpillarSpec::base(Family::B1, 18, 9, 1);
        assert!(matches!(
            AuditGrid::new(vec![bad]),
            Err(Error::InvalidGrid(_))
        ));
        let mixed = vec![
            CaterpillarSpec::base(Family::B1, 18, 4, 1),
            CaterpillarSpec::base(Family::B2, 20, 4, 1),
        ];
        assert!(matches!(AuditGrid::new(mixed), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn b1_counterexamples() {
        let grid = AuditGrid::over_n(Family::B1, [18, 20]).unwrap();
        let report = audit_family(Family::B1, &grid).unwrap();
        let lemma = report.identity(Identity::Lemma).unwrap();
        assert_eq!(lemma.verdict, Verdict::Fails);
        let first = lemma.counterexample.as_ref().unwrap();
        assert_eq!(first.spec, CaterpillarSpec::base(Family::B1, 18, 4, 1));
        assert_eq!(first.formula, RationalValue::from(1080i64));
        assert_eq!(first.direct, 633);
        assert_eq!(first.delta, RationalValue::from(447i64));
        let odd = lemma
            .row(&CaterpillarSpec::base(Family::B1, 20, 5, 2))
            .unwrap();
        assert_eq!(odd.formula, RationalValue::new(4393, 3));
        assert_eq!(odd.direct, 841);
        assert!(lemma.non_integer > 0);
    }

    #[test]
    fn b2_agrees_at_twenty() {
        let grid = AuditGrid::over_n(Family::B2, [20]).unwrap();
        let report = audit_family(Family::B2, &grid).unwrap();
        let lemma = report.identity(Identity::Lemma).unwrap();
        for x_spec in [
            CaterpillarSpec::base(Family::B2, 20, 4, 1),
            CaterpillarSpec::base(Family::B2, 20, 5, 1),
        ] {
            let row = lemma.row(&x_spec).unwrap();
            assert!(row.agrees());
            assert_eq!(row.direct, 841);
        }
    }

    #[test]
    fn wrong_family_grid() {
        let grid = AuditGrid::over_n(Family::B2, [20]).unwrap();
        assert!(audit_family(Family::B1, &grid).is_err());
    }
}
