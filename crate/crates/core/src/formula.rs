//! Printed closed forms for the family Wiener indices, evaluated exactly.
//!
//! These are audit targets. Ground truth is always the Wiener index of the
//! constructed tree; nothing outside the audit should read these values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::caterpillar::{Base, CaterpillarSpec, Family};
use crate::error::Result;

/// Exact rational number, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RationalValue(BigRational);

impl RationalValue {
    pub fn new(numer: i64, denom: i64) -> RationalValue {
        RationalValue(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(v: i64) -> RationalValue {
        RationalValue(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> RationalValue {
        RationalValue(BigRational::zero())
    }

    pub fn one() -> RationalValue {
        RationalValue(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i128(&self) -> Option<i128> {
        if self.is_integer() {
            self.0.to_integer().to_i128()
        } else {
            None
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> RationalValue {
        RationalValue(self.0.abs())
    }

    pub fn recip(&self) -> RationalValue {
        RationalValue(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> RationalValue {
        let mut acc = RationalValue::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for RationalValue {
    fn from(v: i64) -> RationalValue {
        RationalValue::integer(v)
    }
}

impl From<i128> for RationalValue {
    fn from(v: i128) -> RationalValue {
        RationalValue(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<u64> for RationalValue {
    fn from(v: u64) -> RationalValue {
        RationalValue(BigRational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for RationalValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalValue {
            type Output = RationalValue;
            fn $method(self, rhs: RationalValue) -> RationalValue {
                RationalValue(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a RationalValue> for &'a RationalValue {
            type Output = RationalValue;
            fn $method(self, rhs: &'a RationalValue) -> RationalValue {
                RationalValue((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div for &RationalValue {
    type Output = RationalValue;
    fn div(self, rhs: &RationalValue) -> RationalValue {
        RationalValue(&self.0 / &rhs.0)
    }
}

impl Neg for RationalValue {
    type Output = RationalValue;
    fn neg(self) -> RationalValue {
        RationalValue(-self.0)
    }
}

fn q(numer: i64, denom: i64) -> RationalValue {
    RationalValue::new(numer, denom)
}

fn z(v: i64) -> RationalValue {
    RationalValue::integer(v)
}

/// Printed B1 closed form at `(n, d, x)`.
pub fn b1_formula(n: i64, d: i64, x: i64) -> RationalValue {
    let (n, d, x) = (z(n), z(d), z(x));
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let c2 = -(&q(3, 2) * &d) - q(5, 4);
    let c1 = &z(4) * &d2 + &z(10) * &d + q(13, 3) - &z(2) * &x;
    &q(1, 3) * &n3 + &c2 * &n2 + &c1 * &n + &z(2) * &(&x * &x)
        - &q(8, 3) * &d3
        - &z(12) * &d2
        - &q(46, 3) * &d
        - z(7)
}

/// Printed B2 closed form at `(n, d, x)`.
pub fn b2_formula(n: i64, d: i64, x: i64) -> RationalValue {
    let (n, d, x) = (z(n), z(d), z(x));
    let n2 = &n * &n;
    let d3 = &(&d * &d) * &d;
    &(&q(1, 2) * &d + z(1)) * &n2 + &(&z(-2) * &d - z(2)) * &n - &q(8, 3) * &d3 + &q(32, 3) * &d
        - z(5)
        + &z(8) * &x
        - &z(8) * &(&d * &x)
        - &z(2) * &(&x * &x)
}

/// Printed increment `W(G) - W(B_base)` for a G family (zero for B1/B2).
pub fn increment_formula(spec: &CaterpillarSpec) -> RationalValue {
    let (n, d, x) = (spec.n as i64, spec.d as i64, spec.x as i64);
    let s = spec.s.unwrap_or(0);
    match spec.family {
        Family::B1 | Family::B2 => RationalValue::zero(),
        Family::G1 => q(n * n, 4) + q(3 * n, 2) + z(2 * d * d + 3 * d + 2 * s * s - s - 2 * x),
        Family::G2 => z((2 * d + 4) * n - 2 * d * d - 7 * d - 6 - 2 * x + 2 * s * s - s),
        Family::G3 => q(n * n, 4) + z(-d * n + 2 * d * d + 5 * d - 2 * x + 2 * s * s) + q(11, 4),
        Family::G4 => z((2 + d) * n - 2 * d * d - 3 * d - 1 + 2 * s * s - 2 * x),
    }
}

/// Printed base-family closed form on the spec's base caterpillar.
pub fn base_formula(spec: &CaterpillarSpec) -> RationalValue {
    let (nb, d, x) = (spec.base_n() as i64, spec.d as i64, spec.x as i64);
    match spec.family.base() {
        Base::B1 => b1_formula(nb, d, x),
        Base::B2 => b2_formula(nb, d, x),
    }
}

/// Exact value of the printed lemma for `spec`: the base closed form on the
/// reduced vertex count plus the family increment.
pub fn formula_value(spec: &CaterpillarSpec) -> Result<RationalValue> {
    spec.validate()?;
    Ok(base_formula(spec) + increment_formula(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b1_printed_values() {
        assert_eq!(b1_formula(18, 4, 1), z(1080));
        assert_eq!(b1_formula(20, 5, 2), q(4393, 3));
        assert!(!b1_formula(20, 5, 2).is_integer());
    }

    #[test]
    fn b2_printed_values() {
        assert_eq!(b2_formula(20, 4, 1), z(841));
        assert_eq!(b2_formula(20, 5, 1), z(841));
    }

    #[test]
    fn formula_value_checks_spec() {
        let ok = CaterpillarSpec::base(Family::B2, 20, 4, 1);
        assert_eq!(formula_value(&ok).unwrap(), z(841));
        let bad = CaterpillarSpec::base(Family::B2, 20, 9, 1);
        assert!(formula_value(&bad).is_err());
    }

    #[test]
    fn rational_display() {
        assert_eq!(q(4393, 3).to_string(), "4393/3");
        assert_eq!(q(-6, 4).to_string(), "-3/2");
        assert_eq!(z(7).to_string(), "7");
    }
}
