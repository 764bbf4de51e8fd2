//! Exact arithmetic on the extended nonnegative value domain `[0, ∞]`.
//!
//! [`ExtValue`] is the value object of every distance, weight and
//! approach table in the crate: an exact nonnegative rational (kept in
//! lowest terms) or the distinguished point at infinity. Infinity is a
//! separate constructor, never a sentinel numeral, so the conventions
//! `∞ ⊖ ∞ = 0` and `∞ + x = ∞` are pattern matched.
//!
//! The text encoding used by every file format and by the CLI is
//! `"n"`, `"p/q"` or `"inf"`; decimal notation such as `"1.5"` is
//! rejected.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::mutation;

/// Exact nonnegative rational in lowest terms.
pub type Rat = Ratio<BigUint>;

/// A point of `[0, ∞]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(Rat),
    Infinity,
}

/// Errors raised by the value domain.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValueError {
    /// `fold` received an empty list. Callers encode `sup ∅ = 0` and
    /// `inf ∅ = ∞` explicitly instead.
    #[error("cannot fold an empty list of values")]
    EmptyFold,
    #[error("cannot parse {input:?} as a value: {reason}")]
    Parse { input: String, reason: String },
}

/// Extremum selector for [`fold`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldMode {
    Min,
    Max,
}

impl ExtValue {
    pub fn zero() -> ExtValue {
        ExtValue::Finite(Rat::zero())
    }

    pub fn one() -> ExtValue {
        ExtValue::Finite(Rat::one())
    }

    pub fn infinity() -> ExtValue {
        ExtValue::Infinity
    }

    pub fn int(n: u64) -> ExtValue {
        ExtValue::Finite(Rat::from_integer(BigUint::from(n)))
    }

    /// Exact fraction `num/den`.
    ///
    /// Panics when `den` is zero; use the parser for untrusted input.
    pub fn rational(num: u64, den: u64) -> ExtValue {
        assert!(den != 0, "zero denominator");
        ExtValue::Finite(Rat::new(BigUint::from(num), BigUint::from(den)))
    }

    pub fn from_rat(r: Rat) -> ExtValue {
        ExtValue::Finite(r)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinity => None,
        }
    }

    /// Truncated minus: `self ⊖ other = max{self − other, 0}`, with the
    /// conventions `∞ ⊖ ∞ = 0` and `∞ ⊖ a = ∞` for finite `a`.
    pub fn tminus(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Infinity, ExtValue::Infinity) => {
                if mutation::tminus_inf_corrupted() {
                    ExtValue::Infinity
                } else {
                    ExtValue::zero()
                }
            }
            (ExtValue::Infinity, ExtValue::Finite(_)) => ExtValue::Infinity,
            (ExtValue::Finite(_), ExtValue::Infinity) => ExtValue::zero(),
            (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                if a > b {
                    ExtValue::Finite(a - b)
                } else {
                    ExtValue::zero()
                }
            }
        }
    }

    /// Exact halving; `∞/2 = ∞`.
    pub fn half(&self) -> ExtValue {
        match self {
            ExtValue::Infinity => ExtValue::Infinity,
            ExtValue::Finite(r) => {
                ExtValue::Finite(r / Rat::from_integer(BigUint::from(2u32)))
            }
        }
    }

    /// Best-effort conversion for report summaries only; the library
    /// itself never computes with floats.
    pub fn to_f64_lossy(&self) -> f64 {
        match self {
            ExtValue::Infinity => f64::INFINITY,
            ExtValue::Finite(r) => {
                let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
                let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
                n / d
            }
        }
    }
}

/// Exact sum; `∞` absorbs.
impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinity,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: rationals numerically, every rational below `∞`.
impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Infinity, ExtValue::Infinity) => Ordering::Equal,
            (ExtValue::Infinity, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::Finite(_), ExtValue::Infinity) => Ordering::Less,
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
        }
    }
}

/// The total order, exposed under the name the rest of the crate uses.
pub fn compare(a: &ExtValue, b: &ExtValue) -> Ordering {
    a.cmp(b)
}

/// Exact extremum of a nonempty list.
pub fn fold(values: &[ExtValue], mode: FoldMode) -> Result<ExtValue, ValueError> {
    let mut it = values.iter();
    let first = it.next().ok_or(ValueError::EmptyFold)?;
    let mut acc = first.clone();
    for v in it {
        let take = match mode {
            FoldMode::Min => v < &acc,
            FoldMode::Max => v > &acc,
        };
        if take {
            acc = v.clone();
        }
    }
    Ok(acc)
}

/// `d_L(a, b) = b ⊖ a`, the Lawvere metric on `[0, ∞]`.
pub fn d_l(a: &ExtValue, b: &ExtValue) -> ExtValue {
    b.tminus(a)
}

/// `d_R(a, b) = a ⊖ b`, the opposite of the Lawvere metric.
pub fn d_r(a: &ExtValue, b: &ExtValue) -> ExtValue {
    a.tminus(b)
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Infinity => write!(f, "inf"),
            ExtValue::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExtValue {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ValueError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t == "inf" {
            return Ok(ExtValue::Infinity);
        }
        let parse_uint = |part: &str, what: &str| -> Result<BigUint, ValueError> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                Err(err(&format!("{what} must be a decimal integer")))
            } else {
                BigUint::from_str(part).map_err(|e| err(&e.to_string()))
            }
        };
        match t.split_once('/') {
            None => Ok(ExtValue::Finite(Rat::from_integer(parse_uint(
                t,
                "the value",
            )?))),
            Some((p, q)) => {
                let num = parse_uint(p, "the numerator")?;
                let den = parse_uint(q, "the denominator")?;
                if den.is_zero() {
                    return Err(err("the denominator is zero"));
                }
                Ok(ExtValue::Finite(Rat::new(num, den)))
            }
        }
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> ExtValue {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&v("3/2") + &v("1/2"), v("2"));
        assert_eq!(&v("inf") + &v("0"), ExtValue::Infinity);
        assert_eq!(&v("1/3") + &v("1/6"), v("1/2"));
    }

    #[test]
    fn tminus_examples() {
        assert_eq!(v("5").tminus(&v("3")), v("2"));
        assert_eq!(v("inf").tminus(&v("inf")), v("0"));
        assert_eq!(v("3").tminus(&v("5")), v("0"));
        assert_eq!(v("inf").tminus(&v("7")), ExtValue::Infinity);
        assert_eq!(v("7").tminus(&v("inf")), v("0"));
    }

    #[test]
    fn fold_and_compare_examples() {
        let xs = [v("1"), v("1/2"), ExtValue::Infinity];
        assert_eq!(fold(&xs, FoldMode::Min).unwrap(), v("1/2"));
        assert_eq!(fold(&xs, FoldMode::Max).unwrap(), ExtValue::Infinity);
        assert_eq!(fold(&[], FoldMode::Min), Err(ValueError::EmptyFold));
        assert_eq!(compare(&v("2/4"), &v("1/2")), Ordering::Equal);
    }

    #[test]
    fn text_codec_is_exact() {
        for s in ["0", "17", "3/2", "7/3", "inf"] {
            assert_eq!(v(s).to_string(), s);
        }
        assert_eq!(v("2/4").to_string(), "1/2");
        assert_eq!(v("9/3").to_string(), "3");
        for bad in ["1.5", "-1", "", "1/0", "a", "1 / 2", "+2", "1e3"] {
            assert!(bad.parse::<ExtValue>().is_err(), "accepted {bad:?}");
        }
    }

    fn grid_value() -> impl Strategy<Value = ExtValue> {
        prop_oneof![
            8 => (0u64..=32, 1u64..=4).prop_map(|(k, q)| ExtValue::rational(k, q)),
            1 => Just(ExtValue::Infinity),
        ]
    }

    proptest! {
        // ⊖ is the residual of +, one-sided laws.
        #[test]
        fn residuation(a in grid_value(), b in grid_value()) {
            prop_assert!(&a + &b.tminus(&a) >= b);
            prop_assert!((&a + &b).tminus(&a) <= b);
        }

        // Full residuation equivalence away from the ∞-ambiguous corner.
        #[test]
        fn residuation_equivalence(a in grid_value(), b in grid_value(), c in grid_value()) {
            prop_assume!(a.is_finite() || c.is_finite());
            prop_assert_eq!(b.tminus(&a) <= c, b <= &a + &c);
        }

        // d_L and d_R satisfy the metric laws.
        #[test]
        fn lawvere_metric_laws(a in grid_value(), b in grid_value(), c in grid_value()) {
            prop_assert!(d_l(&a, &a).is_zero());
            prop_assert!(d_r(&a, &a).is_zero());
            prop_assert!(&d_l(&a, &b) + &d_l(&b, &c) >= d_l(&a, &c));
            prop_assert!(&d_r(&a, &b) + &d_r(&b, &c) >= d_r(&a, &c));
        }

        // Addition is exact, not saturating, on finite values.
        #[test]
        fn exact_addition(k1 in 0u64..=32, q1 in 1u64..=4, k2 in 0u64..=32, q2 in 1u64..=4) {
            let a = ExtValue::rational(k1, q1);
            let b = ExtValue::rational(k2, q2);
            prop_assert_eq!((&a + &b).tminus(&b), a);
        }
    }
}
