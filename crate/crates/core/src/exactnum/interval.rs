//! Closed intervals with rational endpoints and inclusion-monotone arithmetic.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr", into = "IntervalRepr")]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    #[serde(with = "rational::serde_rational")]
    lo: Rational,
    #[serde(with = "rational::serde_rational")]
    hi: Rational,
}

impl TryFrom<IntervalRepr> for RationalInterval {
    type Error = Error;
    fn try_from(r: IntervalRepr) -> Result<Self> {
        Self::new(r.lo, r.hi)
    }
}

impl From<RationalInterval> for IntervalRepr {
    fn from(i: RationalInterval) -> Self {
        IntervalRepr { lo: i.lo, hi: i.hi }
    }
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, o: &Self) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    /// True when the interval lies strictly inside `(a, b)`.
    pub fn strictly_inside(&self, a: &Rational, b: &Rational) -> bool {
        a < &self.lo && &self.hi < b
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&o.lo).clone();
        let hi = (&self.hi).min(&o.hi).clone();
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn hull(&self, o: &Self) -> Self {
        Self { lo: (&self.lo).min(&o.lo).clone(), hi: (&self.hi).max(&o.hi).clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Self { lo, hi }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_negative() {
            Self { lo: &self.hi * r, hi: &self.lo * r }
        } else {
            Self { lo: &self.lo * r, hi: &self.hi * r }
        }
    }

    pub fn shift(&self, r: &Rational) -> Self {
        Self { lo: &self.lo + r, hi: &self.hi + r }
    }

    /// Tight enclosure of `x²` (nonnegative even when the interval straddles 0).
    pub fn square(&self) -> Self {
        let a = self.lo.abs();
        let b = self.hi.abs();
        let hi = (&a).max(&b).clone();
        let hi = &hi * &hi;
        let lo = if self.lo.is_negative() && self.hi.is_positive() {
            Rational::zero()
        } else {
            let m = (&a).min(&b).clone();
            &m * &m
        };
        Self { lo, hi }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational::to_f64(&self.lo), rational::to_f64(&self.hi))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
