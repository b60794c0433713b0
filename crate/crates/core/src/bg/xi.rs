//! The least ξ ≥ 0 for which the three inequalities in f₀, f₁ hold on [0, 1].

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::f_polynomials;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::{certify_sign, Polynomial, RationalInterval, SignClaim, SurdExpression, Witness};
use crate::report::{CheckReport, Entry, Status, Verdict};
use crate::threefold::{kappa, ThreefoldModel};

/// The enclosure is narrowed to width at most 2⁻³⁰.
const BISECTION_STEPS: u32 = 30;
const MAX_DOUBLINGS: u32 = 64;

/// One of the three inequalities constraining ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiCondition {
    /// f₁ + ξ ≥ 0.
    First,
    /// (1 − β)(f₁ + ξ) + 2f₀ ≥ 0.
    Second,
    /// f₀ + √κ·(f₁ + ξ) ≥ 0.
    Third,
}

/// Where a condition fails just below the reported ξ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalityWitness {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub xi: Rational,
    pub condition: XiCondition,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiResult {
    /// Certified feasible value: the upper end of the enclosure, or exactly 0.
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub xi: Rational,
    /// The least feasible ξ lies in this interval.
    pub enclosure: RationalInterval,
    pub exact_zero: bool,
    /// f₁ + ξ > 0 on all of [0, 1].
    pub strict_positivity: bool,
    pub minimality: Option<MinimalityWitness>,
    pub r: u32,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub d: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub kappa: Rational,
}

impl XiResult {
    pub fn to_report(&self) -> CheckReport {
        let mut rep = CheckReport::new("xi", Verdict::Certified);
        rep.push(
            Entry::new("xi", Status::Pass)
                .with_str("xi", &self.xi)
                .with("enclosure", &self.enclosure)
                .with_str("enclosure_width", self.enclosure.width())
                .with("exact_zero", self.exact_zero)
                .with_str("r", self.r)
                .with_str("d", &self.d)
                .with_str("kappa", &self.kappa),
        );
        rep.push(Entry::new("strict_positivity", Status::Info).with("holds", self.strict_positivity));
        if let Some(m) = &self.minimality {
            rep.push(Entry::new("minimality_witness", Status::Info).with("witness", m));
        }
        rep
    }
}

struct Conditions {
    f0: Polynomial,
    f1: Polynomial,
    kappa: Rational,
}

impl Conditions {
    fn shifted_f1(&self, xi: &Rational) -> Polynomial {
        &self.f1 + &Polynomial::constant(xi.clone())
    }

    fn expressions(&self, xi: &Rational) -> Result<[(XiCondition, SurdExpression); 3]> {
        let g = self.shifted_f1(xi);
        let one_minus = Polynomial::linear(int(-1), int(1));
        let second = &(&one_minus * &g) + &self.f0.scale(&int(2));
        Ok([
            (XiCondition::First, SurdExpression::polynomial(g.clone())),
            (XiCondition::Second, SurdExpression::polynomial(second)),
            (XiCondition::Third, SurdExpression::new(self.f0.clone(), self.kappa.clone(), g)?),
        ])
    }

    /// The first condition failing at ξ, with a witness point.
    fn failure(&self, xi: &Rational) -> Result<Option<(XiCondition, Witness)>> {
        let w = unit_interval();
        for (c, e) in self.expressions(xi)? {
            let cert = certify_sign(&e, &w, SignClaim::Nonnegative)?;
            if !cert.certified() {
                let wit = cert.witness.ok_or(Error::Inconclusive(0))?;
                return Ok(Some((c, wit)));
            }
        }
        Ok(None)
    }

    fn feasible(&self, xi: &Rational) -> Result<bool> {
        Ok(self.failure(xi)?.is_none())
    }
}

fn unit_interval() -> RationalInterval {
    RationalInterval::new(int(0), int(1)).expect("ordered")
}

/// Least ξ ≥ 0 with f₁ + ξ ≥ 0, (1 − β)(f₁ + ξ) + 2f₀ ≥ 0 and
/// f₀ + √κ(f₁ + ξ) ≥ 0 for all β ∈ [0, 1], for index r, degree d and κ.
pub fn xi_min_params(r: u32, d: &Rational, kappa: &Rational) -> Result<XiResult> {
    if !(1..=4).contains(&r) {
        return Err(Error::Domain(format!("index {r} outside 1..=4")));
    }
    if !d.is_positive() || !kappa.is_positive() {
        return Err(Error::Domain("degree and kappa must be positive".into()));
    }
    let f = f_polynomials(&int(i64::from(r)), d);
    if f.f0.eval(&int(1)).is_negative() {
        return Err(Error::Domain("no finite xi satisfies (ii) at beta=1".into()));
    }
    let cond = Conditions { f0: f.f0, f1: f.f1, kappa: kappa.clone() };
    let zero = Rational::zero();
    let (lo, hi, exact_zero) = if cond.feasible(&zero)? {
        (zero.clone(), zero, true)
    } else {
        let mut lo = zero;
        let mut hi = int(1);
        let mut n = 0;
        while !cond.feasible(&hi)? {
            lo = hi.clone();
            hi *= int(2);
            n += 1;
            if n > MAX_DOUBLINGS {
                return Err(Error::Inconclusive(n as usize));
            }
        }
        let target = Rational::new(1.into(), num_bigint::BigInt::from(1u64) << BISECTION_STEPS);
        while &hi - &lo > target {
            let mid = (&lo + &hi) / int(2);
            if cond.feasible(&mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi, false)
    };
    let strict =
        certify_sign(&SurdExpression::polynomial(cond.shifted_f1(&hi)), &unit_interval(), SignClaim::Positive)?
            .certified();
    let minimality = if exact_zero {
        None
    } else {
        let below = &hi - rat(1, 1_000_000);
        cond.failure(&below)?.map(|(condition, witness)| MinimalityWitness { xi: below, condition, witness })
    };
    Ok(XiResult {
        xi: hi.clone(),
        enclosure: RationalInterval::new(lo, hi)?,
        exact_zero,
        strict_positivity: strict,
        minimality,
        r,
        d: d.clone(),
        kappa: kappa.clone(),
    })
}

/// [`xi_min_params`] for a model, with κ computed from its lattice data.
pub fn xi_min(model: &ThreefoldModel) -> Result<XiResult> {
    model.require_fano("xi")?;
    xi_min_params(model.index(), model.degree(), &kappa(model)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(r: u32, d: i64) -> Rational {
        rat(3, 2) / (int(i64::from(r)) * int(d))
    }

    #[test]
    fn vanishes_on_small_degrees() {
        assert!(xi_min_params(4, &int(1), &k(4, 1)).unwrap().exact_zero);
        assert!(xi_min_params(3, &int(2), &k(3, 2)).unwrap().exact_zero);
        for d in 1..=6 {
            assert!(xi_min_params(2, &int(d), &k(2, d)).unwrap().exact_zero, "d = {d}");
        }
    }

    #[test]
    fn positive_for_degree_62() {
        let x = xi_min_params(1, &int(62), &rat(3, 124)).unwrap();
        assert!(!x.exact_zero);
        assert!(x.enclosure.width() <= rat(1, 1_000_000_000));
        assert!(x.minimality.is_some());
        assert!(x.strict_positivity);
    }
}
