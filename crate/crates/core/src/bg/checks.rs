//! Checkers for the limit inequality D ≤ 0 at β̄ and for the strong
//! Bogomolov–Gieseker statement.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::afunction::{betabar_set, AFunction};
use super::{d_polynomial, d_value};
use crate::chern::ReducedClass;
use crate::error::Result;
use crate::exactnum::rational::{int, Rational};
use crate::exactnum::{certify_sign, QuadraticNumber, RationalInterval, SignClaim, SurdExpression};
use crate::report::{CheckReport, Entry, Status, Verdict};
use crate::threefold::{kappa, ThreefoldModel};
use crate::tilt::{mu, nu, SlopeValue};

/// Checks D^{0,ξ}_{A(β̄),β̄}(E) ≤ 0 at every β̄ of the class.
pub fn check_limit_bg(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    a: &AFunction,
    xi: &Rational,
    window: Option<&RationalInterval>,
) -> Result<CheckReport> {
    model.require_fano("limit BG check")?;
    let set = betabar_set(model, ch, a, window)?;
    let mut entries = Vec::new();
    for p in &set.points {
        let dv = d_value(model, ch, xi, &p.alpha.square(), &p.beta)?;
        let mut e = Entry::pass_if("betabar_point", dv.signum() <= 0)
            .with("beta", &p.beta)
            .with("alpha", &p.alpha)
            .with("multiplicity", p.multiplicity)
            .with("D", &dv);
        if p.alpha.is_zero() {
            e = e.with("boundary", true);
        }
        entries.push(e);
    }
    for iv in &set.intervals {
        for piece in a.pieces_in(iv) {
            let dpoly = d_polynomial(model, ch, xi, &piece.slope, &piece.intercept);
            let neg = SurdExpression::polynomial(-&dpoly);
            let w = RationalInterval::new(piece.from.clone(), piece.to.clone())?;
            let cert = certify_sign(&neg, &w, SignClaim::Nonnegative)?;
            let mut e = Entry::pass_if("betabar_interval", cert.certified())
                .with("interval", &w)
                .with_str("D_polynomial", &dpoly)
                .with("identically_zero", cert.identically_zero);
            if let Some(wit) = &cert.witness {
                e = e.with("witness", wit);
            }
            entries.push(e);
        }
    }
    let mut rep = if entries.is_empty() {
        CheckReport::new("bgcheck", Verdict::NotApplicable).note("the beta-bar set is empty")
    } else {
        CheckReport::from_entries("bgcheck", entries, Verdict::Holds)
    };
    rep.entries.insert(
        0,
        Entry::new("betabar_set", Status::Info).with_str("set", &set).with("window", &set.window).with_str("xi", xi),
    );
    Ok(rep.note("inequality checked at the numerical level of the class"))
}

/// Integers found between two endpoints under three conventions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerGap {
    pub left: QuadraticNumber,
    pub right: QuadraticNumber,
    /// Some integer k with left < k ≤ right.
    pub half_open: Option<String>,
    /// Some integer strictly between min and max.
    pub open: Option<String>,
    /// Some integer in [min, max].
    pub closed: Option<String>,
}

impl IntegerGap {
    pub fn new(left: QuadraticNumber, right: QuadraticNumber) -> Self {
        let k = right.floor();
        let half_open =
            (QuadraticNumber::from_rational(Rational::from_integer(k.clone())) > left).then(|| k.to_string());
        let (lo, hi) = if left <= right { (&left, &right) } else { (&right, &left) };
        let k_open: BigInt = lo.floor() + 1;
        let open =
            (QuadraticNumber::from_rational(Rational::from_integer(k_open.clone())) < *hi).then(|| k_open.to_string());
        let k_closed: BigInt = lo.ceil();
        let closed = (QuadraticNumber::from_rational(Rational::from_integer(k_closed.clone())) <= *hi)
            .then(|| k_closed.to_string());
        IntegerGap { left, right, half_open, open, closed }
    }

    /// True when no integer k satisfies left < k ≤ right.
    pub fn holds(&self) -> bool {
        self.half_open.is_none()
    }
}

/// Evaluates the hypotheses of the strong BG statement for a class at the
/// base point (β₀, α₀) and compares Δ̄/(d·ch₀)² with κ.
pub fn strong_bg_check(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    beta0: &Rational,
    alpha0_sq: &Rational,
) -> Result<CheckReport> {
    let check = "strongbg";
    if ch.ch0.is_zero() {
        return Ok(CheckReport::new(check, Verdict::NotApplicable).note("ch0 = 0"));
    }
    let nu_v = match nu(model, ch, beta0, alpha0_sq)? {
        SlopeValue::Finite(q) => q.as_rational().expect("rational").clone(),
        SlopeValue::PlusInfinity => {
            return Ok(CheckReport::new(check, Verdict::NotApplicable).note("tilt slope is infinite at the base point"))
        }
    };
    let k = kappa(model)?;
    let d = model.degree();
    let dc = d * &ch.ch0;
    let delta = ch.deltabar(model, &Rational::zero());
    let normalized = &delta / (&dc * &dc);
    let mu_v = match mu(model, ch, &Rational::zero()) {
        SlopeValue::Finite(q) => q.as_rational().expect("rational").clone(),
        SlopeValue::PlusInfinity => unreachable!("ch0 is nonzero"),
    };
    let mut rep = CheckReport::new(check, Verdict::Holds);
    let excluded = delta.is_zero();
    rep.push(
        Entry::pass_if("not_line_bundle_type", !excluded)
            .with_str("deltabar", &delta)
            .with_str("nu", &nu_v)
            .with_str("mu", &mu_v),
    );

    let root = QuadraticNumber::sqrt(&(&nu_v * &nu_v + alpha0_sq)).expect("nonnegative");
    let (left, right) = if ch.ch0.is_positive() {
        let l = root.add_rational(&(beta0 + &nu_v));
        let r = (-&root).add_rational(&(int(2) * &mu_v - beta0 - &nu_v));
        (l, r)
    } else {
        let l = root.add_rational(&(-beta0 - &nu_v));
        let r = (-&root).add_rational(&(int(-2) * &mu_v + beta0 + &nu_v));
        (l, r)
    };
    let gap = IntegerGap::new(left, right);
    rep.push(
        Entry::pass_if("no_integer_between", gap.holds())
            .with("left", &gap.left)
            .with("right", &gap.right)
            .with("integer_half_open", &gap.half_open)
            .with("integer_open", &gap.open)
            .with("integer_closed", &gap.closed),
    );

    let lhs = int(2) * &mu_v - (beta0 + &nu_v);
    let r = model.index_rational();
    rep.push(Entry::pass_if("index_bound", lhs < r).with_str("two_mu_minus_beta0_minus_nu", &lhs).with_str("r", &r));

    let hypotheses = rep.entries.iter().all(|e| e.status == Status::Pass);
    let conclusion = normalized >= k;
    rep.push(
        Entry::new("conclusion", if conclusion { Status::Pass } else { Status::Fail })
            .with_str("normalized_deltabar", &normalized)
            .with_str("kappa", &k)
            .with("equality", normalized == k),
    );
    rep.verdict = match (hypotheses, conclusion) {
        (true, true) => Verdict::Holds,
        (true, false) => Verdict::Counterexample,
        (false, _) => Verdict::NotApplicable,
    };
    if excluded {
        rep = rep.note("line-bundle-type class (deltabar = 0) is excluded");
    } else if hypotheses && normalized == k {
        rep = rep.note("holds (equality)");
    }
    Ok(rep.note("hypotheses checked at the numerical level of the class"))
}
