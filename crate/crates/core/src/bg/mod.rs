//! The modified Bogomolov–Gieseker expression D, the correction Λ, Euler
//! characteristics, the central charge, the auxiliary f/p/q functions, and
//! the checkers built on them.

pub mod afunction;
pub mod checks;
pub mod xi;

pub use afunction::{betabar_all_roots, betabar_set, AFunction, AffinePiece, BetaBarSet};
pub use checks::{check_limit_bg, strong_bg_check, IntegerGap};
pub use xi::{xi_min, xi_min_params, XiResult};

use num_traits::Signed;
use serde::Serialize;

use crate::chern::ReducedClass;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::{Polynomial, QuadraticNumber};
use crate::threefold::ThreefoldModel;

/// Λ·ch₁ = (c₂·ch₁)/12 − (c₂·H)(H²·ch₁)/(12d).
pub fn lambda_pair(model: &ThreefoldModel, ch: &ReducedClass) -> Rational {
    &ch.c2ch1 / int(12) - model.c2h() * &ch.h2ch1 / (int(12) * model.degree())
}

/// D^{0,ξ}_{α,β} = ch₃^{βH} + Λ·ch₁ − (ξ + α²/6)·H²ch₁^{βH}, exact in a
/// quadratic field.
pub fn d_value(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    xi: &Rational,
    alpha_sq: &QuadraticNumber,
    beta: &QuadraticNumber,
) -> Result<QuadraticNumber> {
    model.require_fano("D")?;
    let (h2ch1, _, ch3) = ch.twist_polys(model).at_quadratic(beta);
    let coeff = alpha_sq.scale(&rat(1, 6)).add_rational(xi);
    let lam = lambda_pair(model, ch);
    ch3.add_rational(&lam).checked_sub(&coeff.checked_mul(&h2ch1)?)
}

/// [`d_value`] at rational β and α².
pub fn d_value_rational(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    xi: &Rational,
    alpha_sq: &Rational,
    beta: &Rational,
) -> Result<Rational> {
    let v = d_value(
        model,
        ch,
        xi,
        &QuadraticNumber::from_rational(alpha_sq.clone()),
        &QuadraticNumber::from_rational(beta.clone()),
    )?;
    Ok(v.as_rational().expect("rational inputs").clone())
}

/// D along β with α = s·β + c, as a cubic polynomial in β.
pub fn d_polynomial(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    xi: &Rational,
    slope: &Rational,
    intercept: &Rational,
) -> Polynomial {
    let tp = ch.twist_polys(model);
    let alpha = Polynomial::linear(slope.clone(), intercept.clone());
    let coeff = &(&alpha * &alpha).scale(&rat(1, 6)) + &Polynomial::constant(xi.clone());
    let lam = Polynomial::constant(lambda_pair(model, ch));
    &(&tp.ch3 + &lam) - &(&coeff * &tp.h2ch1)
}

/// χ(E) = ch₃ + (r/2)Hch₂ + (r²H²ch₁ + c₂ch₁)/12 + ch₀.
pub fn todd_chi(model: &ThreefoldModel, ch: &ReducedClass) -> Result<Rational> {
    model.require_fano("Euler characteristic")?;
    let r = model.index_rational();
    Ok(&ch.ch3 + &r / int(2) * &ch.hch2 + (&r * &r * &ch.h2ch1 + &ch.c2ch1) / int(12) + &ch.ch0)
}

/// χ(E, E) = ch₀² − (r/2)·H·Δ(E).
pub fn chi_self(model: &ThreefoldModel, ch: &ReducedClass) -> Result<Rational> {
    model.require_fano("Euler characteristic")?;
    Ok(&ch.ch0 * &ch.ch0 - model.index_rational() / int(2) * ch.h_delta())
}

/// The three functions of β in the expansion of χ(E(−H)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFunctions {
    pub f0: Polynomial,
    pub f1: Polynomial,
    pub f2: Polynomial,
}

/// f₀, f₁, f₂ as polynomials in β for index r and degree d.
pub fn f_polynomials(r: &Rational, d: &Rational) -> FFunctions {
    let c = rat(1, 2) - r / int(2) + r * r / int(12) + int(2) / (r * d);
    let half_r_minus_1 = r / int(2) - int(1);
    let c0 = rat(-1, 6) + r / int(4) - r * r / int(12) - int(2) / (r * d) + int(1) / d;
    FFunctions {
        f2: Polynomial::new(vec![half_r_minus_1.clone(), int(1)]),
        f1: Polynomial::new(vec![c.clone(), half_r_minus_1.clone(), rat(1, 2)]),
        f0: Polynomial::new(vec![c0, c, half_r_minus_1 / int(2), rat(1, 6)]),
    }
}

/// Classification range of the degree for each Fano index.
pub fn degree_in_classification_range(r: u32, d: &Rational) -> bool {
    let range = match r {
        4 => (1, 1),
        3 => (1, 2),
        2 => (1, 7),
        1 => (1, 62),
        _ => return false,
    };
    d.is_integer() && *d >= int(range.0) && *d <= int(range.1)
}

/// (f₀(β), f₁(β), f₂(β)) with a warning flag when d is outside the
/// classification range for r.
pub fn f_functions(r: u32, d: &Rational, beta: &Rational) -> Result<(Rational, Rational, Rational, bool)> {
    if !(1..=4).contains(&r) {
        return Err(Error::Domain(format!("index {r} outside 1..=4")));
    }
    if !d.is_positive() {
        return Err(Error::Domain(format!("degree {d} must be positive")));
    }
    let f = f_polynomials(&int(i64::from(r)), d);
    Ok((f.f0.eval(beta), f.f1.eval(beta), f.f2.eval(beta), degree_in_classification_range(r, d)))
}

/// Both evaluations of χ(E(−H)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiMinusH {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub direct: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub decomposed: Rational,
}

/// χ(E(−H)) computed from the class twisted by −H, and from the five-term
/// expansion around βH.
pub fn chi_minus_h(model: &ThreefoldModel, ch: &ReducedClass, beta: &Rational) -> Result<ChiMinusH> {
    model.require_fano("Euler characteristic")?;
    let direct = todd_chi(model, &ch.twist(model, &int(1)))?;
    let f = f_polynomials(&model.index_rational(), model.degree());
    let (h2ch1, hch2, ch3) = ch.twist_polys(model).at(beta);
    let decomposed = ch3
        + f.f2.eval(beta) * hch2
        + lambda_pair(model, ch)
        + f.f1.eval(beta) * h2ch1
        + f.f0.eval(beta) * model.degree() * &ch.ch0;
    Ok(ChiMinusH { direct, decomposed })
}

/// p = Ā²/6 + β̄²/2 − 1/42 and q = β̄(Ā²/2 + β̄²/6 − 1/42).
pub fn pq_functions(betabar: &Rational, abar: &Rational) -> (Rational, Rational) {
    let a2 = abar * abar;
    let b2 = betabar * betabar;
    let p = &a2 / int(6) + &b2 / int(2) - rat(1, 42);
    let q = betabar * (&a2 / int(2) + &b2 / int(6) - rat(1, 42));
    (p, q)
}

/// p and q along a piece where Ā = s·β̄ + c, as polynomials in β̄.
pub fn pq_polynomials(slope: &Rational, intercept: &Rational) -> (Polynomial, Polynomial) {
    let a = Polynomial::linear(slope.clone(), intercept.clone());
    let a2 = &a * &a;
    let x = Polynomial::x();
    let x2 = &x * &x;
    let c = Polynomial::constant(rat(-1, 42));
    let p = &(&a2.scale(&rat(1, 6)) + &x2.scale(&rat(1, 2))) + &c;
    let q = &x * &(&(&a2.scale(&rat(1, 2)) + &x2.scale(&rat(1, 6))) + &c);
    (p, q)
}

/// The central charge at (β, α) with parameters (a, b).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralCharge {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub re: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub im: Rational,
    pub valid: bool,
}

/// Z = (−ch₃^{βH} + b·Hch₂^{βH} − Λ·ch₁ + a·H²ch₁^{βH}) + i(Hch₂^{βH} − (α²/2)d·ch₀),
/// valid when a > ξ + α²/6 + α|b|/2.
pub fn central_charge(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    beta: &Rational,
    alpha_sq: &Rational,
    a: &Rational,
    b: &Rational,
    xi: &Rational,
) -> Result<CentralCharge> {
    model.require_fano("central charge")?;
    if alpha_sq.is_negative() {
        return Err(Error::Domain(format!("alpha^2 = {alpha_sq} is negative")));
    }
    let (h2ch1, hch2, ch3) = ch.twist_polys(model).at(beta);
    let re = -ch3 + b * &hch2 - lambda_pair(model, ch) + a * &h2ch1;
    let im = hch2 - alpha_sq / int(2) * model.degree() * &ch.ch0;
    let slack = a - xi - alpha_sq / int(6);
    let alpha = QuadraticNumber::sqrt(alpha_sq).expect("nonnegative");
    let rhs = alpha.scale(&(b.abs() / int(2)));
    let valid = rhs.cmp_rational(&slack).is_lt();
    Ok(CentralCharge { re, im, valid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{ideal_sheaf, line_bundle, skyscraper};
    use crate::io::bundled_model;

    #[test]
    fn lambda_on_exceptional_divisor() {
        let m = bundled_model("blowup_p3_point").unwrap();
        let e = crate::chern::ChernClass::new(int(0), vec![int(0), int(1)], vec![int(0), int(0)], int(0));
        assert_eq!(lambda_pair(&m, &e.reduce(&m)), rat(-1, 7));
        assert_eq!(lambda_pair(&m, &line_bundle(&m, 3).reduce(&m)), int(0));
    }

    #[test]
    fn d_value_examples() {
        let m = bundled_model("p2xp1").unwrap();
        let o = line_bundle(&m, 2).reduce(&m);
        assert_eq!(d_value_rational(&m, &o, &int(0), &int(0), &int(2)).unwrap(), int(0));
        let i = ideal_sheaf(&m, 0, 4).reduce(&m);
        assert_eq!(d_value_rational(&m, &i, &int(0), &int(0), &int(0)).unwrap(), int(-4));
    }

    #[test]
    fn euler_characteristics() {
        let p3 = bundled_model("p3").unwrap();
        assert_eq!(todd_chi(&p3, &line_bundle(&p3, 0).reduce(&p3)).unwrap(), int(1));
        assert_eq!(todd_chi(&p3, &line_bundle(&p3, 1).reduce(&p3)).unwrap(), int(4));
        assert_eq!(todd_chi(&p3, &line_bundle(&p3, 2).reduce(&p3)).unwrap(), int(10));
        let c = chi_minus_h(&p3, &line_bundle(&p3, 0).reduce(&p3), &rat(1, 3)).unwrap();
        assert_eq!(c.direct, int(0));
        assert_eq!(c.decomposed, int(0));
        assert_eq!(chi_self(&p3, &ideal_sheaf(&p3, 0, 3).reduce(&p3)).unwrap(), int(1));
    }

    #[test]
    fn f_functions_match_printed_cases() {
        let f = f_polynomials(&int(4), &int(1));
        assert_eq!(f.f0, Polynomial::new(vec![int(0), rat(1, 3), rat(1, 2), rat(1, 6)]));
        assert_eq!(f.f1, Polynomial::new(vec![rat(1, 3), int(1), rat(1, 2)]));
        let f = f_polynomials(&int(2), &int(6));
        assert_eq!(f.f0, Polynomial::new(vec![int(0), int(0), int(0), rat(1, 6)]));
        // r = 1: f₀ = (β − 1/2)³/6 + ((48 − d)/(24d))(β − 1/2)
        for d in [1i64, 17, 48, 62] {
            let f = f_polynomials(&int(1), &int(d));
            let s = Polynomial::linear(int(1), rat(-1, 2));
            let k = rat(48 - d, 24 * d);
            let f0 = &s.pow(3).scale(&rat(1, 6)) + &s.scale(&k);
            let f1 = &s.pow(2).scale(&rat(1, 2)) + &Polynomial::constant(k);
            assert_eq!(f.f0, f0);
            assert_eq!(f.f1, f1);
        }
    }

    #[test]
    fn p_rewrite_on_left_piece() {
        for k in -50..0 {
            let b = rat(k, 100);
            let (p, _) = pq_functions(&b, &(int(1) + &b));
            let four_b_plus_1 = int(4) * &b + int(1);
            assert_eq!(p, &four_b_plus_1 * &four_b_plus_1 / int(24) + rat(17, 168));
        }
    }

    #[test]
    fn central_charge_of_point() {
        let m = bundled_model("blowup_p3_point").unwrap();
        let z =
            central_charge(&m, &skyscraper(&m, 1).reduce(&m), &rat(1, 3), &int(1), &int(5), &int(1), &int(0)).unwrap();
        assert_eq!((z.re, z.im, z.valid), (int(-1), int(0), true));
        // a = ξ + α²/6 + α|b|/2 exactly: not valid.
        let z =
            central_charge(&m, &skyscraper(&m, 1).reduce(&m), &int(0), &int(4), &rat(5, 3), &int(1), &int(0)).unwrap();
        assert!(!z.valid);
    }
}
