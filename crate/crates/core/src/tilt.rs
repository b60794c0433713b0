//! Slope and tilt-slope functions, the Ψ± bounds, wall circles, the loci
//! C(E) and Z(E), and the derivative of the BG expression along C(E).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::chern::ReducedClass;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::QuadraticNumber;
use crate::threefold::ThreefoldModel;

/// A slope value: finite exact, or +∞ when the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlopeValue {
    Finite(QuadraticNumber),
    PlusInfinity,
}

impl SlopeValue {
    pub fn rational(r: Rational) -> Self {
        SlopeValue::Finite(QuadraticNumber::from_rational(r))
    }

    pub fn finite(&self) -> Option<&QuadraticNumber> {
        match self {
            SlopeValue::Finite(q) => Some(q),
            SlopeValue::PlusInfinity => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.finite().and_then(QuadraticNumber::as_rational)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SlopeValue::PlusInfinity)
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeValue::Finite(q) => write!(f, "{q}"),
            SlopeValue::PlusInfinity => write!(f, "+inf"),
        }
    }
}

impl Serialize for SlopeValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SlopeValue::Finite(q) => match q.as_rational() {
                Some(r) => s.serialize_str(&r.to_string()),
                None => q.serialize(s),
            },
            SlopeValue::PlusInfinity => s.serialize_str("+inf"),
        }
    }
}

/// μ_{H,bH} = H²ch₁^{bH}/(d·ch₀).
pub fn mu(model: &ThreefoldModel, ch: &ReducedClass, b: &Rational) -> SlopeValue {
    if ch.ch0.is_zero() {
        return SlopeValue::PlusInfinity;
    }
    let num = &ch.h2ch1 - b * model.degree() * &ch.ch0;
    SlopeValue::rational(num / (model.degree() * &ch.ch0))
}

/// ν_{H,bH,α} = (Hch₂^{bH} − (α²/2)d·ch₀)/H²ch₁^{bH}. `alpha_sq = 0` is
/// accepted as a boundary evaluation.
pub fn nu(model: &ThreefoldModel, ch: &ReducedClass, b: &Rational, alpha_sq: &Rational) -> Result<SlopeValue> {
    if alpha_sq.is_negative() {
        return Err(Error::Domain(format!("alpha^2 = {alpha_sq} is negative")));
    }
    let (h2ch1, hch2, _) = ch.twist_polys(model).at(b);
    if h2ch1.is_zero() {
        return Ok(SlopeValue::PlusInfinity);
    }
    let num = hch2 - alpha_sq / int(2) * model.degree() * &ch.ch0;
    Ok(SlopeValue::rational(num / h2ch1))
}

fn finite_nu(model: &ThreefoldModel, ch: &ReducedClass, b: &Rational, alpha_sq: &Rational) -> Result<Rational> {
    match nu(model, ch, b, alpha_sq)? {
        SlopeValue::Finite(q) => Ok(q.as_rational().expect("rational slope").clone()),
        SlopeValue::PlusInfinity => Err(Error::Domain("Psi undefined at infinite slope".into())),
    }
}

/// Sign selector for Ψ±.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Ψ± = ν ± √(ν² + α² + δ).
pub fn psi(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    b: &Rational,
    alpha_sq: &Rational,
    delta: &Rational,
    branch: Branch,
) -> Result<QuadraticNumber> {
    if delta.is_negative() {
        return Err(Error::Domain(format!("delta = {delta} is negative")));
    }
    let v = finite_nu(model, ch, b, alpha_sq)?;
    Ok(psi_from_nu(&v, alpha_sq, delta, branch))
}

/// Ψ± evaluated from a known tilt slope.
pub fn psi_from_nu(nu: &Rational, alpha_sq: &Rational, delta: &Rational, branch: Branch) -> QuadraticNumber {
    let root = QuadraticNumber::sqrt(&(nu * nu + alpha_sq + delta)).expect("nonnegative radicand");
    let root = match branch {
        Branch::Plus => root,
        Branch::Minus => -root,
    };
    root.add_rational(nu)
}

/// A numerical wall: the circle (β − center)² + α² = radius².
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCircle {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub center_beta: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub radius_sq: Rational,
}

impl WallCircle {
    pub fn contains(&self, beta: &Rational, alpha_sq: &Rational) -> bool {
        let t = beta - &self.center_beta;
        &t * &t + alpha_sq == self.radius_sq
    }

    /// α² at a given β on the circle, if that β lies over the circle.
    pub fn alpha_sq_at(&self, beta: &Rational) -> Option<Rational> {
        let t = beta - &self.center_beta;
        let a = &self.radius_sq - &t * &t;
        a.is_positive().then_some(a)
    }

    pub fn radius(&self) -> QuadraticNumber {
        QuadraticNumber::sqrt(&self.radius_sq).expect("positive radius")
    }
}

/// The wall through (b0, α₀) for `ch`: center b0 + ν, radius² ν² + α₀².
pub fn wall_circle(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    b0: &Rational,
    alpha0_sq: &Rational,
) -> Result<WallCircle> {
    if !alpha0_sq.is_positive() {
        return Err(Error::Domain("wall base needs alpha^2 > 0".into()));
    }
    let v = match nu(model, ch, b0, alpha0_sq)? {
        SlopeValue::Finite(q) => q.as_rational().expect("rational").clone(),
        SlopeValue::PlusInfinity => return Err(Error::Domain("wall undefined at infinite slope".into())),
    };
    Ok(WallCircle { center_beta: b0 + &v, radius_sq: &v * &v + alpha0_sq })
}

/// An exact point (β, α) of a locus; at least one coordinate is rational, so
/// both lie in a common quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusPoint {
    pub beta: QuadraticNumber,
    pub alpha: QuadraticNumber,
}

impl LocusPoint {
    pub fn alpha_sq(&self) -> QuadraticNumber {
        self.alpha.square()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.beta.to_f64(), self.alpha.to_f64())
    }
}

/// The relation beta2·β² + beta1·β + beta0 − alpha_sq_coeff·α² = 0, i.e.
/// Hch₂^{βH} − (α²/2)d·ch₀ = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicLocus {
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub beta2: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub beta1: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub beta0: Rational,
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub alpha_sq_coeff: Rational,
    /// α₀² for C(E); absent for Z(E).
    #[serde(with = "crate::exactnum::rational::serde_rational_opt")]
    pub alpha_cap_sq: Option<Rational>,
}

impl ConicLocus {
    fn from_class(model: &ThreefoldModel, ch: &ReducedClass, cap: Option<Rational>) -> Self {
        let half_dc = model.degree() * &ch.ch0 / int(2);
        ConicLocus {
            beta2: half_dc.clone(),
            beta1: -&ch.h2ch1,
            beta0: ch.hch2.clone(),
            alpha_sq_coeff: half_dc,
            alpha_cap_sq: cap,
        }
    }

    pub fn is_vertical_line(&self) -> bool {
        self.beta2.is_zero()
    }

    pub fn is_degenerate(&self) -> bool {
        self.beta2.is_zero() && self.beta1.is_zero()
    }

    pub fn residual(&self, beta: &QuadraticNumber, alpha_sq: &QuadraticNumber) -> Result<QuadraticNumber> {
        let b2 = beta.square().scale(&self.beta2);
        let b1 = beta.scale(&self.beta1);
        let a = alpha_sq.scale(&self.alpha_sq_coeff);
        b2.checked_add(&b1)?.add_rational(&self.beta0).checked_sub(&a)
    }

    pub fn contains(&self, p: &LocusPoint) -> Result<bool> {
        if let Some(cap) = &self.alpha_cap_sq {
            if p.alpha.signum() < 0 || p.alpha_sq().cmp_rational(cap).is_gt() {
                return Ok(false);
            }
        }
        Ok(self.residual(&p.beta, &p.alpha_sq())?.is_zero())
    }

    /// β-coordinate of the vertical line (ch₀ = 0).
    pub fn vertical_beta(&self) -> Option<Rational> {
        (self.is_vertical_line() && !self.beta1.is_zero()).then(|| -&self.beta0 / &self.beta1)
    }

    /// Center μ and offset Δ̄/(d·ch₀)² of the hyperbola (β−μ)² − α² = offset.
    pub fn hyperbola(&self) -> Option<(Rational, Rational)> {
        if self.is_vertical_line() {
            return None;
        }
        let m = -&self.beta1 / (int(2) * &self.beta2);
        let offset = &m * &m - &self.beta0 / &self.beta2;
        Some((m, offset))
    }

    /// Points of the locus at a rational α, one per branch.
    pub fn points_at_alpha(&self, alpha: &Rational) -> Vec<LocusPoint> {
        let a = QuadraticNumber::from_rational(alpha.clone());
        if let Some(b) = self.vertical_beta() {
            return vec![LocusPoint { beta: QuadraticNumber::from_rational(b), alpha: a }];
        }
        let Some((m, offset)) = self.hyperbola() else {
            return Vec::new();
        };
        let rad = alpha * alpha + &offset;
        if rad.is_negative() {
            return Vec::new();
        }
        let root = QuadraticNumber::sqrt(&rad).expect("nonnegative");
        let mut out = vec![LocusPoint { beta: (-&root).add_rational(&m), alpha: a.clone() }];
        if !rad.is_zero() {
            out.push(LocusPoint { beta: root.add_rational(&m), alpha: a });
        }
        out
    }

    /// Points of the locus at a rational β with α ≥ 0.
    pub fn point_at_beta(&self, beta: &Rational) -> Option<LocusPoint> {
        if self.alpha_sq_coeff.is_zero() {
            return None;
        }
        let a2 = (&self.beta2 * beta * beta + &self.beta1 * beta + &self.beta0) / &self.alpha_sq_coeff;
        if a2.is_negative() {
            return None;
        }
        Some(LocusPoint {
            beta: QuadraticNumber::from_rational(beta.clone()),
            alpha: QuadraticNumber::sqrt(&a2).expect("nonnegative"),
        })
    }

    /// `n` points at evenly spaced rational α in [0, alpha_max], all branches,
    /// ordered by branch then α.
    pub fn sample_by_alpha(&self, alpha_max: &Rational, n: usize) -> Vec<LocusPoint> {
        let n = n.max(2);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for k in 0..n {
            let alpha = alpha_max * rat(k as i64, (n - 1) as i64);
            let pts = self.points_at_alpha(&alpha);
            let mut it = pts.into_iter();
            if let Some(p) = it.next() {
                left.push(p);
            }
            if let Some(p) = it.next() {
                right.push(p);
            }
        }
        right.reverse();
        left.extend(right);
        left
    }

    /// `n` points at evenly spaced rational β in `[lo, hi]` where α² ≥ 0.
    pub fn sample_by_beta(&self, lo: &Rational, hi: &Rational, n: usize) -> Vec<LocusPoint> {
        let n = n.max(2);
        (0..n)
            .filter_map(|k| {
                let beta = lo + (hi - lo) * rat(k as i64, (n - 1) as i64);
                self.point_at_beta(&beta)
            })
            .collect()
    }
}

/// C(E) for a class with ν_{H,0,α₀}(E) = 0, capped at α ≤ α₀.
pub fn c_locus(model: &ThreefoldModel, ch: &ReducedClass, alpha0_sq: &Rational) -> Result<ConicLocus> {
    if !alpha0_sq.is_positive() {
        return Err(Error::Domain("C(E) needs alpha0^2 > 0".into()));
    }
    match nu(model, ch, &Rational::zero(), alpha0_sq)? {
        SlopeValue::Finite(q) if q.is_zero() => {}
        v => {
            return Err(Error::Domain(format!(
                "C(E) needs tilt slope 0 at (0, alpha0), found {v}; recenter the class first"
            )))
        }
    }
    Ok(ConicLocus::from_class(model, ch, Some(alpha0_sq.clone())))
}

/// A class moved so that its tilt slope vanishes at (0, α₀).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recentered {
    pub class: ReducedClass,
    /// The twist applied: b₀ + ν.
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub shift: Rational,
    /// The new α₀² = ν² + α².
    #[serde(with = "crate::exactnum::rational::serde_rational")]
    pub alpha0_sq: Rational,
}

/// Twists `ch` by b₀ + ν so that the base point (b₀, α) moves to (0, α₀)
/// with ν = 0 there.
pub fn recenter(model: &ThreefoldModel, ch: &ReducedClass, b0: &Rational, alpha_sq: &Rational) -> Result<Recentered> {
    let v = match nu(model, ch, b0, alpha_sq)? {
        SlopeValue::Finite(q) => q.as_rational().expect("rational").clone(),
        SlopeValue::PlusInfinity => return Err(Error::Domain("cannot recenter at infinite tilt slope".into())),
    };
    let shift = b0 + &v;
    Ok(Recentered { class: ch.twist(model, &shift), alpha0_sq: &v * &v + alpha_sq, shift })
}

/// Z(E): Hch₂^{βH} − (α²/2)d·ch₀ = 0 with no cap.
pub fn z_locus(model: &ThreefoldModel, ch: &ReducedClass) -> ConicLocus {
    ConicLocus::from_class(model, ch, None)
}

/// The branch of C(E) through (0, α₀), sampled from α = 0 up to α₀. Interior
/// points use rational α; the top point is (0, α₀) exactly.
pub fn sample_c_locus(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    alpha0_sq: &Rational,
    n: usize,
) -> Result<Vec<LocusPoint>> {
    let locus = c_locus(model, ch, alpha0_sq)?;
    let alpha0 = QuadraticNumber::sqrt(alpha0_sq).expect("positive");
    let top_lower = match alpha0.as_rational() {
        Some(a) => a.clone(),
        None => {
            // A small-denominator rational just below α₀ keeps the radicands small.
            let lo = alpha0.enclosure(&rat(1, 1 << 30)).lo().clone();
            crate::exactnum::rational::simplest_between(&(&lo - rat(1, 1 << 24)), &lo)
        }
    };
    let n = n.max(2);
    let mut pts = Vec::with_capacity(n);
    let mu_sign = locus.hyperbola().map(|(m, _)| crate::exactnum::rational::sign(&m));
    for k in 0..n - 1 {
        let alpha = &top_lower * rat(k as i64, (n - 1) as i64);
        let cands = locus.points_at_alpha(&alpha);
        // The branch through β = 0 lies on the side of 0 opposite to μ.
        let chosen = match (mu_sign, cands.len()) {
            (Some(s), 2) if s < 0 => cands.into_iter().nth(1),
            (_, _) => cands.into_iter().next(),
        };
        if let Some(p) = chosen {
            pts.push(p);
        }
    }
    pts.push(LocusPoint { beta: QuadraticNumber::zero(), alpha: alpha0 });
    Ok(pts)
}

/// d/dα of D^{0,ξ}_{α,β}(E) along C(E): −α(Δ̄ + 3ξ(d·ch₀)²)/(3H²ch₁^{βH}).
pub fn d_dalpha_along_c(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    xi: &Rational,
    point: &LocusPoint,
    locus: &ConicLocus,
) -> Result<QuadraticNumber> {
    let res = locus.residual(&point.beta, &point.alpha_sq())?;
    if !res.is_zero() {
        return Err(Error::OffLocus(res.to_string()));
    }
    let denom = ch.twist_polys(model).h2ch1.eval_quadratic(&point.beta);
    if denom.is_zero() {
        return Err(Error::Domain("H^2 ch1 vanishes at this point".into()));
    }
    let dc = model.degree() * &ch.ch0;
    let k = ch.deltabar(model, &Rational::zero()) + int(3) * xi * &dc * &dc;
    let num = point.alpha.scale(&-k);
    num.checked_div(&denom.scale(&int(3)))
}

/// dβ/dα = −α·d·ch₀/H²ch₁^{βH} along the locus.
pub fn dbeta_dalpha(model: &ThreefoldModel, ch: &ReducedClass, point: &LocusPoint) -> Result<QuadraticNumber> {
    let denom = ch.twist_polys(model).h2ch1.eval_quadratic(&point.beta);
    if denom.is_zero() {
        return Err(Error::Domain("H^2 ch1 vanishes at this point".into()));
    }
    point.alpha.scale(&-(model.degree() * &ch.ch0)).checked_div(&denom)
}
