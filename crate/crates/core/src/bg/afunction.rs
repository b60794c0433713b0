//! Piecewise-linear A-functions and the β̄ relation
//! Hch₂^{β̄H} − (A(β̄)²/2)·d·ch₀ = 0.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::ReducedClass;
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, int, serde_rational, Rational};
use crate::exactnum::{QuadraticNumber, RationalInterval};
use crate::threefold::ThreefoldModel;

/// One affine piece β ↦ slope·β + intercept on [from, to].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffinePiece {
    #[serde(with = "serde_rational")]
    pub from: Rational,
    #[serde(with = "serde_rational")]
    pub to: Rational,
    #[serde(with = "serde_rational")]
    pub slope: Rational,
    #[serde(with = "serde_rational")]
    pub intercept: Rational,
}

impl AffinePiece {
    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    pub fn eval_quadratic(&self, x: &QuadraticNumber) -> QuadraticNumber {
        x.scale(&self.slope).add_rational(&self.intercept)
    }

    /// The same affine map moved right by `k`.
    pub fn shifted(&self, k: &Rational) -> Self {
        AffinePiece {
            from: &self.from + k,
            to: &self.to + k,
            slope: self.slope.clone(),
            intercept: &self.intercept - &self.slope * k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AFunctionRepr {
    periodic: bool,
    pieces: Vec<AffinePiece>,
}

/// A continuous nonnegative piecewise-linear function of β, optionally
/// periodic with period 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AFunctionRepr", into = "AFunctionRepr")]
pub struct AFunction {
    periodic: bool,
    pieces: Vec<AffinePiece>,
}

impl TryFrom<AFunctionRepr> for AFunction {
    type Error = Error;
    fn try_from(r: AFunctionRepr) -> Result<Self> {
        AFunction::new(r.pieces, r.periodic)
    }
}

impl From<AFunction> for AFunctionRepr {
    fn from(a: AFunction) -> Self {
        AFunctionRepr { periodic: a.periodic, pieces: a.pieces }
    }
}

impl AFunction {
    pub fn new(pieces: Vec<AffinePiece>, periodic: bool) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidAFunction(m));
        if pieces.is_empty() {
            return bad("no pieces".into());
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.from >= p.to {
                return bad(format!("piece {i} has empty domain [{}, {}]", p.from, p.to));
            }
            for x in [&p.from, &p.to] {
                let v = p.eval(x);
                if v.is_negative() {
                    return bad(format!("negative value {v} at beta = {x}"));
                }
            }
        }
        for (i, w) in pieces.windows(2).enumerate() {
            if w[0].to != w[1].from {
                return bad(format!("pieces {i} and {} are not contiguous", i + 1));
            }
            if w[0].eval(&w[0].to) != w[1].eval(&w[1].from) {
                return bad(format!("discontinuity at beta = {}", w[0].to));
            }
        }
        if periodic {
            let first = &pieces[0];
            let last = pieces.last().expect("nonempty");
            if &last.to - &first.from != int(1) {
                return bad("periodic pieces must span exactly one period".into());
            }
            if last.eval(&last.to) != first.eval(&first.from) {
                return bad("periodic function does not match across one period".into());
            }
        }
        Ok(Self { periodic, pieces })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner().to_string();
            if inner.contains("invalid A-function") {
                Error::InvalidAFunction(inner)
            } else {
                Error::Parse(format!("A-function at {}: {inner}", e.path()))
            }
        })
    }

    /// A ≡ 0.
    pub fn zero() -> Self {
        Self::new(vec![AffinePiece { from: int(0), to: int(1), slope: int(0), intercept: int(0) }], true)
            .expect("valid")
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    fn start(&self) -> &Rational {
        &self.pieces[0].from
    }

    fn end(&self) -> &Rational {
        &self.pieces.last().expect("nonempty").to
    }

    /// Domain of a non-periodic function.
    pub fn domain(&self) -> Option<RationalInterval> {
        (!self.periodic).then(|| RationalInterval::new(self.start().clone(), self.end().clone()).expect("ordered"))
    }

    pub fn max_value(&self) -> Rational {
        self.pieces.iter().flat_map(|p| [p.eval(&p.from), p.eval(&p.to)]).max().expect("nonempty")
    }

    fn locate(&self, x: &Rational) -> Result<(usize, Rational)> {
        let shift = if self.periodic {
            Rational::from_integer(rational::floor(&(x - self.start())))
        } else {
            if x < self.start() || x > self.end() {
                return Err(Error::Domain(format!("beta = {x} outside the domain of A")));
            }
            Rational::zero()
        };
        let y = x - &shift;
        let i = self.pieces.iter().position(|p| y < p.to).unwrap_or(self.pieces.len() - 1);
        Ok((i, shift))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let (i, shift) = self.locate(x)?;
        Ok(self.pieces[i].shifted(&shift).eval(x))
    }

    pub fn eval_quadratic(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        if let Some(r) = x.as_rational() {
            return Ok(QuadraticNumber::from_rational(self.eval(r)?));
        }
        if !self.periodic {
            return self
                .pieces
                .iter()
                .find(|p| x.cmp_rational(&p.from).is_ge() && x.cmp_rational(&p.to).is_le())
                .map(|p| p.eval_quadratic(x))
                .ok_or_else(|| Error::Domain(format!("beta = {x} outside the domain of A")));
        }
        let shift = Rational::from_integer(x.add_rational(&-self.start()).floor());
        let y = x.add_rational(&-&shift);
        let p = self
            .pieces
            .iter()
            .find(|p| y.cmp_rational(&p.to).is_lt())
            .unwrap_or_else(|| self.pieces.last().expect("nonempty"));
        Ok(p.shifted(&shift).eval_quadratic(x))
    }

    /// Pieces, translated by whole periods when periodic, that meet `window`,
    /// clipped to it.
    pub fn pieces_in(&self, window: &RationalInterval) -> Vec<AffinePiece> {
        let mut out = Vec::new();
        let shifts: Vec<BigInt> = if self.periodic {
            let lo = rational::floor(&(window.lo() - self.end()));
            let hi = rational::ceil(&(window.hi() - self.start()));
            num_iter(lo, hi)
        } else {
            vec![BigInt::zero()]
        };
        for s in shifts {
            let k = Rational::from_integer(s);
            for p in &self.pieces {
                let q = p.shifted(&k);
                let from = (&q.from).max(window.lo()).clone();
                let to = (&q.to).min(window.hi()).clone();
                let keep = from < to || (window.is_point() && from == to && out.is_empty());
                if keep {
                    out.push(AffinePiece { from, to, ..q });
                }
            }
        }
        out
    }
}

fn num_iter(lo: BigInt, hi: BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut k = lo;
    while k <= hi {
        v.push(k.clone());
        k += 1;
    }
    v
}

/// An isolated solution of the β̄ relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaBarPoint {
    pub beta: QuadraticNumber,
    pub multiplicity: u32,
    /// A(β̄).
    pub alpha: QuadraticNumber,
}

/// Solutions of the β̄ relation: isolated points and closed intervals on
/// which the relation holds identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaBarSet {
    pub points: Vec<BetaBarPoint>,
    pub intervals: Vec<RationalInterval>,
    pub window: RationalInterval,
}

impl BetaBarSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.intervals.is_empty()
    }
}

impl fmt::Display for BetaBarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let mut items: Vec<(f64, String)> = self
            .intervals
            .iter()
            .map(|iv| (rational::to_f64(iv.lo()), format!("[{}, {}]", iv.lo(), iv.hi())))
            .collect();
        items.extend(self.points.iter().map(|p| (p.beta.to_f64(), format!("{{{}}}", p.beta))));
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        let parts: Vec<String> = items.into_iter().map(|(_, s)| s).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

fn default_window(model: &ThreefoldModel, ch: &ReducedClass, a: &AFunction) -> RationalInterval {
    let ten = RationalInterval::new(int(-10), int(10)).expect("ordered");
    if let Some(dom) = a.domain() {
        return dom.intersect(&ten).unwrap_or(dom);
    }
    let d = model.degree();
    if ch.ch0.is_zero() {
        let c = if ch.h2ch1.is_zero() { Rational::zero() } else { &ch.hch2 / &ch.h2ch1 };
        return RationalInterval::new(&c - int(1), &c + int(1)).expect("ordered");
    }
    let dc = d * &ch.ch0;
    let mu = &ch.h2ch1 / &dc;
    let amax = a.max_value();
    let rad = &amax * &amax + ch.deltabar(model, &Rational::zero()) / (&dc * &dc);
    let r = if rad.is_negative() { int(1) } else { Rational::from_integer(rational::ceil(&rad).sqrt() + 2) };
    RationalInterval::new(&mu - &r, &mu + &r).expect("ordered")
}

/// Roots of the β̄ relation with H²ch₁^{β̄H} ≥ 0, the branch on which the
/// class can lie in the tilted heart.
pub fn betabar_set(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    a: &AFunction,
    window: Option<&RationalInterval>,
) -> Result<BetaBarSet> {
    solve(model, ch, a, window, true)
}

/// Every root of the β̄ relation in the window, on both branches.
pub fn betabar_all_roots(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    a: &AFunction,
    window: Option<&RationalInterval>,
) -> Result<BetaBarSet> {
    solve(model, ch, a, window, false)
}

fn solve(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    a: &AFunction,
    window: Option<&RationalInterval>,
    heart_only: bool,
) -> Result<BetaBarSet> {
    if ch.ch0.is_zero() && ch.h2ch1.is_zero() && ch.hch2.is_zero() {
        return Err(Error::InvalidClass(
            "the beta-bar relation is degenerate when ch0, H^2 ch1 and H ch2 all vanish".into(),
        ));
    }
    let window = match window {
        Some(w) => w.clone(),
        None => default_window(model, ch, a),
    };
    let d = model.degree();
    let dc = d * &ch.ch0;
    let half_dc = &dc / int(2);
    let heart = |x: &QuadraticNumber| -> bool { x.scale(&-&dc).add_rational(&ch.h2ch1).signum() >= 0 };

    let mut points: Vec<BetaBarPoint> = Vec::new();
    let mut intervals: Vec<RationalInterval> = Vec::new();
    for p in a.pieces_in(&window) {
        let (s, c) = (&p.slope, &p.intercept);
        let a2 = &half_dc * (int(1) - s * s);
        let a1 = -(&dc * s * c + &ch.h2ch1);
        let a0 = &ch.hch2 - &half_dc * c * c;
        if a2.is_zero() && a1.is_zero() && a0.is_zero() {
            let iv = RationalInterval::new(p.from.clone(), p.to.clone())?;
            let iv = if heart_only { clip_to_heart(&iv, &ch.h2ch1, &dc) } else { Some(iv) };
            intervals.extend(iv);
            continue;
        }
        for (root, mult) in quadratic_roots(&a2, &a1, &a0)? {
            let inside = root.cmp_rational(&p.from).is_ge() && root.cmp_rational(&p.to).is_le();
            if inside && (!heart_only || heart(&root)) {
                let alpha = p.eval_quadratic(&root);
                points.push(BetaBarPoint { beta: root, multiplicity: mult, alpha });
            }
        }
    }

    intervals.sort_by(|x, y| x.lo().cmp(y.lo()));
    let mut merged: Vec<RationalInterval> = Vec::new();
    for iv in intervals {
        if let Some(last) = merged.last_mut() {
            if iv.lo() <= last.hi() {
                *last = last.hull(&iv);
                continue;
            }
        }
        merged.push(iv);
    }
    points.sort_by(|x, y| x.beta.cmp(&y.beta));
    let mut uniq: Vec<BetaBarPoint> = Vec::new();
    for p in points {
        if merged.iter().any(|iv| p.beta.cmp_rational(iv.lo()).is_ge() && p.beta.cmp_rational(iv.hi()).is_le()) {
            continue;
        }
        match uniq.last_mut() {
            Some(last) if last.beta == p.beta => last.multiplicity = last.multiplicity.max(p.multiplicity),
            _ => uniq.push(p),
        }
    }
    Ok(BetaBarSet { points: uniq, intervals: merged, window })
}

fn clip_to_heart(iv: &RationalInterval, h2ch1: &Rational, dc: &Rational) -> Option<RationalInterval> {
    if dc.is_zero() {
        return (!h2ch1.is_negative()).then(|| iv.clone());
    }
    let mu = h2ch1 / dc;
    let half = if dc.is_positive() {
        RationalInterval::new(iv.lo().min(&mu).clone(), mu.clone()).ok()?
    } else {
        RationalInterval::new(mu.clone(), iv.hi().max(&mu).clone()).ok()?
    };
    iv.intersect(&half)
}

/// Real roots of a2·x² + a1·x + a0 (not all zero) with multiplicities.
fn quadratic_roots(a2: &Rational, a1: &Rational, a0: &Rational) -> Result<Vec<(QuadraticNumber, u32)>> {
    if a2.is_zero() {
        if a1.is_zero() {
            return Ok(Vec::new());
        }
        return Ok(vec![(QuadraticNumber::from_rational(-a0 / a1), 1)]);
    }
    let disc = a1 * a1 - int(4) * a2 * a0;
    let two_a = int(2) * a2;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    if disc.is_zero() {
        return Ok(vec![(QuadraticNumber::from_rational(-a1 / &two_a), 2)]);
    }
    let root = QuadraticNumber::sqrt(&disc).expect("positive");
    let r1 = root.scale(&(int(-1) / &two_a)).add_rational(&(-a1 / &two_a));
    let r2 = root.scale(&(int(1) / &two_a)).add_rational(&(-a1 / &two_a));
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    Ok(vec![(lo, 1), (hi, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::line_bundle;
    use crate::exactnum::rational::rat;
    use crate::io::{bundled_a_function_json, bundled_model};

    fn tent() -> AFunction {
        AFunction::from_json(bundled_a_function_json("A_blowup_p3").unwrap()).unwrap()
    }

    #[test]
    fn tent_values() {
        let a = tent();
        assert_eq!(a.eval(&rat(1, 2)).unwrap(), rat(1, 2));
        assert_eq!(a.eval(&int(3)).unwrap(), int(1));
        assert_eq!(a.eval(&rat(-7, 4)).unwrap(), rat(3, 4));
        let x = QuadraticNumber::sqrt(&int(2)).unwrap();
        let v = a.eval_quadratic(&x).unwrap();
        // √2 ≈ 1.414 lies on [1, 3/2] where A = 2 − β.
        assert_eq!(v, (-&x).add_rational(&int(2)));
    }

    #[test]
    fn invalid_functions() {
        let neg = r#"{"periodic": false, "pieces": [{"from": "0", "to": "1", "slope": "-2", "intercept": "1"}]}"#;
        assert!(matches!(AFunction::from_json(neg), Err(Error::InvalidAFunction(_))));
        let gap = r#"{"periodic": false, "pieces": [{"from": "0", "to": "1", "slope": "0", "intercept": "1"},
                      {"from": "1", "to": "2", "slope": "0", "intercept": "2"}]}"#;
        assert!(AFunction::from_json(gap).is_err());
        let unknown = r#"{"periodic": true, "pieces": [], "extra": 1}"#;
        assert!(matches!(AFunction::from_json(unknown), Err(Error::Parse(_))));
    }

    #[test]
    fn line_bundle_two_on_blowup() {
        let m = bundled_model("blowup_p3_point").unwrap();
        let c = line_bundle(&m, 2).reduce(&m);
        let s = betabar_set(&m, &c, &tent(), None).unwrap();
        assert!(s.points.is_empty(), "{s}");
        assert_eq!(s.intervals, vec![RationalInterval::new(int(1), rat(3, 2)).unwrap()]);
        assert_eq!(s.to_string(), "[1, 3/2]");
        let all = betabar_all_roots(&m, &c, &tent(), None).unwrap();
        assert_eq!(all.intervals.len(), 2);
    }

    #[test]
    fn zero_a_roots() {
        let m = bundled_model("p3").unwrap();
        let c = ReducedClass::new(int(0), int(2), int(1), int(0), int(0), int(0));
        let s = betabar_set(&m, &c, &AFunction::zero(), None).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].beta, QuadraticNumber::from_rational(rat(1, 2)));
        let o = line_bundle(&m, -3).reduce(&m);
        let s = betabar_set(&m, &o, &AFunction::zero(), None).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].multiplicity, 2);
        assert_eq!(s.points[0].beta, QuadraticNumber::from_rational(int(-3)));
    }
}
