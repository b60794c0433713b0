//! Expressions `p(x) + √s·q(x)` and exact sign certification on intervals.
//!
//! Every real zero of `p + √s·q` is a zero of the norm `p² − s·q²` (or of
//! `p + √s·q` itself when `√s` is rational). The candidate roots are isolated
//! with Sturm sequences; between consecutive candidates the expression cannot
//! change sign, so one exact evaluation per gap decides the sign there.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::RationalInterval;
use super::poly::Polynomial;
use super::quadratic::QuadraticNumber;
use super::rational::{self, Rational};
use super::roots::{Isolator, RootLocation, MAX_BISECTIONS};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Entry, Status, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdExpression {
    pub p: Polynomial,
    #[serde(with = "rational::serde_rational")]
    pub s: Rational,
    pub q: Polynomial,
}

impl SurdExpression {
    pub fn new(p: Polynomial, s: Rational, q: Polynomial) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::Domain(format!("negative surd argument {s}")));
        }
        Ok(Self { p, s, q })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self { p, s: Rational::zero(), q: Polynomial::zero() }
    }

    pub fn sqrt_s(&self) -> QuadraticNumber {
        QuadraticNumber::sqrt(&self.s).expect("nonnegative")
    }

    pub fn eval(&self, x: &Rational) -> QuadraticNumber {
        let pv = QuadraticNumber::from_rational(self.p.eval(x));
        let qv = self.q.eval(x);
        &pv + &self.sqrt_s().scale(&qv)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.p.eval_f64(x) + self.sqrt_s().to_f64() * self.q.eval_f64(x)
    }

    pub fn derivative(&self) -> Self {
        Self { p: self.p.derivative(), s: self.s.clone(), q: self.q.derivative() }
    }

    /// The expression as a rational polynomial when `√s` is rational.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.q.is_zero() {
            return Some(self.p.clone());
        }
        let r = rational::sqrt_exact(&self.s)?;
        Some(&self.p + &self.q.scale(&r))
    }

    /// `p² − s·q²`, vanishing at every zero of the expression.
    pub fn norm(&self) -> Polynomial {
        &(&self.p * &self.p) - &(&self.q * &self.q).scale(&self.s)
    }

    pub fn is_identically_zero(&self) -> bool {
        match self.as_polynomial() {
            Some(p) => p.is_zero(),
            None => self.p.is_zero() && self.q.is_zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignClaim {
    Nonnegative,
    Positive,
}

/// A closed root-free piece of the window with one exact sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "rational::serde_rational")]
    pub lo: Rational,
    #[serde(with = "rational::serde_rational")]
    pub hi: Rational,
    #[serde(with = "rational::serde_rational")]
    pub sample: Rational,
    pub value: QuadraticNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroPoint {
    pub enclosure: RationalInterval,
    #[serde(with = "rational::serde_rational_opt")]
    pub exact: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A rational point with its exact value.
    Point {
        #[serde(with = "rational::serde_rational")]
        x: Rational,
        value: QuadraticNumber,
    },
    /// An irrational zero, given by an isolating enclosure.
    Zero { enclosure: RationalInterval },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub claim: SignClaim,
    pub window: RationalInterval,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub segments: Vec<Segment>,
    pub zeros: Vec<ZeroPoint>,
    pub identically_zero: bool,
}

impl SignCertificate {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_report(&self, check: &str) -> CheckReport {
        let mut r = CheckReport::new(check, self.verdict);
        r.push(Entry::new("claim", Status::Info).with("claim", self.claim).with("window", &self.window));
        for s in &self.segments {
            let ok = match self.claim {
                SignClaim::Nonnegative | SignClaim::Positive => s.value.signum() > 0,
            };
            r.push(
                Entry::pass_if("segment", ok)
                    .with_str("lo", &s.lo)
                    .with_str("hi", &s.hi)
                    .with_str("sample", &s.sample)
                    .with("value", &s.value),
            );
        }
        for z in &self.zeros {
            let ok = self.claim == SignClaim::Nonnegative;
            let mut e = Entry::pass_if("zero", ok).with("enclosure", &z.enclosure);
            if let Some(x) = &z.exact {
                e = e.with_str("at", x).with_str("value", 0);
            }
            r.push(e);
        }
        if let Some(w) = &self.witness {
            r.push(Entry::new("witness", Status::Fail).with("witness", w));
        }
        if self.identically_zero {
            r.notes.push("expression vanishes identically".into());
        }
        r
    }
}

/// Sign of `f` at the root located by `loc` (a root of `candidate`).
fn sign_at_root(f: &Polynomial, candidate: &Isolator, loc: &RootLocation) -> Result<i8> {
    if f.is_zero() {
        return Ok(0);
    }
    let (a, b) = match loc {
        RootLocation::Exact(x) => return Ok(f.sign_at(x)),
        RootLocation::Between(a, b) => (a.clone(), b.clone()),
    };
    let g = f.gcd(candidate.square_free());
    if g.degree().unwrap_or(0) > 0 && Isolator::new(&g)?.count_half_open(&a, &b) > 0 {
        return Ok(0);
    }
    let fi = Isolator::new(f)?;
    let mut cur = RootLocation::Between(a, b);
    let mut width = cur.interval().width();
    for _ in 0..MAX_BISECTIONS {
        let iv = cur.interval();
        if fi.count(&iv) == 0 {
            return Ok(f.sign_at(iv.hi()));
        }
        width /= Rational::from_integer(2.into());
        cur = candidate.refine(&cur, &width)?;
        if let RootLocation::Exact(x) = &cur {
            return Ok(f.sign_at(x));
        }
    }
    Err(Error::Inconclusive(MAX_BISECTIONS))
}

/// Decides `expr ≥ 0` (or `> 0`) on the closed window exactly.
pub fn certify_sign(expr: &SurdExpression, window: &RationalInterval, claim: SignClaim) -> Result<SignCertificate> {
    let mut cert = SignCertificate {
        claim,
        window: window.clone(),
        verdict: Verdict::Certified,
        witness: None,
        segments: Vec::new(),
        zeros: Vec::new(),
        identically_zero: false,
    };
    if expr.is_identically_zero() {
        cert.identically_zero = true;
        cert.zeros.push(ZeroPoint { enclosure: window.clone(), exact: None });
        if claim == SignClaim::Positive {
            cert.verdict = Verdict::Violated;
            cert.witness = Some(Witness::Point { x: window.lo().clone(), value: QuadraticNumber::zero() });
        }
        return Ok(cert);
    }
    let poly = expr.as_polynomial();
    let candidate = poly.clone().unwrap_or_else(|| expr.norm());
    let iso = Isolator::new(&candidate)?;
    let mut locs = Vec::new();
    for loc in iso.isolate(window)? {
        locs.push(iso.try_exact(&loc)?);
    }

    // Which candidate roots are zeros of the expression itself.
    for loc in &locs {
        let vanishes = if poly.is_some() {
            true
        } else if let Some(x) = loc.exact() {
            expr.eval(x).is_zero()
        } else {
            let sp = sign_at_root(&expr.p, &iso, loc)?;
            let sq = sign_at_root(&expr.q, &iso, loc)?;
            (sp == 0 && sq == 0) || (sp != 0 && sq != 0 && sp == -sq)
        };
        if vanishes {
            let enclosure = iso.refine(loc, &super::roots::default_width())?.interval();
            cert.zeros.push(ZeroPoint { enclosure, exact: loc.exact().cloned() });
        }
    }

    // One sample in every maximal root-free piece.
    let two = Rational::from_integer(2.into());
    let mut pieces: Vec<(Rational, Rational)> = Vec::new();
    let mut left = window.lo().clone();
    let mut left_is_root = false;
    for loc in &locs {
        let (s, e) = (loc.lo().clone(), loc.hi().clone());
        if left < s || (left == s && !left_is_root && loc.exact().is_none()) {
            pieces.push((left.clone(), s));
        }
        left = e;
        left_is_root = loc.exact().is_some();
    }
    if &left < window.hi() || (&left == window.hi() && !left_is_root && !locs.is_empty()) {
        pieces.push((left, window.hi().clone()));
    } else if locs.is_empty() {
        pieces.push((window.lo().clone(), window.hi().clone()));
    }
    for (lo, hi) in pieces {
        let sample = if lo == hi { lo.clone() } else { (&lo + &hi) / &two };
        let value = expr.eval(&sample);
        if value.signum() == 0 {
            return Err(Error::Domain(format!("sample {sample} unexpectedly hit a zero")));
        }
        cert.segments.push(Segment { lo, hi, sample, value });
    }

    if let Some(bad) = cert.segments.iter().find(|s| s.value.signum() < 0) {
        cert.verdict = Verdict::Violated;
        // Prefer a window endpoint as the witness when it is already negative.
        let w = [window.lo(), window.hi()]
            .into_iter()
            .map(|x| (x.clone(), expr.eval(x)))
            .find(|(_, v)| v.signum() < 0)
            .unwrap_or((bad.sample.clone(), bad.value.clone()));
        cert.witness = Some(Witness::Point { x: w.0, value: w.1 });
    } else if claim == SignClaim::Positive {
        if let Some(z) = cert.zeros.first() {
            cert.verdict = Verdict::Violated;
            cert.witness = Some(match &z.exact {
                Some(x) => Witness::Point { x: x.clone(), value: QuadraticNumber::zero() },
                None => Witness::Zero { enclosure: z.enclosure.clone() },
            });
        }
    }
    Ok(cert)
}

/// Exact rational grid scan: returns the first grid point with a value of
/// the wrong sign, used as an independent cross-check of certificates.
pub fn grid_scan(expr: &SurdExpression, window: &RationalInterval, claim: SignClaim, points: u64) -> Option<Rational> {
    let n = points.max(2) - 1;
    let step = window.width() / Rational::from_integer(BigInt::from(n));
    let mut x = window.lo().clone();
    for _ in 0..=n {
        let s = expr.eval(&x).signum();
        let bad = match claim {
            SignClaim::Nonnegative => s < 0,
            SignClaim::Positive => s <= 0,
        };
        if bad {
            return Some(x);
        }
        x += &step;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn w(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::new(a, b).unwrap()
    }

    #[test]
    fn negative_square_is_violated_at_left_end() {
        let e = SurdExpression::polynomial(Polynomial::from_ints(&[0, 0, -1]));
        let c = certify_sign(&e, &w(int(1), int(2)), SignClaim::Nonnegative).unwrap();
        assert_eq!(c.verdict, Verdict::Violated);
        assert_eq!(c.witness, Some(Witness::Point { x: int(1), value: QuadraticNumber::from_rational(int(-1)) }));
    }

    #[test]
    fn double_root_is_nonnegative_not_positive() {
        // (1 − 2x)²
        let p = Polynomial::from_ints(&[1, -2]).pow(2);
        let e = SurdExpression::polynomial(p);
        let c = certify_sign(&e, &w(int(0), int(1)), SignClaim::Nonnegative).unwrap();
        assert!(c.certified());
        assert_eq!(c.zeros.len(), 1);
        assert_eq!(c.zeros[0].exact, Some(rat(1, 2)));
        let c = certify_sign(&e, &w(int(0), int(1)), SignClaim::Positive).unwrap();
        assert_eq!(c.verdict, Verdict::Violated);
    }

    #[test]
    fn irrational_double_root() {
        // (x² − 2)² ≥ 0 with zero at √2 but no rational witness for positivity.
        let p = Polynomial::from_ints(&[-2, 0, 1]).pow(2);
        let e = SurdExpression::polynomial(p);
        let c = certify_sign(&e, &w(int(1), int(2)), SignClaim::Positive).unwrap();
        assert!(matches!(c.witness, Some(Witness::Zero { .. })));
        assert!(certify_sign(&e, &w(int(1), int(2)), SignClaim::Nonnegative).unwrap().certified());
    }

    #[test]
    fn surd_zero_detection() {
        // x − √2 on [0, 2]: changes sign at √2
        let e = SurdExpression::new(Polynomial::x(), int(2), Polynomial::from_ints(&[-1])).unwrap();
        let c = certify_sign(&e, &w(int(0), int(2)), SignClaim::Nonnegative).unwrap();
        assert_eq!(c.verdict, Verdict::Violated);
        assert_eq!(c.zeros.len(), 1);
        // x + √2 on [0, 2]: the norm vanishes at −√2 only, outside the window
        let e = SurdExpression::new(Polynomial::x(), int(2), Polynomial::from_ints(&[1])).unwrap();
        assert!(certify_sign(&e, &w(int(0), int(2)), SignClaim::Positive).unwrap().certified());
        // (x−√2)² = x² + 2 − 2√2 x ≥ 0 touches zero at √2
        let e =
            SurdExpression::new(Polynomial::from_ints(&[2, 0, 1]), int(2), Polynomial::from_ints(&[0, -2])).unwrap();
        let c = certify_sign(&e, &w(int(0), int(2)), SignClaim::Nonnegative).unwrap();
        assert!(c.certified());
        assert_eq!(c.zeros.len(), 1);
        let (lo, hi) = c.zeros[0].enclosure.to_f64_pair();
        assert!(lo <= 2f64.sqrt() + 1e-12 && 2f64.sqrt() - 1e-12 <= hi);
        let c = certify_sign(&e, &w(int(0), int(2)), SignClaim::Positive).unwrap();
        assert!(matches!(c.witness, Some(Witness::Zero { .. })));
    }

    #[test]
    fn rational_surd_folds_to_polynomial() {
        let e = SurdExpression::new(Polynomial::from_ints(&[-1]), rat(1, 4), Polynomial::from_ints(&[2])).unwrap();
        assert_eq!(e.as_polynomial(), Some(Polynomial::zero()));
        assert!(e.is_identically_zero());
        let c = certify_sign(&e, &w(int(0), int(1)), SignClaim::Positive).unwrap();
        assert_eq!(c.verdict, Verdict::Violated);
    }

    #[test]
    fn point_window() {
        let e = SurdExpression::polynomial(Polynomial::from_ints(&[1, 1]));
        let c = certify_sign(&e, &w(int(3), int(3)), SignClaim::Positive).unwrap();
        assert!(c.certified());
        assert_eq!(c.segments.len(), 1);
    }
}
