//! Real root isolation by Sturm sequences and bisection refinement.

use num_bigint::BigInt;
use num_traits::One;

use super::interval::RationalInterval;
use super::poly::Polynomial;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Upper bound on bisection steps spent on a single root.
pub const MAX_BISECTIONS: usize = 4096;

/// Location of one real root: an exact rational, or the only root inside an
/// open interval whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rational),
    Between(Rational, Rational),
}

impl RootLocation {
    pub fn interval(&self) -> RationalInterval {
        match self {
            RootLocation::Exact(x) => RationalInterval::point(x.clone()),
            RootLocation::Between(a, b) => RationalInterval::new(a.clone(), b.clone()).expect("ordered"),
        }
    }

    pub fn lo(&self) -> &Rational {
        match self {
            RootLocation::Exact(x) | RootLocation::Between(x, _) => x,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            RootLocation::Exact(x) | RootLocation::Between(_, x) => x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RootLocation::Exact(x) => Some(x),
            RootLocation::Between(..) => None,
        }
    }
}

pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().expect("nonempty").is_zero() {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        seq.push(-&r);
    }
    seq.pop();
    seq
}

/// Root isolation machinery for the distinct real roots of a polynomial.
#[derive(Clone, Debug)]
pub struct Isolator {
    sf: Polynomial,
    seq: Vec<Polynomial>,
}

impl Isolator {
    pub fn new(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = p.square_free().primitive();
        let seq = sturm_sequence(&sf);
        Ok(Self { sf, seq })
    }

    /// The square-free part whose roots are being isolated.
    pub fn square_free(&self) -> &Polynomial {
        &self.sf
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct roots in the closed window.
    pub fn count(&self, w: &RationalInterval) -> usize {
        let at_lo = usize::from(self.sf.sign_at(w.lo()) == 0);
        at_lo + self.count_half_open(w.lo(), w.hi())
    }

    pub fn is_root(&self, x: &Rational) -> bool {
        self.sf.sign_at(x) == 0
    }

    /// Sorted, pairwise disjoint locations of every root in the window.
    pub fn isolate(&self, w: &RationalInterval) -> Result<Vec<RootLocation>> {
        let mut out = Vec::new();
        if self.is_root(w.lo()) {
            out.push(RootLocation::Exact(w.lo().clone()));
        }
        if w.is_point() {
            return Ok(out);
        }
        let mut stack = vec![(w.lo().clone(), w.hi().clone())];
        let two = Rational::from_integer(2.into());
        let mut steps = 0usize;
        while let Some((a, b)) = stack.pop() {
            let c = self.count_half_open(&a, &b);
            if c == 0 {
                continue;
            }
            if c == 1 {
                out.push(self.open_location(a, b)?);
                continue;
            }
            steps += 1;
            if steps > MAX_BISECTIONS * 64 {
                return Err(Error::Inconclusive(MAX_BISECTIONS));
            }
            let m = (&a + &b) / &two;
            stack.push((a, m.clone()));
            stack.push((m, b));
        }
        out.sort_by(|x, y| x.lo().cmp(y.lo()));
        self.separate(&mut out)?;
        Ok(out)
    }

    /// Normalizes the single root in `(a, b]` into a `RootLocation`.
    fn open_location(&self, mut a: Rational, b: Rational) -> Result<RootLocation> {
        if self.is_root(&b) {
            return Ok(RootLocation::Exact(b));
        }
        let two = Rational::from_integer(2.into());
        let sb = self.sf.sign_at(&b);
        let mut hi = b;
        let mut steps = 0;
        // Move the left end off a neighbouring root if necessary.
        while self.is_root(&a) {
            steps += 1;
            if steps > MAX_BISECTIONS {
                return Err(Error::Inconclusive(MAX_BISECTIONS));
            }
            let m = (&a + &hi) / &two;
            let s = self.sf.sign_at(&m);
            if s == 0 {
                return Ok(RootLocation::Exact(m));
            }
            if s == sb {
                hi = m;
            } else {
                a = m;
            }
        }
        Ok(RootLocation::Between(a, hi))
    }

    fn separate(&self, locs: &mut [RootLocation]) -> Result<()> {
        for i in 1..locs.len() {
            if locs[i - 1].hi() >= locs[i].lo() {
                if let RootLocation::Between(a, b) = &locs[i - 1] {
                    let limit = locs[i].lo().clone();
                    locs[i - 1] = self.shrink_below(a.clone(), b.clone(), &limit)?;
                }
            }
        }
        Ok(())
    }

    fn shrink_below(&self, mut a: Rational, mut b: Rational, limit: &Rational) -> Result<RootLocation> {
        let two = Rational::from_integer(2.into());
        let sb = self.sf.sign_at(&b);
        let mut steps = 0;
        while &b >= limit {
            steps += 1;
            if steps > MAX_BISECTIONS {
                return Err(Error::Inconclusive(MAX_BISECTIONS));
            }
            let m = (&a + &b) / &two;
            let s = self.sf.sign_at(&m);
            if s == 0 {
                return Ok(RootLocation::Exact(m));
            }
            if s == sb {
                b = m;
            } else {
                a = m;
            }
        }
        Ok(RootLocation::Between(a, b))
    }

    /// Bisects a location until its width is at most `width`.
    pub fn refine(&self, loc: &RootLocation, width: &Rational) -> Result<RootLocation> {
        let (mut a, mut b) = match loc {
            RootLocation::Exact(_) => return Ok(loc.clone()),
            RootLocation::Between(a, b) => (a.clone(), b.clone()),
        };
        let two = Rational::from_integer(2.into());
        let sb = self.sf.sign_at(&b);
        let mut steps = 0;
        while &(&b - &a) > width {
            steps += 1;
            if steps > MAX_BISECTIONS {
                return Err(Error::Inconclusive(MAX_BISECTIONS));
            }
            let m = (&a + &b) / &two;
            let s = self.sf.sign_at(&m);
            if s == 0 {
                return Ok(RootLocation::Exact(m));
            }
            if s == sb {
                b = m;
            } else {
                a = m;
            }
        }
        Ok(RootLocation::Between(a, b))
    }

    /// Upgrades a location to an exact rational root when one can be found
    /// as the simplest rational of a refined enclosure.
    pub fn try_exact(&self, loc: &RootLocation) -> Result<RootLocation> {
        if loc.exact().is_some() {
            return Ok(loc.clone());
        }
        let mut cur = loc.clone();
        for bits in [16u32, 48, 96] {
            let w = Rational::new(BigInt::one(), BigInt::one() << bits);
            cur = self.refine(&cur, &w)?;
            if let RootLocation::Between(a, b) = &cur {
                let s = rational::simplest_between(a, b);
                if self.is_root(&s) {
                    return Ok(RootLocation::Exact(s));
                }
            } else {
                return Ok(cur);
            }
        }
        Ok(loc.clone())
    }
}

pub fn count_real_roots(p: &Polynomial, window: &RationalInterval) -> Result<usize> {
    Ok(Isolator::new(p)?.count(window))
}

/// Disjoint intervals, each holding exactly one distinct real root of `poly`
/// in `window`; exact rational roots come back as point intervals.
pub fn isolate_real_roots(poly: &Polynomial, window: &RationalInterval) -> Result<Vec<RationalInterval>> {
    let iso = Isolator::new(poly)?;
    Ok(iso.isolate(window)?.iter().map(RootLocation::interval).collect())
}

/// Shrinks an isolating interval of a simple root to width at most `width`.
pub fn refine_root(poly: &Polynomial, isolating: &RationalInterval, width: &Rational) -> Result<RationalInterval> {
    let sl = poly.sign_at(isolating.lo());
    let sh = poly.sign_at(isolating.hi());
    if sl == 0 {
        return Ok(RationalInterval::point(isolating.lo().clone()));
    }
    if sh == 0 {
        return Ok(RationalInterval::point(isolating.hi().clone()));
    }
    if sl == sh {
        return Err(Error::NotIsolating(format!("no sign change of {poly} over {isolating}")));
    }
    let two = Rational::from_integer(2.into());
    let (mut a, mut b) = (isolating.lo().clone(), isolating.hi().clone());
    let mut steps = 0;
    while &(&b - &a) > width {
        steps += 1;
        if steps > MAX_BISECTIONS {
            return Err(Error::Inconclusive(MAX_BISECTIONS));
        }
        let m = (&a + &b) / &two;
        let s = poly.sign_at(&m);
        if s == 0 {
            return Ok(RationalInterval::point(m));
        }
        if s == sh {
            b = m;
        } else {
            a = m;
        }
    }
    RationalInterval::new(a, b)
}

/// Default refinement width 2⁻⁴⁰.
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 40u32)
}
