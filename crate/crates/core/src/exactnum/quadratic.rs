//! Real quadratic irrationals `a + b·√n` with rational `a`, `b` and a
//! square-free radicand `n ≥ 2` (or `n = 1` with `b = 0` for rationals).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::interval::RationalInterval;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    radicand: BigInt,
}

impl QuadraticNumber {
    /// Builds `a + b·√radicand`, reducing the radicand to its square-free part.
    pub fn new(a: Rational, b: Rational, radicand: BigInt) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::Domain(format!("negative radicand {radicand}")));
        }
        if radicand.is_zero() || b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        let (k, m) = rational::squarefree_split(&radicand);
        let b = b * Rational::from_integer(k);
        if m.is_one() {
            return Ok(Self::from_rational(a + b));
        }
        Ok(Self { a, b, radicand: m })
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), radicand: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// `√r` for a nonnegative rational `r`, or `None` when `r < 0`.
    pub fn sqrt(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        // √(p/q) = √(p·q)/q
        let pq = r.numer() * r.denom();
        let q = Rational::from_integer(r.denom().clone());
        Some(Self::new(Rational::zero(), q.recip(), pq).expect("nonnegative radicand"))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, radicand: self.radicand.clone() }
    }

    /// `a² − b²·n`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.radicand.clone())
    }

    fn n(&self) -> Rational {
        Rational::from_integer(self.radicand.clone())
    }

    /// Rewrites both operands over one radicand when the fields agree.
    fn align(x: &Self, y: &Self) -> Result<(Self, Self)> {
        if x.is_rational() {
            let mut xx = x.clone();
            xx.radicand = y.radicand.clone();
            return Ok((xx, y.clone()));
        }
        if y.is_rational() || x.radicand == y.radicand {
            let mut yy = y.clone();
            yy.radicand = x.radicand.clone();
            return Ok((x.clone(), yy));
        }
        let prod = &x.radicand * &y.radicand;
        let k = prod.sqrt();
        if &k * &k == prod {
            // √m = k/√n = (k/n)·√n
            let scale = Rational::new(k, x.radicand.clone());
            let yy = Self { a: y.a.clone(), b: &y.b * scale, radicand: x.radicand.clone() };
            return Ok((x.clone(), yy));
        }
        Err(Error::MixedRadicands(x.radicand.to_string(), y.radicand.to_string()))
    }

    fn normalized(a: Rational, b: Rational, radicand: BigInt) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            Self { a, b, radicand }
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let (x, y) = Self::align(self, o)?;
        Ok(Self::normalized(x.a + y.a, x.b + y.b, x.radicand))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let (x, y) = Self::align(self, o)?;
        let n = x.n();
        let a = &x.a * &y.a + &x.b * &y.b * n;
        let b = &x.a * &y.b + &x.b * &y.a;
        Ok(Self::normalized(a, b, x.radicand))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let inv_norm = o.norm().recip();
        let inv = Self::normalized(&o.a * &inv_norm, -&o.b * &inv_norm, o.radicand.clone());
        self.checked_mul(&inv)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalized(&self.a * r, &self.b * r, self.radicand.clone())
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self::normalized(&self.a + r, self.b.clone(), self.radicand.clone())
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same field")
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = rational::sign(&self.a);
        let sb = rational::sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * self.n();
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Exact comparison, also across different radicands.
    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        if let Ok(d) = self.checked_sub(o) {
            return d.signum().cmp(&0);
        }
        // sign of u + v with u = (a₁ − a₂) + b₁√m in Q(√m) and v = −b₂√n.
        let u = Self::normalized(&self.a - &o.a, self.b.clone(), self.radicand.clone());
        let r = -&o.b;
        let su = u.signum();
        let sv = rational::sign(&r);
        let s = if sv == 0 {
            su
        } else if su == 0 || su == sv {
            sv
        } else {
            let v2 = &r * &r * o.n();
            let diff = u.square().add_rational(&-v2);
            match diff.signum() {
                1 => su,
                -1 => sv,
                _ => 0,
            }
        };
        s.cmp(&0)
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.add_rational(&-r).signum().cmp(&0)
    }

    /// A rational interval containing the value, of width at most `width`.
    pub fn enclosure(&self, width: &Rational) -> RationalInterval {
        if self.is_rational() {
            return RationalInterval::point(self.a.clone());
        }
        // √n ∈ [s/2^k, (s+1)/2^k] with s = ⌊√(n·4^k)⌋
        let babs = self.b.abs();
        let mut k: u32 = 8;
        while Rational::new(babs.numer().clone(), babs.denom() << k) > *width {
            k += 8;
        }
        let s = (&self.radicand << (2 * k)).sqrt();
        let lo = Rational::new(s.clone(), BigInt::one() << k);
        let hi = Rational::new(s + 1, BigInt::one() << k);
        let root = RationalInterval::new(lo, hi).expect("ordered");
        root.scale(&self.b).shift(&self.a)
    }

    pub fn floor(&self) -> BigInt {
        let enc = self.enclosure(&Rational::new(BigInt::one(), BigInt::from(4)));
        let k = rational::floor(enc.lo());
        let next = Rational::from_integer(&k + 1);
        if self.cmp_rational(&next) != Ordering::Less {
            k + 1
        } else {
            k
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return rational::to_f64(&self.a);
        }
        let enc = self.enclosure(&Rational::new(BigInt::one(), BigInt::one() << 64u32));
        rational::to_f64(&enc.mid())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_exact(o) == Ordering::Equal
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_exact(o)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::normalized(-&self.a, -&self.b, self.radicand.clone())
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

macro_rules! field_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// # Panics
        /// Panics when the operands lie in different quadratic fields; use
        /// the `checked_*` form to handle that case.
        impl $tr<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&o)
            }
        }
        impl $tr<&Rational> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: &Rational) -> QuadraticNumber {
                self.$checked(&QuadraticNumber::from_rational(o.clone())).expect("rational operand")
            }
        }
    };
}

field_op!(Add, add, checked_add);
field_op!(Sub, sub, checked_sub);
field_op!(Mul, mul, checked_mul);
field_op!(Div, div, checked_div);

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let sqrt = format!("√{}", self.radicand);
        let b_abs = self.b.abs();
        let coeff = if b_abs.is_one() { sqrt } else { format!("({b_abs})·{sqrt}") };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{coeff}")
            } else {
                write!(f, "{coeff}")
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {coeff}", self.a)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QnRepr {
    #[serde(with = "rational::serde_rational")]
    a: Rational,
    #[serde(with = "rational::serde_rational")]
    b: Rational,
    sqrt: serde_json::Value,
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sqrt = match u64::try_from(&self.radicand) {
            Ok(n) => serde_json::Value::from(n),
            Err(_) => serde_json::Value::from(self.radicand.to_string()),
        };
        QnRepr { a: self.a.clone(), b: self.b.clone(), sqrt }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = QnRepr::deserialize(d)?;
        let n: BigInt = match &r.sqrt {
            serde_json::Value::Number(n) => n.to_string().parse().map_err(D::Error::custom)?,
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
            other => return Err(D::Error::custom(format!("bad radicand {other}"))),
        };
        QuadraticNumber::new(r.a, r.b, n).map_err(D::Error::custom)
    }
}
