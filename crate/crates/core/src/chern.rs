//! Numerical Chern characters on a threefold model, their H-reduced data,
//! twists by rational multiples of H, duals and discriminants.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{int, serde_rational, serde_rational_vec, Rational};
use crate::exactnum::{Polynomial, QuadraticNumber};
use crate::threefold::ThreefoldModel;

/// A numerical class (ch₀, ch₁, ch₂·Dᵢ, ch₃) in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernClass {
    #[serde(with = "serde_rational")]
    pub ch0: Rational,
    #[serde(with = "serde_rational_vec")]
    pub ch1: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub ch2_pair: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub ch3: Rational,
}

/// The H-reduced data every slope and discriminant formula consumes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedClass {
    #[serde(with = "serde_rational")]
    pub ch0: Rational,
    /// H²·ch₁
    #[serde(rename = "H2ch1", with = "serde_rational")]
    pub h2ch1: Rational,
    /// H·ch₂
    #[serde(rename = "Hch2", with = "serde_rational")]
    pub hch2: Rational,
    #[serde(with = "serde_rational")]
    pub ch3: Rational,
    /// c₂(X)·ch₁
    #[serde(with = "serde_rational")]
    pub c2ch1: Rational,
    /// H·ch₁²
    #[serde(rename = "Hch1sq", with = "serde_rational")]
    pub hch1sq: Rational,
}

/// Twisted components as polynomials in the twist parameter β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPolys {
    pub ch0: Rational,
    pub h2ch1: Polynomial,
    pub hch2: Polynomial,
    pub ch3: Polynomial,
}

impl TwistPolys {
    pub fn at(&self, beta: &Rational) -> (Rational, Rational, Rational) {
        (self.h2ch1.eval(beta), self.hch2.eval(beta), self.ch3.eval(beta))
    }

    pub fn at_quadratic(&self, beta: &QuadraticNumber) -> (QuadraticNumber, QuadraticNumber, QuadraticNumber) {
        (self.h2ch1.eval_quadratic(beta), self.hch2.eval_quadratic(beta), self.ch3.eval_quadratic(beta))
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ChernClass {
    pub fn new(ch0: Rational, ch1: Vec<Rational>, ch2_pair: Vec<Rational>, ch3: Rational) -> Self {
        Self { ch0, ch1, ch2_pair, ch3 }
    }

    pub fn zero(model: &ThreefoldModel) -> Self {
        let n = model.rank();
        Self::new(Rational::zero(), vec![Rational::zero(); n], vec![Rational::zero(); n], Rational::zero())
    }

    /// Errors if the vector lengths do not match the Picard rank.
    pub fn check_shape(&self, model: &ThreefoldModel) -> Result<()> {
        let n = model.rank();
        if self.ch1.len() != n || self.ch2_pair.len() != n {
            return Err(Error::InvalidClass(format!(
                "ch1 and ch2_pair need length {n}, got {} and {}",
                self.ch1.len(),
                self.ch2_pair.len()
            )));
        }
        Ok(())
    }

    pub fn h2ch1(&self, model: &ThreefoldModel) -> Rational {
        model.h2_dot(&self.ch1)
    }

    pub fn hch2(&self, model: &ThreefoldModel) -> Rational {
        dot(&model.h(), &self.ch2_pair)
    }

    pub fn c2ch1(&self, model: &ThreefoldModel) -> Rational {
        dot(&model.c2_pair(), &self.ch1)
    }

    pub fn hch1sq(&self, model: &ThreefoldModel) -> Rational {
        model.h_dot_sq(&self.ch1)
    }

    pub fn reduce(&self, model: &ThreefoldModel) -> ReducedClass {
        ReducedClass {
            ch0: self.ch0.clone(),
            h2ch1: self.h2ch1(model),
            hch2: self.hch2(model),
            ch3: self.ch3.clone(),
            c2ch1: self.c2ch1(model),
            hch1sq: self.hch1sq(model),
        }
    }

    /// e^{−bH}·ch.
    pub fn twist(&self, model: &ThreefoldModel, b: &Rational) -> Self {
        let n = model.rank();
        let h = model.h();
        let qh = model.qh();
        let half_b2 = b * b / int(2);
        let ch1 = (0..n).map(|i| &self.ch1[i] - b * &self.ch0 * &h[i]).collect();
        let ch2_pair = (0..n)
            .map(|i| {
                let h_ch1_di = dot(&qh[i], &self.ch1);
                &self.ch2_pair[i] - b * h_ch1_di + &half_b2 * &self.ch0 * &model.h2_pair()[i]
            })
            .collect();
        let ch3 = &self.ch3 - b * self.hch2(model) + &half_b2 * self.h2ch1(model)
            - b * b * b / int(6) * model.degree() * &self.ch0;
        Self::new(self.ch0.clone(), ch1, ch2_pair, ch3)
    }

    /// (ch₀, −ch₁, ch₂, −ch₃).
    pub fn dual(&self) -> Self {
        Self::new(self.ch0.clone(), self.ch1.iter().map(|x| -x).collect(), self.ch2_pair.clone(), -&self.ch3)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(
            &self.ch0 * k,
            self.ch1.iter().map(|x| x * k).collect(),
            self.ch2_pair.iter().map(|x| x * k).collect(),
            &self.ch3 * k,
        )
    }

    pub fn deltabar(&self, model: &ThreefoldModel, b: &Rational) -> Rational {
        self.reduce(model).deltabar(model, b)
    }

    pub fn h_delta(&self, model: &ThreefoldModel) -> Rational {
        self.reduce(model).h_delta()
    }
}

impl Add for &ChernClass {
    type Output = ChernClass;
    fn add(self, o: &ChernClass) -> ChernClass {
        ChernClass::new(
            &self.ch0 + &o.ch0,
            self.ch1.iter().zip(&o.ch1).map(|(a, b)| a + b).collect(),
            self.ch2_pair.iter().zip(&o.ch2_pair).map(|(a, b)| a + b).collect(),
            &self.ch3 + &o.ch3,
        )
    }
}

impl Sub for &ChernClass {
    type Output = ChernClass;
    fn sub(self, o: &ChernClass) -> ChernClass {
        self + &-o
    }
}

impl Neg for &ChernClass {
    type Output = ChernClass;
    fn neg(self) -> ChernClass {
        self.scale(&int(-1))
    }
}

/// ch(O(mH)) = e^{mH}.
pub fn line_bundle(model: &ThreefoldModel, m: i64) -> ChernClass {
    let m = int(m);
    ChernClass::new(
        int(1),
        model.h().iter().map(|x| x * &m).collect(),
        model.h2_pair().iter().map(|x| x * &m * &m / int(2)).collect(),
        &m * &m * &m * model.degree() / int(6),
    )
}

/// ch(I_Z(mH)) for a zero-dimensional subscheme Z of length n.
pub fn ideal_sheaf(model: &ThreefoldModel, m: i64, n: u64) -> ChernClass {
    let mut c = line_bundle(model, m);
    c.ch3 -= Rational::from_integer(n.into());
    c
}

/// ch of a skyscraper sheaf of length n.
pub fn skyscraper(model: &ThreefoldModel, n: u64) -> ChernClass {
    let mut c = ChernClass::zero(model);
    c.ch3 = Rational::from_integer(n.into());
    c
}

impl ReducedClass {
    pub fn new(
        ch0: Rational,
        h2ch1: Rational,
        hch2: Rational,
        ch3: Rational,
        c2ch1: Rational,
        hch1sq: Rational,
    ) -> Self {
        Self { ch0, h2ch1, hch2, ch3, c2ch1, hch1sq }
    }

    /// (ch₀, H²ch₁, Hch₂, ch₃).
    pub fn core(&self) -> [Rational; 4] {
        [self.ch0.clone(), self.h2ch1.clone(), self.hch2.clone(), self.ch3.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.ch0.is_zero() && self.h2ch1.is_zero() && self.hch2.is_zero() && self.ch3.is_zero()
    }

    pub fn twist_polys(&self, model: &ThreefoldModel) -> TwistPolys {
        let d = model.degree();
        let c = &self.ch0;
        TwistPolys {
            ch0: c.clone(),
            h2ch1: Polynomial::new(vec![self.h2ch1.clone(), -(d * c)]),
            hch2: Polynomial::new(vec![self.hch2.clone(), -&self.h2ch1, d * c / int(2)]),
            ch3: Polynomial::new(vec![self.ch3.clone(), -&self.hch2, &self.h2ch1 / int(2), -(d * c) / int(6)]),
        }
    }

    /// Reduced data of e^{−bH}·ch.
    pub fn twist(&self, model: &ThreefoldModel, b: &Rational) -> Self {
        let d = model.degree();
        let c = &self.ch0;
        let (h2ch1, hch2, ch3) = self.twist_polys(model).at(b);
        Self {
            ch0: c.clone(),
            h2ch1,
            hch2,
            ch3,
            c2ch1: &self.c2ch1 - b * c * model.c2h(),
            hch1sq: &self.hch1sq - int(2) * b * c * &self.h2ch1 + b * b * c * c * d,
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            ch0: self.ch0.clone(),
            h2ch1: -&self.h2ch1,
            hch2: self.hch2.clone(),
            ch3: -&self.ch3,
            c2ch1: -&self.c2ch1,
            hch1sq: self.hch1sq.clone(),
        }
    }

    /// (H²ch₁^{bH})² − 2d·ch₀·Hch₂^{bH}.
    pub fn deltabar(&self, model: &ThreefoldModel, b: &Rational) -> Rational {
        let (h2ch1, hch2, _) = self.twist_polys(model).at(b);
        &h2ch1 * &h2ch1 - int(2) * model.degree() * &self.ch0 * hch2
    }

    /// H·Δ = H·ch₁² − 2ch₀·Hch₂.
    pub fn h_delta(&self) -> Rational {
        &self.hch1sq - int(2) * &self.ch0 * &self.hch2
    }

    /// Δ̄/(d·ch₀)², the normalized discriminant.
    pub fn normalized_deltabar(&self, model: &ThreefoldModel) -> Option<Rational> {
        if self.ch0.is_zero() {
            return None;
        }
        let dc = model.degree() * &self.ch0;
        Some(self.deltabar(model, &Rational::zero()) / (&dc * &dc))
    }
}

/// A class given either in lattice coordinates or in reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum ClassInput {
    Full(ChernClass),
    Reduced(ReducedClass),
}

impl ClassInput {
    pub fn reduce(&self, model: &ThreefoldModel) -> Result<ReducedClass> {
        match self {
            ClassInput::Full(c) => {
                c.check_shape(model)?;
                Ok(c.reduce(model))
            }
            ClassInput::Reduced(r) => Ok(r.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::io::bundled_model;

    #[test]
    fn line_bundle_reduced_data() {
        let m = bundled_model("blowup_p3_point").unwrap();
        let r = line_bundle(&m, 2).reduce(&m);
        assert_eq!(r.core(), [int(1), int(14), int(14), rat(28, 3)]);
        let r = line_bundle(&m, -1).reduce(&m);
        assert_eq!(r.core(), [int(1), int(-7), rat(7, 2), rat(-7, 6)]);
    }

    #[test]
    fn twist_of_line_bundle_is_trivial() {
        let m = bundled_model("p2xp1").unwrap();
        let t = line_bundle(&m, 1).twist(&m, &int(1));
        assert_eq!(t, line_bundle(&m, 0));
        assert_eq!(line_bundle(&m, 3).reduce(&m).twist(&m, &int(3)), line_bundle(&m, 0).reduce(&m));
    }

    #[test]
    fn dual_of_line_bundle() {
        let m = bundled_model("blowup_p3_point").unwrap();
        assert_eq!(line_bundle(&m, 3).dual(), line_bundle(&m, -3));
    }

    #[test]
    fn ideal_sheaf_data() {
        let m = bundled_model("p3").unwrap();
        assert_eq!(ideal_sheaf(&m, 0, 1).reduce(&m).core(), [int(1), int(0), int(0), int(-1)]);
        assert_eq!(ideal_sheaf(&m, 2, 5).deltabar(&m, &rat(1, 3)), int(0));
    }

    #[test]
    fn class_input_forms() {
        let full: ClassInput =
            serde_json::from_str(r#"{"ch0":"1","ch1":["0","1"],"ch2_pair":["0","0"],"ch3":"0"}"#).unwrap();
        assert!(matches!(full, ClassInput::Full(_)));
        let red: ClassInput =
            serde_json::from_str(r#"{"ch0":"1","H2ch1":"1","Hch2":"1/2","ch3":"0","c2ch1":"0","Hch1sq":"1"}"#).unwrap();
        assert!(matches!(red, ClassInput::Reduced(_)));
    }
}
