//! Shared generators for the integration and property tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiltbg::chern::{ChernClass, ReducedClass};
use tiltbg::exactnum::{int, rat, Rational};
use tiltbg::io::bundled_models;
use tiltbg::threefold::ThreefoldModel;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn models() -> Vec<ThreefoldModel> {
    bundled_models()
}

/// A rational with numerator in `[-span·den, span·den]` and the given denominator.
pub fn rational(r: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    rat(r.gen_range(-span * den..=span * den), den)
}

/// A random numerical class in lattice coordinates, with ch₂ in halves and
/// ch₃ in sixths.
pub fn chern_class(r: &mut ChaCha8Rng, m: &ThreefoldModel) -> ChernClass {
    let n = m.rank();
    ChernClass::new(
        int(r.gen_range(-3..=3)),
        (0..n).map(|_| int(r.gen_range(-5..=5))).collect(),
        (0..n).map(|_| rational(r, 6, 2)).collect(),
        rational(r, 8, 6),
    )
}

pub fn reduced_class(r: &mut ChaCha8Rng, m: &ThreefoldModel) -> ReducedClass {
    chern_class(r, m).reduce(m)
}

/// A class with the given ch₀ and H²ch₁ whose tilt slope at (0, α₀) is zero.
pub fn zero_slope_class(
    m: &ThreefoldModel,
    ch0: i64,
    h2ch1: Rational,
    alpha0_sq: &Rational,
    ch3: Rational,
) -> ReducedClass {
    let hch2 = alpha0_sq / int(2) * m.degree() * int(ch0);
    ReducedClass::new(int(ch0), h2ch1, hch2, ch3, int(0), int(0))
}

pub fn to_f64(x: &Rational) -> f64 {
    tiltbg::exactnum::rational::to_f64(x)
}
