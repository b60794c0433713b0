//! Exact arithmetic: rationals, quadratic irrationals, rational intervals,
//! polynomials, Sturm root isolation and certified sign checks.

pub mod interval;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod roots;
pub mod surd;

pub use interval::RationalInterval;
pub use poly::Polynomial;
pub use quadratic::QuadraticNumber;
pub use rational::{int, parse_rational, rat, Rational};
pub use roots::{count_real_roots, isolate_real_roots, refine_root, Isolator, RootLocation};
pub use surd::{certify_sign, SignCertificate, SignClaim, SurdExpression, Witness};
