mod common;

use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;
use tiltbg::bg::d_value;
use tiltbg::chern::ReducedClass;
use tiltbg::exactnum::{int, rat, QuadraticNumber, Rational};
use tiltbg::threefold::ThreefoldModel;
use tiltbg::tilt::{
    d_dalpha_along_c, dbeta_dalpha, mu, nu, psi, psi_from_nu, wall_circle, z_locus, Branch, SlopeValue,
};

fn q(r: &Rational) -> QuadraticNumber {
    QuadraticNumber::from_rational(r.clone())
}

fn finite_nu(m: &ThreefoldModel, c: &ReducedClass, b: &Rational, a2: &Rational) -> Option<Rational> {
    match nu(m, c, b, a2).unwrap() {
        SlopeValue::Finite(v) => Some(v.as_rational().unwrap().clone()),
        SlopeValue::PlusInfinity => None,
    }
}

fn finite_mu(m: &ThreefoldModel, c: &ReducedClass, b: &Rational) -> Option<Rational> {
    mu(m, c, b).as_rational().cloned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn slope_recentering(seed in any::<u64>(), b in -30i64..=30, t in -30i64..=30, a in 1i64..=40) {
        let mut r = common::rng(seed);
        let (b, t, a2) = (rat(b, 7), rat(t, 5), rat(a, 9));
        for m in common::models() {
            let c = common::reduced_class(&mut r, &m);
            if let Some(m0) = finite_mu(&m, &c, &int(0)) {
                prop_assert_eq!(finite_mu(&m, &c, &b).unwrap(), &m0 - &b);
            }
            if let Some(v) = finite_nu(&m, &c, &b, &a2) {
                let (h2ch1_b, _, _) = c.twist_polys(&m).at(&b);
                let (_, hch2_bt, _) = c.twist_polys(&m).at(&(&b + &t));
                let rhs = (hch2_bt - (&t * &t + &a2) / int(2) * m.degree() * &c.ch0) / h2ch1_b;
                prop_assert_eq!(&v - &t, rhs);
            }
        }
    }

    #[test]
    fn psi_branches_multiply_to_minus_radicand(n in -50i64..=50, a in 0i64..=40, dl in 0i64..=40) {
        let (v, a2, delta) = (rat(n, 6), rat(a, 7), rat(dl, 11));
        let plus = psi_from_nu(&v, &a2, &delta, Branch::Plus);
        let minus = psi_from_nu(&v, &a2, &delta, Branch::Minus);
        prop_assert_eq!(plus.checked_mul(&minus).unwrap(), q(&-(&a2 + &delta)));
        prop_assert_eq!(plus.checked_add(&minus).unwrap(), q(&(int(2) * &v)));
    }

    #[test]
    fn psi_brackets_normalized_discriminant(seed in any::<u64>(), b in -20i64..=20, a in 1i64..=30, l1 in 0i64..=30, l2 in 0i64..=30) {
        let mut r = common::rng(seed);
        let (b, a2) = (rat(b, 4), rat(a, 8));
        let (l1, l2) = (rat(l1.min(l2), 10), rat(l1.max(l2) + 1, 10));
        for m in common::models() {
            let mut c = common::reduced_class(&mut r, &m);
            c.ch0 = int(r.gen_range(1..=3));
            let Some(v) = finite_nu(&m, &c, &b, &a2) else { continue };
            let mu_b = finite_mu(&m, &c, &b).unwrap();
            if mu_b < v {
                continue;
            }
            let normalized = c.normalized_deltabar(&m).unwrap();
            let lhs = l1 < normalized && normalized < l2;
            let p1 = psi(&m, &c, &b, &a2, &l1, Branch::Plus).unwrap();
            let p2 = psi(&m, &c, &b, &a2, &l2, Branch::Plus).unwrap();
            let rhs = p1 < q(&mu_b) && q(&mu_b) < p2;
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn slope_bound_and_discriminant(seed in any::<u64>(), b in -20i64..=20, a in 1i64..=30) {
        let mut r = common::rng(seed);
        let (b, a2) = (rat(b, 3), rat(a, 5));
        for m in common::models() {
            let mut c = common::reduced_class(&mut r, &m);
            c.ch0 = int(r.gen_range(1..=3));
            let Some(v) = finite_nu(&m, &c, &b, &a2) else { continue };
            let dc = m.degree() * &c.ch0;
            let (h2ch1_bv, _, _) = c.twist_polys(&m).at(&(&b + &v));
            let delta = c.deltabar(&m, &b);
            prop_assert_eq!(&delta, &(&h2ch1_bv * &h2ch1_bv - (&v * &v + &a2) * &dc * &dc));
            let mu_b = q(&finite_mu(&m, &c, &b).unwrap());
            let bound = psi(&m, &c, &b, &a2, &int(0), Branch::Plus).unwrap();
            if mu_b >= bound {
                prop_assert!(delta >= int(0));
                prop_assert_eq!(mu_b == bound, delta == int(0));
            }
        }
    }

    #[test]
    fn recentred_base_point_lies_on_z(seed in any::<u64>(), b in -20i64..=20, a in 1i64..=30) {
        let mut r = common::rng(seed);
        let (b0, a2) = (rat(b, 6), rat(a, 7));
        for m in common::models() {
            let c = common::reduced_class(&mut r, &m);
            if c.ch0 == int(0) {
                continue;
            }
            let Some(v) = finite_nu(&m, &c, &b0, &a2) else { continue };
            let beta = &b0 + &v;
            let alpha_sq = &v * &v + &a2;
            let res = z_locus(&m, &c).residual(&q(&beta), &q(&alpha_sq)).unwrap();
            prop_assert!(res.is_zero());
        }
    }

    #[test]
    fn equal_slope_classes_share_the_wall(seed in any::<u64>(), b in -12i64..=12, a in 1i64..=20, s in -40i64..=40) {
        let mut r = common::rng(seed);
        let (b0, a2) = (rat(b, 4), rat(a, 5));
        for m in common::models() {
            let e = common::reduced_class(&mut r, &m);
            let Some(v) = finite_nu(&m, &e, &b0, &a2) else { continue };
            let wall = wall_circle(&m, &e, &b0, &a2).unwrap();
            prop_assert!(wall.contains(&b0, &a2));
            prop_assert_eq!(&wall.center_beta, &(&b0 + &v));
            // A second class with the same tilt slope at the base point.
            let mut f = common::reduced_class(&mut r, &m);
            let (h2ch1_f, _, _) = f.twist_polys(&m).at(&b0);
            if h2ch1_f == int(0) {
                continue;
            }
            let target = &v * &h2ch1_f + &a2 / int(2) * m.degree() * &f.ch0;
            f.hch2 = target + &b0 * &f.h2ch1 - &b0 * &b0 / int(2) * m.degree() * &f.ch0;
            prop_assert_eq!(finite_nu(&m, &f, &b0, &a2), Some(v.clone()));
            let beta = &wall.center_beta + rat(s, 41) * rat(1, 2);
            let Some(alpha_sq) = wall.alpha_sq_at(&beta) else { continue };
            let (ve, vf) = (finite_nu(&m, &e, &beta, &alpha_sq), finite_nu(&m, &f, &beta, &alpha_sq));
            if let (Some(ve), Some(vf)) = (ve, vf) {
                prop_assert_eq!(ve, vf);
            }
        }
    }

    #[test]
    fn walls_of_one_class_are_nested(seed in any::<u64>(), a in 1i64..=20, gap in 1i64..=20) {
        let mut r = common::rng(seed);
        for m in common::models() {
            let mut e = common::reduced_class(&mut r, &m);
            e.ch0 = int(r.gen_range(1..=3));
            if e.deltabar(&m, &int(0)) <= int(0) {
                continue;
            }
            let mu0 = finite_mu(&m, &e, &int(0)).unwrap();
            let b0 = &mu0 - int(r.gen_range(1..=4));
            let (a1, a2) = (rat(a, 3), rat(a + gap, 3));
            let (Some(_), Some(_)) = (finite_nu(&m, &e, &b0, &a1), finite_nu(&m, &e, &b0, &a2)) else { continue };
            let w1 = wall_circle(&m, &e, &b0, &a1).unwrap();
            let w2 = wall_circle(&m, &e, &b0, &a2).unwrap();
            // Disjoint circles: |c₁ − c₂| < |r₁ − r₂|, squared twice to stay rational.
            let dc = &w1.center_beta - &w2.center_beta;
            let s = &w1.radius_sq + &w2.radius_sq - &dc * &dc;
            prop_assert!(s > int(0));
            prop_assert!(&s * &s > int(4) * &w1.radius_sq * &w2.radius_sq);
        }
    }

    #[test]
    fn z_locus_slope_identity(seed in any::<u64>(), a in 1i64..=40) {
        let mut r = common::rng(seed);
        let alpha = rat(a, 8);
        for m in common::models() {
            let c = common::reduced_class(&mut r, &m);
            if c.ch0 == int(0) {
                continue;
            }
            let locus = z_locus(&m, &c);
            let dc = m.degree() * &c.ch0;
            let delta = c.deltabar(&m, &int(0));
            for p in locus.points_at_alpha(&alpha) {
                let Ok(db) = dbeta_dalpha(&m, &c, &p) else { continue };
                let factor = int(1) + &delta / (&alpha * &alpha * &dc * &dc);
                prop_assert_eq!(db.square().scale(&factor), q(&int(1)));
                if delta >= int(0) {
                    prop_assert!(db.square() <= q(&int(1)));
                }
            }
        }
    }

    #[test]
    fn discriminant_additivity(a1 in 0i64..=30, a2 in 0i64..=30, c1 in -6i64..=6, c2 in -6i64..=6, al in 1i64..=4) {
        let m = tiltbg::io::bundled_model("blowup_p3_point").unwrap();
        let alpha_sq = int(al * al);
        let d = m.degree().clone();
        let make = |ch0: i64, excess: i64| {
            let bound = (int(ch0) * int(al) * &d).abs();
            common::zero_slope_class(&m, ch0, bound + int(excess), &alpha_sq, int(0))
        };
        let (e1, e2) = (make(c1, a1), make(c2, a2));
        let sum = ReducedClass::new(
            &e1.ch0 + &e2.ch0, &e1.h2ch1 + &e2.h2ch1, &e1.hch2 + &e2.hch2, int(0), int(0), int(0),
        );
        for c in [&e1, &e2, &sum] {
            prop_assume!(c.h2ch1 != int(0));
            prop_assert_eq!(finite_nu(&m, c, &int(0), &alpha_sq), Some(int(0)));
        }
        let (d1, d2, d12) = (e1.deltabar(&m, &int(0)), e2.deltabar(&m, &int(0)), sum.deltabar(&m, &int(0)));
        prop_assert!(d12 >= &d1 + &d2);
        if (d1 == int(0)) != (d2 == int(0)) {
            prop_assert!(d12 >= &d1 + &d2 + int(1));
        }
        if d1 == int(0) && d2 == int(0) && (c1 == 0 || c2 == 0 || c1.signum() == c2.signum()) {
            prop_assert_eq!(d12, int(0));
        }
    }
}

/// Central difference of D along one branch of Z(E).
fn finite_difference(
    m: &ThreefoldModel,
    c: &ReducedClass,
    xi: &Rational,
    alpha: &Rational,
    branch: usize,
) -> Option<f64> {
    let h = rat(1, 100_000);
    let locus = z_locus(m, c);
    let at = |a: &Rational| -> Option<f64> {
        let pts = locus.points_at_alpha(a);
        let p = pts.get(branch)?;
        Some(d_value(m, c, xi, &p.alpha_sq(), &p.beta).ok()?.to_f64())
    };
    let up = at(&(alpha + &h))?;
    let down = at(&(alpha - &h))?;
    Some((up - down) / (2.0 * common::to_f64(&h)))
}

#[test]
fn d_derivative_matches_finite_differences() {
    let mut r = common::rng(413);
    let mut checked = 0;
    for m in common::models() {
        for _ in 0..60 {
            let c = common::reduced_class(&mut r, &m);
            if c.ch0 == int(0) {
                continue;
            }
            let xi = rat(r.gen_range(0..=20), 10);
            let alpha = rat(r.gen_range(5..=40), 8);
            let locus = z_locus(&m, &c);
            let pts = locus.points_at_alpha(&alpha);
            for (branch, p) in pts.iter().enumerate() {
                let Ok(exact) = d_dalpha_along_c(&m, &c, &xi, p, &locus) else { continue };
                let exact = exact.to_f64();
                let Some(fd) = finite_difference(&m, &c, &xi, &alpha, branch) else { continue };
                // Stay away from the vertical tangents, where β(α) is not smooth.
                if dbeta_dalpha(&m, &c, p).map(|v| v.to_f64().abs() > 10.0).unwrap_or(true) {
                    continue;
                }
                let scale = exact.abs().max(1.0);
                assert!((fd - exact).abs() <= 1e-6 * scale, "{} {:?}: fd {fd} exact {exact}", m.name(), c);
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} points compared");
}
