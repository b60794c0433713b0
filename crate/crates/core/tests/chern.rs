mod common;

use proptest::prelude::*;
use tiltbg::chern::{ideal_sheaf, line_bundle, ChernClass, ReducedClass};
use tiltbg::exactnum::{int, rat, Rational};
use tiltbg::io::bundled_model;

/// The components of a reduced class that depend linearly on the class.
fn linear_part(a: &ReducedClass) -> [Rational; 5] {
    let [c0, c1, c2, c3] = a.core();
    [c0, c1, c2, c3, a.c2ch1.clone()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn twist_group_law(seed in any::<u64>(), s in -24i64..=24, t in -24i64..=24) {
        let mut r = common::rng(seed);
        let (s, t) = (rat(s, 4), rat(t, 6));
        for m in common::models() {
            let c = common::chern_class(&mut r, &m);
            prop_assert_eq!(c.twist(&m, &s).twist(&m, &t), c.twist(&m, &(&s + &t)));
            prop_assert_eq!(c.twist(&m, &s).twist(&m, &-&s), c.clone());
            prop_assert_eq!(c.twist(&m, &int(0)), c.clone());
            let red = c.reduce(&m);
            prop_assert_eq!(red.twist(&m, &s), c.twist(&m, &s).reduce(&m));
            prop_assert_eq!(red.twist(&m, &s).twist(&m, &t), red.twist(&m, &(&s + &t)));
        }
    }

    #[test]
    fn discriminant_is_twist_invariant(seed in any::<u64>(), s in -40i64..=40) {
        let mut r = common::rng(seed);
        let s = rat(s, 7);
        for m in common::models() {
            let c = common::reduced_class(&mut r, &m);
            let base = c.deltabar(&m, &int(0));
            prop_assert_eq!(c.deltabar(&m, &s), base.clone());
            prop_assert_eq!(c.twist(&m, &s).deltabar(&m, &int(0)), base);
            prop_assert_eq!(c.twist(&m, &s).h_delta(), c.h_delta());
        }
    }

    #[test]
    fn reduction_and_twist_are_linear(seed in any::<u64>(), s in -12i64..=12) {
        let mut r = common::rng(seed);
        let s = rat(s, 3);
        for m in common::models() {
            let a = common::chern_class(&mut r, &m);
            let b = common::chern_class(&mut r, &m);
            let (sa, sb, sab) = (linear_part(&a.reduce(&m)), linear_part(&b.reduce(&m)), linear_part(&(&a + &b).reduce(&m)));
            for i in 0..5 {
                prop_assert_eq!(&sab[i], &(&sa[i] + &sb[i]));
            }
            prop_assert_eq!((&a + &b).twist(&m, &s), &a.twist(&m, &s) + &b.twist(&m, &s));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(a.scale(&int(3)), &(&a + &a) + &a);
        }
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>(), s in -12i64..=12) {
        let mut r = common::rng(seed);
        let s = rat(s, 5);
        for m in common::models() {
            let c = common::chern_class(&mut r, &m);
            prop_assert_eq!(c.dual().dual(), c.clone());
            prop_assert_eq!(c.dual().reduce(&m), c.reduce(&m).dual());
            prop_assert_eq!(c.twist(&m, &s).dual(), c.dual().twist(&m, &-&s));
            prop_assert_eq!(c.dual().deltabar(&m, &int(0)), c.deltabar(&m, &int(0)));
        }
    }

    #[test]
    fn discriminant_dominates_degree_times_h_delta(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        for m in common::models() {
            let c = common::reduced_class(&mut r, &m);
            prop_assert!(m.degree() * c.h_delta() <= c.deltabar(&m, &int(0)));
        }
    }
}

#[test]
fn line_bundle_examples() {
    let m = bundled_model("blowup_p3_point").unwrap();
    assert_eq!(line_bundle(&m, 2).reduce(&m).core(), [int(1), int(14), int(14), rat(28, 3)]);
    let p3 = bundled_model("p3").unwrap();
    assert_eq!(line_bundle(&p3, 1).reduce(&p3).core(), [int(1), int(1), rat(1, 2), rat(1, 6)]);
    for model in common::models() {
        for k in -5..=5 {
            let o = line_bundle(&model, k);
            assert_eq!(o.deltabar(&model, &int(0)), int(0));
            assert_eq!(o.h_delta(&model), int(0));
            assert_eq!(o, line_bundle(&model, 0).twist(&model, &int(-k)));
            let i = ideal_sheaf(&model, k, 3);
            assert_eq!(i.ch3, &o.ch3 - int(3));
            assert_eq!(i.deltabar(&model, &int(0)), int(0));
        }
    }
}

#[test]
fn normalized_discriminant() {
    let m = bundled_model("blowup_p3_point").unwrap();
    let c = ChernClass::new(int(2), vec![int(1), int(0)], vec![int(0), int(0)], int(0)).reduce(&m);
    let dc = m.degree() * int(2);
    assert_eq!(c.normalized_deltabar(&m).unwrap(), c.deltabar(&m, &int(0)) / (&dc * &dc));
    assert_eq!(ChernClass::zero(&m).reduce(&m).normalized_deltabar(&m), None);
    let _: Rational = c.h_delta();
}
