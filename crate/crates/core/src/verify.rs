//! Certifiers for the standalone one-variable inequalities: the f₀/f₁ sign
//! cases, the ξ = 0 cases, the p/q rewrites on the blow-up, and the two
//! auxiliary bounds used for index one and for the blow-up of P³.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bg::{f_polynomials, pq_polynomials, xi_min};
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::{
    certify_sign, isolate_real_roots, refine_root, Polynomial, QuadraticNumber, RationalInterval, SignClaim,
    SurdExpression,
};
use crate::report::{CheckReport, Entry, Status, Verdict};
use crate::threefold::{kappa, ThreefoldModel};

/// Which certifier a suite runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    A1,
    A2,
    Note72,
    Remark75,
    Prop84,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a1" => Suite::A1,
            "a2" => Suite::A2,
            "note72" => Suite::Note72,
            "remark75" => Suite::Remark75,
            "prop84" => Suite::Prop84,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown verify suite {s:?}"))),
        })
    }
}

fn window(lo: Rational, hi: Rational) -> RationalInterval {
    RationalInterval::new(lo, hi).expect("ordered window")
}

/// Certifies a sign claim and records it as one entry.
fn certified_entry(name: &str, expr: &SurdExpression, w: &RationalInterval, claim: SignClaim) -> Result<Entry> {
    let cert = certify_sign(expr, w, claim)?;
    let mut e =
        Entry::pass_if(name, cert.certified()).with("claim", claim).with("window", w).with("zeros", cert.zeros.len());
    if let Some(wit) = &cert.witness {
        e = e.with("witness", wit);
    }
    if !expr.s.is_zero() {
        e = e.with_str("sqrt_of", &expr.s);
    }
    Ok(e.with_str("p", &expr.p).with_str("q", &expr.q))
}

fn identity_entry(name: &str, lhs: &Polynomial, rhs: &Polynomial) -> Entry {
    Entry::pass_if(name, lhs == rhs).with_str("lhs", lhs).with_str("rhs", rhs)
}

/// The index-one cubic (x − 1/2)³/6 + ((48 − d)/(24d))(x − 1/2) and its
/// derivative.
fn index_one_f(d: &Rational) -> (Polynomial, Polynomial) {
    let s = Polynomial::linear(int(1), rat(-1, 2));
    let k = (int(48) - d) / (int(24) * d);
    let f = &s.pow(3).scale(&rat(1, 6)) + &s.scale(&k);
    let df = f.derivative();
    (f, df)
}

/// g(x) = √(3/(2d))·f′(x) + f(x) and h(x) = (1 − x)f′(x) + 2f(x) are
/// nonnegative on [0, 1) for 1 ≤ d ≤ 48.
pub fn verify_a1(d: i64) -> Result<CheckReport> {
    if !(1..=48).contains(&d) {
        return Err(Error::Domain(format!("d = {d} outside 1..=48")));
    }
    let dq = int(d);
    let (f, df) = index_one_f(&dq);
    let s = rat(3, 2) / &dq;
    let g = SurdExpression::new(f.clone(), s.clone(), df.clone())?;
    let one_minus = Polynomial::linear(int(-1), int(1));
    let h = &(&one_minus * &df) + &f.scale(&int(2));
    let unit = window(int(0), int(1));
    let mut rep = CheckReport::new(format!("a1 d={d}"), Verdict::Certified);

    rep.push(certified_entry("g_nonnegative", &g, &unit, SignClaim::Nonnegative)?);
    let two_minus = Polynomial::linear(int(-1), int(2));
    let one_minus_2x = Polynomial::linear(int(-2), int(1));
    let cubic_part = (&two_minus * &one_minus_2x.pow(2)).scale(&rat(1, 24));
    let k = (int(48) - &dq) / (int(24) * &dq);
    let h_closed = &cubic_part + &Polynomial::linear(k.clone(), int(0));
    rep.push(identity_entry("h_closed_form", &h, &h_closed));
    let printed = &cubic_part + &Polynomial::constant(k);
    rep.push(
        Entry::new("h_printed_constant_form", Status::Info)
            .with("matches", printed == h)
            .with_str("difference", &(&h - &printed)),
    );
    rep.push(certified_entry("h_nonnegative", &SurdExpression::polynomial(h), &unit, SignClaim::Nonnegative)?);

    // g(0) = √(6/d)(24 + d)/(24d) − 1/d, the expansion of √(6/d)(1/√d − 1/√24)².
    let g0 = g.eval(&int(0));
    let root6d = QuadraticNumber::sqrt(&(int(6) / &dq)).expect("positive");
    let g0_closed = root6d.scale(&((int(24) + &dq) / (int(24) * &dq))).add_rational(&-(int(1) / &dq));
    rep.push(
        Entry::pass_if("g_at_zero", g0 == g0_closed && g0.signum() >= 0).with("value", &g0).with("approx", g0.to_f64()),
    );

    let regime = if d <= 30 { "g' >= 0 on all of R" } else { "g has a local minimum at lambda2 in (0, 1)" };
    let mut e = Entry::new("derivative_regime", Status::Info).with_str("regime", regime);
    if d > 30 {
        let lambda2 = 0.5 - (1.5 / d as f64).sqrt() + ((d as f64 - 30.0) / (12.0 * d as f64)).sqrt();
        e = e.with("lambda2_approx", lambda2);
    }
    rep.push(e);
    if d == 48 {
        let half = rat(1, 2);
        let v = g.eval(&half);
        rep.push(Entry::pass_if("equality_at_lambda2", v.is_zero()).with_str("lambda2", &half).with("g", &v));
    }
    if d == 24 {
        rep.push(Entry::pass_if("g_at_zero_vanishes", g0.is_zero()));
    }
    finish(rep)
}

fn finish(mut rep: CheckReport) -> Result<CheckReport> {
    if rep.entries.iter().any(|e| e.status == Status::Fail) {
        rep.verdict = Verdict::Violated;
    }
    Ok(rep)
}

/// p(x) and q(x) with Ā = 1 + x.
fn blowup_pq() -> (Polynomial, Polynomial) {
    pq_polynomials(&int(1), &int(1))
}

/// F(x) = ((1 + x)² + 2/49)·p(x)² − q(x)².
pub fn blowup_f() -> Polynomial {
    let (p, q) = blowup_pq();
    let one_plus = Polynomial::linear(int(1), int(1));
    let w = &(&one_plus * &one_plus) + &Polynomial::constant(rat(2, 49));
    &(&w * &(&p * &p)) - &(&q * &q)
}

/// The printed closed form of the critical point λ₁ in floating point.
fn lambda1_closed_form() -> f64 {
    let (re, im) = (-2917215.0f64, 32.0 * 97656006.0f64.sqrt());
    let modulus = re.hypot(im).cbrt();
    let arg = im.atan2(re) / 3.0;
    let (zr, zi) = (modulus * arg.cos(), modulus * arg.sin());
    let inv_norm = 1.0 / (zr * zr + zi * zi);
    let c441 = 441f64.cbrt();
    let c21 = 21f64.cbrt();
    let real_part = zr / c441 + 7429.0 / c21 * zr * inv_norm;
    -23.0 / 8.0 + real_part / 8.0
}

/// Positivity of p + q and of F on [−1/2, 0], the critical values of p + q,
/// the critical point λ₁ of F and an enclosure of F(λ₁).
pub fn verify_a2() -> Result<CheckReport> {
    let (p, q) = blowup_pq();
    let pq = &p + &q;
    let w = window(rat(-1, 2), int(0));
    let mut rep = CheckReport::new("a2", Verdict::Certified);

    let cubic = Polynomial::new(vec![rat(1, 7), rat(17, 21), rat(5, 3), rat(2, 3)]);
    rep.push(identity_entry("p_plus_q_cubic", &pq, &cubic));
    rep.push(certified_entry("p_plus_q_positive", &SurdExpression::polynomial(pq.clone()), &w, SignClaim::Positive)?);

    let root = QuadraticNumber::new(Rational::zero(), rat(1, 42), BigInt::from(511))?;
    let crit: Vec<QuadraticNumber> = [root.clone(), -&root].iter().map(|r| r.add_rational(&rat(-5, 6))).collect();
    let dpq = pq.derivative();
    let expected = [
        QuadraticNumber::new(rat(1904, 7938), rat(-73, 7938), BigInt::from(511))?,
        QuadraticNumber::new(rat(1904, 7938), rat(73, 7938), BigInt::from(511))?,
    ];
    for (x, want) in crit.iter().zip(&expected) {
        let dv = dpq.eval_quadratic(x);
        let v = pq.eval_quadratic(x);
        rep.push(
            Entry::pass_if("p_plus_q_critical_value", dv.is_zero() && &v == want && v.signum() > 0)
                .with("x", x)
                .with("value", &v)
                .with("approx", v.to_f64()),
        );
    }
    let inside = crit[0] > QuadraticNumber::from_rational(rat(-1, 2)) && crit[0].signum() < 0;
    let outside = crit[1] < QuadraticNumber::from_rational(rat(-1, 2));
    rep.push(Entry::pass_if("critical_points_ordered", inside && outside));

    let f = blowup_f();
    let df = f.derivative();
    let printed = Polynomial::from_ints(&[108, 460, 483, 56]).scale(&rat(4, 3087));
    rep.push(identity_entry("f_derivative", &df, &printed));
    let open = window(rat(-1, 2), int(0));
    let roots = isolate_real_roots(&df, &open)?;
    let interior: Vec<&RationalInterval> = roots.iter().filter(|r| r.hi() > &rat(-1, 2) && r.lo() < &int(0)).collect();
    rep.push(Entry::pass_if("f_critical_point_unique", interior.len() == 1).with("count", interior.len()));
    if let Some(iso) = interior.first() {
        let lam = refine_root(&df, iso, &Rational::new(BigInt::from(1), BigInt::from(10).pow(30)))?;
        let fv = f.eval_interval(&lam);
        let width_ok = fv.width() <= rat(1, 100_000_000);
        let inside = fv.lo() > &rat(28, 1_000_000) && fv.hi() < &rat(29, 1_000_000);
        let wide = refine_root(&df, iso, &rat(1, 10_000))?;
        rep.push(
            Entry::pass_if("lambda1_enclosure", wide.lo() > &rat(-1, 2) && wide.hi() < &int(0))
                .with("enclosure", &wide)
                .with("approx", lam.to_f64_pair().0),
        );
        rep.push(
            Entry::pass_if("f_at_lambda1", width_ok && inside).with("enclosure", &fv).with("approx", fv.to_f64_pair()),
        );
        let closed = lambda1_closed_form();
        rep.push(
            Entry::new("lambda1_closed_form", Status::Info)
                .with("approx", closed)
                .with("matches_isolated_root", (closed - lam.to_f64_pair().0).abs() < 1e-6),
        );
    }
    rep.push(certified_entry("f_positive", &SurdExpression::polynomial(f.clone()), &w, SignClaim::Positive)?);
    let f0 = f.eval(&int(0));
    rep.push(Entry::pass_if("f_at_zero", f0 == rat(51, 2401)).with_str("value", &f0));
    finish(rep.note("the radical closed form of lambda1 is not independently verified"))
}

/// Sign claims on [0, 1) for f₀ and f₁ by index and degree.
pub fn verify_note72(r: u32, d: i64) -> Result<CheckReport> {
    let ok = match r {
        4 => d == 1,
        3 => d == 1,
        2 => (1..=7).contains(&d),
        1 => (1..=62).contains(&d),
        _ => false,
    };
    if !ok {
        return Err(Error::Domain(format!("(r, d) = ({r}, {d}) outside the listed cases")));
    }
    let dq = int(d);
    let f = f_polynomials(&int(i64::from(r)), &dq);
    let unit = window(int(0), int(1));
    let f0 = SurdExpression::polynomial(f.f0.clone());
    let f1 = SurdExpression::polynomial(f.f1.clone());
    let mut rep = CheckReport::new(format!("note72 r={r} d={d}"), Verdict::Certified);
    match r {
        4 => {
            let p0 = Polynomial::new(vec![int(0), rat(1, 3), rat(1, 2), rat(1, 6)]);
            let p1 = Polynomial::new(vec![rat(1, 3), int(1), rat(1, 2)]);
            rep.push(identity_entry("f0_printed", &f.f0, &p0));
            rep.push(identity_entry("f1_printed", &f.f1, &p1));
            rep.push(certified_entry("f0_nonnegative", &f0, &unit, SignClaim::Nonnegative)?);
            rep.push(certified_entry("f1_positive", &f1, &unit, SignClaim::Positive)?);
        }
        3 => {
            let p0 = Polynomial::new(vec![rat(1, 6), rat(5, 12), rat(1, 4), rat(1, 6)]);
            let p1 = Polynomial::new(vec![rat(5, 12), rat(1, 2), rat(1, 2)]);
            rep.push(identity_entry("f0_printed", &f.f0, &p0));
            rep.push(identity_entry("f1_printed", &f.f1, &p1));
            rep.push(certified_entry("f0_positive", &f0, &unit, SignClaim::Positive)?);
            rep.push(certified_entry("f1_positive", &f1, &unit, SignClaim::Positive)?);
        }
        2 => {
            let k = (int(6) - &dq) / (int(6) * &dq);
            let p0 = Polynomial::new(vec![int(0), k.clone(), int(0), rat(1, 6)]);
            let p1 = Polynomial::new(vec![k, int(0), rat(1, 2)]);
            rep.push(identity_entry("f0_simplified", &f.f0, &p0));
            rep.push(identity_entry("f1_simplified", &f.f1, &p1));
            if d <= 6 {
                rep.push(certified_entry("f0_nonnegative", &f0, &unit, SignClaim::Nonnegative)?);
                rep.push(certified_entry("f1_nonnegative", &f1, &unit, SignClaim::Nonnegative)?);
            } else {
                let x = rat(1, 10);
                let v = f.f0.eval(&x);
                rep.push(
                    Entry::new("f0_sample", Status::Info)
                        .with_str("beta", &x)
                        .with_str("f0", &v)
                        .with("negative", v.is_negative()),
                );
                rep = rep.note("no nonnegativity claim is made for this degree; no claim certified");
            }
        }
        _ => {
            let (p0, p1) = index_one_f(&dq);
            rep.push(identity_entry("f0_simplified", &f.f0, &p0));
            rep.push(identity_entry("f1_simplified", &f.f1, &p1));
            rep = rep.note("no blanket sign claim is made for index one; no claim certified");
        }
    }
    finish(rep)
}

/// Whether the model falls in the list of cases with ξ = 0.
pub fn in_xi_zero_list(model: &ThreefoldModel) -> Result<bool> {
    let d = model.degree();
    Ok(match model.index() {
        4 | 3 => true,
        2 => d.is_integer() && *d >= int(1) && *d <= int(6),
        1 => {
            let k = kappa(model)?;
            d.is_integer() && *d >= int(1) && *d <= int(48) && k == rat(3, 2) / d
        }
        _ => false,
    })
}

/// ξ = 0 for a model in the listed cases.
pub fn verify_remark75(model: &ThreefoldModel) -> Result<CheckReport> {
    let name = format!("remark75 {}", model.name());
    model.require_fano("xi")?;
    if !in_xi_zero_list(model)? {
        return Ok(CheckReport::new(name, Verdict::NotApplicable).note("model is not among the cases with xi = 0"));
    }
    let x = xi_min(model)?;
    let mut rep = CheckReport::new(name, Verdict::Certified);
    rep.push(
        Entry::pass_if("xi_zero", x.exact_zero)
            .with_str("xi", &x.xi)
            .with("enclosure", &x.enclosure)
            .with_str("kappa", &x.kappa),
    );
    rep.push(Entry::new("strict_positivity", Status::Info).with("holds", x.strict_positivity));
    finish(rep)
}

/// The p and q rewrites for the blow-up A-function and the two positivity
/// conclusions on [−1/2, 0].
pub fn verify_prop84() -> Result<CheckReport> {
    let mut rep = CheckReport::new("prop84", Verdict::Certified);
    let x = Polynomial::x();
    let c17 = Polynomial::constant(rat(17, 168));
    let (p_left, q_left) = pq_polynomials(&int(1), &int(1));
    let (p_right, q_right) = pq_polynomials(&int(-1), &int(1));
    let sq = |a: i64, b: i64| Polynomial::linear(int(a), int(b)).pow(2).scale(&rat(1, 24));
    rep.push(identity_entry("p_rewrite_left", &p_left, &(&sq(4, 1) + &c17)));
    rep.push(identity_entry("p_rewrite_right", &p_right, &(&sq(4, -1) + &c17)));
    let shifted = Polynomial::linear(int(1), rat(-3, 4)).pow(2);
    let q_fact = &x.scale(&rat(2, 3)) * &(&shifted + &Polynomial::constant(rat(17, 112)));
    rep.push(identity_entry("q_factorization_right", &q_right, &q_fact));
    let q_left_form = &x * &(&sq(4, 3) + &c17);
    rep.push(identity_entry("q_factorization_left", &q_left, &q_left_form));

    let w = window(rat(-1, 2), int(0));
    let pq = &p_left + &q_left;
    rep.push(certified_entry("conclusion_i", &SurdExpression::polynomial(pq), &w, SignClaim::Positive)?);
    rep.push(certified_entry("p_positive", &SurdExpression::polynomial(p_left.clone()), &w, SignClaim::Positive)?);
    let neg_q = SurdExpression::polynomial(-&q_left);
    rep.push(certified_entry("q_nonpositive", &neg_q, &w, SignClaim::Nonnegative)?);
    rep.push(certified_entry("conclusion_ii_via_f", &SurdExpression::polynomial(blowup_f()), &w, SignClaim::Positive)?);
    finish(rep.note("conclusion (ii) follows from p > 0, q <= 0 and F > 0"))
}

/// Every listed (r, d) case of the f₀/f₁ sign certifier.
pub fn note72_cases() -> Vec<(u32, i64)> {
    let mut v = vec![(4, 1), (3, 1)];
    v.extend((1..=7).map(|d| (2, d)));
    v.extend((1..=62).map(|d| (1, d)));
    v
}

/// Models in the ξ = 0 list: bundled ones plus index-one Picard rank one
/// models of degree 1 to 48.
pub fn remark75_models() -> Result<Vec<ThreefoldModel>> {
    let mut v = vec![ThreefoldModel::picard_rank_one(1, 4)?, ThreefoldModel::picard_rank_one(2, 3)?];
    for d in 1..=6 {
        v.push(ThreefoldModel::picard_rank_one(d, 2)?);
    }
    for d in 1..=48 {
        v.push(ThreefoldModel::picard_rank_one(d, 1)?);
    }
    Ok(v)
}

/// Runs one suite, or all of them in a fixed order.
pub fn run_suite(suite: Suite) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Note72 {
        for (r, d) in note72_cases() {
            out.push(verify_note72(r, d)?);
        }
    }
    if all || suite == Suite::Remark75 {
        for m in remark75_models()? {
            out.push(verify_remark75(&m)?);
        }
    }
    if all || suite == Suite::Prop84 {
        out.push(verify_prop84()?);
    }
    if all || suite == Suite::A1 {
        for d in 1..=48 {
            out.push(verify_a1(d)?);
        }
    }
    if all || suite == Suite::A2 {
        out.push(verify_a2()?);
    }
    Ok(out)
}

pub fn verify_all() -> Result<Vec<CheckReport>> {
    run_suite(Suite::All)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_boundary_degrees() {
        for d in [1, 24, 30, 31, 48] {
            let r = verify_a1(d).unwrap();
            assert_eq!(r.verdict, Verdict::Certified, "{}", r.to_text());
        }
        assert!(verify_a1(49).is_err());
        assert!(verify_a1(48).unwrap().entry("equality_at_lambda2").is_some());
    }

    #[test]
    fn a2_certifies() {
        let r = verify_a2().unwrap();
        assert_eq!(r.verdict, Verdict::Certified, "{}", r.to_text());
    }

    #[test]
    fn note72_cases_hold() {
        for (r, d) in note72_cases() {
            let rep = verify_note72(r, d).unwrap();
            assert_eq!(rep.verdict, Verdict::Certified, "{}", rep.to_text());
        }
        let rep = verify_note72(2, 7).unwrap();
        assert_eq!(rep.entry("f0_sample").unwrap().values["negative"], serde_json::json!(true));
        assert!(verify_note72(3, 3).is_err());
    }

    #[test]
    fn prop84_certifies() {
        let r = verify_prop84().unwrap();
        assert_eq!(r.verdict, Verdict::Certified, "{}", r.to_text());
    }

    #[test]
    fn remark75_not_applicable_outside_list() {
        let m = ThreefoldModel::picard_rank_one(62, 1).unwrap();
        assert_eq!(verify_remark75(&m).unwrap().verdict, Verdict::NotApplicable);
    }
}
