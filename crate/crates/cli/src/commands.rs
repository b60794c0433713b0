//! Subcommand dispatch. Each command yields an [`Output`]; the caller
//! renders it and picks the exit code.

use serde_json::{json, Value};
use tiltbg::bg::{self, AFunction};
use tiltbg::chern::ReducedClass;
use tiltbg::exactnum::{parse_rational, Rational, RationalInterval};
use tiltbg::io;
use tiltbg::plot::{self, Plot};
use tiltbg::report::CheckReport;
use tiltbg::threefold::{self, ThreefoldModel};
use tiltbg::tilt::{self, ConicLocus};
use tiltbg::verify::{self, Suite};
use tiltbg::{Error, Result};

use crate::args::{Command, ModelAction, Options, PlotKind, SuiteArg};

pub enum Output {
    /// A computed value: a text line (or lines) and its JSON form.
    Value {
        text: String,
        json: Value,
    },
    Report(CheckReport),
    /// Several reports followed by a summary table.
    Reports(Vec<CheckReport>),
    Plot(Plot),
}

pub fn run(cmd: &Command, o: &Options) -> Result<Output> {
    match cmd {
        Command::Model { action: ModelAction::Validate } => Ok(Output::Report(threefold::validate(&model(o)?))),
        Command::Kappa => kappa(o),
        Command::Slope => slope(o),
        Command::Wall => wall(o),
        Command::Clocus => clocus(o),
        Command::Zlocus => {
            let (m, c) = model_and_class(o)?;
            let z = tilt::z_locus(&m, &c);
            Ok(Output::Value { text: conic_text(&z), json: to_json(&z) })
        }
        Command::Betabar => betabar(o),
        Command::Dvalue => dvalue(o),
        Command::Bgcheck => {
            let (m, c) = model_and_class(o)?;
            let a = a_function(o)?;
            let rep = bg::check_limit_bg(&m, &c, &a, &opt_rational(&o.xi, "xi")?, window(o)?.as_ref())?;
            Ok(Output::Report(rep))
        }
        Command::Strongbg => {
            let (m, c) = model_and_class(o)?;
            Ok(Output::Report(bg::strong_bg_check(&m, &c, &opt_rational(&o.beta, "beta")?, &alpha2(o)?)?))
        }
        Command::Chi => chi(o),
        Command::Xi => xi(o),
        Command::Charge => charge(o),
        Command::Verify { suite } => run_verify(*suite, o),
        Command::Plot { kind } => run_plot(*kind, o),
    }
}

fn model(o: &Options) -> Result<ThreefoldModel> {
    let path = o.model.as_deref().ok_or_else(|| Error::Parse("--model is required".into()))?;
    io::load_model(path)
}

fn model_and_class(o: &Options) -> Result<(ThreefoldModel, ReducedClass)> {
    let m = model(o)?;
    let spec = o.class.as_deref().ok_or_else(|| Error::Parse("--class is required".into()))?;
    let c = io::parse_class(spec, &m)?;
    Ok((m, c))
}

fn a_function(o: &Options) -> Result<AFunction> {
    let path = o.a_function.as_deref().ok_or_else(|| Error::Parse("--A is required".into()))?;
    AFunction::from_json(&io::load_a_function_text(path)?)
}

fn rational(v: &Option<String>, flag: &str) -> Result<Rational> {
    let s = v.as_deref().ok_or_else(|| Error::Parse(format!("--{flag} is required")))?;
    parse_rational(s).map_err(|e| Error::Parse(format!("--{flag}: {e}")))
}

/// An optional rational flag, zero when absent.
fn opt_rational(v: &Option<String>, flag: &str) -> Result<Rational> {
    match v {
        Some(_) => rational(v, flag),
        None => Ok(Rational::from_integer(0.into())),
    }
}

fn alpha2(o: &Options) -> Result<Rational> {
    rational(&o.alpha2, "alpha2")
}

fn alpha2_list(o: &Options) -> Result<Vec<Rational>> {
    let s = o.alpha2.as_deref().ok_or_else(|| Error::Parse("--alpha2 is required".into()))?;
    s.split(',').map(|p| parse_rational(p).map_err(|e| Error::Parse(format!("--alpha2: {e}")))).collect()
}

fn window(o: &Options) -> Result<Option<RationalInterval>> {
    let Some(s) = o.window.as_deref() else { return Ok(None) };
    let (lo, hi) = s.split_once(',').ok_or_else(|| Error::Parse(format!("--window: expected lo,hi, found {s:?}")))?;
    let lo = parse_rational(lo).map_err(|e| Error::Parse(format!("--window: {e}")))?;
    let hi = parse_rational(hi).map_err(|e| Error::Parse(format!("--window: {e}")))?;
    RationalInterval::new(lo, hi).map(Some).map_err(|e| Error::Parse(format!("--window: {e}")))
}

fn to_json(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn conic_text(c: &ConicLocus) -> String {
    let mut s =
        format!("({})·beta^2 + ({})·beta + ({}) − ({})·alpha^2 = 0", c.beta2, c.beta1, c.beta0, c.alpha_sq_coeff);
    if let Some(cap) = &c.alpha_cap_sq {
        s.push_str(&format!(", 0 ≤ alpha^2 ≤ {cap}"));
    }
    s
}

fn kappa(o: &Options) -> Result<Output> {
    let m = model(o)?;
    let k = threefold::kappa(&m)?;
    let rep = threefold::kappa_report(&m)?;
    Ok(Output::Value { text: k.to_string(), json: to_json(&rep) })
}

fn slope(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let b = opt_rational(&o.beta, "beta")?;
    let mu = tilt::mu(&m, &c, &b);
    let mut text = format!("mu = {mu}");
    let mut j = json!({ "beta": b.to_string(), "mu": to_json(&mu) });
    if o.alpha2.is_some() {
        let a2 = alpha2(o)?;
        let nu = tilt::nu(&m, &c, &b, &a2)?;
        text.push_str(&format!("\nnu = {nu}"));
        j["alpha2"] = Value::String(a2.to_string());
        j["nu"] = to_json(&nu);
    }
    Ok(Output::Value { text, json: j })
}

fn wall(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let w = tilt::wall_circle(&m, &c, &opt_rational(&o.beta, "beta")?, &alpha2(o)?)?;
    let text = format!("center = {}, radius^2 = {}", w.center_beta, w.radius_sq);
    Ok(Output::Value { text, json: to_json(&w) })
}

fn clocus(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let rc = tilt::recenter(&m, &c, &opt_rational(&o.beta, "beta")?, &alpha2(o)?)?;
    let locus = tilt::c_locus(&m, &rc.class, &rc.alpha0_sq)?;
    let text = format!("shift = {}\nalpha0^2 = {}\n{}", rc.shift, rc.alpha0_sq, conic_text(&locus));
    Ok(Output::Value { text, json: json!({ "recentered": to_json(&rc), "locus": to_json(&locus) }) })
}

fn betabar(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let set = bg::betabar_set(&m, &c, &a_function(o)?, window(o)?.as_ref())?;
    Ok(Output::Value { text: set.to_string(), json: to_json(&set) })
}

fn dvalue(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let (b, a2, x) = (opt_rational(&o.beta, "beta")?, alpha2(o)?, opt_rational(&o.xi, "xi")?);
    let d = bg::d_value_rational(&m, &c, &x, &a2, &b)?;
    let j = json!({ "beta": b.to_string(), "alpha2": a2.to_string(), "xi": x.to_string(), "D": d.to_string() });
    Ok(Output::Value { text: d.to_string(), json: j })
}

fn chi(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let b = opt_rational(&o.beta, "beta")?;
    let chi = bg::todd_chi(&m, &c)?;
    let chi_self = bg::chi_self(&m, &c)?;
    let minus = bg::chi_minus_h(&m, &c, &b)?;
    let text = format!(
        "chi = {chi}\nchi_self = {chi_self}\nchi_minus_H = {} (expansion at beta = {b}: {})",
        minus.direct, minus.decomposed
    );
    let j = json!({
        "chi": chi.to_string(),
        "chi_self": chi_self.to_string(),
        "chi_minus_H": to_json(&minus),
        "beta": b.to_string(),
    });
    Ok(Output::Value { text, json: j })
}

fn xi(o: &Options) -> Result<Output> {
    let res = if let Some(r) = o.r {
        let d = rational(&o.d, "d")?;
        let k = match &o.kappa {
            Some(_) => rational(&o.kappa, "kappa")?,
            None => {
                let di = d.to_integer();
                if !d.is_integer() || di < 1.into() {
                    return Err(Error::Parse("--kappa is required for a non-integral degree".into()));
                }
                let di: i64 = di.try_into().map_err(|_| Error::Parse("--d is too large".into()))?;
                threefold::kappa(&ThreefoldModel::picard_rank_one(di, r)?)?
            }
        };
        bg::xi_min_params(r, &d, &k)?
    } else {
        bg::xi_min(&model(o)?)?
    };
    Ok(Output::Report(res.to_report()))
}

fn charge(o: &Options) -> Result<Output> {
    let (m, c) = model_and_class(o)?;
    let b = opt_rational(&o.beta, "beta")?;
    let a2 = alpha2(o)?;
    let z = bg::central_charge(
        &m,
        &c,
        &b,
        &a2,
        &rational(&o.a, "a")?,
        &opt_rational(&o.b, "b")?,
        &opt_rational(&o.xi, "xi")?,
    )?;
    let text = format!("Z = {} + i·{} (valid: {})", z.re, z.im, z.valid);
    Ok(Output::Value { text, json: to_json(&z) })
}

fn run_verify(suite: SuiteArg, o: &Options) -> Result<Output> {
    let d = |o: &Options| -> Result<Option<i64>> {
        match &o.d {
            None => Ok(None),
            Some(s) => {
                s.trim().parse().map(Some).map_err(|_| Error::Parse(format!("--d: expected an integer, found {s:?}")))
            }
        }
    };
    let reports = match (suite, d(o)?, o.r) {
        (SuiteArg::A1, Some(d), _) => vec![verify::verify_a1(d)?],
        (SuiteArg::Note72, Some(d), Some(r)) => vec![verify::verify_note72(r, d)?],
        (SuiteArg::Remark75, _, _) if o.model.is_some() => vec![verify::verify_remark75(&model(o)?)?],
        _ => verify::run_suite(match suite {
            SuiteArg::A1 => Suite::A1,
            SuiteArg::A2 => Suite::A2,
            SuiteArg::Note72 => Suite::Note72,
            SuiteArg::Remark75 => Suite::Remark75,
            SuiteArg::Prop84 => Suite::Prop84,
            SuiteArg::All => Suite::All,
        })?,
    };
    Ok(Output::Reports(reports))
}

fn run_plot(kind: PlotKind, o: &Options) -> Result<Output> {
    let p = match kind {
        PlotKind::Clocus => {
            let (m, c) = model_and_class(o)?;
            let rc = tilt::recenter(&m, &c, &opt_rational(&o.beta, "beta")?, &alpha2(o)?)?;
            plot::plot_c_locus(&m, &rc.class, &rc.alpha0_sq)?
        }
        PlotKind::Zlocus => {
            let (m, c) = model_and_class(o)?;
            let w = match window(o)? {
                Some(w) => w,
                None => RationalInterval::new(Rational::from_integer((-5).into()), Rational::from_integer(5.into()))?,
            };
            plot::plot_z_locus(&m, &c, &w)?
        }
        PlotKind::Afun => plot::plot_a_function(&a_function(o)?, window(o)?.as_ref())?,
        PlotKind::Walls => {
            let (m, c) = model_and_class(o)?;
            plot::plot_walls(&m, &c, &opt_rational(&o.beta, "beta")?, &alpha2_list(o)?)?
        }
        PlotKind::Betabar => {
            let (m, c) = model_and_class(o)?;
            plot::plot_betabar(&m, &c, &a_function(o)?, window(o)?.as_ref())?
        }
        PlotKind::Figure5 => plot::plot_figure5()?,
    };
    Ok(Output::Plot(p))
}

/// One line per report: verdict and check name.
pub fn summary_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
    let mut s = format!("{:<width$}  verdict\n", "check");
    for r in reports {
        s.push_str(&format!("{:<width$}  {}\n", r.check, r.verdict));
    }
    let failed = reports.iter().filter(|r| r.verdict.is_failure()).count();
    s.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltbg::exactnum::rat;
    use tiltbg::report::Verdict;

    #[test]
    fn window_parses_exact_endpoints() {
        let o = Options { window: Some("-1/2,3".into()), ..Options::default() };
        let w = window(&o).unwrap().unwrap();
        assert_eq!((w.lo().clone(), w.hi().clone()), (rat(-1, 2), rat(3, 1)));
        let bad = Options { window: Some("1".into()), ..Options::default() };
        assert!(window(&bad).is_err());
        let reversed = Options { window: Some("2,1".into()), ..Options::default() };
        assert!(window(&reversed).is_err());
    }

    #[test]
    fn alpha2_lists_split_on_commas() {
        let o = Options { alpha2: Some("1/4,1,4".into()), ..Options::default() };
        assert_eq!(alpha2_list(&o).unwrap(), vec![rat(1, 4), rat(1, 1), rat(4, 1)]);
    }

    #[test]
    fn summary_counts_failures() {
        let reps = vec![CheckReport::new("one", Verdict::Holds), CheckReport::new("two", Verdict::Violated)];
        let t = summary_table(&reps);
        assert!(t.contains("two    violated"));
        assert!(t.ends_with("2 checks, 1 failed\n"));
    }
}
