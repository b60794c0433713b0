//! Deterministic SVG and CSV renderings of loci, A-functions and walls.

use std::fmt::Write as _;

use num_traits::Signed;

use crate::bg::{betabar_set, AFunction};
use crate::chern::ReducedClass;
use crate::error::{Error, Result};
use crate::exactnum::rational::{int, rat, Rational};
use crate::exactnum::{QuadraticNumber, RationalInterval};
use crate::threefold::ThreefoldModel;
use crate::tilt::{sample_c_locus, wall_circle, z_locus};

/// Number of sample points per curve.
pub const SAMPLES: usize = 512;
const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// A named polyline with exact coordinates.
#[derive(Clone, Debug)]
pub struct Series {
    pub name: String,
    pub points: Vec<(QuadraticNumber, QuadraticNumber)>,
}

/// A figure in the (β, α) half-plane.
#[derive(Clone, Debug)]
pub struct Plot {
    pub title: String,
    pub series: Vec<Series>,
    /// β-intervals drawn as thick marks on the horizontal axis.
    pub highlights: Vec<(QuadraticNumber, QuadraticNumber)>,
}

fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn q(r: Rational) -> QuadraticNumber {
    QuadraticNumber::from_rational(r)
}

impl Plot {
    fn bounds(&self) -> Result<(f64, f64, f64, f64)> {
        let pts: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|(x, y)| (round6(x.to_f64()), round6(y.to_f64()))))
            .collect();
        if pts.is_empty() {
            return Err(Error::EmptyLocus);
        }
        let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for (x, y) in &pts {
            x0 = x0.min(*x);
            x1 = x1.max(*x);
            y1 = y1.max(*y);
        }
        for (a, b) in &self.highlights {
            x0 = x0.min(round6(a.to_f64()));
            x1 = x1.max(round6(b.to_f64()));
        }
        if x1 - x0 < 1e-9 {
            x0 -= 1.0;
            x1 += 1.0;
        }
        if y1 < 1e-9 {
            y1 = 1.0;
        }
        let pad = (x1 - x0) * 0.05;
        Ok((x0 - pad, x1 + pad, 0.0, y1 * 1.05))
    }

    /// SVG document with a fixed 800×600 view box.
    pub fn to_svg(&self) -> Result<String> {
        let (x0, x1, y0, y1) = self.bounds()?;
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#);
        let _ =
            writeln!(s, r#"<text x="400" y="25" text-anchor="middle" font-size="14">{}</text>"#, escape(&self.title));
        let ax = sy(0.0);
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#,
            MARGIN,
            ax,
            WIDTH - MARGIN,
            ax
        );
        let yaxis_x = if x0 <= 0.0 && 0.0 <= x1 { sx(0.0) } else { MARGIN };
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#,
            yaxis_x,
            MARGIN,
            yaxis_x,
            HEIGHT - MARGIN
        );
        for t in ticks(x0, x1) {
            let _ = writeln!(
                s,
                r#"<line x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{2:.3}" stroke="black"/><text x="{0:.3}" y="{3:.3}" text-anchor="middle">{4}</text>"#,
                sx(t),
                ax,
                ax + 5.0,
                ax + 18.0,
                fmt_tick(t)
            );
        }
        for t in ticks(y0, y1).into_iter().filter(|t| *t > 0.0) {
            let _ = writeln!(
                s,
                r#"<line x1="{0:.3}" y1="{1:.3}" x2="{2:.3}" y2="{1:.3}" stroke="black"/><text x="{3:.3}" y="{4:.3}" text-anchor="end">{5}</text>"#,
                yaxis_x - 5.0,
                sy(t),
                yaxis_x,
                yaxis_x - 8.0,
                sy(t) + 4.0,
                fmt_tick(t)
            );
        }
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">beta</text>"#, WIDTH - MARGIN + 5.0, ax + 4.0);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">alpha</text>"#, yaxis_x + 5.0, MARGIN - 8.0);
        for (a, b) in &self.highlights {
            let _ = writeln!(
                s,
                r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#ff7f0e" stroke-width="6" stroke-linecap="round" opacity="0.8"/>"##,
                sx(round6(a.to_f64())),
                ax,
                sx(round6(b.to_f64())),
                ax
            );
        }
        for (i, series) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let mut pts = String::new();
            for (x, y) in &series.points {
                let _ = write!(pts, "{:.3},{:.3} ", sx(round6(x.to_f64())), sy(round6(y.to_f64())));
            }
            let _ =
                writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#, pts.trim_end());
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}" fill="{color}">{}</text>"#,
                WIDTH - MARGIN - 150.0,
                MARGIN + 16.0 * i as f64,
                escape(&series.name)
            );
        }
        s.push_str("</svg>\n");
        Ok(s)
    }

    /// CSV with exact coordinates: `series,beta,alpha`.
    pub fn to_csv(&self) -> Result<String> {
        if self.series.iter().all(|s| s.points.is_empty()) {
            return Err(Error::EmptyLocus);
        }
        let mut s = String::from("series,beta,alpha\n");
        for series in &self.series {
            for (x, y) in &series.points {
                let _ = writeln!(s, "{},{},{}", series.name, x, y);
            }
        }
        for (a, b) in &self.highlights {
            let _ = writeln!(s, "highlight,{a},{b}");
        }
        Ok(s)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 8.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-12 {
        out.push(round6(t));
        t += step;
    }
    out
}

fn fmt_tick(t: f64) -> String {
    let s = format!("{t:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn evenly_spaced(w: &RationalInterval, n: usize) -> Vec<Rational> {
    let n = n.max(2);
    (0..n).map(|k| w.lo() + w.width() * rat(k as i64, (n - 1) as i64)).collect()
}

/// The branch of C(E) through (0, α₀).
pub fn plot_c_locus(model: &ThreefoldModel, ch: &ReducedClass, alpha0_sq: &Rational) -> Result<Plot> {
    let pts = sample_c_locus(model, ch, alpha0_sq, SAMPLES)?;
    Ok(Plot {
        title: format!("C(E) on {}", model.name()),
        series: vec![Series { name: "C(E)".into(), points: pts.into_iter().map(|p| (p.beta, p.alpha)).collect() }],
        highlights: Vec::new(),
    })
}

/// Z(E) sampled at evenly spaced β in a window.
pub fn plot_z_locus(model: &ThreefoldModel, ch: &ReducedClass, window: &RationalInterval) -> Result<Plot> {
    let pts = z_locus(model, ch).sample_by_beta(window.lo(), window.hi(), SAMPLES);
    Ok(Plot {
        title: format!("Z(E) on {}", model.name()),
        series: vec![Series { name: "Z(E)".into(), points: pts.into_iter().map(|p| (p.beta, p.alpha)).collect() }],
        highlights: Vec::new(),
    })
}

/// Default plotting window for an A-function.
pub fn a_window(a: &AFunction) -> RationalInterval {
    match a.domain() {
        Some(d) => d,
        None => RationalInterval::new(int(-2), int(2)).expect("ordered"),
    }
}

fn a_graph(a: &AFunction, w: &RationalInterval) -> Result<Series> {
    let mut xs = evenly_spaced(w, SAMPLES);
    for p in a.pieces_in(w) {
        xs.push(p.from.clone());
        xs.push(p.to.clone());
    }
    xs.sort();
    xs.dedup();
    let mut points = Vec::with_capacity(xs.len());
    for x in xs {
        let y = a.eval(&x)?;
        points.push((q(x), q(y)));
    }
    Ok(Series { name: "A".into(), points })
}

/// The graph α = A(β) over a window.
pub fn plot_a_function(a: &AFunction, window: Option<&RationalInterval>) -> Result<Plot> {
    let w = window.cloned().unwrap_or_else(|| a_window(a));
    Ok(Plot { title: "alpha = A(beta)".into(), series: vec![a_graph(a, &w)?], highlights: Vec::new() })
}

/// Numerical walls for a class: the semicircles through (β₀, α) for each α².
pub fn plot_walls(model: &ThreefoldModel, ch: &ReducedClass, beta0: &Rational, alpha_sqs: &[Rational]) -> Result<Plot> {
    let mut series = Vec::new();
    for a2 in alpha_sqs {
        let c = wall_circle(model, ch, beta0, a2)?;
        let r = c.radius();
        let r_lo = r.enclosure(&rat(1, 1 << 30)).lo().clone();
        let w = RationalInterval::new(&c.center_beta - &r_lo, &c.center_beta + &r_lo)?;
        let mut points = vec![((-&r).add_rational(&c.center_beta), QuadraticNumber::zero())];
        for b in evenly_spaced(&w, SAMPLES - 2) {
            let t = &b - &c.center_beta;
            let h = &c.radius_sq - &t * &t;
            if !h.is_negative() {
                points.push((q(b), QuadraticNumber::sqrt(&h).expect("nonnegative")));
            }
        }
        points.push((r.add_rational(&c.center_beta), QuadraticNumber::zero()));
        series.push(Series { name: format!("wall through alpha^2={a2}"), points });
    }
    Ok(Plot { title: format!("numerical walls at beta = {beta0}"), series, highlights: Vec::new() })
}

/// Z(E) and the graph of A, with the β̄ set marked on the β-axis.
pub fn plot_betabar(
    model: &ThreefoldModel,
    ch: &ReducedClass,
    a: &AFunction,
    window: Option<&RationalInterval>,
) -> Result<Plot> {
    let set = betabar_set(model, ch, a, window)?;
    let z = z_locus(model, ch);
    let mut w = set.window.clone();
    if let Some((m, _)) = z.hyperbola() {
        w = w.hull(&RationalInterval::point(m));
    }
    let zs: Vec<_> = z.sample_by_beta(w.lo(), w.hi(), SAMPLES).into_iter().map(|p| (p.beta, p.alpha)).collect();
    let mut highlights: Vec<_> = set.intervals.iter().map(|i| (q(i.lo().clone()), q(i.hi().clone()))).collect();
    highlights.extend(set.points.iter().map(|p| (p.beta.clone(), p.beta.clone())));
    Ok(Plot {
        title: format!("betabar = {set}"),
        series: vec![Series { name: "Z(E)".into(), points: zs }, a_graph(a, &w)?],
        highlights,
    })
}

/// Z(O(2H)) against the blow-up A-function on the blow-up of P³ at a point.
pub fn plot_figure5() -> Result<Plot> {
    let m = crate::io::bundled_model("blowup_p3_point")?;
    let a = AFunction::from_json(crate::io::bundled_a_function_json("A_blowup_p3").expect("bundled"))?;
    let ch = crate::chern::line_bundle(&m, 2).reduce(&m);
    let w = RationalInterval::new(int(0), int(3))?;
    plot_betabar(&m, &ch, &a, Some(&w))
}
