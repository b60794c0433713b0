//! Browser bindings: SVG figures for C(E), the A-function and numerical
//! walls, plus the β̄ set, computed exactly in WebAssembly.
//!
//! Every exported function has a plain Rust counterpart in [`figures`] that
//! returns `Result<String, String>`, so the logic is testable natively.

use wasm_bindgen::prelude::*;

pub mod figures {
    use tiltbg::bg::{betabar_set, AFunction};
    use tiltbg::chern::ReducedClass;
    use tiltbg::exactnum::{parse_rational, Rational, RationalInterval};
    use tiltbg::io;
    use tiltbg::plot;
    use tiltbg::threefold::ThreefoldModel;
    use tiltbg::tilt::recenter;

    type Result<T> = std::result::Result<T, String>;

    fn model(name: &str) -> Result<ThreefoldModel> {
        match io::bundled_model_json(name) {
            Some(j) => ThreefoldModel::from_json(j),
            None => ThreefoldModel::from_json(name),
        }
        .map_err(|e| e.to_string())
    }

    fn class(spec: &str, m: &ThreefoldModel) -> Result<ReducedClass> {
        io::parse_class(spec, m).map_err(|e| e.to_string())
    }

    fn a_function(name_or_json: &str) -> Result<AFunction> {
        let json = io::bundled_a_function_json(name_or_json).unwrap_or(name_or_json);
        AFunction::from_json(json).map_err(|e| e.to_string())
    }

    fn rational(s: &str, what: &str) -> Result<Rational> {
        parse_rational(s).map_err(|e| format!("{what}: {e}"))
    }

    fn window(lo: &str, hi: &str) -> Result<Option<RationalInterval>> {
        if lo.trim().is_empty() && hi.trim().is_empty() {
            return Ok(None);
        }
        RationalInterval::new(rational(lo, "window start")?, rational(hi, "window end")?)
            .map(Some)
            .map_err(|e| e.to_string())
    }

    /// Names of the bundled models, comma-separated.
    pub fn model_names() -> String {
        io::bundled_model_names().join(",")
    }

    /// Names of the bundled A-functions, comma-separated.
    pub fn a_function_names() -> String {
        io::bundled_a_function_names().join(",")
    }

    /// C(E) through (β, α²) after recentering, as SVG.
    pub fn c_locus_svg(model_name: &str, class_spec: &str, beta: &str, alpha2: &str) -> Result<String> {
        let m = model(model_name)?;
        let c = class(class_spec, &m)?;
        let rc =
            recenter(&m, &c, &rational(beta, "beta")?, &rational(alpha2, "alpha^2")?).map_err(|e| e.to_string())?;
        plot::plot_c_locus(&m, &rc.class, &rc.alpha0_sq).and_then(|p| p.to_svg()).map_err(|e| e.to_string())
    }

    /// The graph α = A(β) over [lo, hi] (or the default window when both are empty), as SVG.
    pub fn a_function_svg(a: &str, lo: &str, hi: &str) -> Result<String> {
        let a = a_function(a)?;
        plot::plot_a_function(&a, window(lo, hi)?.as_ref()).and_then(|p| p.to_svg()).map_err(|e| e.to_string())
    }

    /// Walls through (β, α²) for each comma-separated α², as SVG.
    pub fn walls_svg(model_name: &str, class_spec: &str, beta: &str, alpha2_list: &str) -> Result<String> {
        let m = model(model_name)?;
        let c = class(class_spec, &m)?;
        let a2s = alpha2_list.split(',').map(|s| rational(s, "alpha^2")).collect::<Result<Vec<_>>>()?;
        plot::plot_walls(&m, &c, &rational(beta, "beta")?, &a2s).and_then(|p| p.to_svg()).map_err(|e| e.to_string())
    }

    /// Z(E) against the A-graph with the β̄ set marked, as SVG.
    pub fn betabar_svg(model_name: &str, class_spec: &str, a: &str, lo: &str, hi: &str) -> Result<String> {
        let m = model(model_name)?;
        let c = class(class_spec, &m)?;
        plot::plot_betabar(&m, &c, &a_function(a)?, window(lo, hi)?.as_ref())
            .and_then(|p| p.to_svg())
            .map_err(|e| e.to_string())
    }

    /// The β̄ set in interval notation.
    pub fn betabar_text(model_name: &str, class_spec: &str, a: &str, lo: &str, hi: &str) -> Result<String> {
        let m = model(model_name)?;
        let c = class(class_spec, &m)?;
        betabar_set(&m, &c, &a_function(a)?, window(lo, hi)?.as_ref()).map(|s| s.to_string()).map_err(|e| e.to_string())
    }
}

#[wasm_bindgen(js_name = modelNames)]
pub fn model_names() -> String {
    figures::model_names()
}

#[wasm_bindgen(js_name = aFunctionNames)]
pub fn a_function_names() -> String {
    figures::a_function_names()
}

#[wasm_bindgen(js_name = cLocusSvg)]
pub fn c_locus_svg(model: &str, class: &str, beta: &str, alpha2: &str) -> Result<String, JsError> {
    figures::c_locus_svg(model, class, beta, alpha2).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = aFunctionSvg)]
pub fn a_function_svg(a: &str, lo: &str, hi: &str) -> Result<String, JsError> {
    figures::a_function_svg(a, lo, hi).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = wallsSvg)]
pub fn walls_svg(model: &str, class: &str, beta: &str, alpha2_list: &str) -> Result<String, JsError> {
    figures::walls_svg(model, class, beta, alpha2_list).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = betabarSvg)]
pub fn betabar_svg(model: &str, class: &str, a: &str, lo: &str, hi: &str) -> Result<String, JsError> {
    figures::betabar_svg(model, class, a, lo, hi).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = betabarText)]
pub fn betabar_text(model: &str, class: &str, a: &str, lo: &str, hi: &str) -> Result<String, JsError> {
    figures::betabar_text(model, class, a, lo, hi).map_err(|e| JsError::new(&e))
}
