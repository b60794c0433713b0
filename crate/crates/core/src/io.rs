//! Bundled models and A-functions, and parsing of class specifications.

use crate::chern::{ideal_sheaf, line_bundle, skyscraper, ClassInput, ReducedClass};
use crate::error::{Error, Result};
use crate::threefold::ThreefoldModel;

const MODELS: [(&str, &str); 4] = [
    ("p3", include_str!("../data/p3.json")),
    ("quadric3", include_str!("../data/quadric3.json")),
    ("blowup_p3_point", include_str!("../data/blowup_p3_point.json")),
    ("p2xp1", include_str!("../data/p2xp1.json")),
];

const A_FUNCTIONS: [(&str, &str); 2] =
    [("A_zero", include_str!("../data/A_zero.json")), ("A_blowup_p3", include_str!("../data/A_blowup_p3.json"))];

pub fn bundled_model_names() -> Vec<&'static str> {
    MODELS.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_a_function_names() -> Vec<&'static str> {
    A_FUNCTIONS.iter().map(|(n, _)| *n).collect()
}

fn stem(name: &str) -> &str {
    let base = name.rsplit('/').next().unwrap_or(name);
    base.strip_suffix(".json").unwrap_or(base)
}

/// JSON text of a bundled model, by name with or without `.json`.
pub fn bundled_model_json(name: &str) -> Option<&'static str> {
    let s = stem(name);
    MODELS.iter().find(|(n, _)| *n == s).map(|(_, j)| *j)
}

pub fn bundled_a_function_json(name: &str) -> Option<&'static str> {
    let s = stem(name);
    A_FUNCTIONS.iter().find(|(n, _)| *n == s).map(|(_, j)| *j)
}

pub fn bundled_model(name: &str) -> Result<ThreefoldModel> {
    let json =
        bundled_model_json(name).ok_or_else(|| Error::InvalidModel(format!("no bundled model named {name:?}")))?;
    ThreefoldModel::from_json(json)
}

/// Every bundled model, in a fixed order.
pub fn bundled_models() -> Vec<ThreefoldModel> {
    MODELS.iter().map(|(_, j)| ThreefoldModel::from_json(j).expect("bundled model parses")).collect()
}

/// Reads a model from a file path, falling back to a bundled model of the
/// same file name when the path does not exist.
pub fn load_model(path: &str) -> Result<ThreefoldModel> {
    match std::fs::read_to_string(path) {
        Ok(text) => ThreefoldModel::from_json(&text),
        Err(e) => match bundled_model_json(path) {
            Some(j) => ThreefoldModel::from_json(j),
            None => Err(Error::Parse(format!("cannot read model {path}: {e}"))),
        },
    }
}

/// Loads A-function JSON text from a path or a bundled name.
pub fn load_a_function_text(path: &str) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) => bundled_a_function_json(path)
            .map(str::to_owned)
            .ok_or_else(|| Error::Parse(format!("cannot read A-function {path}: {e}"))),
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("{what}: expected an integer, found {s:?}")))
}

/// Parses a class from `line_bundle:m`, `ideal_sheaf:m:n`, `skyscraper:n`,
/// inline JSON (full or reduced form) or a path to a JSON file.
pub fn parse_class(spec: &str, model: &ThreefoldModel) -> Result<ReducedClass> {
    let t = spec.trim();
    let parts: Vec<&str> = t.split(':').collect();
    match parts.as_slice() {
        ["line_bundle", m] => return Ok(line_bundle(model, parse_int(m, "line_bundle")?).reduce(model)),
        ["ideal_sheaf", m, n] => {
            return Ok(ideal_sheaf(model, parse_int(m, "ideal_sheaf")?, parse_int(n, "ideal_sheaf")?).reduce(model))
        }
        ["skyscraper", n] => return Ok(skyscraper(model, parse_int(n, "skyscraper")?).reduce(model)),
        [kind, ..] if ["line_bundle", "ideal_sheaf", "skyscraper"].contains(kind) => {
            return Err(Error::Parse(format!("malformed class shorthand {t:?}")))
        }
        _ => {}
    }
    let text = if t.starts_with('{') {
        t.to_owned()
    } else {
        std::fs::read_to_string(t).map_err(|e| Error::Parse(format!("cannot read class {t}: {e}")))?
    };
    parse_class_json(&text)?.reduce(model)
}

pub fn parse_class_json(text: &str) -> Result<ClassInput> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("class: {e}")))?;
    let is_full = v.get("ch1").is_some() || v.get("ch2_pair").is_some();
    let de = &mut serde_json::Deserializer::from_str(text);
    let loc = |e: serde_path_to_error::Error<serde_json::Error>| {
        Error::Parse(format!("class at {}: {}", e.path(), e.inner()))
    };
    if is_full {
        Ok(ClassInput::Full(serde_path_to_error::deserialize(de).map_err(loc)?))
    } else {
        Ok(ClassInput::Reduced(serde_path_to_error::deserialize(de).map_err(loc)?))
    }
}
