//! Named curves shipped with the tool. Each field curve has a constant
//! family over the dual numbers under the name `<name>-dual`.

use crate::curvefile::CurveFile;

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../corpus/", $name, ".curve")), include_str!(concat!("../corpus/dual/", $name, ".curve")))
    };
}

const FIXTURES: [(&str, &str, &str); 8] = [
    fixture!("line"),
    fixture!("conic"),
    fixture!("twisted-cubic"),
    fixture!("skew-lines"),
    fixture!("coplanar-lines"),
    fixture!("ci-2-2"),
    fixture!("quartic-from-skew-bilink"),
    fixture!("skew-pair-alt"),
];

/// Names of the field curves, in a fixed order.
pub fn field_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.0).collect()
}

/// Every fixture name, field curves first.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = field_names().into_iter().map(String::from).collect();
    out.extend(FIXTURES.iter().map(|f| format!("{}-dual", f.0)));
    out
}

pub fn text(name: &str) -> Option<&'static str> {
    let name = name.strip_prefix("corpus:").unwrap_or(name);
    if let Some(base) = name.strip_suffix("-dual") {
        return FIXTURES.iter().find(|f| f.0 == base).map(|f| f.2);
    }
    FIXTURES.iter().find(|f| f.0 == name).map(|f| f.1)
}

pub fn get(name: &str) -> Option<CurveFile> {
    text(name).map(|t| CurveFile::parse(t).expect("shipped fixture parses"))
}
