//! Shipped example inputs.

use crate::error::{Error, Result};
use crate::io::{parse_input, Input};

pub const CORPUS: &[(&str, &str)] = &[
    ("circle", include_str!("../data/circle.json")),
    ("torus", include_str!("../data/torus.json")),
    ("trefoil", include_str!("../data/trefoil.json")),
    ("figure_eight", include_str!("../data/figure_eight.json")),
    ("knot_5_2", include_str!("../data/knot_5_2.json")),
    ("wedge", include_str!("../data/wedge.json")),
    ("circle_complex", include_str!("../data/circle_complex.json")),
    ("torus_complex", include_str!("../data/torus_complex.json")),
];

pub fn source(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<Input> {
    let src = source(name).ok_or_else(|| {
        let names: Vec<&str> = CORPUS.iter().map(|(n, _)| *n).collect();
        Error::Usage(format!("no built-in example {name:?}; available: {}", names.join(", ")))
    })?;
    parse_input(src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_parses_and_validates() {
        for (name, _) in CORPUS {
            let c = match load(name).unwrap() {
                Input::Complex(c) => c,
                Input::Presentation(p) => crate::fox::presentation_complex(&p),
            };
            assert!(c.validate().ok, "{name}");
        }
    }
}
