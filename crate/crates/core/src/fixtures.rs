//! Built-in scenarios. Names are matched case-insensitively, so `G6-SPLIT`
//! and `g6-split` are the same fixture.

use crate::error::{Error, Result};
use crate::scenario::Scenario;

pub const FIXTURES: &[(&str, &str)] = &[
    ("g6-split", include_str!("../fixtures/g6-split.toml")),
    ("g6-ord", include_str!("../fixtures/g6-ord.toml")),
    ("g6-inert", include_str!("../fixtures/g6-inert.toml")),
    ("ell-ordinary", include_str!("../fixtures/ell-ordinary.toml")),
    ("ell-ss", include_str!("../fixtures/ell-ss.toml")),
    ("ell-ord-ss", include_str!("../fixtures/ell-ord-ss.toml")),
    ("g8-k3", include_str!("../fixtures/g8-k3.toml")),
    ("s3-ao", include_str!("../fixtures/s3-ao.toml")),
];

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn source(name: &str) -> Option<&'static str> {
    let key = name.to_ascii_lowercase();
    FIXTURES.iter().find(|(n, _)| *n == key).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<Scenario> {
    let text = source(name).ok_or_else(|| {
        Error::Validation(format!("unknown fixture `{name}` (known: {})", names().join(", ")))
    })?;
    Scenario::parse(text, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for n in names() {
            let sc = load(n).unwrap();
            assert_eq!(sc.name, n);
        }
        assert!(load("G6-SPLIT").is_ok());
        assert!(load("nope").is_err());
    }
}
