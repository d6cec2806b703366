//! Optional TOML defaults. Keys mirror the common flags; flags win.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub graph: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub walks: Option<usize>,
    pub t_max: Option<usize>,
    pub epsilon: Option<f64>,
    pub lambda: Option<toml::Value>,
    pub t_mix: Option<toml::Value>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// A number or the word `auto`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Auto<T> {
    Auto,
    Value(T),
}

impl<T: std::str::FromStr> std::str::FromStr for Auto<T> {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Auto::Auto);
        }
        s.parse().map(Auto::Value).map_err(|_| format!("expected a number or `auto`, got {s:?}"))
    }
}

/// Reads a TOML number or string through the flag parser.
pub fn auto_from_toml<T: std::str::FromStr>(v: &toml::Value) -> Result<Auto<T>> {
    let text = match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        other => anyhow::bail!("expected a number or \"auto\", got {other}"),
    };
    text.parse().map_err(|e: String| anyhow::anyhow!(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_auto_or_number() {
        assert_eq!("auto".parse::<Auto<f64>>().unwrap(), Auto::Auto);
        assert_eq!("0.5".parse::<Auto<f64>>().unwrap(), Auto::Value(0.5));
        assert!("x".parse::<Auto<usize>>().is_err());
        let cfg: FileConfig = toml::from_str("lambda = 0.25\nt-mix = \"auto\"\nseed = 3").unwrap();
        assert_eq!(auto_from_toml::<f64>(cfg.lambda.as_ref().unwrap()).unwrap(), Auto::Value(0.25));
        assert_eq!(auto_from_toml::<usize>(cfg.t_mix.as_ref().unwrap()).unwrap(), Auto::Auto);
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }
}
