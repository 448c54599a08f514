//! Optional `key = value` defaults file, located through `APOLY_CONFIG`.
//!
//! Recognized keys: `budget_seconds`, `tol`, `seed`, `strategy`, `samples`,
//! `attempts`, `workers`, `cache_dir`. Blank lines and lines starting with
//! `#` are ignored.

use std::path::PathBuf;

use super::CliError;
use crate::elim::Strategy;

pub const CONFIG_ENV: &str = "APOLY_CONFIG";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub budget_seconds: Option<u64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub strategy: Option<Strategy>,
    pub samples: Option<usize>,
    pub attempts: Option<usize>,
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Input(format!("config: bad value {v:?} for {key}")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut c = Config::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("config line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "budget_seconds" => c.budget_seconds = Some(parse_value(k, v)?),
                "tol" => c.tol = Some(parse_value(k, v)?),
                "seed" => c.seed = Some(parse_value(k, v)?),
                "strategy" => c.strategy = Some(v.parse().map_err(CliError::Input)?),
                "samples" => c.samples = Some(parse_value(k, v)?),
                "attempts" => c.attempts = Some(parse_value(k, v)?),
                "workers" => c.workers = Some(parse_value(k, v)?),
                "cache_dir" => c.cache_dir = Some(PathBuf::from(v)),
                _ => return Err(CliError::Input(format!("config line {}: unknown key {k:?}", n + 1))),
            }
        }
        Ok(c)
    }

    /// Reads the file named by `APOLY_CONFIG`, or returns the empty config.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(Config::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Input(format!("config {}: {e}", PathBuf::from(&path).display())))?;
                Config::parse(&text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c = Config::parse("# defaults\nbudget_seconds = 60\n\ntol=1e-9\nstrategy = groebner\ncache_dir = /tmp/x\n")
            .unwrap();
        assert_eq!(c.budget_seconds, Some(60));
        assert_eq!(c.tol, Some(1e-9));
        assert_eq!(c.strategy, Some(Strategy::Groebner));
        assert_eq!(c.cache_dir, Some(PathBuf::from("/tmp/x")));
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("seed = -1").is_err());
        assert!(Config::parse("seed").is_err());
    }
}
