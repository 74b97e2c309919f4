//! Run configuration: an optional TOML file overridden by command-line flags.

use ecsym_core::sieve::{DEFAULT_KO_CAP, DEFAULT_WINDOW};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Toml {
        path: String,
        #[source]
        source: toml::de::Error,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Keys accepted in the configuration file; all optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub p: Option<Vec<u64>>,
    pub bound: Option<u64>,
    #[serde(rename = "B")]
    pub b: Option<usize>,
    pub window_bound: Option<u64>,
    pub jobs: Option<usize>,
    pub oracle_pack: Option<PathBuf>,
    pub audit: Option<bool>,
    pub isogeny: Option<PathBuf>,
    pub p_min: Option<u64>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Fill every unset key of `self` from `base`.
    pub fn or(self, base: ConfigFile) -> ConfigFile {
        ConfigFile {
            p: self.p.or(base.p),
            bound: self.bound.or(base.bound),
            b: self.b.or(base.b),
            window_bound: self.window_bound.or(base.window_bound),
            jobs: self.jobs.or(base.jobs),
            oracle_pack: self.oracle_pack.or(base.oracle_pack),
            audit: self.audit.or(base.audit),
            isogeny: self.isogeny.or(base.isogeny),
            p_min: self.p_min.or(base.p_min),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub primes: Vec<u64>,
    /// Largest Sturm bound scanned by the congruence certificate.
    pub bound: u64,
    /// Number of primes in the hash window.
    pub b: usize,
    /// Window primes are taken above this; defaults to the largest conductor in the input.
    pub window_bound: Option<u64>,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub oracle_pack: Option<PathBuf>,
    pub audit: bool,
    pub isogeny: Option<PathBuf>,
    /// Smallest prime recorded by the Frey-Mazur audit.
    pub p_min: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            primes: vec![7],
            bound: DEFAULT_KO_CAP,
            b: DEFAULT_WINDOW,
            window_bound: None,
            jobs: 0,
            oracle_pack: None,
            audit: false,
            isogeny: None,
            p_min: 19,
        }
    }
}

impl Config {
    /// Resolve flags over file values over defaults.
    pub fn resolve(flags: ConfigFile, file: Option<ConfigFile>) -> Result<Config, ConfigError> {
        let merged = flags.or(file.unwrap_or_default());
        let d = Config::default();
        let cfg = Config {
            primes: merged.p.filter(|v| !v.is_empty()).unwrap_or(d.primes),
            bound: merged.bound.unwrap_or(d.bound),
            b: merged.b.unwrap_or(d.b),
            window_bound: merged.window_bound,
            jobs: merged.jobs.unwrap_or(d.jobs),
            oracle_pack: merged.oracle_pack,
            audit: merged.audit.unwrap_or(d.audit),
            isogeny: merged.isogeny,
            p_min: merged.p_min.unwrap_or(d.p_min),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for &p in &self.primes {
            if !ecsym_core::arith::is_prime(p) {
                return Err(ConfigError::Invalid(format!("{p} is not prime")));
            }
            if p < 7 {
                return Err(ConfigError::Invalid(format!(
                    "p = {p}: the classifier needs p >= 7, where antisymplectic automorphisms cannot occur"
                )));
            }
        }
        if self.b == 0 {
            return Err(ConfigError::Invalid("B must be at least 1".into()));
        }
        if !ecsym_core::arith::is_prime(self.p_min) {
            return Err(ConfigError::Invalid(format!("p_min = {} is not prime", self.p_min)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file = ConfigFile::parse("p = [11]\nB = 40\njobs = 2\naudit = true\n", Path::new("c.toml")).unwrap();
        let flags = ConfigFile {
            b: Some(60),
            ..Default::default()
        };
        let cfg = Config::resolve(flags, Some(file)).unwrap();
        assert_eq!(cfg.primes, vec![11]);
        assert_eq!(cfg.b, 60);
        assert_eq!(cfg.jobs, 2);
        assert!(cfg.audit);
        assert_eq!(cfg.bound, DEFAULT_KO_CAP);
    }

    #[test]
    fn defaults_and_validation() {
        let cfg = Config::resolve(ConfigFile::default(), None).unwrap();
        assert_eq!(cfg, Config::default());
        let bad = ConfigFile {
            p: Some(vec![5]),
            ..Default::default()
        };
        assert!(Config::resolve(bad, None).is_err());
        let bad = ConfigFile {
            p: Some(vec![9]),
            ..Default::default()
        };
        assert!(Config::resolve(bad, None).is_err());
        assert!(ConfigFile::parse("unknown = 1\n", Path::new("c.toml")).is_err());
    }
}
