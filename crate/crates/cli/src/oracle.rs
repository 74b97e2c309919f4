//! Plug-in point for an external symplectic-type decision procedure.
//!
//! A pack is a directory holding `manifest.toml` (`format = "ecsym-oracle"`, `version = 1`) and
//! `decisions.tsv`, whose lines read `p <TAB> [a1,a2,a3,a4,a6] <TAB> [a1,a2,a3,a4,a6] <TAB> type`
//! with minimal models and `type` either `symplectic` or `antisymplectic`.

use ecsym_core::twist::{Basis, SymplecticType, TypeValue};
use ecsym_core::RationalEC;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

pub trait SymplecticOracle: Send + Sync {
    fn name(&self) -> &str;

    /// Type of `E1[p] = E2[p]`, or `Undetermined`.
    fn decide(&self, e1: &RationalEC, e2: &RationalEC, p: u64) -> SymplecticType;
}

pub struct NoOracle;

impl SymplecticOracle for NoOracle {
    fn name(&self) -> &str {
        "none"
    }

    fn decide(&self, _: &RationalEC, _: &RationalEC, _: u64) -> SymplecticType {
        SymplecticType::undetermined(Basis::ExternalOracle)
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}: bad manifest: {1}")]
    Manifest(String, String),
    #[error("{file} line {line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
}

#[derive(Deserialize)]
struct Manifest {
    format: String,
    version: u32,
}

/// Precomputed decisions keyed by prime and minimal models.
#[derive(Debug, Default)]
pub struct TableOracle {
    table: BTreeMap<(u64, String, String), TypeValue>,
}

fn key(e: &RationalEC) -> String {
    let a = e.minimal_model();
    let v: Vec<String> = a.a_invariants().iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

impl TableOracle {
    pub fn insert(&mut self, p: u64, e1: &RationalEC, e2: &RationalEC, t: TypeValue) {
        let (k1, k2) = (key(e1), key(e2));
        self.table.insert((p, k1.clone(), k2.clone()), t);
        self.table.insert((p, k2, k1), t);
    }

    pub fn len(&self) -> usize {
        self.table.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn parse(text: &str, file: &str) -> Result<Self, OracleError> {
        let mut o = TableOracle::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| OracleError::Parse {
                file: file.to_string(),
                line,
                msg,
            };
            let cols: Vec<&str> = body.split('\t').map(str::trim).collect();
            let [p, a, b, t] = cols[..] else {
                return Err(err(format!("expected 4 tab-separated columns, found {}", cols.len())));
            };
            let p: u64 = p.parse().map_err(|_| err(format!("bad prime {p:?}")))?;
            let curve = |s: &str| -> Result<RationalEC, OracleError> {
                let inner = s
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err(format!("bad coefficient list {s:?}")))?;
                let v = inner
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| err(format!("bad coefficient {x:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let a: [_; 5] = v.try_into().map_err(|_| err("expected 5 coefficients".into()))?;
                RationalEC::new(a).map_err(|e| err(e.to_string()))
            };
            let t = match t {
                "symplectic" => TypeValue::Symplectic,
                "antisymplectic" => TypeValue::Antisymplectic,
                other => return Err(err(format!("bad type {other:?}"))),
            };
            o.insert(p, &curve(a)?, &curve(b)?, t);
        }
        Ok(o)
    }

    pub fn load(dir: &Path) -> Result<Self, OracleError> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|e| OracleError::Io(path.display().to_string(), e))
        };
        let manifest_path = dir.join("manifest.toml").display().to_string();
        let m: Manifest =
            toml::from_str(&read("manifest.toml")?).map_err(|e| OracleError::Manifest(manifest_path.clone(), e.to_string()))?;
        if m.format != "ecsym-oracle" || m.version != 1 {
            return Err(OracleError::Manifest(
                manifest_path,
                format!("unsupported format {} version {}", m.format, m.version),
            ));
        }
        Self::parse(&read("decisions.tsv")?, &dir.join("decisions.tsv").display().to_string())
    }
}

impl SymplecticOracle for TableOracle {
    fn name(&self) -> &str {
        "table"
    }

    fn decide(&self, e1: &RationalEC, e2: &RationalEC, p: u64) -> SymplecticType {
        let value = self
            .table
            .get(&(p, key(e1), key(e2)))
            .copied()
            .unwrap_or(TypeValue::Undetermined);
        SymplecticType::new(value, Basis::ExternalOracle)
    }
}

/// The oracle for an optional pack directory; a missing directory means no oracle.
pub fn load_oracle(pack: Option<&Path>) -> Result<Box<dyn SymplecticOracle>, OracleError> {
    match pack {
        Some(dir) if dir.is_dir() => Ok(Box::new(TableOracle::load(dir)?)),
        _ => Ok(Box::new(NoOracle)),
    }
}
