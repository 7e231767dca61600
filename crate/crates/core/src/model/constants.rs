//! Versioned table of Gagliardo–Nirenberg constants.
//!
//! File format: `#` comments, `key = value` lines. Required keys are
//! `version` and one `C(N=<dim>, q=<exponent>)` entry per constant, e.g.
//!
//! ```text
//! version = 1
//! C(N=3, q=2.5) = 0.4567
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// The shipped table, regenerated by the `gn_table` example.
pub const BUNDLED_TABLE: &str = include_str!("../../data/gn_constants.txt");

const Q_MATCH: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GnConstants {
    version: u32,
    entries: Vec<(usize, f64, f64)>,
}

impl GnConstants {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_TABLE, Path::new("<bundled gn_constants.txt>"))
            .expect("bundled constant table parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: PathBuf::from(origin),
            line,
            message,
        };
        let mut version = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            // `C(N=3, q=2.5) = x` has '=' inside the key; split at the last one
            let (key, value) = line
                .rfind('=')
                .map(|at| (line[..at].trim(), line[at + 1..].trim()))
                .ok_or_else(|| err(lineno, format!("expected `key = value`, found `{line}`")))?;
            if key == "version" {
                version = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| err(lineno, format!("bad version `{value}`")))?,
                );
            } else if let Some(inner) = key.strip_prefix("C(").and_then(|k| k.strip_suffix(')')) {
                let (dim, q) = parse_key(inner)
                    .ok_or_else(|| err(lineno, format!("bad constant key `{key}`")))?;
                let c: f64 = value
                    .parse()
                    .map_err(|_| err(lineno, format!("bad constant value `{value}`")))?;
                if !(c.is_finite() && c > 0.0) {
                    return Err(err(lineno, format!("constant must be positive, got {c}")));
                }
                entries.push((dim, q, c));
            } else {
                // metadata such as `safety_factor` is informational
            }
        }
        let version = version.ok_or_else(|| err(0, "missing `version` key".into()))?;
        Ok(Self { version, entries })
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn entries(&self) -> &[(usize, f64, f64)] {
        &self.entries
    }

    /// `C_q` for dimension `N`, or a configuration error if absent.
    pub fn get(&self, dimension: usize, q: f64) -> Result<f64> {
        self.entries
            .iter()
            .find(|(d, eq, _)| *d == dimension && (eq - q).abs() < Q_MATCH)
            .map(|e| e.2)
            .ok_or_else(|| {
                Error::Config(format!(
                    "no Gagliardo-Nirenberg constant for N = {dimension}, q = {q} in table v{}",
                    self.version
                ))
            })
    }

    /// Same table with every constant multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            version: self.version,
            entries: self.entries.iter().map(|&(d, q, c)| (d, q, c * factor)).collect(),
        }
    }
}

fn parse_key(inner: &str) -> Option<(usize, f64)> {
    let mut dim = None;
    let mut q = None;
    for part in inner.split(',') {
        let (k, v) = part.split_once('=')?;
        match k.trim() {
            "N" => dim = v.trim().parse().ok(),
            "q" | "p" => q = v.trim().parse().ok(),
            _ => return None,
        }
    }
    Some((dim?, q?))
}
