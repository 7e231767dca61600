//! Line-oriented `key = value` run configuration.
//!
//! Every key is defined in the defaults file; a user config overrides a
//! subset. Syntax and value errors carry the file and line they came from.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Discretization, GridSpec};
use crate::model::{ModelParams, PotentialKind};
use crate::solver::{InitKind, Scheme, SolverOptions, VerifyTolerances};

pub const BUNDLED_DEFAULTS: &str = include_str!("../../configs/defaults.conf");
pub const DEFAULTS_ENV: &str = "TRIWAVE_DEFAULTS";

#[derive(Clone, Debug, PartialEq)]
struct Entry {
    value: String,
    path: PathBuf,
    line: usize,
}

/// Parsed but untyped key/value pairs, each remembering its origin.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, Entry>,
}

fn valid_key(k: &str) -> bool {
    !k.is_empty()
        && k.split('.').all(|part| {
            !part.is_empty() && part.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        })
}

impl RawConfig {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| Error::Parse {
                path: origin.to_path_buf(),
                line,
                message,
            };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(err(format!("expected `key = value`, found `{content}`")));
            };
            let key = key.trim();
            if !valid_key(key) {
                return Err(err(format!("invalid key `{key}`")));
            }
            let entry = Entry {
                value: value.trim().to_string(),
                path: origin.to_path_buf(),
                line,
            };
            if let Some(prev) = entries.insert(key.to_string(), entry) {
                return Err(err(format!("duplicate key `{key}` (first set on line {})", prev.line)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    /// The embedded defaults, or the file named by `TRIWAVE_DEFAULTS`.
    pub fn defaults() -> Result<Self> {
        match std::env::var_os(DEFAULTS_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Self::parse(BUNDLED_DEFAULTS, Path::new("<defaults>")),
        }
    }

    /// Apply `user` on top; keys absent from `self` are rejected.
    pub fn overlay(&mut self, user: RawConfig) -> Result<()> {
        for (key, entry) in user.entries {
            if !self.entries.contains_key(&key) {
                return Err(Error::Parse {
                    path: entry.path,
                    line: entry.line,
                    message: format!("unknown key `{key}`"),
                });
            }
            self.entries.insert(key, entry);
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let entry = Entry {
            value: value.into(),
            path: PathBuf::from("<command line>"),
            line: 0,
        };
        self.entries.insert(key.to_string(), entry);
    }

    pub fn raw(&self, key: &str) -> Result<&str> {
        self.entries
            .get(key)
            .map(|e| e.value.as_str())
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    /// Wrap `message` with the location `key` was read from.
    pub fn anchor(&self, key: &str, message: impl Into<String>) -> Error {
        match self.entries.get(key) {
            Some(e) => Error::Parse {
                path: e.path.clone(),
                line: e.line,
                message: format!("{key}: {}", message.into()),
            },
            None => Error::Config(format!("{key}: {}", message.into())),
        }
    }

    fn origin_dir(&self, key: &str) -> PathBuf {
        self.entries
            .get(key)
            .and_then(|e| e.path.parent().map(Path::to_path_buf))
            .unwrap_or_default()
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(key)?;
        raw.parse::<T>()
            .map_err(|e| self.anchor(key, format!("cannot parse `{raw}`: {e}")))
    }

    pub fn get_bool(&self, key: &str) -> Result<bool> {
        match self.raw(key)? {
            "true" | "yes" | "on" => Ok(true),
            "false" | "no" | "off" => Ok(false),
            other => Err(self.anchor(key, format!("expected true or false, found `{other}`"))),
        }
    }

    pub fn get_list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self.raw(key)?;
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| self.anchor(key, format!("cannot parse `{}`: {e}", s.trim())))
            })
            .collect()
    }

    pub fn get_triple(&self, key: &str) -> Result<[f64; 3]> {
        let v = self.get_list(key)?;
        if v.len() == 1 {
            return Ok([v[0]; 3]);
        }
        <[f64; 3]>::try_from(v.as_slice())
            .map_err(|_| self.anchor(key, format!("expected 1 or 3 values, found {}", v.len())))
    }

    /// Three paths, resolved against the directory of the file that set them.
    pub fn get_paths(&self, key: &str) -> Result<[PathBuf; 3]> {
        let dir = self.origin_dir(key);
        let parts: Vec<PathBuf> = self
            .raw(key)?
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| dir.join(s))
            .collect();
        <[PathBuf; 3]>::try_from(parts)
            .map_err(|p| self.anchor(key, format!("expected 3 paths, found {}", p.len())))
    }

    /// Mass points written as `a,b,c; a,b,c; ...`.
    pub fn get_mass_grid(&self, key: &str) -> Result<Vec<[f64; 3]>> {
        parse_mass_grid(self.raw(key)?).map_err(|m| self.anchor(key, m))
    }
}

pub fn parse_mass_grid(text: &str) -> std::result::Result<Vec<[f64; 3]>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|point| {
            let vals: Vec<f64> = point
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|e| format!("cannot parse `{}`: {e}", s.trim())))
                .collect::<std::result::Result<_, _>>()?;
            <[f64; 3]>::try_from(vals.as_slice())
                .map_err(|_| format!("mass point `{point}` needs three values"))
        })
        .collect()
}

pub fn parse_beta_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| format!("cannot parse `{s}`: {e}")))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub fields: bool,
    pub history: bool,
    pub report: bool,
    pub checkpoint_every: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub betas: Vec<f64>,
    pub masses: Vec<[f64; 3]>,
}

/// Fully typed and validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub potential: PotentialKind,
    pub model: ModelParams,
    pub solver: SolverOptions,
    pub verify: VerifyTolerances,
    pub output: OutputConfig,
    pub sweep: SweepConfig,
}

/// Key a model-parameter validation message belongs to.
fn model_key(message: &str) -> &'static str {
    if message.starts_with("mu") {
        "model.mu"
    } else if message.starts_with("beta") {
        "model.beta"
    } else if message.starts_with("p =") {
        "model.p"
    } else if message.starts_with("mass") {
        "model.masses"
    } else {
        "grid.dimension"
    }
}

impl RunConfig {
    /// Defaults overlaid with the file at `path` (if any).
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut raw = RawConfig::defaults()?;
        if let Some(p) = path {
            raw.overlay(RawConfig::load(p)?)?;
        }
        Self::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let dimension: usize = raw.get("grid.dimension")?;
        let discretization: Discretization = raw.get("grid.discretization")?;
        let grid = GridSpec::new(dimension, raw.get("grid.half_width")?, raw.get("grid.points")?, discretization);
        grid.validate().map_err(|e| match e {
            Error::Config(m) => {
                let key = if m.starts_with("dimension") {
                    "grid.dimension"
                } else if m.starts_with("half_width") {
                    "grid.half_width"
                } else {
                    "grid.points"
                };
                raw.anchor(key, m)
            }
            other => other,
        })?;

        let kind: String = raw.get("potential.kind")?;
        let potential = match kind.as_str() {
            "zero" => PotentialKind::Zero,
            "harmonic" => PotentialKind::Harmonic,
            "shifted_harmonic" => PotentialKind::ShiftedHarmonic {
                offsets: raw.get_triple("potential.offsets")?,
            },
            "anisotropic" => PotentialKind::Anisotropic {
                weights: raw.get_triple("potential.weights")?,
            },
            "from_file" => PotentialKind::FromFile {
                paths: raw.get_paths("potential.files")?,
            },
            other => {
                return Err(raw.anchor(
                    "potential.kind",
                    format!("unknown potential `{other}` (expected zero, harmonic, shifted_harmonic, anisotropic or from_file)"),
                ))
            }
        };

        let model = ModelParams::new(
            raw.get_triple("model.mu")?,
            raw.get("model.beta")?,
            raw.get("model.p")?,
            raw.get_triple("model.masses")?,
            dimension,
        );
        model.validate().map_err(|e| match e {
            Error::Config(m) => raw.anchor(model_key(&m), m),
            other => other,
        })?;

        let step_size = match raw.raw("solver.step_size")? {
            "auto" => None,
            _ => Some(raw.get::<f64>("solver.step_size")?),
        };
        let init_name: String = raw.get("solver.init")?;
        let init = match init_name.as_str() {
            "gaussian" => InitKind::Gaussian,
            "constant" => InitKind::Constant,
            "random" => InitKind::Random,
            "from_file" => InitKind::FromFile {
                paths: raw.get_paths("solver.init_files")?,
            },
            other => {
                return Err(raw.anchor(
                    "solver.init",
                    format!("unknown init `{other}` (expected gaussian, constant, random or from_file)"),
                ))
            }
        };
        let solver = SolverOptions {
            step_size,
            max_iters: raw.get("solver.max_iters")?,
            tol_residual: raw.get("solver.tol_residual")?,
            tol_energy: raw.get("solver.tol_energy")?,
            line_search: raw.get_bool("solver.line_search")?,
            max_halvings: raw.get("solver.max_halvings")?,
            seed: raw.get("solver.seed")?,
            init,
            scheme: raw.get::<Scheme>("solver.scheme")?,
            symmetrize: raw.get_bool("solver.symmetrize")?,
        };
        solver.validate().map_err(|e| match e {
            Error::Config(m) => {
                let key = m.split_whitespace().next().unwrap_or("solver");
                raw.anchor(&format!("solver.{key}"), m)
            }
            other => other,
        })?;

        let verify = VerifyTolerances {
            mass: raw.get("verify.mass")?,
            residual: raw.get("verify.residual")?,
            noise: raw.get("verify.noise")?,
        };
        let output = OutputConfig {
            dir: PathBuf::from(raw.raw("output.dir")?),
            fields: raw.get_bool("output.fields")?,
            history: raw.get_bool("output.history")?,
            report: raw.get_bool("output.report")?,
            checkpoint_every: raw.get("output.checkpoint_every")?,
        };
        let betas = raw.get_list("sweep.betas")?;
        let masses = raw.get_mass_grid("sweep.masses")?;
        Ok(Self {
            grid,
            potential,
            model,
            solver,
            verify,
            output,
            sweep: SweepConfig { betas, masses },
        })
    }
}
