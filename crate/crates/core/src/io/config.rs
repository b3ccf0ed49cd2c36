//! JSON run configuration and its validation.
//!
//! ```json
//! {
//!   "surface": "sphere",
//!   "curve": { "u": "pi/4", "v": "t", "t_lo": 0, "t_hi": "2*pi" },
//!   "kinds": ["Tg", "gn"],
//!   "samples": 128,
//!   "tol": 1e-8,
//!   "flip_normal": false,
//!   "phi_star_override": null,
//!   "output": { "format": "csv", "path": "out.csv" }
//! }
//! ```
//!
//! `surface` is a builtin name, `{"builtin": "torus", "params": [3, 1]}`, or
//! a custom patch `{"name": .., "x": .., "y": .., "z": .., "u_domain": ..,
//! "v_domain": ..}` whose domains are `{"lo": .., "hi": .., "lo_open": ..,
//! "hi_open": ..}` with `null` bounds meaning unbounded. Range endpoints may
//! be numbers or constant expressions.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::parse;
use crate::frame::SurfaceCurve;
use crate::presets::Preset;
use crate::smarandache::SmarandacheKind;
use crate::surface::{Interval, Surface};

pub const MIN_SAMPLES: usize = 16;
pub const DEFAULT_SAMPLES: usize = 256;
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("config line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl ConfigError {
    pub fn field(field: impl Into<String>, message: impl fmt::Display) -> ConfigError {
        ConfigError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

/// A number or a constant expression such as `2*pi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Expr(String),
}

impl Scalar {
    pub fn resolve(&self, field: &str) -> Result<f64, ConfigError> {
        let value = match self {
            Scalar::Number(x) => *x,
            Scalar::Expr(src) => parse(src, &[])
                .map_err(|e| ConfigError::field(field, e))?
                .eval(&[] as &[(&str, f64)])
                .map_err(|e| ConfigError::field(field, e))?,
        };
        if !value.is_finite() {
            return Err(ConfigError::field(field, "must be finite"));
        }
        Ok(value)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Number(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    #[serde(default)]
    pub lo: Option<f64>,
    #[serde(default)]
    pub hi: Option<f64>,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl DomainSpec {
    fn to_interval(&self) -> Interval {
        Interval {
            lo: self.lo.unwrap_or(f64::NEG_INFINITY),
            hi: self.hi.unwrap_or(f64::INFINITY),
            lo_open: self.lo_open || self.lo.is_none(),
            hi_open: self.hi_open || self.hi.is_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Builtin(String),
    WithParams {
        builtin: String,
        #[serde(default)]
        params: Vec<f64>,
    },
    Custom {
        #[serde(default)]
        name: Option<String>,
        x: String,
        y: String,
        z: String,
        #[serde(default)]
        u_domain: Option<DomainSpec>,
        #[serde(default)]
        v_domain: Option<DomainSpec>,
    },
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<Surface, ConfigError> {
        match self {
            SurfaceSpec::Builtin(name) => Surface::builtin(name, &[]).map_err(|e| ConfigError::field("surface", e)),
            SurfaceSpec::WithParams { builtin, params } => {
                Surface::builtin(builtin, params).map_err(|e| ConfigError::field("surface.builtin", e))
            }
            SurfaceSpec::Custom {
                name,
                x,
                y,
                z,
                u_domain,
                v_domain,
            } => {
                for (axis, src) in [("x", x), ("y", y), ("z", z)] {
                    parse(src, &["u", "v"]).map_err(|e| ConfigError::field(format!("surface.{axis}"), e))?;
                }
                let domain =
                    |d: &Option<DomainSpec>| d.as_ref().map_or_else(Interval::real_line, DomainSpec::to_interval);
                Surface::from_strings(
                    name.as_deref().unwrap_or("custom"),
                    [x, y, z],
                    domain(u_domain),
                    domain(v_domain),
                )
                .map_err(|e| ConfigError::field("surface", e))
            }
        }
    }
}

impl FromStr for SurfaceSpec {
    type Err = ConfigError;

    /// `sphere`, `torus:3,1`, or three `;`-separated coordinates in `u, v`.
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        if parts.len() == 3 {
            return Ok(SurfaceSpec::Custom {
                name: None,
                x: parts[0].into(),
                y: parts[1].into(),
                z: parts[2].into(),
                u_domain: None,
                v_domain: None,
            });
        }
        if parts.len() != 1 {
            return Err(ConfigError::field(
                "surface",
                "expected a builtin name, name:params, or x;y;z",
            ));
        }
        match s.split_once(':') {
            None => Ok(SurfaceSpec::Builtin(s.trim().into())),
            Some((name, params)) => {
                let params = params
                    .split(',')
                    .map(|p| Scalar::Expr(p.trim().into()).resolve("surface"))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SurfaceSpec::WithParams {
                    builtin: name.trim().into(),
                    params,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub u: String,
    pub v: String,
    pub t_lo: Scalar,
    pub t_hi: Scalar,
}

impl FromStr for CurveSpec {
    type Err = ConfigError;

    /// `u;v;t_lo;t_hi`.
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        let [u, v, lo, hi] = parts[..] else {
            return Err(ConfigError::field("curve", "expected u;v;t_lo;t_hi"));
        };
        Ok(CurveSpec {
            u: u.into(),
            v: v.into(),
            t_lo: Scalar::Expr(lo.into()),
            t_hi: Scalar::Expr(hi.into()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(ConfigError::field(
                "output.format",
                format!("unknown format '{other}' (csv or json)"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

fn all_kinds() -> Vec<SmarandacheKind> {
    SmarandacheKind::ALL.to_vec()
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub surface: SurfaceSpec,
    pub curve: CurveSpec,
    #[serde(default = "all_kinds")]
    pub kinds: Vec<SmarandacheKind>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub flip_normal: bool,
    #[serde(default)]
    pub phi_star_override: Option<f64>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl RunConfig {
    /// Config for a named preset with default settings.
    pub fn from_preset(name: &str) -> Result<RunConfig, ConfigError> {
        let p = Preset::find(name).map_err(|e| ConfigError::field("preset", e))?;
        let surface = if p.surface_params.is_empty() {
            SurfaceSpec::Builtin(p.surface.into())
        } else {
            SurfaceSpec::WithParams {
                builtin: p.surface.into(),
                params: p.surface_params.to_vec(),
            }
        };
        Ok(RunConfig {
            surface,
            curve: CurveSpec {
                u: p.u.into(),
                v: p.v.into(),
                t_lo: p.t_lo.into(),
                t_hi: p.t_hi.into(),
            },
            kinds: all_kinds(),
            samples: DEFAULT_SAMPLES,
            tol: DEFAULT_TOL,
            flip_normal: false,
            phi_star_override: None,
            output: OutputSpec::default(),
        })
    }

    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_path(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        RunConfig::from_json(&text)
    }

    /// Checks the scalar fields and that the expressions parse.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples < MIN_SAMPLES {
            return Err(ConfigError::field(
                "samples",
                format!("{} is below the minimum of {MIN_SAMPLES}", self.samples),
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(ConfigError::field("tol", format!("{} must be positive", self.tol)));
        }
        if self.kinds.is_empty() {
            return Err(ConfigError::field("kinds", "at least one kind is required"));
        }
        if let Some(phi) = self.phi_star_override {
            if !phi.is_finite() {
                return Err(ConfigError::field("phi_star_override", "must be finite"));
            }
        }
        for (field, src) in [("curve.u", &self.curve.u), ("curve.v", &self.curve.v)] {
            parse(src, &["t"]).map_err(|e| ConfigError::field(field, e))?;
        }
        let lo = self.curve.t_lo.resolve("curve.t_lo")?;
        let hi = self.curve.t_hi.resolve("curve.t_hi")?;
        if !(lo < hi) {
            return Err(ConfigError::field(
                "curve",
                format!("empty parameter range [{lo}, {hi}]"),
            ));
        }
        self.surface.build()?;
        Ok(())
    }

    /// Validates and builds the base curve.
    pub fn build_curve(&self) -> Result<SurfaceCurve, ConfigError> {
        self.validate()?;
        let surface = self.surface.build()?.with_flip(self.flip_normal);
        let lo = self.curve.t_lo.resolve("curve.t_lo")?;
        let hi = self.curve.t_hi.resolve("curve.t_hi")?;
        SurfaceCurve::from_strings(surface, &self.curve.u, &self.curve.v, lo, hi)
            .map_err(|e| ConfigError::field("curve", e))
    }
}
