//! Configuration, export formats, and the `eval` / `verify` / `list`
//! commands behind the binary.

pub mod config;
pub mod table;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{ConfigError, CurveSpec, Format, RunConfig, SurfaceSpec};
pub use table::{column_names, evaluate_table, EvalTable, TableMetadata, BASE_COLUMNS, KIND_COLUMNS};

use crate::presets::PRESETS;
use crate::smarandache::SmarandacheKind;
use crate::surface::{Surface, BUILTIN_SURFACES};
use crate::verify::{audit, registry, standard_grid, VerificationReport};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] crate::Error),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl RunError {
    /// Process exit status: 2 for invalid input, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// The document `verify` writes: one report per requested kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub reports: Vec<VerificationReport>,
}

impl VerifyOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<VerifyOutput> {
        serde_json::from_str(text)
    }
}

/// Samples the configured curve and renders CSV or JSON.
pub fn cmd_eval(config: &RunConfig) -> Result<String, RunError> {
    let base = config.build_curve()?;
    let table = evaluate_table(&base, &config.kinds, config.samples, config.phi_star_override)?;
    Ok(match config.output.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    })
}

/// Audits every configured kind. DISCREPANT verdicts are results, not errors.
pub fn cmd_verify(config: &RunConfig) -> Result<VerifyOutput, RunError> {
    if config.output.format == Some(Format::Csv) {
        return Err(ConfigError::field("output.format", "verify writes JSON only").into());
    }
    let base = config.build_curve()?;
    let grid = standard_grid(&base, config.samples);
    let reports = config
        .kinds
        .iter()
        .map(|&k| audit(k, &base, &grid, config.tol, config.phi_star_override))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(VerifyOutput { reports })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListTopic {
    Surfaces,
    Presets,
    Kinds,
    Formulas,
}

impl ListTopic {
    pub const ALL: [ListTopic; 4] = [
        ListTopic::Surfaces,
        ListTopic::Presets,
        ListTopic::Kinds,
        ListTopic::Formulas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ListTopic::Surfaces => "surfaces",
            ListTopic::Presets => "presets",
            ListTopic::Kinds => "kinds",
            ListTopic::Formulas => "formulas",
        }
    }
}

/// Plain-text listing of one topic, or of all of them.
pub fn cmd_list(topic: Option<ListTopic>) -> String {
    let topics = match topic {
        Some(t) => vec![t],
        None => ListTopic::ALL.to_vec(),
    };
    let mut out = String::new();
    for t in topics {
        let _ = writeln!(out, "{}:", t.name());
        match t {
            ListTopic::Surfaces => {
                for name in BUILTIN_SURFACES {
                    let s = Surface::builtin(name, &[]).expect("builtin");
                    let [x, y, z] = s.coordinates();
                    let _ = writeln!(
                        out,
                        "  {name:<9} ({x}, {y}, {z})  u in {}, v in {}",
                        s.u_domain(),
                        s.v_domain()
                    );
                }
            }
            ListTopic::Presets => {
                for p in &PRESETS {
                    let _ = writeln!(out, "  {:<9} {}", p.name, p.description);
                }
            }
            ListTopic::Kinds => {
                for k in SmarandacheKind::ALL {
                    let _ = writeln!(out, "  {k}");
                }
            }
            ListTopic::Formulas => {
                for f in registry() {
                    let _ = writeln!(out, "  {f}");
                }
            }
        }
    }
    out
}

/// Writes to `path`, or returns the text for stdout when there is none.
pub fn emit(text: &str, path: Option<&Path>) -> Result<Option<String>, RunError> {
    match path {
        Some(p) => std::fs::write(p, text).map(|_| None).map_err(|e| RunError::Output {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => Ok(Some(text.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn list_mentions_everything() {
        let text = cmd_list(None);
        for word in [
            "sphere", "cylinder", "torus", "plane", "equator", "latitude", "helix", "ruling", "rate-Tg",
        ] {
            assert!(text.contains(word), "{word}");
        }
        assert_eq!(
            cmd_list(Some(ListTopic::Formulas)).lines().count(),
            registry().len() + 1
        );
    }

    #[test]
    fn verify_equator_tg() {
        let mut c = RunConfig::from_preset("equator").unwrap();
        c.kinds = vec![SmarandacheKind::Tg];
        c.samples = 32;
        let out = cmd_verify(&c).unwrap();
        assert_eq!(out.reports.len(), 1);
        assert_eq!(out.reports[0].verdict("rate-Tg"), Some(Verdict::Confirmed));
        c.output.format = Some(Format::Csv);
        assert_eq!(cmd_verify(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn eval_csv_rows() {
        let mut c = RunConfig::from_preset("equator").unwrap();
        c.samples = 64;
        let text = cmd_eval(&c).unwrap();
        assert_eq!(text.lines().count(), 65);
        assert_eq!(text.lines().next().unwrap().split(',').count(), 20 + 4 * 13);
    }
}
