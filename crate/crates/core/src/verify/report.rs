//! Report types and the residual/verdict policy.
//!
//! Relative residuals divide by `max(1, |oracle|)`. Vector values are
//! ambient coordinates, so closed forms and the oracle are compared in the
//! same basis.

use serde::{Deserialize, Serialize};

use crate::smarandache::FormulaValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Largest relative residual below `tol`.
    Confirmed,
    /// Magnitudes agree (vectors: agree after one global flip); signs do not.
    SignOnly,
    Discrepant,
    /// No sample where both sides are defined.
    Undefined,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::SignOnly => "SIGN_ONLY",
            Verdict::Discrepant => "DISCREPANT",
            Verdict::Undefined => "UNDEFINED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub s: f64,
    pub closed_form: Option<FormulaValue>,
    pub oracle: Option<FormulaValue>,
    pub abs: Option<f64>,
    pub rel: Option<f64>,
    pub sign_agrees: Option<bool>,
    /// Why a side is missing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub id: String,
    pub verdict: Verdict,
    pub defined_samples: usize,
    pub max_abs: Option<f64>,
    pub max_rel: Option<f64>,
    /// Residual after the sign policy; decides `SIGN_ONLY`.
    pub max_rel_up_to_sign: Option<f64>,
    pub samples: Vec<Sample>,
}

fn as_vec(v: FormulaValue) -> Vec<f64> {
    match v {
        FormulaValue::Scalar(x) => vec![x],
        FormulaValue::Vector(a) => a.to_vec(),
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn diff_norm(a: &[f64], b: &[f64], sign: f64) -> f64 {
    norm(&a.iter().zip(b).map(|(x, y)| x - sign * y).collect::<Vec<_>>())
}

/// Fills `abs`, `rel`, and `sign_agrees` from the two sides.
pub fn make_sample(
    s: f64,
    closed_form: Option<FormulaValue>,
    oracle: Option<FormulaValue>,
    note: Option<String>,
) -> Sample {
    let (abs, rel, sign_agrees) = match (closed_form, oracle) {
        (Some(c), Some(o)) => {
            let (c, o) = (as_vec(c), as_vec(o));
            let abs = diff_norm(&c, &o, 1.0);
            let dot: f64 = c.iter().zip(&o).map(|(x, y)| x * y).sum();
            (Some(abs), Some(abs / norm(&o).max(1.0)), Some(dot >= 0.0))
        }
        _ => (None, None, None),
    };
    Sample {
        s,
        closed_form,
        oracle,
        abs,
        rel,
        sign_agrees,
        note,
    }
}

fn max_of(it: impl Iterator<Item = f64>) -> Option<f64> {
    // NaN propagates so a non-finite residual can never confirm.
    it.fold(None, |acc, x| match acc {
        None => Some(x),
        Some(a) if a.is_nan() || x.is_nan() => Some(f64::NAN),
        Some(a) => Some(a.max(x)),
    })
}

/// Residual with the sign policy applied: scalars compare magnitudes per
/// sample; vectors compare against the oracle after one global flip.
pub fn up_to_sign_residual(samples: &[Sample]) -> Option<f64> {
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = samples
        .iter()
        .filter_map(|s| Some((as_vec(s.closed_form?), as_vec(s.oracle?))))
        .collect();
    let first = pairs.first()?;
    if first.0.len() == 1 {
        max_of(
            pairs
                .iter()
                .map(|(c, o)| (c[0].abs() - o[0].abs()).abs() / o[0].abs().max(1.0)),
        )
    } else {
        let flip = |sign: f64| max_of(pairs.iter().map(|(c, o)| diff_norm(c, o, sign) / norm(o).max(1.0)));
        match (flip(1.0), flip(-1.0)) {
            (Some(a), Some(b)) if a.is_nan() || b.is_nan() => Some(f64::NAN),
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        }
    }
}

/// Verdict from the samples alone, checked in order: `UNDEFINED` when no
/// sample has both sides, `DISCREPANT` when any sample has exactly one,
/// then `CONFIRMED`, `SIGN_ONLY`, `DISCREPANT` by residual against `tol`.
pub fn verdict(samples: &[Sample], tol: f64) -> Verdict {
    let both = samples.iter().filter(|s| s.rel.is_some()).count();
    if both == 0 {
        return Verdict::Undefined;
    }
    if samples.iter().any(|s| s.closed_form.is_some() != s.oracle.is_some()) {
        return Verdict::Discrepant;
    }
    match max_of(samples.iter().filter_map(|s| s.rel)) {
        Some(r) if r < tol => return Verdict::Confirmed,
        _ => {}
    }
    match up_to_sign_residual(samples) {
        Some(r) if r < tol => Verdict::SignOnly,
        _ => Verdict::Discrepant,
    }
}

/// Summarizes one formula's samples.
pub fn formula_report(id: impl Into<String>, samples: Vec<Sample>, tol: f64) -> FormulaReport {
    FormulaReport {
        id: id.into(),
        verdict: verdict(&samples, tol),
        defined_samples: samples.iter().filter(|s| s.rel.is_some()).count(),
        max_abs: max_of(samples.iter().filter_map(|s| s.abs)),
        max_rel: max_of(samples.iter().filter_map(|s| s.rel)),
        max_rel_up_to_sign: up_to_sign_residual(&samples),
        samples,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub kind: String,
    pub surface: String,
    pub flip_normal: bool,
    pub u: String,
    pub v: String,
    pub t_lo: f64,
    pub t_hi: f64,
    pub tol: f64,
    pub samples: usize,
    /// `carrier-sphere` or `override`.
    pub phi_star_source: String,
    pub phi_star_override: Option<f64>,
    /// Base classification at the gating tolerance.
    pub base_classes: Vec<String>,
}

/// Unit length and orthogonality of the printed `T*, N*, B*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameConsistencySample {
    pub s: f64,
    pub normal_unit: Option<f64>,
    pub binormal_unit: Option<f64>,
    pub tangent_dot_normal: Option<f64>,
    pub tangent_dot_binormal: Option<f64>,
    pub normal_dot_binormal: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameConsistency {
    pub max_abs_unit: Option<f64>,
    pub max_abs_dot: Option<f64>,
    pub samples: Vec<FrameConsistencySample>,
}

/// Checks of the frame relations on the base curve, where its Frenet frame
/// exists. `k_n_sign` names the sign of `kappa sin(phi)` the data supports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseRelations {
    pub max_abs_k_g: Option<f64>,
    pub max_abs_k_n_plus: Option<f64>,
    pub max_abs_k_n_minus: Option<f64>,
    pub max_abs_tau_g: Option<f64>,
    pub k_n_sign: String,
    pub frenet_samples: usize,
}

/// The same relations for `beta` on its carrier sphere, from the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarredRelations {
    /// `(kappa*)^2 - (k_g*^2 + k_n*^2)`.
    pub max_abs_curvature_split: Option<f64>,
    /// `tau_g* - (tau* + dphi*/ds*)`.
    pub max_abs_torsion_split: Option<f64>,
    pub max_abs_k_n_plus_one: Option<f64>,
    pub max_abs_tau_g: Option<f64>,
    pub max_frenet_residual: Option<f64>,
    pub max_darboux_residual: Option<f64>,
    pub defined_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub metadata: Metadata,
    pub formulas: Vec<FormulaReport>,
    pub frame_consistency: FrameConsistency,
    pub base_relations: BaseRelations,
    pub starred_relations: StarredRelations,
}

impl VerificationReport {
    pub fn formula(&self, id: &str) -> Option<&FormulaReport> {
        self.formulas.iter().find(|f| f.id == id)
    }

    pub fn verdict(&self, id: &str) -> Option<Verdict> {
        self.formula(id).map(|f| f.verdict)
    }
}
