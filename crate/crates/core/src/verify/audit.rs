//! Sample-by-sample comparison of every printed closed form with the oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{invariant_derivatives_from, SurfaceCurve};
use crate::smarandache::{
    construct, corollary_gate, corollary_number, evaluate, evaluate_corollary, rate_radical, BaseInvariants,
    ClosedFormContext, FormulaValue, Quantity, SmarandacheCurve, SmarandacheKind, COROLLARY_TOL,
};
use crate::vec3::Vec3;

use super::oracle::{darboux_residual, frenet_residual, oracle_at_parameter, OracleInvariants};
use super::report::{
    formula_report, make_sample, BaseRelations, FrameConsistency, FrameConsistencySample, Metadata, Sample,
    StarredRelations, VerificationReport,
};

pub const DEFAULT_SAMPLES: usize = 256;
/// Fraction of the arc length left out at each end of the standard grid.
pub const GRID_MARGIN: f64 = 0.02;
/// Base Frenet samples below this curvature are left out of the relation checks.
const RELATION_MIN_CURVATURE: f64 = 1e-6;

/// One registered closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormulaId {
    pub kind: SmarandacheKind,
    pub quantity: Quantity,
    /// Special-case number when this is a corollary formula.
    pub corollary: Option<u8>,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slug = self.quantity.slug();
        match (self.corollary, self.quantity) {
            (Some(n), _) => write!(f, "{slug}-corollary{n}-{}", self.kind),
            (None, Quantity::GeodesicTorsionSingle) => write!(f, "{slug}-{}-single", self.kind),
            (None, _) => write!(f, "{slug}-{}", self.kind),
        }
    }
}

/// Formulas registered for one kind, in report order.
pub fn registry_for(kind: SmarandacheKind) -> Vec<FormulaId> {
    let mut out: Vec<FormulaId> = Quantity::GENERAL
        .iter()
        .map(|&quantity| FormulaId {
            kind,
            quantity,
            corollary: None,
        })
        .collect();
    if kind == SmarandacheKind::Tg {
        out.push(FormulaId {
            kind,
            quantity: Quantity::GeodesicTorsionSingle,
            corollary: None,
        });
    }
    if let Some((n, _)) = corollary_number(kind) {
        out.extend(Quantity::COROLLARY.iter().map(|&quantity| FormulaId {
            kind,
            quantity,
            corollary: Some(n),
        }));
    }
    out
}

/// Every registered formula across all kinds.
pub fn registry() -> Vec<FormulaId> {
    SmarandacheKind::ALL.into_iter().flat_map(registry_for).collect()
}

/// `n` uniform arc-length samples with a 2% margin cut from each end.
pub fn standard_grid(base: &SurfaceCurve, n: usize) -> Vec<f64> {
    let len = base.total_length();
    let (a, b) = (GRID_MARGIN * len, (1.0 - GRID_MARGIN) * len);
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Everything evaluated once per grid point.
struct Point {
    s: f64,
    t: f64,
    frame: [Vec3; 3],
    inv: BaseInvariants,
    beta_speed: f64,
    oracle: std::result::Result<OracleInvariants, String>,
}

fn evaluate_point(curve: &SmarandacheCurve<'_>, s: f64) -> Result<Point> {
    let t = curve.base.parameter_at(s)?;
    let jets = curve.jets_at_parameter(t)?;
    let frame = [
        jets.frame.tangent.value(),
        jets.frame.tangent_normal.value(),
        jets.frame.normal.value(),
    ];
    Ok(Point {
        s,
        t,
        frame,
        inv: invariant_derivatives_from(&jets.frame).into(),
        beta_speed: jets.derivatives()[1].norm(),
        oracle: oracle_at_parameter(curve, t).map_err(|e| e.to_string()),
    })
}

fn scalar(x: f64) -> Option<FormulaValue> {
    Some(FormulaValue::Scalar(x))
}

fn vector(v: Vec3) -> Option<FormulaValue> {
    Some(FormulaValue::Vector(v.to_array()))
}

fn oracle_value(q: Quantity, p: &Point) -> (Option<FormulaValue>, Option<String>) {
    if q == Quantity::Rate {
        return (scalar(p.beta_speed), None);
    }
    let o = match &p.oracle {
        Ok(o) => o,
        Err(e) => return (None, Some(format!("oracle: {e}"))),
    };
    let value = match q {
        Quantity::Rate => unreachable!(),
        Quantity::Tangent => vector(o.tangent),
        Quantity::Curvature => o.tau.map(|_| FormulaValue::Scalar(o.kappa)),
        Quantity::PrincipalNormal => o.principal_normal.and_then(vector),
        Quantity::Binormal => o.binormal.and_then(vector),
        Quantity::Torsion => o.tau.and_then(scalar),
        Quantity::TangentNormal => vector(o.g_star),
        Quantity::SurfaceNormal => vector(o.n_star),
        Quantity::GeodesicCurvature => scalar(o.k_g),
        Quantity::NormalCurvature => scalar(o.k_n),
        Quantity::GeodesicTorsion | Quantity::GeodesicTorsionSingle => scalar(o.tau_g),
    };
    let note = value
        .is_none()
        .then(|| "oracle: Frenet frame of beta undefined".to_string());
    (value, note)
}

fn context(p: &Point, phi_override: Option<f64>) -> Option<ClosedFormContext> {
    match phi_override {
        Some(phi) => Some(ClosedFormContext {
            phi_star: phi,
            dphi_star_ds_star: 0.0,
        }),
        None => {
            let o = p.oracle.as_ref().ok()?;
            Some(ClosedFormContext {
                phi_star: o.phi_star?,
                dphi_star_ds_star: o.dphi_star_ds_star?,
            })
        }
    }
}

fn closed_form_value(
    id: &FormulaId,
    p: &Point,
    ctx: Option<ClosedFormContext>,
    gate: &std::result::Result<u8, String>,
) -> (Option<FormulaValue>, Option<String>) {
    if id.quantity == Quantity::Rate {
        return (scalar(rate_radical(id.kind, &p.inv)), None);
    }
    if id.corollary.is_some() {
        if let Err(e) = gate {
            return (None, Some(format!("closed form: {e}")));
        }
    }
    let ctx = match ctx {
        Some(c) => c,
        None if id.quantity.needs_phi() => {
            return (None, Some("closed form: phi* undefined here".into()));
        }
        // Unused by formulas that do not read phi*.
        None => ClosedFormContext {
            phi_star: 0.0,
            dphi_star_ds_star: 0.0,
        },
    };
    let result = match id.corollary {
        Some(_) => evaluate_corollary(id.kind, id.quantity, &p.inv, &ctx).map(FormulaValue::Scalar),
        None => evaluate(id.kind, id.quantity, &p.inv, &ctx),
    };
    match result {
        Ok(v) if !v.is_finite() => (None, Some("closed form: non-finite value".into())),
        Ok(FormulaValue::Vector(c)) => (vector(Vec3::combine(c, p.frame)), None),
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(format!("closed form: {e}"))),
    }
}

fn join_notes(a: Option<String>, b: Option<String>) -> Option<String> {
    match (a, b) {
        (Some(a), Some(b)) => Some(format!("{a}; {b}")),
        (a, b) => a.or(b),
    }
}

fn max_abs(values: impl Iterator<Item = f64>) -> Option<f64> {
    values
        .map(f64::abs)
        .fold(None, |m, x| Some(m.map_or(x, |m: f64| m.max(x))))
}

fn frame_consistency(kind: SmarandacheKind, points: &[Point]) -> FrameConsistency {
    let ctx = ClosedFormContext {
        phi_star: 0.0,
        dphi_star_ds_star: 0.0,
    };
    let get = |q, p: &Point| {
        evaluate(kind, q, &p.inv, &ctx)
            .ok()
            .and_then(FormulaValue::vector)
            .filter(|v| v.iter().all(|x| x.is_finite()))
            .map(|v| Vec3::new(v[0], v[1], v[2]))
    };
    let samples: Vec<FrameConsistencySample> = points
        .iter()
        .map(|p| {
            let t = get(Quantity::Tangent, p);
            let n = get(Quantity::PrincipalNormal, p);
            let b = get(Quantity::Binormal, p);
            let dot = |a: Option<Vec3>, b: Option<Vec3>| Some(a?.dot(b?));
            FrameConsistencySample {
                s: p.s,
                normal_unit: n.map(|n| n.norm() - 1.0),
                binormal_unit: b.map(|b| b.norm() - 1.0),
                tangent_dot_normal: dot(t, n),
                tangent_dot_binormal: dot(t, b),
                normal_dot_binormal: dot(n, b),
            }
        })
        .collect();
    FrameConsistency {
        max_abs_unit: max_abs(samples.iter().flat_map(|s| [s.normal_unit, s.binormal_unit]).flatten()),
        max_abs_dot: max_abs(
            samples
                .iter()
                .flat_map(|s| [s.tangent_dot_normal, s.tangent_dot_binormal, s.normal_dot_binormal])
                .flatten(),
        ),
        samples,
    }
}

fn base_relations(base: &SurfaceCurve, points: &[Point]) -> BaseRelations {
    let mut rows = Vec::new();
    for p in points {
        let Ok(x) = base.sample_at_parameter(p.t) else { continue };
        let Some(f) = x.frenet else { continue };
        if x.kappa < RELATION_MIN_CURVATURE {
            continue;
        }
        let (c, s) = (x.kappa * f.phi.cos(), x.kappa * f.phi.sin());
        rows.push([c - x.k_g, x.k_n - s, x.k_n + s, x.tau_g - (f.tau + f.dphi_ds)]);
    }
    let col = |i: usize| max_abs(rows.iter().map(|r| r[i]));
    let (plus, minus) = (col(1), col(2));
    const SIGN_TOL: f64 = 1e-8;
    let k_n_sign = match (plus, minus) {
        (Some(p), Some(m)) if p < SIGN_TOL && m < SIGN_TOL => "both",
        (Some(_), Some(m)) if m < SIGN_TOL => "minus",
        (Some(p), Some(_)) if p < SIGN_TOL => "plus",
        (Some(_), Some(_)) => "neither",
        _ => "undetermined",
    };
    BaseRelations {
        max_abs_k_g: col(0),
        max_abs_k_n_plus: plus,
        max_abs_k_n_minus: minus,
        max_abs_tau_g: col(3),
        k_n_sign: k_n_sign.into(),
        frenet_samples: rows.len(),
    }
}

fn starred_relations(curve: &SmarandacheCurve<'_>, points: &[Point]) -> StarredRelations {
    let oracles: Vec<&OracleInvariants> = points.iter().filter_map(|p| p.oracle.as_ref().ok()).collect();
    StarredRelations {
        max_abs_curvature_split: max_abs(
            oracles
                .iter()
                .map(|o| o.kappa * o.kappa - (o.k_g * o.k_g + o.k_n * o.k_n)),
        ),
        max_abs_torsion_split: max_abs(
            oracles
                .iter()
                .filter_map(|o| Some(o.tau_g - (o.tau? + o.dphi_star_ds_star?))),
        ),
        max_abs_k_n_plus_one: max_abs(oracles.iter().map(|o| o.k_n + 1.0)),
        max_abs_tau_g: max_abs(oracles.iter().map(|o| o.tau_g)),
        max_frenet_residual: max_abs(points.iter().filter_map(|p| frenet_residual(curve, p.s).ok())),
        max_darboux_residual: max_abs(points.iter().filter_map(|p| darboux_residual(curve, p.s).ok())),
        defined_samples: oracles.len(),
    }
}

/// Audits every registered formula of `kind` on `base` over the arc-length
/// `grid`. Sample failures are recorded in the report; only bad arguments
/// are errors. With `phi_override`, closed forms use that constant `phi*`
/// and `dphi*/ds* = 0` instead of the oracle's.
pub fn audit(
    kind: SmarandacheKind,
    base: &SurfaceCurve,
    grid: &[f64],
    tol: f64,
    phi_override: Option<f64>,
) -> Result<VerificationReport> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("audit grid is empty".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let curve = construct(kind, base)?;
    let points: Vec<Point> = grid.iter().map(|&s| evaluate_point(&curve, s)).collect::<Result<_>>()?;
    let classification = base.classify(COROLLARY_TOL)?;
    let gate = corollary_gate(kind, &classification).map_err(|e| e.to_string());

    let formulas = registry_for(kind)
        .iter()
        .map(|id| {
            let samples: Vec<Sample> = points
                .iter()
                .map(|p| {
                    let (cf, cf_note) = closed_form_value(id, p, context(p, phi_override), &gate);
                    let (or, or_note) = oracle_value(id.quantity, p);
                    make_sample(p.s, cf, or, join_notes(cf_note, or_note))
                })
                .collect();
            formula_report(id.to_string(), samples, tol)
        })
        .collect();

    let (t_lo, t_hi) = base.t_range();
    Ok(VerificationReport {
        metadata: Metadata {
            kind: kind.name().into(),
            surface: base.surface().name().into(),
            flip_normal: base.surface().is_flipped(),
            u: base.u_of_t().to_string(),
            v: base.v_of_t().to_string(),
            t_lo,
            t_hi,
            tol,
            samples: grid.len(),
            phi_star_source: if phi_override.is_some() {
                "override"
            } else {
                "carrier-sphere"
            }
            .into(),
            phi_star_override: phi_override,
            base_classes: classification.labels().iter().map(|c| c.name().to_string()).collect(),
        },
        formulas,
        frame_consistency: frame_consistency(kind, &points),
        base_relations: base_relations(base, &points),
        starred_relations: starred_relations(&curve, &points),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_curve;
    use crate::verify::report::Verdict;

    #[test]
    fn registry_ids_are_unique() {
        let ids: Vec<String> = registry().iter().map(|f| f.to_string()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids.len(), sorted.len());
        assert_eq!(ids.len(), 17 + 16 + 16 + 11);
        assert!(ids.contains(&"taug-star-Tg-single".to_string()));
        assert!(ids.contains(&"kappa-star-corollary1-Tg".to_string()));
    }

    #[test]
    fn standard_grid_margins() {
        let base = preset_curve("equator").unwrap();
        let g = standard_grid(&base, DEFAULT_SAMPLES);
        assert_eq!(g.len(), 256);
        let l = base.total_length();
        assert!((g[0] - 0.02 * l).abs() < 1e-12);
        assert!((g[255] - 0.98 * l).abs() < 1e-12);
    }

    #[test]
    fn equator_tg_examples() {
        let base = preset_curve("equator").unwrap();
        let grid = standard_grid(&base, 32);
        let r = audit(SmarandacheKind::Tg, &base, &grid, 1e-8, None).unwrap();
        assert_eq!(r.verdict("rate-Tg"), Some(Verdict::Confirmed));
        assert_eq!(r.verdict("kappa-star-corollary1-Tg"), Some(Verdict::SignOnly));
        assert_eq!(r.formulas.len(), registry_for(SmarandacheKind::Tg).len());
        assert_eq!(r.base_relations.k_n_sign, "minus");
    }

    #[test]
    fn bad_arguments() {
        let base = preset_curve("equator").unwrap();
        assert!(audit(SmarandacheKind::Tg, &base, &[], 1e-8, None).is_err());
        assert!(audit(SmarandacheKind::Tg, &base, &[1.0], 0.0, None).is_err());
    }
}
