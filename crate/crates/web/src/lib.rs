//! Browser bindings: each export returns a JSON string for the static page
//! in `www/`, or an error message.

use darboux::frame::SurfaceCurve;
use darboux::io::{evaluate_table, CurveSpec, RunConfig, SurfaceSpec};
use darboux::smarandache::SmarandacheKind;
use darboux::verify::{audit, standard_grid};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_SAMPLES: usize = 4096;

fn parse_kind(kind: &str) -> Result<SmarandacheKind, String> {
    kind.parse().map_err(|e| format!("{e}"))
}

fn points(table: &darboux::io::EvalTable, prefix: &str) -> Vec<Value> {
    let col = |c: &str| table.column(&format!("{prefix}{c}")).unwrap_or_default();
    let (x, y, z) = (col("x"), col("y"), col("z"));
    x.iter()
        .zip(&y)
        .zip(&z)
        .map(|((x, y), z)| match (x, y, z) {
            (Some(x), Some(y), Some(z)) => json!([x, y, z]),
            _ => Value::Null,
        })
        .collect()
}

fn sample(base: &SurfaceCurve, kind: &str, samples: usize) -> Result<String, String> {
    let kind = parse_kind(kind)?;
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 2..={MAX_SAMPLES}"));
    }
    let table = evaluate_table(base, &[kind], samples, None).map_err(|e| e.to_string())?;
    let col = |name: &str| table.column(name).unwrap_or_default();
    Ok(json!({
        "kind": kind.name(),
        "surface": base.surface().name(),
        "s": col("s"),
        "base": points(&table, ""),
        "beta": points(&table, &format!("{kind}_beta_")),
        "k_g": col("k_g"),
        "k_n": col("k_n"),
        "tau_g": col("tau_g"),
        "kappa_star": col(&format!("{kind}_kappa_star")),
        "kappa_star_cf": col(&format!("{kind}_kappa_star_cf")),
    })
    .to_string())
}

/// Base curve and one Smarandache curve of a named preset.
#[wasm_bindgen]
pub fn sample_curves(preset: &str, kind: &str, samples: usize) -> Result<String, String> {
    let base = darboux::presets::preset_curve(preset).map_err(|e| e.to_string())?;
    sample(&base, kind, samples)
}

/// Same as [`sample_curves`] for a user-typed surface (`sphere`,
/// `torus:3,1`, or `x;y;z` in u and v) and curve (`u;v;t_lo;t_hi`).
#[wasm_bindgen]
pub fn custom_curve(surface: &str, curve: &str, kind: &str, samples: usize) -> Result<String, String> {
    let mut config = RunConfig::from_preset("equator").map_err(|e| e.to_string())?;
    config.surface = surface.parse::<SurfaceSpec>().map_err(|e| e.to_string())?;
    config.curve = curve.parse::<CurveSpec>().map_err(|e| e.to_string())?;
    let base = config.build_curve().map_err(|e| e.to_string())?;
    sample(&base, kind, samples)
}

/// Verdict table of the printed formulas for one kind on a preset.
#[wasm_bindgen]
pub fn audit_preset(preset: &str, kind: &str, tol: f64) -> Result<String, String> {
    let kind = parse_kind(kind)?;
    let base = darboux::presets::preset_curve(preset).map_err(|e| e.to_string())?;
    let grid = standard_grid(&base, 64);
    let report = audit(kind, &base, &grid, tol, None).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = report
        .formulas
        .iter()
        .map(|f| {
            json!({
                "id": f.id,
                "verdict": f.verdict.name(),
                "max_rel": f.max_rel,
                "max_rel_up_to_sign": f.max_rel_up_to_sign,
            })
        })
        .collect();
    Ok(json!({ "preset": preset, "kind": kind.name(), "tol": tol, "formulas": rows }).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.expect("call succeeds")).unwrap()
    }

    #[test]
    fn preset_samples_lie_on_the_unit_sphere() {
        let v = parse(sample_curves("helix", "Tgn", 50));
        let beta = v["beta"].as_array().unwrap();
        assert_eq!(beta.len(), 50);
        for p in beta {
            let r: f64 = p.as_array().unwrap().iter().map(|c| c.as_f64().unwrap().powi(2)).sum();
            assert!((r - 1.0).abs() < 1e-12);
        }
        assert_eq!(v["base"].as_array().unwrap().len(), 50);
    }

    #[test]
    fn custom_geometry_and_errors() {
        let v = parse(custom_curve("torus:3,1", "t;2*t;0;2*pi", "gn", 20));
        assert_eq!(v["surface"], "torus");
        assert!(custom_curve("sphere", "t;", "Tg", 20).is_err());
        assert!(custom_curve("sphere", "pi/2;t;0;1", "Tx", 20).is_err());
        assert!(sample_curves("equator", "Tg", 0).is_err());
    }

    #[test]
    fn audit_lists_every_formula() {
        let v = parse(audit_preset("equator", "Tg", 1e-8));
        let rows = v["formulas"].as_array().unwrap();
        assert_eq!(rows.len(), 17);
        assert!(rows.iter().any(|r| r["id"] == "rate-Tg" && r["verdict"] == "CONFIRMED"));
    }
}
