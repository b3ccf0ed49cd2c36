//! Sampled curve data: the table behind `eval`, its CSV and JSON forms, and
//! readers for both.
//!
//! Columns are fixed: 20 base columns, then 13 per requested kind prefixed
//! with the kind name (`Tg_beta_x`, ...). Undefined values are empty CSV
//! cells and JSON `null`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frame::{invariant_derivatives_from, SurfaceCurve};
use crate::numeric::{adaptive_simpson, unwrap_near};
use crate::smarandache::{
    construct, evaluate, BaseInvariants, ClosedFormContext, Quantity, SmarandacheCurve, SmarandacheKind,
};
use crate::verify::oracle::oracle_at_parameter;

pub const BASE_COLUMNS: [&str; 20] = [
    "s", "s_star", "x", "y", "z", "T_x", "T_y", "T_z", "g_x", "g_y", "g_z", "n_x", "n_y", "n_z", "k_g", "k_n", "tau_g",
    "kappa", "tau", "phi",
];

pub const KIND_COLUMNS: [&str; 13] = [
    "beta_x",
    "beta_y",
    "beta_z",
    "rate",
    "kappa_star",
    "tau_star",
    "kg_star",
    "kn_star",
    "taug_star",
    "phi_star",
    "kappa_star_cf",
    "tau_star_cf",
    "taug_star_cf",
];

const S_STAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMetadata {
    pub surface: String,
    pub u: String,
    pub v: String,
    pub t_lo: f64,
    pub t_hi: f64,
    pub flip_normal: bool,
    pub samples: usize,
    pub kinds: Vec<SmarandacheKind>,
    pub phi_star_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalTable {
    pub metadata: TableMetadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

pub fn column_names(kinds: &[SmarandacheKind]) -> Vec<String> {
    let mut out: Vec<String> = BASE_COLUMNS.iter().map(|c| c.to_string()).collect();
    for k in kinds {
        out.extend(KIND_COLUMNS.iter().map(|c| format!("{}_{c}", k.name())));
    }
    out
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Per-kind cells at one parameter; `phi_prev` carries the unwrapping.
fn kind_cells(
    curve: &SmarandacheCurve<'_>,
    t: f64,
    phi_override: Option<f64>,
    phi_prev: &mut Option<f64>,
) -> Vec<Option<f64>> {
    let mut cells = vec![None; KIND_COLUMNS.len()];
    let Ok(jets) = curve.jets_at_parameter(t) else {
        return cells;
    };
    let [beta, b1, ..] = jets.derivatives();
    cells[0] = finite(beta.x);
    cells[1] = finite(beta.y);
    cells[2] = finite(beta.z);
    cells[3] = finite(b1.norm());
    let inv: BaseInvariants = invariant_derivatives_from(&jets.frame).into();
    let oracle = oracle_at_parameter(curve, t).ok();
    if let Some(o) = &oracle {
        cells[4] = o.tau.and(finite(o.kappa));
        cells[5] = o.tau.and_then(finite);
        cells[6] = finite(o.k_g);
        cells[7] = finite(o.k_n);
        cells[8] = finite(o.tau_g);
        if let Some(phi) = o.phi_star {
            let phi = phi_prev.map_or(phi, |p| unwrap_near(phi, p));
            *phi_prev = Some(phi);
            cells[9] = finite(phi);
        }
    }
    let ctx = match phi_override {
        Some(phi) => Some(ClosedFormContext {
            phi_star: phi,
            dphi_star_ds_star: 0.0,
        }),
        None => oracle.and_then(|o| {
            Some(ClosedFormContext {
                phi_star: o.phi_star?,
                dphi_star_ds_star: o.dphi_star_ds_star?,
            })
        }),
    };
    let printed = |q: Quantity, ctx: &ClosedFormContext| {
        evaluate(curve.kind, q, &inv, ctx)
            .ok()
            .and_then(|v| v.scalar())
            .and_then(finite)
    };
    let no_phi = ClosedFormContext {
        phi_star: 0.0,
        dphi_star_ds_star: 0.0,
    };
    cells[10] = printed(Quantity::Curvature, &no_phi);
    cells[11] = printed(Quantity::Torsion, &no_phi);
    cells[12] = ctx.and_then(|c| printed(Quantity::GeodesicTorsion, &c));
    cells
}

/// `|d beta / dt|`, the integrand of the arc length of `beta`.
fn beta_speed_dt(curve: &SmarandacheCurve<'_>, t: f64) -> Result<f64> {
    let jets = curve.jets_at_parameter(t)?;
    Ok(jets.derivatives()[1].norm() * jets.frame.speed.value())
}

/// Samples `n` uniform arc-length points over the whole base curve.
pub fn evaluate_table(
    base: &SurfaceCurve,
    kinds: &[SmarandacheKind],
    n: usize,
    phi_override: Option<f64>,
) -> Result<EvalTable> {
    let curves: Vec<SmarandacheCurve<'_>> = kinds.iter().map(|&k| construct(k, base)).collect::<Result<_>>()?;
    let mut phi_prev = vec![None; kinds.len()];
    let mut frenet_phi_prev: Option<f64> = None;
    let mut s_star = 0.0;
    let mut t_prev: Option<f64> = None;
    let mut rows = Vec::with_capacity(n);
    for s in base.uniform_s(n) {
        let mut row = vec![None; BASE_COLUMNS.len()];
        row[0] = Some(s);
        let t = match base.parameter_at(s) {
            Ok(t) => t,
            Err(_) => {
                rows.push(pad(row, kinds.len()));
                continue;
            }
        };
        if let Some(first) = curves.first() {
            if let Some(tp) = t_prev {
                // Arc length of the first kind's curve, accumulated panel by panel.
                if let Ok(ds) = adaptive_simpson(&mut |x| beta_speed_dt(first, x), tp, t, S_STAR_TOL) {
                    s_star += ds;
                }
            }
            row[1] = Some(s_star);
        }
        t_prev = Some(t);
        if let Ok(x) = base.sample_at_parameter(t) {
            let vals = [
                x.position.x,
                x.position.y,
                x.position.z,
                x.tangent.x,
                x.tangent.y,
                x.tangent.z,
                x.tangent_normal.x,
                x.tangent_normal.y,
                x.tangent_normal.z,
                x.normal.x,
                x.normal.y,
                x.normal.z,
                x.k_g,
                x.k_n,
                x.tau_g,
                x.kappa,
            ];
            for (cell, v) in row[2..18].iter_mut().zip(vals) {
                *cell = finite(v);
            }
            if let Some(f) = x.frenet {
                let phi = frenet_phi_prev.map_or(f.phi, |p| unwrap_near(f.phi, p));
                frenet_phi_prev = Some(phi);
                row[18] = finite(f.tau);
                row[19] = finite(phi);
            }
        }
        for (curve, prev) in curves.iter().zip(phi_prev.iter_mut()) {
            row.extend(kind_cells(curve, t, phi_override, prev));
        }
        rows.push(row);
    }
    let (t_lo, t_hi) = base.t_range();
    Ok(EvalTable {
        metadata: TableMetadata {
            surface: base.surface().name().into(),
            u: base.u_of_t().to_string(),
            v: base.v_of_t().to_string(),
            t_lo,
            t_hi,
            flip_normal: base.surface().is_flipped(),
            samples: n,
            kinds: kinds.to_vec(),
            phi_star_override: phi_override,
        },
        columns: column_names(kinds),
        rows,
    })
}

/// Shortest text that reads back to the same `f64`, with an exponent for
/// very large or small magnitudes.
pub fn format_number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite numbers serialize")
}

fn pad(mut row: Vec<Option<f64>>, kinds: usize) -> Vec<Option<f64>> {
    row.resize(BASE_COLUMNS.len() + kinds * KIND_COLUMNS.len(), None);
    row
}

impl EvalTable {
    /// CSV with a header row, `,` delimiter and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.map(format_number).unwrap_or_default()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<EvalTable> {
        serde_json::from_str(text)
    }

    /// Reads the CSV form back into columns and rows; metadata is not part
    /// of the CSV, so the caller supplies it.
    pub fn from_csv(text: &str, metadata: TableMetadata) -> std::result::Result<EvalTable, String> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let columns: Vec<String> = r
            .headers()
            .map_err(|e| e.to_string())?
            .iter()
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| e.to_string())?;
            let row = rec
                .iter()
                .map(|cell| match cell {
                    "" => Ok(None),
                    x => x.parse::<f64>().map(Some).map_err(|e| format!("row {}: {e}", i + 1)),
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(EvalTable {
            metadata,
            columns,
            rows,
        })
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}
