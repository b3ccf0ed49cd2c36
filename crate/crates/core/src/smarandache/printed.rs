//! The printed closed forms for the starred invariants, evaluated exactly as
//! typeset. Vector results are coordinates in the base Darboux frame
//! `{T, g, n}`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::coefficients::{coefficients, FamilyRole};
use super::{radicand, rate, BaseInvariants, SmarandacheKind, RADICAND_THRESHOLD};
use crate::error::{Error, Result};
use crate::frame::{Classification, CurveClass, SurfaceCurve};
use crate::vec3::Vec3;

/// Normalizers and torsion denominators at or below this are degenerate.
pub const DEGENERATE_THRESHOLD: f64 = 1e-18;

/// Classification tolerance used to gate the special-case formulas.
pub const COROLLARY_TOL: f64 = 1e-6;

/// The angle `phi*` between the two frames of `beta` and its derivative with
/// respect to the arc length of `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormContext {
    pub phi_star: f64,
    pub dphi_star_ds_star: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quantity {
    Rate,
    Tangent,
    Curvature,
    PrincipalNormal,
    Binormal,
    Torsion,
    TangentNormal,
    SurfaceNormal,
    GeodesicCurvature,
    NormalCurvature,
    GeodesicTorsion,
    /// `tau_g*` with a single `-1/sqrt 2` prefactor instead of the printed
    /// doubled one; only meaningful for `Tg`.
    GeodesicTorsionSingle,
}

impl Quantity {
    pub const GENERAL: [Quantity; 11] = [
        Quantity::Rate,
        Quantity::Tangent,
        Quantity::Curvature,
        Quantity::PrincipalNormal,
        Quantity::Binormal,
        Quantity::Torsion,
        Quantity::TangentNormal,
        Quantity::SurfaceNormal,
        Quantity::GeodesicCurvature,
        Quantity::NormalCurvature,
        Quantity::GeodesicTorsion,
    ];

    pub const COROLLARY: [Quantity; 5] = [
        Quantity::Curvature,
        Quantity::Torsion,
        Quantity::GeodesicCurvature,
        Quantity::NormalCurvature,
        Quantity::GeodesicTorsion,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Quantity::Rate => "rate",
            Quantity::Tangent => "tangent",
            Quantity::Curvature => "kappa-star",
            Quantity::PrincipalNormal => "normal-star",
            Quantity::Binormal => "binormal-star",
            Quantity::Torsion => "torsion-star",
            Quantity::TangentNormal => "g-star",
            Quantity::SurfaceNormal => "n-star",
            Quantity::GeodesicCurvature => "kg-star",
            Quantity::NormalCurvature => "kn-star",
            Quantity::GeodesicTorsion | Quantity::GeodesicTorsionSingle => "taug-star",
        }
    }

    pub fn is_vector(self) -> bool {
        matches!(
            self,
            Quantity::Tangent
                | Quantity::PrincipalNormal
                | Quantity::Binormal
                | Quantity::TangentNormal
                | Quantity::SurfaceNormal
        )
    }

    /// Whether the formula reads `phi*` or its derivative.
    pub fn needs_phi(self) -> bool {
        matches!(
            self,
            Quantity::TangentNormal
                | Quantity::SurfaceNormal
                | Quantity::GeodesicCurvature
                | Quantity::NormalCurvature
                | Quantity::GeodesicTorsion
                | Quantity::GeodesicTorsionSingle
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormulaValue {
    Scalar(f64),
    Vector([f64; 3]),
}

impl FormulaValue {
    pub fn scalar(self) -> Option<f64> {
        match self {
            FormulaValue::Scalar(x) => Some(x),
            FormulaValue::Vector(_) => None,
        }
    }

    pub fn vector(self) -> Option<[f64; 3]> {
        match self {
            FormulaValue::Vector(v) => Some(v),
            FormulaValue::Scalar(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        match self {
            FormulaValue::Scalar(x) => x.is_finite(),
            FormulaValue::Vector(v) => v.iter().all(|x| x.is_finite()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormInvariants {
    pub tangent: [f64; 3],
    pub principal_normal: [f64; 3],
    pub binormal: [f64; 3],
    pub kappa_star: f64,
    pub tau_star: f64,
    pub g_star: [f64; 3],
    pub n_star: [f64; 3],
    pub k_g_star: f64,
    pub k_n_star: f64,
    pub tau_g_star: f64,
    /// Single-prefactor reading of `tau_g*` (`Tg` only).
    pub tau_g_star_single: Option<f64>,
}

impl ClosedFormInvariants {
    /// Ambient vector from base-frame coordinates.
    pub fn ambient(coords: [f64; 3], frame: [Vec3; 3]) -> Vec3 {
        Vec3::combine(coords, frame)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryInvariants {
    pub number: u8,
    pub kappa_star: f64,
    pub tau_star: f64,
    pub k_g_star: f64,
    pub k_n_star: f64,
    pub tau_g_star: f64,
}

fn checked_radicand(kind: SmarandacheKind, inv: &BaseInvariants) -> Result<f64> {
    let r = radicand(kind, inv);
    if !(r > RADICAND_THRESHOLD) {
        return Err(Error::NonRegularSmarandache { radicand: r });
    }
    Ok(r)
}

fn nonzero(value: f64) -> Result<f64> {
    if !(value.abs() > DEGENERATE_THRESHOLD) || !value.is_finite() {
        return Err(Error::DegenerateNormalizer { value });
    }
    Ok(value)
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn scale3(v: [f64; 3], k: f64) -> [f64; 3] {
    v.map(|x| x * k)
}

/// Printed tangent row, before the `-1/sqrt(radicand)` prefactor.
fn tangent_row(kind: SmarandacheKind, inv: &BaseInvariants) -> [f64; 3] {
    let BaseInvariants { kg, kn, tg, .. } = *inv;
    match kind {
        SmarandacheKind::Tg => [kg, -kg, -(kn + tg)],
        SmarandacheKind::Tn => [kn, tg - kg, -kn],
        SmarandacheKind::Gn => [kn + kg, tg, -tg],
        SmarandacheKind::Tgn => [kn + kg, tg - kg, -(tg + kn)],
    }
}

/// Normalizer under `N*`: the norm of the curvature family.
fn family_norm(kind: SmarandacheKind, inv: &BaseInvariants) -> f64 {
    norm3(&coefficients(kind, FamilyRole::Normal, inv))
}

/// The second factor under `B*`. For `Tgn` the printed binormal divides by
/// the norm of the `gn` curvature family rather than its own.
fn binormal_family_norm(kind: SmarandacheKind, inv: &BaseInvariants) -> f64 {
    match kind {
        SmarandacheKind::Tgn => family_norm(SmarandacheKind::Gn, inv),
        _ => family_norm(kind, inv),
    }
}

/// Printed torsion as `(prefactor, numerator, denominator)`.
fn torsion_parts(kind: SmarandacheKind, inv: &BaseInvariants) -> (f64, f64, f64) {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        ..
    } = *inv;
    let third = coefficients(kind, FamilyRole::Third, inv);
    match kind {
        SmarandacheKind::Tg => {
            let [e1, e2, e3] = third;
            let s = kn + tg;
            let varsigma = radicand(kind, inv);
            let num = (e1 + e2) * (kg * (kn1 + tg1) - kg1 * s) + varsigma * (tg * e1 - kn * e2 + kg * e3);
            let den = 2.0 * (kg1 * kg1 + kg.powi(4))
                + s * (s * (kn * kn + tg * tg) + 2.0 * kn * (kg1 + kg * kg) + 2.0 * tg * (kg1 - kg * kg))
                + (kn1 + tg1) * (kn1 + tg1 - 2.0 * kg * (kn - tg))
                + kg * kg * (kn - tg).powi(2);
            (-FRAC_1_SQRT_2, num, den)
        }
        SmarandacheKind::Tn => {
            let [w1, w2, w3] = third;
            let d = tg - kg;
            let num = (w1 + w3) * (kn * (tg1 - kg1) - kn1 * d + kn * kn * (tg + kg))
                + d * d * (tg * w1 + kg * w3)
                + kn * d * (kn * (w1 - w3) + w2 * (kg - tg))
                - 2.0 * kn * (kn1 + kn * kn) * w2;
            let den = 2.0 * (kn1 * kn1 + kn.powi(4))
                + d * (2.0 * (kn * kn - kn1) - 2.0 * (kn * kn - kn1) * kg)
                + d * d * (1.0 + kg * kg)
                + (tg - kg1) * ((tg1 - kg1) + 2.0 * (kn * kg + kn * tg))
                + kn * kn * (kg + tg).powi(2);
            (-FRAC_1_SQRT_2, num, den)
        }
        SmarandacheKind::Gn => {
            let [c1, c2, c3] = third;
            let a = kn + kg;
            let bracket = (kn1 + kg1) + tg * (kn - kg);
            let num = a * a * (((tg1 + tg).powi(2) + kg * a) * c3 - ((tg1 - tg).powi(2) - kn * a) * c2 + tg * a * c1)
                - tg * (c2 + c3) * bracket * bracket;
            let den = a * a * (kn * kn + kg * kg)
                + 2.0 * a * (kg * (tg1 + tg * tg) + 2.0 * kn * (tg * tg - tg1))
                + 2.0 * tg1 * tg1
                + 2.0 * tg.powi(4)
                + bracket * bracket;
            (-FRAC_1_SQRT_2, num, den)
        }
        SmarandacheKind::Tgn => {
            let [x1, x2, x3] = third;
            let a = kn + kg;
            let e = kg - tg;
            let c = kn + tg;
            let num = a * e * (tg * x2 - kn * x1) + e * e * (tg * x1 + kg * x3) + (kn1 + tg1) * (e * x1 + a * x2)
                - (kn1 + kg1) * ((kn1 + tg) * x1 + e * x3 - c * x2)
                + c * c * (tg * x1 - kn * x2)
                + c * a * (tg * x3 + kg * x1)
                + c * c * (kg * x3 - kn * x2)
                + e * c * (kn * x3 - kg * x2)
                + a * (tg1 - kg1);
            let den = e * e * (kg * kg + tg * tg)
                + 2.0 * (kn1 + kg1) * (kg * e + kn * c)
                + c * c * (kn * kn + tg * tg)
                + 2.0 * c * (tg * (tg1 - kg1) + kg * kg * c)
                + a * a * (kn * kn + tg * tg)
                + 2.0 * a * (kg * (tg1 - kg1) - kn * (tg1 + kg1))
                + kn * tg * (tg - kg)
                + (kn1 + kg1).powi(2)
                + (kn * kn + tg * tg)
                + (tg1 - kg1).powi(2)
                + (tg1 - kn1).powi(2)
                - 2.0 * tg * (tg - kg) * (tg1 + kn1);
            (-1.0 / 3f64.sqrt(), num, den)
        }
    }
}

fn printed_kappa(kind: SmarandacheKind, inv: &BaseInvariants) -> Result<f64> {
    let r = checked_radicand(kind, inv)?;
    let fam = coefficients(kind, FamilyRole::Normal, inv);
    let sum: f64 = fam.iter().map(|x| x * x).sum();
    Ok((2.0 * sum).sqrt() / (r * r))
}

fn printed_torsion(kind: SmarandacheKind, inv: &BaseInvariants) -> Result<f64> {
    let (pre, num, den) = torsion_parts(kind, inv);
    Ok(pre * num / nonzero(den)?)
}

/// Evaluates one printed formula.
pub fn evaluate(
    kind: SmarandacheKind,
    quantity: Quantity,
    inv: &BaseInvariants,
    ctx: &ClosedFormContext,
) -> Result<FormulaValue> {
    use FormulaValue::{Scalar, Vector};
    let (phi, dphi) = (ctx.phi_star, ctx.dphi_star_ds_star);
    Ok(match quantity {
        Quantity::Rate => Scalar(rate(kind, inv)?),
        Quantity::Tangent => {
            let r = checked_radicand(kind, inv)?;
            Vector(scale3(tangent_row(kind, inv), -1.0 / r.sqrt()))
        }
        Quantity::Curvature => Scalar(printed_kappa(kind, inv)?),
        Quantity::PrincipalNormal => {
            let fam = coefficients(kind, FamilyRole::Normal, inv);
            Vector(scale3(fam, 1.0 / nonzero(norm3(&fam))?))
        }
        Quantity::Binormal => {
            let r = checked_radicand(kind, inv)?;
            let fam = coefficients(kind, FamilyRole::Binormal, inv);
            let k = 1.0 / nonzero(r.sqrt() * binormal_family_norm(kind, inv))?;
            Vector(scale3(fam, k))
        }
        Quantity::Torsion => Scalar(printed_torsion(kind, inv)?),
        Quantity::TangentNormal | Quantity::SurfaceNormal => {
            let r = checked_radicand(kind, inv)?;
            let first = coefficients(kind, FamilyRole::Normal, inv);
            let second = coefficients(kind, FamilyRole::Binormal, inv);
            let root = r.sqrt();
            // Tgn prints 1/(sqrt(Phi) Lambda) with Phi the family norm and
            // Lambda the radicand; the others print 1/(sqrt(radicand) norm).
            let prefactor = match kind {
                SmarandacheKind::Tgn => 1.0 / nonzero(norm3(&first).sqrt() * r)?,
                _ => 1.0 / nonzero(root * norm3(&first))?,
            };
            let (c, s) = (phi.cos(), phi.sin());
            let out: [f64; 3] = std::array::from_fn(|i| {
                if quantity == Quantity::TangentNormal {
                    root * c * first[i] + s * second[i]
                } else {
                    second[i] * c - root * s * first[i]
                }
            });
            Vector(scale3(out, prefactor))
        }
        Quantity::GeodesicCurvature => Scalar(printed_kappa(kind, inv)? * phi.cos()),
        Quantity::NormalCurvature => Scalar(printed_kappa(kind, inv)? * phi.sin()),
        Quantity::GeodesicTorsion => {
            let (pre, num, den) = torsion_parts(kind, inv);
            let den = nonzero(den)?;
            let printed_prefactor = match kind {
                // The printed display repeats the -1/sqrt 2 factor.
                SmarandacheKind::Tg => pre * (-FRAC_1_SQRT_2),
                _ => pre,
            };
            Scalar(printed_prefactor * num / den + dphi)
        }
        Quantity::GeodesicTorsionSingle => Scalar(printed_torsion(kind, inv)? + dphi),
    })
}

/// Evaluates every printed formula; the first failure aborts.
pub fn closed_form(
    kind: SmarandacheKind,
    inv: &BaseInvariants,
    ctx: &ClosedFormContext,
) -> Result<ClosedFormInvariants> {
    let v = |q| -> Result<[f64; 3]> { Ok(evaluate(kind, q, inv, ctx)?.vector().expect("vector formula")) };
    let s = |q| -> Result<f64> { Ok(evaluate(kind, q, inv, ctx)?.scalar().expect("scalar formula")) };
    Ok(ClosedFormInvariants {
        tangent: v(Quantity::Tangent)?,
        principal_normal: v(Quantity::PrincipalNormal)?,
        binormal: v(Quantity::Binormal)?,
        kappa_star: s(Quantity::Curvature)?,
        tau_star: s(Quantity::Torsion)?,
        g_star: v(Quantity::TangentNormal)?,
        n_star: v(Quantity::SurfaceNormal)?,
        k_g_star: s(Quantity::GeodesicCurvature)?,
        k_n_star: s(Quantity::NormalCurvature)?,
        tau_g_star: s(Quantity::GeodesicTorsion)?,
        tau_g_star_single: match kind {
            SmarandacheKind::Tg => Some(s(Quantity::GeodesicTorsionSingle)?),
            _ => None,
        },
    })
}

/// Which special case applies to a kind: its number and required class.
pub fn corollary_number(kind: SmarandacheKind) -> Option<(u8, CurveClass)> {
    match kind {
        SmarandacheKind::Tg => Some((1, CurveClass::Geodesic)),
        SmarandacheKind::Tn => Some((2, CurveClass::AsymptoticLine)),
        SmarandacheKind::Gn => Some((3, CurveClass::PrincipalLine)),
        SmarandacheKind::Tgn => None,
    }
}

fn corollary_kappa_torsion(kind: SmarandacheKind, inv: &BaseInvariants) -> Result<(Result<f64>, Result<f64>)> {
    let BaseInvariants {
        kg,
        kn,
        tg,
        kg1,
        kn1,
        tg1,
        ..
    } = *inv;
    let pre = -FRAC_1_SQRT_2;
    match kind {
        SmarandacheKind::Tg => {
            let s = kn + tg;
            let kappa = nonzero(s).map(|d| (2.0 * (kn * kn + tg * tg)).sqrt() / d);
            let num = s * s + s * (kn1 * tg - kn * tg1);
            let den = s.powi(3) * (kn * kn + tg * tg) + (kn1 + tg1).powi(2);
            Ok((kappa, nonzero(den).map(|d| pre * num / d)))
        }
        SmarandacheKind::Tn => {
            let d = tg - kg;
            let kappa = nonzero(d * d).map(|q| (2.0 * (kg * kg + tg * tg)).sqrt() / q);
            let num = (kg - tg) * (kg1 * tg - kg * tg1);
            let den = nonzero(d).and_then(|d| nonzero((1.0 + kg * kg) * (tg - kg1) * (tg1 - kg1) * d.powi(-2)));
            Ok((kappa, den.map(|q| pre * num / q)))
        }
        SmarandacheKind::Gn => {
            let s = kn + tg;
            let a = kn + kg;
            let kappa = nonzero(s).map(|d| (2.0 * (kn * kn + tg * tg)).sqrt() / d);
            let num = s * s + (kg * kn1 - kn * kg1);
            let den = nonzero(a).and_then(|a| nonzero((kn * kn + kg * kg) + (kn1 + tg1).powi(2) * a.powi(-2)));
            Ok((kappa, den.map(|q| pre * num / q)))
        }
        SmarandacheKind::Tgn => Err(Error::InvalidArgument(
            "no special-case formulas are stated for Tgn".into(),
        )),
    }
}

/// One special-case formula, without the classification gate.
pub fn evaluate_corollary(
    kind: SmarandacheKind,
    quantity: Quantity,
    inv: &BaseInvariants,
    ctx: &ClosedFormContext,
) -> Result<f64> {
    let (kappa, tau) = corollary_kappa_torsion(kind, inv)?;
    match quantity {
        Quantity::Curvature => kappa,
        Quantity::Torsion => tau,
        Quantity::GeodesicCurvature => Ok(kappa? * ctx.phi_star.cos()),
        Quantity::NormalCurvature => Ok(kappa? * ctx.phi_star.sin()),
        Quantity::GeodesicTorsion => Ok(tau? + ctx.dphi_star_ds_star),
        other => Err(Error::InvalidArgument(format!(
            "no special-case formula for {}",
            other.slug()
        ))),
    }
}

/// Checks a classification against the class a corollary requires.
pub fn corollary_gate(kind: SmarandacheKind, classification: &Classification) -> Result<u8> {
    let (number, class) = corollary_number(kind)
        .ok_or_else(|| Error::InvalidArgument("no special-case formulas are stated for Tgn".into()))?;
    if !classification.contains(class) {
        return Err(Error::ClassificationMismatch { expected: class.name() });
    }
    Ok(number)
}

/// The special-case formulas for `kind` at arc length `s`, gated on the
/// base curve carrying the required classification at tolerance 1e-6.
pub fn corollary(
    kind: SmarandacheKind,
    base: &SurfaceCurve,
    s: f64,
    ctx: &ClosedFormContext,
) -> Result<CorollaryInvariants> {
    let number = corollary_gate(kind, &base.classify(COROLLARY_TOL)?)?;
    let inv: BaseInvariants = base.invariant_derivatives(s)?.into();
    let q = |q| evaluate_corollary(kind, q, &inv, ctx);
    Ok(CorollaryInvariants {
        number,
        kappa_star: q(Quantity::Curvature)?,
        tau_star: q(Quantity::Torsion)?,
        k_g_star: q(Quantity::GeodesicCurvature)?,
        k_n_star: q(Quantity::NormalCurvature)?,
        tau_g_star: q(Quantity::GeodesicTorsion)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_curve;
    use std::f64::consts::SQRT_2;

    const EQUATOR: BaseInvariants = BaseInvariants {
        kg: 0.0,
        kn: -1.0,
        tg: 0.0,
        kg1: 0.0,
        kn1: 0.0,
        tg1: 0.0,
        kg2: 0.0,
        kn2: 0.0,
        tg2: 0.0,
    };

    fn ctx() -> ClosedFormContext {
        ClosedFormContext {
            phi_star: 0.3,
            dphi_star_ds_star: 0.0,
        }
    }

    #[test]
    fn tg_on_equator_curvature() {
        let k = evaluate(SmarandacheKind::Tg, Quantity::Curvature, &EQUATOR, &ctx()).unwrap();
        assert!((k.scalar().unwrap() - SQRT_2).abs() < 1e-14);
        let c = evaluate_corollary(SmarandacheKind::Tg, Quantity::Curvature, &EQUATOR, &ctx()).unwrap();
        assert!((c + SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn printed_tangent_is_unit() {
        let inv = BaseInvariants::constant(0.4, -0.9, 0.25);
        for kind in SmarandacheKind::ALL {
            let t = evaluate(kind, Quantity::Tangent, &inv, &ctx())
                .unwrap()
                .vector()
                .unwrap();
            assert!((norm3(&t) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ruling_tangent_is_non_regular() {
        let zero = BaseInvariants::default();
        assert!(matches!(
            evaluate(SmarandacheKind::Tn, Quantity::Tangent, &zero, &ctx()),
            Err(Error::NonRegularSmarandache { .. })
        ));
    }

    #[test]
    fn doubled_prefactor_variant() {
        let inv = BaseInvariants {
            kg: 0.3,
            kn: 0.8,
            tg: -0.1,
            kg1: 0.05,
            ..Default::default()
        };
        let c = ctx();
        let tau = evaluate(SmarandacheKind::Tg, Quantity::Torsion, &inv, &c)
            .unwrap()
            .scalar()
            .unwrap();
        let single = evaluate(SmarandacheKind::Tg, Quantity::GeodesicTorsionSingle, &inv, &c)
            .unwrap()
            .scalar()
            .unwrap();
        let doubled = evaluate(SmarandacheKind::Tg, Quantity::GeodesicTorsion, &inv, &c)
            .unwrap()
            .scalar()
            .unwrap();
        assert!((single - tau).abs() < 1e-15);
        assert!((doubled - tau * (-FRAC_1_SQRT_2)).abs() < 1e-15);
    }

    #[test]
    fn closed_form_on_equator() {
        let cf = closed_form(SmarandacheKind::Tg, &EQUATOR, &ctx()).unwrap();
        assert!((cf.kappa_star - SQRT_2).abs() < 1e-14);
        assert!(cf.tau_g_star_single.is_some());
        assert!(closed_form(SmarandacheKind::Tg, &BaseInvariants::default(), &ctx()).is_err());
    }

    #[test]
    fn corollary_gating() {
        let equator = preset_curve("equator").unwrap();
        let c = corollary(SmarandacheKind::Tg, &equator, 1.0, &ctx()).unwrap();
        assert_eq!(c.number, 1);
        assert!((c.kappa_star + SQRT_2).abs() < 1e-10);
        assert!(matches!(
            corollary(SmarandacheKind::Tn, &equator, 1.0, &ctx()),
            Err(Error::ClassificationMismatch { .. })
        ));
        assert!(corollary(SmarandacheKind::Tgn, &equator, 1.0, &ctx()).is_err());
    }
}
