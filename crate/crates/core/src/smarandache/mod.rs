//! The four Darboux-frame Smarandache curves `Tg`, `Tn`, `gn`, `Tgn` and
//! their printed closed-form invariants.

mod coefficients;
mod printed;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{invariant_derivatives_from, FrameJets, InvariantDerivatives, SurfaceCurve};
use crate::numeric::Jet3;
use crate::vec3::Vec3;

pub use coefficients::{coefficients, Family, FamilyRole};
pub use printed::{
    closed_form, corollary, corollary_gate, corollary_number, evaluate, evaluate_corollary, ClosedFormContext,
    ClosedFormInvariants, CorollaryInvariants, FormulaValue, Quantity, COROLLARY_TOL, DEGENERATE_THRESHOLD,
};

/// Radicands at or below this make the Smarandache curve non-regular.
pub const RADICAND_THRESHOLD: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SmarandacheKind {
    Tg,
    Tn,
    #[serde(rename = "gn")]
    Gn,
    Tgn,
}

impl SmarandacheKind {
    pub const ALL: [SmarandacheKind; 4] = [
        SmarandacheKind::Tg,
        SmarandacheKind::Tn,
        SmarandacheKind::Gn,
        SmarandacheKind::Tgn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SmarandacheKind::Tg => "Tg",
            SmarandacheKind::Tn => "Tn",
            SmarandacheKind::Gn => "gn",
            SmarandacheKind::Tgn => "Tgn",
        }
    }

    /// Which of `T, g, n` enter the combination.
    pub fn members(self) -> [bool; 3] {
        match self {
            SmarandacheKind::Tg => [true, true, false],
            SmarandacheKind::Tn => [true, false, true],
            SmarandacheKind::Gn => [false, true, true],
            SmarandacheKind::Tgn => [true, true, true],
        }
    }

    /// Number of frame vectors summed: 2, or 3 for `Tgn`.
    pub fn arity(self) -> usize {
        self.members().iter().filter(|m| **m).count()
    }

    /// Coordinates of `beta` in the Darboux frame `{T, g, n}`.
    pub fn weights(self) -> [f64; 3] {
        let w = 1.0 / (self.arity() as f64).sqrt();
        self.members().map(|m| if m { w } else { 0.0 })
    }
}

impl fmt::Display for SmarandacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SmarandacheKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SmarandacheKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("unknown Smarandache kind '{s}' (expected Tg, Tn, gn or Tgn)"))
            })
    }
}

/// Base-curve invariants and their first two arc-length derivatives, the
/// inputs of every printed formula.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BaseInvariants {
    pub kg: f64,
    pub kn: f64,
    pub tg: f64,
    pub kg1: f64,
    pub kn1: f64,
    pub tg1: f64,
    pub kg2: f64,
    pub kn2: f64,
    pub tg2: f64,
}

impl BaseInvariants {
    /// Invariants with all derivatives zero.
    pub fn constant(kg: f64, kn: f64, tg: f64) -> BaseInvariants {
        BaseInvariants {
            kg,
            kn,
            tg,
            ..Default::default()
        }
    }
}

impl From<InvariantDerivatives> for BaseInvariants {
    fn from(d: InvariantDerivatives) -> Self {
        BaseInvariants {
            kg: d.k_g[0],
            kn: d.k_n[0],
            tg: d.tau_g[0],
            kg1: d.k_g[1],
            kn1: d.k_n[1],
            tg1: d.tau_g[1],
            kg2: d.k_g[2],
            kn2: d.k_n[2],
            tg2: d.tau_g[2],
        }
    }
}

/// The radicand under the printed `ds*/ds`, times the arity:
/// `2k_g^2 + (k_n + tau_g)^2` for `Tg` and its analogues.
pub fn radicand(kind: SmarandacheKind, inv: &BaseInvariants) -> f64 {
    let BaseInvariants { kg, kn, tg, .. } = *inv;
    match kind {
        SmarandacheKind::Tg => 2.0 * kg * kg + (kn + tg).powi(2),
        SmarandacheKind::Tn => 2.0 * kn * kn + (tg - kg).powi(2),
        SmarandacheKind::Gn => 2.0 * tg * tg + (kn + kg).powi(2),
        SmarandacheKind::Tgn => (kn + kg).powi(2) + (tg - kg).powi(2) + (tg + kn).powi(2),
    }
}

/// The printed `ds*/ds` radical, evaluated unconditionally.
pub fn rate_radical(kind: SmarandacheKind, inv: &BaseInvariants) -> f64 {
    (radicand(kind, inv) / kind.arity() as f64).sqrt()
}

/// `ds*/ds`; fails where the curve stops being regular.
pub fn rate(kind: SmarandacheKind, inv: &BaseInvariants) -> Result<f64> {
    let r = radicand(kind, inv);
    if !(r > RADICAND_THRESHOLD) {
        return Err(Error::NonRegularSmarandache { radicand: r });
    }
    Ok((r / kind.arity() as f64).sqrt())
}

/// A Smarandache curve over a base curve on a surface.
#[derive(Debug, Clone, Copy)]
pub struct SmarandacheCurve<'a> {
    pub kind: SmarandacheKind,
    pub base: &'a SurfaceCurve,
}

/// `beta` and the base frame at one point, as jets in the base parameter.
#[derive(Debug, Clone, Copy)]
pub struct BetaJets {
    pub frame: FrameJets,
    pub beta: Jet3,
}

impl BetaJets {
    /// Ambient `beta, beta', beta'', beta'''` with respect to base arc length.
    pub fn derivatives(&self) -> [Vec3; 4] {
        let b1 = self.frame.d_ds3(&self.beta);
        let b2 = self.frame.d_ds3(&b1);
        let b3 = self.frame.d_ds3(&b2);
        [self.beta.value(), b1.value(), b2.value(), b3.value()]
    }

    pub fn invariants(&self) -> BaseInvariants {
        invariant_derivatives_from(&self.frame).into()
    }
}

/// Combination of the Darboux frame with the kind's weights, as jets.
pub fn beta_jet(kind: SmarandacheKind, frame: &FrameJets) -> Jet3 {
    let [a, b, c] = kind.weights();
    frame.tangent.scale(a) + frame.tangent_normal.scale(b) + frame.normal.scale(c)
}

/// Builds the curve. Fails only if the base is unusable at its start.
pub fn construct(kind: SmarandacheKind, base: &SurfaceCurve) -> Result<SmarandacheCurve<'_>> {
    base.frame_jets(0.0)?;
    Ok(SmarandacheCurve { kind, base })
}

impl<'a> SmarandacheCurve<'a> {
    pub fn jets_at_parameter(&self, t: f64) -> Result<BetaJets> {
        let frame = self.base.frame_jets_at_parameter(t)?;
        Ok(BetaJets {
            beta: beta_jet(self.kind, &frame),
            frame,
        })
    }

    pub fn jets(&self, s: f64) -> Result<BetaJets> {
        self.jets_at_parameter(self.base.parameter_at(s)?)
    }

    /// Position of `beta` at base arc length `s`.
    pub fn beta(&self, s: f64) -> Result<Vec3> {
        Ok(self.jets(s)?.beta.value())
    }

    /// `|d beta / ds|` from exact frame derivatives.
    pub fn speed(&self, s: f64) -> Result<f64> {
        Ok(self.jets(s)?.derivatives()[1].norm())
    }

    /// Printed `ds*/ds` at `s`.
    pub fn rate(&self, s: f64) -> Result<f64> {
        rate(self.kind, &self.base.invariant_derivatives(s)?.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_curve;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    #[test]
    fn names_round_trip() {
        for k in SmarandacheKind::ALL {
            assert_eq!(k.name().parse::<SmarandacheKind>().unwrap(), k);
        }
        assert_eq!("GN".parse::<SmarandacheKind>().unwrap(), SmarandacheKind::Gn);
        assert!("NB".parse::<SmarandacheKind>().is_err());
        assert_eq!(serde_json::to_string(&SmarandacheKind::Gn).unwrap(), "\"gn\"");
    }

    #[test]
    fn tg_on_equator_is_a_small_circle() {
        let base = preset_curve("equator").unwrap();
        let c = construct(SmarandacheKind::Tg, &base).unwrap();
        for s in [0.0, 0.7, 2.5, 5.0] {
            let b = c.beta(s).unwrap();
            let expected = Vec3::new(-s.sin(), s.cos(), 1.0) * FRAC_1_SQRT_2;
            assert!((b - expected).max_abs() < 1e-12);
            assert!((c.rate(s).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
            assert!((c.speed(s).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn tgn_on_equator() {
        let base = preset_curve("equator").unwrap();
        let c = construct(SmarandacheKind::Tgn, &base).unwrap();
        let s: f64 = 1.1;
        let expected = Vec3::new(s.cos() - s.sin(), s.cos() + s.sin(), 1.0) / 3f64.sqrt();
        assert!((c.beta(s).unwrap() - expected).max_abs() < 1e-12);
    }

    #[test]
    fn rates_and_degenerate_radicand() {
        let eq = BaseInvariants::constant(0.0, -1.0, 0.0);
        assert!((rate(SmarandacheKind::Gn, &eq).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((rate(SmarandacheKind::Tg, &eq).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(
            rate(SmarandacheKind::Tgn, &BaseInvariants::default()),
            Err(Error::NonRegularSmarandache { .. })
        ));
        let _ = SQRT_2;
    }
}
