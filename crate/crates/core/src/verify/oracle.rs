//! Invariants of `beta` computed only from its derivatives.
//!
//! Frenet data uses the textbook space-curve formulas. The Darboux data uses
//! the unit sphere that carries every Smarandache curve: `n* = beta` and
//! `g* = n* x T*`. Derivatives are exact (jets) except `dphi*/ds*`, which is
//! a five-point stencil in the base parameter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::FrameJets;
use crate::numeric::{five_point_angle_derivative, Jet, Jet3};
use crate::smarandache::{beta_jet, radicand, SmarandacheCurve, SmarandacheKind};
use crate::vec3::Vec3;

/// `|beta'|` at or below this makes `beta` non-regular.
pub const MIN_BETA_SPEED: f64 = 1e-9;
/// `|beta' x beta''|` at or below this leaves the Frenet frame undefined.
pub const MIN_BETA_CROSS: f64 = 1e-12;
/// Stencil step for `dphi*/dt`, relative to the parameter range.
pub const PHI_STEP_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleFrenet {
    /// `ds*/ds = |d beta / ds|`.
    pub rate: f64,
    pub tangent: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub principal_normal: Vec3,
    pub binormal: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleDarboux {
    pub g_star: Vec3,
    pub n_star: Vec3,
    pub k_g: f64,
    pub k_n: f64,
    pub tau_g: f64,
    /// `atan2(<g*, B*>, <g*, N*>)`; absent where the Frenet frame is.
    pub phi_star: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleInvariants {
    pub s: f64,
    pub t: f64,
    pub beta: Vec3,
    pub rate: f64,
    pub tangent: Vec3,
    pub kappa: f64,
    pub tau: Option<f64>,
    pub principal_normal: Option<Vec3>,
    pub binormal: Option<Vec3>,
    pub g_star: Vec3,
    pub n_star: Vec3,
    pub k_g: f64,
    pub k_n: f64,
    pub tau_g: f64,
    pub phi_star: Option<f64>,
    pub dphi_star_ds_star: Option<f64>,
}

/// Jets of the starred frames at one base parameter.
struct StarJets {
    beta: Jet3,
    /// `|d beta / ds|` as a jet in `t`.
    rate: Jet,
    tangent: Jet3,
    g_star: Jet3,
    frenet: Option<(Jet3, Jet3)>,
    frame: FrameJets,
}

impl StarJets {
    fn build(kind: SmarandacheKind, frame: FrameJets) -> Result<StarJets> {
        let beta = beta_jet(kind, &frame);
        let b1 = frame.d_ds3(&beta);
        let b2 = frame.d_ds3(&b1);
        let rate = b1.norm();
        if !(rate.value() > MIN_BETA_SPEED) {
            let inv = crate::frame::invariant_derivatives_from(&frame).into();
            return Err(Error::NonRegularSmarandache {
                radicand: radicand(kind, &inv),
            });
        }
        let tangent = b1.div_scalar(&rate);
        let cross = b1.cross(&b2);
        let frenet = if cross.value().norm() > MIN_BETA_CROSS {
            let binormal = cross.normalized();
            Some((binormal.cross(&tangent), binormal))
        } else {
            None
        };
        Ok(StarJets {
            g_star: beta.cross(&tangent),
            beta,
            rate,
            tangent,
            frenet,
            frame,
        })
    }

    /// Derivative with respect to the arc length of `beta`.
    fn d_star(&self, f: &Jet3) -> Jet3 {
        self.frame.d_ds3(f).div_scalar(&self.rate)
    }

    fn phi(&self) -> Option<f64> {
        let (n, b) = self.frenet.as_ref()?;
        let g = self.g_star.value();
        Some(g.dot(b.value()).atan2(g.dot(n.value())))
    }

    fn frenet(&self) -> Result<OracleFrenet> {
        let derivs = {
            let b1 = self.frame.d_ds3(&self.beta);
            let b2 = self.frame.d_ds3(&b1);
            let b3 = self.frame.d_ds3(&b2);
            [b1.value(), b2.value(), b3.value()]
        };
        let [b1, b2, b3] = derivs;
        let cross = b1.cross(b2);
        let c = cross.norm();
        let speed = b1.norm();
        if !(c > MIN_BETA_CROSS) {
            return Err(Error::VanishingCurvature {
                kappa: c / speed.powi(3),
            });
        }
        let binormal = cross / c;
        let tangent = b1 / speed;
        Ok(OracleFrenet {
            rate: speed,
            tangent,
            kappa: c / speed.powi(3),
            tau: cross.dot(b3) / (c * c),
            principal_normal: binormal.cross(tangent),
            binormal,
        })
    }

    fn darboux(&self) -> OracleDarboux {
        let t_prime = self.d_star(&self.tangent).value();
        let g_prime = self.d_star(&self.g_star).value();
        let n = self.beta.value();
        let g = self.g_star.value();
        OracleDarboux {
            g_star: g,
            n_star: n,
            k_g: t_prime.dot(g),
            k_n: t_prime.dot(n),
            tau_g: g_prime.dot(n),
            phi_star: self.phi(),
        }
    }
}

fn star_jets(curve: &SmarandacheCurve<'_>, t: f64) -> Result<StarJets> {
    StarJets::build(curve.kind, curve.base.frame_jets_at_parameter(t)?)
}

/// `phi*` at base parameter `t`, principal branch.
pub fn phi_star_at_parameter(curve: &SmarandacheCurve<'_>, t: f64) -> Result<f64> {
    let j = star_jets(curve, t)?;
    j.phi().ok_or(Error::VanishingCurvature { kappa: 0.0 })
}

/// `dphi*/ds*` at base parameter `t` from a five-point stencil in `t`,
/// divided by `ds/dt * ds*/ds`.
pub fn dphi_star_ds_star_at_parameter(curve: &SmarandacheCurve<'_>, t: f64) -> Result<f64> {
    let (lo, hi) = curve.base.t_range();
    let h = PHI_STEP_FRACTION * (hi - lo);
    let dphi_dt = five_point_angle_derivative(&mut |x| phi_star_at_parameter(curve, x), t, h, lo, hi)?;
    let j = star_jets(curve, t)?;
    Ok(dphi_dt / (j.frame.speed.value() * j.rate.value()))
}

/// `dphi*/ds*` from the exact jet derivative of `phi*`. Used to cross-check
/// the stencil.
pub fn dphi_star_ds_star_exact(curve: &SmarandacheCurve<'_>, s: f64) -> Result<f64> {
    let j = star_jets(curve, curve.base.parameter_at(s)?)?;
    let (n, b) = j.frenet.as_ref().ok_or(Error::VanishingCurvature { kappa: 0.0 })?;
    let x = j.g_star.dot(n);
    let y = j.g_star.dot(b);
    let (x0, y0) = (x.value(), y.value());
    let x1 = j.frame.d_ds(&x).div(&j.rate).value();
    let y1 = j.frame.d_ds(&y).div(&j.rate).value();
    Ok((x0 * y1 - y0 * x1) / (x0 * x0 + y0 * y0))
}

/// Frenet data of `beta` at base arc length `s`.
pub fn oracle_frenet(curve: &SmarandacheCurve<'_>, s: f64) -> Result<OracleFrenet> {
    star_jets(curve, curve.base.parameter_at(s)?)?.frenet()
}

/// Carrier-sphere Darboux data of `beta` at base arc length `s`.
pub fn oracle_sphere_darboux(curve: &SmarandacheCurve<'_>, s: f64) -> Result<OracleDarboux> {
    Ok(star_jets(curve, curve.base.parameter_at(s)?)?.darboux())
}

/// Everything the oracle knows at base parameter `t`. Frenet-dependent
/// parts are `None` where the Frenet frame of `beta` is undefined.
pub fn oracle_at_parameter(curve: &SmarandacheCurve<'_>, t: f64) -> Result<OracleInvariants> {
    let j = star_jets(curve, t)?;
    let s = curve.base.arc_length_at(t)?;
    let darboux = j.darboux();
    let frenet = j.frenet().ok();
    let dphi = match darboux.phi_star {
        Some(_) => dphi_star_ds_star_at_parameter(curve, t).ok(),
        None => None,
    };
    Ok(OracleInvariants {
        s,
        t,
        beta: j.beta.value(),
        rate: j.rate.value(),
        tangent: j.tangent.value(),
        kappa: frenet.map_or_else(
            || {
                let b1 = j.frame.d_ds3(&j.beta);
                let b2 = j.frame.d_ds3(&b1);
                b1.value().cross(b2.value()).norm() / j.rate.value().powi(3)
            },
            |f| f.kappa,
        ),
        tau: frenet.map(|f| f.tau),
        principal_normal: frenet.map(|f| f.principal_normal),
        binormal: frenet.map(|f| f.binormal),
        g_star: darboux.g_star,
        n_star: darboux.n_star,
        k_g: darboux.k_g,
        k_n: darboux.k_n,
        tau_g: darboux.tau_g,
        phi_star: darboux.phi_star,
        dphi_star_ds_star: dphi,
    })
}

pub fn oracle(curve: &SmarandacheCurve<'_>, s: f64) -> Result<OracleInvariants> {
    let mut o = oracle_at_parameter(curve, curve.base.parameter_at(s)?)?;
    o.s = s;
    Ok(o)
}

/// Largest row error of `T*' = kappa N*`, `N*' = -kappa T* + tau B*`,
/// `B*' = -tau N*` in the arc length of `beta`.
pub fn frenet_residual(curve: &SmarandacheCurve<'_>, s: f64) -> Result<f64> {
    let j = star_jets(curve, curve.base.parameter_at(s)?)?;
    let f = j.frenet()?;
    let (n, b) = j.frenet.expect("frenet() succeeded");
    let t_p = j.d_star(&j.tangent).value();
    let n_p = j.d_star(&n).value();
    let b_p = j.d_star(&b).value();
    let rows = [
        t_p - f.principal_normal * f.kappa,
        n_p - (f.tangent * (-f.kappa) + f.binormal * f.tau),
        b_p + f.principal_normal * f.tau,
    ];
    Ok(rows.iter().map(|r| r.norm()).fold(0.0, f64::max))
}

/// Largest row error of the starred Darboux system on the carrier sphere.
pub fn darboux_residual(curve: &SmarandacheCurve<'_>, s: f64) -> Result<f64> {
    let j = star_jets(curve, curve.base.parameter_at(s)?)?;
    let d = j.darboux();
    let t = j.tangent.value();
    let (g, n) = (d.g_star, d.n_star);
    let t_p = j.d_star(&j.tangent).value();
    let g_p = j.d_star(&j.g_star).value();
    let n_p = j.d_star(&j.beta).value();
    let rows = [
        t_p - (g * d.k_g + n * d.k_n),
        g_p - (t * (-d.k_g) + n * d.tau_g),
        n_p - (t * (-d.k_n) - g * d.tau_g),
    ];
    Ok(rows.iter().map(|r| r.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_curve;
    use crate::smarandache::construct;

    #[test]
    fn tg_on_equator_is_a_planar_circle() {
        let base = preset_curve("equator").unwrap();
        let c = construct(SmarandacheKind::Tg, &base).unwrap();
        for s in [0.5, 2.0, 4.0] {
            let f = oracle_frenet(&c, s).unwrap();
            assert!((f.kappa - 2f64.sqrt()).abs() < 1e-9);
            assert!(f.tau.abs() < 1e-9);
            let d = oracle_sphere_darboux(&c, s).unwrap();
            assert!((d.k_g.abs() - 1.0).abs() < 1e-9);
            assert!((d.k_n + 1.0).abs() < 1e-9);
            assert!(d.tau_g.abs() < 1e-9);
        }
    }

    #[test]
    fn tgn_on_equator_curvature() {
        let base = preset_curve("equator").unwrap();
        let c = construct(SmarandacheKind::Tgn, &base).unwrap();
        let f = oracle_frenet(&c, 1.3).unwrap();
        assert!((f.kappa - 1.5f64.sqrt()).abs() < 1e-9);
        assert!(f.tau.abs() < 1e-9);
    }

    #[test]
    fn degenerate_base_is_non_regular() {
        let base = preset_curve("ruling").unwrap();
        for kind in SmarandacheKind::ALL {
            let c = construct(kind, &base).unwrap();
            assert!(matches!(
                oracle_frenet(&c, 1.0),
                Err(Error::NonRegularSmarandache { .. })
            ));
        }
    }

    #[test]
    fn residuals_and_stencil_on_helix() {
        let base = preset_curve("helix").unwrap();
        for kind in [SmarandacheKind::Tn, SmarandacheKind::Gn, SmarandacheKind::Tgn] {
            let c = construct(kind, &base).unwrap();
            for s in [1.0, 3.0, 6.0] {
                assert!(frenet_residual(&c, s).unwrap() < 1e-7);
                assert!(darboux_residual(&c, s).unwrap() < 1e-7);
                let o = oracle(&c, s).unwrap();
                let exact = dphi_star_ds_star_exact(&c, s).unwrap();
                assert!((o.dphi_star_ds_star.unwrap() - exact).abs() < 1e-6);
                let tau = o.tau.unwrap();
                assert!((o.tau_g - (tau + exact)).abs() < 1e-8);
            }
        }
    }
}
