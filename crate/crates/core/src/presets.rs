//! Named test geometries with hand-checkable invariants.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::frame::SurfaceCurve;
use crate::surface::Surface;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// Builtin surface name and parameters.
    pub surface: &'static str,
    pub surface_params: &'static [f64],
    pub u: &'static str,
    pub v: &'static str,
    pub t_lo: f64,
    pub t_hi: f64,
}

pub const PRESETS: [Preset; 5] = [
    Preset {
        name: "equator",
        description: "equator of the unit sphere; geodesic and principal, k_n = -1",
        surface: "sphere",
        surface_params: &[],
        u: "pi/2",
        v: "t",
        t_lo: 0.0,
        t_hi: TAU,
    },
    Preset {
        name: "latitude",
        description: "circle of colatitude pi/4 on the unit sphere; k_g = 1, k_n = -1",
        surface: "sphere",
        surface_params: &[],
        u: "pi/4",
        v: "t",
        t_lo: 0.0,
        t_hi: TAU,
    },
    Preset {
        name: "helix",
        description: "helix (cos t, sin t, t) on the unit cylinder; k_n = -1/2, tau_g = 1/2",
        surface: "cylinder",
        surface_params: &[1.0],
        u: "t",
        v: "t",
        t_lo: 0.0,
        t_hi: TAU,
    },
    Preset {
        name: "ruling",
        description: "straight ruling of the unit cylinder; all invariants vanish",
        surface: "cylinder",
        surface_params: &[1.0],
        u: "0",
        v: "t",
        t_lo: 0.0,
        t_hi: TAU,
    },
    Preset {
        name: "circle",
        description: "unit circle in the plane z = 0; asymptotic and principal, k_g = 1",
        surface: "plane",
        surface_params: &[],
        u: "cos(t)",
        v: "sin(t)",
        t_lo: 0.0,
        t_hi: TAU,
    },
];

impl Preset {
    pub fn find(name: &str) -> Result<&'static Preset> {
        PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
            let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
            Error::InvalidArgument(format!(
                "unknown preset '{name}' (expected one of {})",
                names.join(", ")
            ))
        })
    }

    pub fn surface(&self, flip_normal: bool) -> Surface {
        Surface::builtin(self.surface, self.surface_params)
            .expect("preset surfaces are valid")
            .with_flip(flip_normal)
    }

    pub fn build(&self, flip_normal: bool) -> Result<SurfaceCurve> {
        SurfaceCurve::from_strings(self.surface(flip_normal), self.u, self.v, self.t_lo, self.t_hi)
    }
}

/// Builds a preset curve by name with the default orientation.
pub fn preset_curve(name: &str) -> Result<SurfaceCurve> {
    Preset::find(name)?.build(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build() {
        for p in &PRESETS {
            let c = p.build(false).unwrap();
            assert!(c.total_length() > 0.0, "{}", p.name);
        }
        assert!(Preset::find("spiral").is_err());
    }
}
