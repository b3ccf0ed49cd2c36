//! Oriented parametric surfaces `r(u, v)` with symbolic partial derivatives.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse, Expr};
use crate::vec3::Vec3;

/// Below this, `|r_u x r_v|` marks a degenerate parameterization.
pub const REGULARITY_THRESHOLD: f64 = 1e-10;

/// Names of the builtin catalog, in listing order.
pub const BUILTIN_SURFACES: [&str; 4] = ["plane", "sphere", "cylinder", "torus"];

/// A closed, open, or half-open real interval; infinite ends are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn real_line() -> Interval {
        Interval::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Parametric surface. Orientation follows the parameter order: the normal
/// is `r_u x r_v` unless the surface was flipped.
#[derive(Debug, Clone)]
pub struct Surface {
    name: String,
    coords: [Expr; 3],
    u_domain: Interval,
    v_domain: Interval,
    r_u: [Expr; 3],
    r_v: [Expr; 3],
    raw_normal: [Expr; 3],
    flipped: bool,
}

fn cross_exprs(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    let term = |i: usize, j: usize| Expr::mul(a[i].clone(), b[j].clone());
    [
        Expr::sub(term(1, 2), term(2, 1)),
        Expr::sub(term(2, 0), term(0, 2)),
        Expr::sub(term(0, 1), term(1, 0)),
    ]
}

fn eval3(exprs: &[Expr; 3], u: f64, v: f64) -> Result<Vec3> {
    let b = [("u", u), ("v", v)];
    Ok(Vec3::new(exprs[0].eval(&b)?, exprs[1].eval(&b)?, exprs[2].eval(&b)?))
}

impl Surface {
    /// Builds a surface from coordinate expressions in `u` and `v`.
    pub fn new(name: &str, coords: [Expr; 3], u_domain: Interval, v_domain: Interval) -> Result<Surface> {
        for (axis, e) in ["x", "y", "z"].iter().zip(&coords) {
            if let Some(bad) = e.variables().into_iter().find(|v| v != "u" && v != "v") {
                return Err(Error::InvalidArgument(format!(
                    "surface coordinate {axis} uses variable '{bad}'; only u and v are allowed"
                )));
            }
        }
        if !(u_domain.lo < u_domain.hi) || !(v_domain.lo < v_domain.hi) {
            return Err(Error::InvalidArgument("surface domain is empty".into()));
        }
        let r_u = coords.clone().map(|e| e.derivative("u", 1));
        let r_v = coords.clone().map(|e| e.derivative("v", 1));
        let raw_normal = cross_exprs(&r_u, &r_v);
        Ok(Surface {
            name: name.to_string(),
            coords,
            u_domain,
            v_domain,
            r_u,
            r_v,
            raw_normal,
            flipped: false,
        })
    }

    /// Parses the three coordinate strings. Errors name the offending axis.
    pub fn from_strings(name: &str, coords: [&str; 3], u_domain: Interval, v_domain: Interval) -> Result<Surface> {
        let mut parsed = Vec::with_capacity(3);
        for (axis, src) in ["x", "y", "z"].iter().zip(coords) {
            parsed.push(
                parse(src, &["u", "v"])
                    .map_err(|e| Error::InvalidArgument(format!("surface coordinate {axis}: {e}")))?,
            );
        }
        let [x, y, z]: [Expr; 3] = parsed.try_into().expect("three coordinates");
        Surface::new(name, [x, y, z], u_domain, v_domain)
    }

    /// The plane z = 0, `r(u, v) = (u, v, 0)`.
    pub fn plane() -> Surface {
        Surface::from_strings("plane", ["u", "v", "0"], Interval::real_line(), Interval::real_line())
            .expect("builtin plane")
    }

    /// Unit sphere with colatitude `u` and longitude `v`; outward normal.
    /// The poles are excluded; the longitude range is closed so a full
    /// circle of latitude fits in one parameter interval.
    pub fn sphere() -> Surface {
        Surface::from_strings(
            "sphere",
            ["sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"],
            Interval::open(0.0, PI),
            Interval::closed(0.0, TAU),
        )
        .expect("builtin sphere")
    }

    /// Circular cylinder of radius `r` about the z axis, `(r cos u, r sin u, v)`.
    pub fn cylinder(r: f64) -> Result<Surface> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("cylinder radius {r} must be positive")));
        }
        Surface::from_strings(
            "cylinder",
            [&format!("{r}*cos(u)"), &format!("{r}*sin(u)"), "v"],
            Interval::real_line(),
            Interval::real_line(),
        )
    }

    /// Torus with tube centre radius `big_r` and tube radius `r`. Both angles
    /// range over the whole line since the parameterization never degenerates.
    pub fn torus(big_r: f64, r: f64) -> Result<Surface> {
        if !(r > 0.0 && big_r > r && big_r.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "torus radii must satisfy R > r > 0 (got R = {big_r}, r = {r})"
            )));
        }
        Surface::from_strings(
            "torus",
            [
                &format!("({big_r} + {r}*cos(v))*cos(u)"),
                &format!("({big_r} + {r}*cos(v))*sin(u)"),
                &format!("{r}*sin(v)"),
            ],
            Interval::real_line(),
            Interval::real_line(),
        )
    }

    /// Looks up a builtin by name. `params` are the cylinder radius or the
    /// torus radii; missing entries fall back to r = 1 and (R, r) = (2, 1).
    pub fn builtin(name: &str, params: &[f64]) -> Result<Surface> {
        let arity = match name {
            "plane" | "sphere" => 0,
            "cylinder" => 1,
            "torus" => 2,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown builtin surface '{name}' (expected one of {})",
                    BUILTIN_SURFACES.join(", ")
                )))
            }
        };
        if params.len() > arity {
            return Err(Error::InvalidArgument(format!(
                "surface '{name}' takes at most {arity} parameter(s), got {}",
                params.len()
            )));
        }
        let p = |i: usize, default: f64| params.get(i).copied().unwrap_or(default);
        match name {
            "plane" => Ok(Surface::plane()),
            "sphere" => Ok(Surface::sphere()),
            "cylinder" => Surface::cylinder(p(0, 1.0)),
            _ => Surface::torus(p(0, 2.0), p(1, 1.0)),
        }
    }

    /// Same surface with the opposite orientation when `flip` is set.
    pub fn with_flip(mut self, flip: bool) -> Surface {
        self.flipped ^= flip;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_flipped(&self) -> bool {
        self.flipped
    }

    pub fn u_domain(&self) -> Interval {
        self.u_domain
    }

    pub fn v_domain(&self) -> Interval {
        self.v_domain
    }

    pub fn coordinates(&self) -> &[Expr; 3] {
        &self.coords
    }

    /// Unnormalized normal `±(r_u x r_v)` as expressions, orientation applied.
    pub fn normal_exprs(&self) -> [Expr; 3] {
        if self.flipped {
            self.raw_normal.clone().map(Expr::neg)
        } else {
            self.raw_normal.clone()
        }
    }

    pub fn in_domain(&self, u: f64, v: f64) -> bool {
        self.u_domain.contains(u) && self.v_domain.contains(v)
    }

    fn check_domain(&self, u: f64, v: f64) -> Result<()> {
        if self.in_domain(u, v) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { u, v })
        }
    }

    pub fn position(&self, u: f64, v: f64) -> Result<Vec3> {
        self.check_domain(u, v)?;
        eval3(&self.coords, u, v)
    }

    pub fn partials(&self, u: f64, v: f64) -> Result<(Vec3, Vec3)> {
        self.check_domain(u, v)?;
        Ok((eval3(&self.r_u, u, v)?, eval3(&self.r_v, u, v)?))
    }

    pub fn unit_normal(&self, u: f64, v: f64) -> Result<Vec3> {
        self.check_domain(u, v)?;
        let raw = eval3(&self.raw_normal, u, v)?;
        let norm = raw.norm();
        if !(norm > REGULARITY_THRESHOLD) {
            return Err(Error::DegenerateParameterization { u, v, norm });
        }
        let n = raw / norm;
        Ok(if self.flipped { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: Vec3, b: Vec3, tol: f64) {
        assert!((a - b).max_abs() <= tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn catalog_positions() {
        close(
            Surface::sphere().position(FRAC_PI_2, 0.0).unwrap(),
            Vec3::new(1.0, 0.0, 0.0),
            1e-15,
        );
        close(
            Surface::plane().position(2.0, 3.0).unwrap(),
            Vec3::new(2.0, 3.0, 0.0),
            0.0,
        );
        close(
            Surface::cylinder(1.0).unwrap().position(0.0, 5.0).unwrap(),
            Vec3::new(1.0, 0.0, 5.0),
            0.0,
        );
    }

    #[test]
    fn sphere_normal_is_outward() {
        let s = Surface::sphere();
        for &(u, v) in &[(0.3, 0.1), (1.2, 4.0), (2.9, 6.2)] {
            let n = s.unit_normal(u, v).unwrap();
            let p = s.position(u, v).unwrap();
            assert!((n.dot(p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_normal_and_flip() {
        let p = Surface::plane();
        close(p.unit_normal(-4.0, 7.0).unwrap(), Vec3::new(0.0, 0.0, 1.0), 0.0);
        let q = p.with_flip(true);
        close(q.unit_normal(-4.0, 7.0).unwrap(), Vec3::new(0.0, 0.0, -1.0), 0.0);
        assert!(!q.with_flip(true).is_flipped());
    }

    #[test]
    fn pole_is_outside_domain_and_degenerate() {
        let s = Surface::sphere();
        assert!(matches!(s.unit_normal(0.0, 1.0), Err(Error::OutOfDomain { .. })));
        let closed = Surface::new(
            "closed sphere",
            s.coordinates().clone(),
            Interval::closed(0.0, PI),
            Interval::closed(0.0, TAU),
        )
        .unwrap();
        assert!(matches!(
            closed.unit_normal(0.0, 1.0),
            Err(Error::DegenerateParameterization { .. })
        ));
    }

    #[test]
    fn torus_normal_points_away_from_tube_centre() {
        let t = Surface::torus(2.0, 0.5).unwrap();
        let (u, v) = (0.7, 2.1);
        let p = t.position(u, v).unwrap();
        let centre = Vec3::new(2.0 * u.cos(), 2.0 * u.sin(), 0.0);
        let n = t.unit_normal(u, v).unwrap();
        let radial = (p - centre).normalized();
        assert!(n.dot(radial).abs() > 1.0 - 1e-12);
    }

    #[test]
    fn builtin_lookup_and_validation() {
        assert_eq!(Surface::builtin("torus", &[]).unwrap().name(), "torus");
        assert!(Surface::builtin("klein", &[]).is_err());
        assert!(Surface::builtin("plane", &[1.0]).is_err());
        assert!(Surface::cylinder(-1.0).is_err());
        assert!(Surface::torus(1.0, 2.0).is_err());
    }

    #[test]
    fn foreign_variables_rejected() {
        let err = Surface::from_strings("bad", ["u", "v", "t"], Interval::real_line(), Interval::real_line());
        assert!(err.is_err());
    }
}
