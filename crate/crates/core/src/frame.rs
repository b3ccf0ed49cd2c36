//! Curves on surfaces: Darboux and Frenet frames, their invariants, the
//! angle linking the two frames, and classification.
//!
//! Everything at a sample is computed from exact symbolic `t`-derivatives of
//! the composed curve and of the composed surface normal, carried through
//! normalization by Taylor jets. Arc-length derivatives use the chain rule
//! `d/ds = (1/|alpha'|) d/dt`, so no finite differences enter the frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse, Expr};
use crate::numeric::{unwrap_near, ArcLengthMap, Jet, Jet3};
use crate::surface::{Surface, REGULARITY_THRESHOLD};
use crate::vec3::Vec3;

/// Below this curvature the Frenet frame is not defined.
pub const CURVATURE_THRESHOLD: f64 = 1e-9;

/// Grid size used by [`SurfaceCurve::classify`] and the domain check.
pub const CHECK_SAMPLES: usize = 257;

const ALPHA_ORDERS: usize = 5;
const NORMAL_ORDERS: usize = 4;

/// A curve `t -> r(u(t), v(t))` on a surface, with its arc-length table.
#[derive(Debug, Clone)]
pub struct SurfaceCurve {
    surface: Surface,
    u_of_t: Expr,
    v_of_t: Expr,
    t_lo: f64,
    t_hi: f64,
    alpha: Vec<[Expr; 3]>,
    normal: Vec<[Expr; 3]>,
    arc: ArcLengthMap,
}

/// Frenet completion of a sample, present when the curvature is above
/// [`CURVATURE_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetPart {
    pub principal_normal: Vec3,
    pub binormal: Vec3,
    pub tau: f64,
    /// Angle with `g = cos(phi) N + sin(phi) B`.
    pub phi: f64,
    pub dphi_ds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameSample {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub position: Vec3,
    pub tangent: Vec3,
    /// `g = n x T`.
    pub tangent_normal: Vec3,
    pub normal: Vec3,
    pub kappa: f64,
    pub k_g: f64,
    pub k_n: f64,
    pub tau_g: f64,
    pub frenet: Option<FrenetPart>,
}

impl FrameSample {
    pub fn darboux(&self) -> [Vec3; 3] {
        [self.tangent, self.tangent_normal, self.normal]
    }

    pub fn frenet_or_err(&self) -> Result<&FrenetPart> {
        self.frenet
            .as_ref()
            .ok_or(Error::VanishingCurvature { kappa: self.kappa })
    }
}

/// `k_g, k_n, tau_g` with their first and second arc-length derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantDerivatives {
    pub k_g: [f64; 3],
    pub k_n: [f64; 3],
    pub tau_g: [f64; 3],
}

/// Darboux frame fields as jets in `t` at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct FrameJets {
    pub t: f64,
    pub position: Vec3,
    pub speed: Jet,
    pub tangent: Jet3,
    pub tangent_normal: Jet3,
    pub normal: Jet3,
}

impl FrameJets {
    /// Arc-length derivative of a scalar jet; one order shorter.
    pub fn d_ds(&self, f: &Jet) -> Jet {
        f.derivative().div(&self.speed)
    }

    pub fn d_ds3(&self, f: &Jet3) -> Jet3 {
        f.derivative().div_scalar(&self.speed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    Geodesic,
    AsymptoticLine,
    PrincipalLine,
}

impl CurveClass {
    pub fn name(self) -> &'static str {
        match self {
            CurveClass::Geodesic => "geodesic",
            CurveClass::AsymptoticLine => "asymptotic line",
            CurveClass::PrincipalLine => "principal line",
        }
    }
}

/// Result of [`SurfaceCurve::classify`] with the largest invariant
/// magnitudes seen on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub max_abs_k_g: f64,
    pub max_abs_k_n: f64,
    pub max_abs_tau_g: f64,
    pub tol: f64,
}

impl Classification {
    pub fn contains(&self, class: CurveClass) -> bool {
        let m = match class {
            CurveClass::Geodesic => self.max_abs_k_g,
            CurveClass::AsymptoticLine => self.max_abs_k_n,
            CurveClass::PrincipalLine => self.max_abs_tau_g,
        };
        m < self.tol
    }

    pub fn labels(&self) -> Vec<CurveClass> {
        [
            CurveClass::Geodesic,
            CurveClass::AsymptoticLine,
            CurveClass::PrincipalLine,
        ]
        .into_iter()
        .filter(|c| self.contains(*c))
        .collect()
    }
}

fn eval_vec(exprs: &[Expr; 3], t: f64) -> Result<Vec3> {
    let b = [("t", t)];
    Ok(Vec3::new(exprs[0].eval(&b)?, exprs[1].eval(&b)?, exprs[2].eval(&b)?))
}

fn jet3_from(derivs: &[Vec3]) -> Jet3 {
    let comp = |f: fn(&Vec3) -> f64| Jet::from_derivatives(&derivs.iter().map(f).collect::<Vec<_>>());
    Jet3::new(comp(|v| v.x), comp(|v| v.y), comp(|v| v.z))
}

fn derivative_chain(base: [Expr; 3], orders: usize) -> Vec<[Expr; 3]> {
    let mut out = vec![base];
    for _ in 1..orders {
        let next = out.last().expect("non-empty").clone().map(|e| e.derivative("t", 1));
        out.push(next);
    }
    out
}

/// Largest entry of `G - I` for the Gram matrix of three vectors.
pub fn gram_deviation(frame: [Vec3; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((frame[i].dot(frame[j]) - target).abs());
        }
    }
    worst
}

impl SurfaceCurve {
    pub fn new(surface: Surface, u_of_t: Expr, v_of_t: Expr, t_lo: f64, t_hi: f64) -> Result<SurfaceCurve> {
        for (name, e) in [("u", &u_of_t), ("v", &v_of_t)] {
            if let Some(bad) = e.variables().into_iter().find(|x| x != "t") {
                return Err(Error::InvalidArgument(format!(
                    "curve coordinate {name}(t) uses variable '{bad}'; only t is allowed"
                )));
            }
        }
        if !(t_lo < t_hi) || !t_lo.is_finite() || !t_hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "parameter range [{t_lo}, {t_hi}] is empty"
            )));
        }
        let subs = [("u", &u_of_t), ("v", &v_of_t)];
        let composed = surface.coordinates().clone().map(|e| e.substitute(&subs));
        let normal = surface.normal_exprs().map(|e| e.substitute(&subs));
        let alpha = derivative_chain(composed, ALPHA_ORDERS);
        let normal = derivative_chain(normal, NORMAL_ORDERS);

        for i in 0..CHECK_SAMPLES {
            let t = t_lo + (t_hi - t_lo) * i as f64 / (CHECK_SAMPLES - 1) as f64;
            let b = [("t", t)];
            let (u, v) = (u_of_t.eval(&b)?, v_of_t.eval(&b)?);
            if !surface.in_domain(u, v) {
                return Err(Error::OutOfDomain { u, v });
            }
        }

        let speed = |t: f64| Ok(eval_vec(&alpha[1], t)?.norm());
        let arc = ArcLengthMap::build(&speed, t_lo, t_hi)?;
        Ok(SurfaceCurve {
            surface,
            u_of_t,
            v_of_t,
            t_lo,
            t_hi,
            alpha,
            normal,
            arc,
        })
    }

    /// Parses `u(t)` and `v(t)`; errors name the coordinate.
    pub fn from_strings(surface: Surface, u_src: &str, v_src: &str, t_lo: f64, t_hi: f64) -> Result<SurfaceCurve> {
        let u = parse(u_src, &["t"]).map_err(|e| Error::InvalidArgument(format!("curve coordinate u(t): {e}")))?;
        let v = parse(v_src, &["t"]).map_err(|e| Error::InvalidArgument(format!("curve coordinate v(t): {e}")))?;
        SurfaceCurve::new(surface, u, v, t_lo, t_hi)
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn u_of_t(&self) -> &Expr {
        &self.u_of_t
    }

    pub fn v_of_t(&self) -> &Expr {
        &self.v_of_t
    }

    pub fn t_range(&self) -> (f64, f64) {
        (self.t_lo, self.t_hi)
    }

    pub fn total_length(&self) -> f64 {
        self.arc.total_length()
    }

    fn speed_at(&self, t: f64) -> Result<f64> {
        Ok(eval_vec(&self.alpha[1], t)?.norm())
    }

    pub fn parameter_at(&self, s: f64) -> Result<f64> {
        self.arc.parameter_at(&|t| self.speed_at(t), s)
    }

    pub fn arc_length_at(&self, t: f64) -> Result<f64> {
        self.arc.length_at(&|t| self.speed_at(t), t)
    }

    /// `n` uniformly spaced arc-length values covering `[0, L]`.
    pub fn uniform_s(&self, n: usize) -> Vec<f64> {
        let l = self.total_length();
        match n {
            0 => vec![],
            1 => vec![0.0],
            _ => (0..n)
                .map(|i| if i + 1 == n { l } else { l * i as f64 / (n - 1) as f64 })
                .collect(),
        }
    }

    /// Ambient position derivatives `alpha^(k)(t)` for `k = 0..=4`.
    pub fn position_derivatives(&self, t: f64) -> Result<[Vec3; ALPHA_ORDERS]> {
        let mut out = [Vec3::default(); ALPHA_ORDERS];
        for (k, exprs) in self.alpha.iter().enumerate() {
            out[k] = eval_vec(exprs, t)?;
        }
        Ok(out)
    }

    /// Darboux frame jets at parameter `t`.
    pub fn frame_jets_at_parameter(&self, t: f64) -> Result<FrameJets> {
        if !(t >= self.t_lo && t <= self.t_hi) {
            return Err(Error::OutOfRange {
                value: t,
                lo: self.t_lo,
                hi: self.t_hi,
            });
        }
        let b = [("t", t)];
        let (u, v) = (self.u_of_t.eval(&b)?, self.v_of_t.eval(&b)?);
        if !self.surface.in_domain(u, v) {
            return Err(Error::OutOfDomain { u, v });
        }
        let alpha = self.position_derivatives(t)?;
        let mut nu = Vec::with_capacity(NORMAL_ORDERS);
        for exprs in &self.normal {
            nu.push(eval_vec(exprs, t)?);
        }
        let raw_norm = nu[0].norm();
        if !(raw_norm > REGULARITY_THRESHOLD) {
            return Err(Error::DegenerateParameterization { u, v, norm: raw_norm });
        }
        let velocity = jet3_from(&alpha[1..]);
        let speed = velocity.norm();
        if !(speed.value() >= crate::numeric::MIN_SPEED) {
            return Err(Error::NonRegularCurve {
                t,
                speed: speed.value(),
            });
        }
        let tangent = velocity.div_scalar(&speed);
        let normal = jet3_from(&nu).normalized();
        let tangent_normal = normal.cross(&tangent);
        Ok(FrameJets {
            t,
            position: alpha[0],
            speed,
            tangent,
            tangent_normal,
            normal,
        })
    }

    pub fn frame_jets(&self, s: f64) -> Result<FrameJets> {
        self.frame_jets_at_parameter(self.parameter_at(s)?)
    }

    fn sample_from_jets(&self, s: f64, j: &FrameJets) -> Result<FrameSample> {
        let b = [("t", j.t)];
        let (u, v) = (self.u_of_t.eval(&b)?, self.v_of_t.eval(&b)?);
        let t_s = j.d_ds3(&j.tangent);
        let g_s = j.d_ds3(&j.tangent_normal);
        let (t_val, g_val, n_val) = (j.tangent.value(), j.tangent_normal.value(), j.normal.value());
        let curvature_vec = t_s.value();
        let kappa = curvature_vec.norm();
        let frenet = if kappa >= CURVATURE_THRESHOLD {
            let kappa_jet = t_s.norm();
            let principal = t_s.div_scalar(&kappa_jet);
            let binormal = j.tangent.cross(&principal);
            let tau = j.d_ds3(&principal).value().dot(binormal.value());
            let x = j.tangent_normal.dot(&principal);
            let y = j.tangent_normal.dot(&binormal);
            let (x0, y0) = (x.value(), y.value());
            let (x1, y1) = (j.d_ds(&x).value(), j.d_ds(&y).value());
            Some(FrenetPart {
                principal_normal: principal.value(),
                binormal: binormal.value(),
                tau,
                phi: y0.atan2(x0),
                dphi_ds: (x0 * y1 - y0 * x1) / (x0 * x0 + y0 * y0),
            })
        } else {
            None
        };
        Ok(FrameSample {
            s,
            t: j.t,
            u,
            v,
            position: j.position,
            tangent: t_val,
            tangent_normal: g_val,
            normal: n_val,
            kappa,
            k_g: curvature_vec.dot(g_val),
            k_n: curvature_vec.dot(n_val),
            tau_g: g_s.value().dot(n_val),
            frenet,
        })
    }

    /// Frame sample at arc length `s`.
    pub fn sample(&self, s: f64) -> Result<FrameSample> {
        let j = self.frame_jets(s)?;
        self.sample_from_jets(s, &j)
    }

    pub fn sample_at_parameter(&self, t: f64) -> Result<FrameSample> {
        let j = self.frame_jets_at_parameter(t)?;
        let s = self.arc_length_at(t)?;
        self.sample_from_jets(s, &j)
    }

    /// Samples at each `s`, with `phi` unwrapped across consecutive Frenet
    /// samples so it has no 2π jumps.
    pub fn sample_grid(&self, s_values: &[f64]) -> Vec<Result<FrameSample>> {
        let mut previous: Option<f64> = None;
        s_values
            .iter()
            .map(|&s| {
                let mut sample = self.sample(s)?;
                if let Some(f) = sample.frenet.as_mut() {
                    if let Some(p) = previous {
                        f.phi = unwrap_near(f.phi, p);
                    }
                    previous = Some(f.phi);
                }
                Ok(sample)
            })
            .collect()
    }

    /// The Darboux frame `{T, g, n}` at `s`.
    pub fn darboux_frame(&self, s: f64) -> Result<[Vec3; 3]> {
        let j = self.frame_jets(s)?;
        Ok([j.tangent.value(), j.tangent_normal.value(), j.normal.value()])
    }

    /// `(k_g, k_n, tau_g)` by projection of frame derivatives.
    pub fn darboux_invariants(&self, s: f64) -> Result<(f64, f64, f64)> {
        let x = self.sample(s)?;
        Ok((x.k_g, x.k_n, x.tau_g))
    }

    /// `(kappa, tau, N, B)`; fails where the curvature vanishes.
    pub fn frenet_invariants(&self, s: f64) -> Result<(f64, f64, Vec3, Vec3)> {
        let x = self.sample(s)?;
        let f = x.frenet_or_err()?;
        Ok((x.kappa, f.tau, f.principal_normal, f.binormal))
    }

    /// Angle `phi` with `g = cos(phi) N + sin(phi) B`, principal branch.
    pub fn frame_angle(&self, s: f64) -> Result<f64> {
        Ok(self.sample(s)?.frenet_or_err()?.phi)
    }

    pub fn invariant_derivatives(&self, s: f64) -> Result<InvariantDerivatives> {
        let j = self.frame_jets(s)?;
        Ok(invariant_derivatives_from(&j))
    }

    /// Largest row error of the Darboux derivative system
    /// `T' = k_g g + k_n n`, `g' = -k_g T + tau_g n`, `n' = -k_n T - tau_g g`.
    pub fn darboux_residual(&self, s: f64) -> Result<f64> {
        let j = self.frame_jets(s)?;
        let (t, g, n) = (j.tangent.value(), j.tangent_normal.value(), j.normal.value());
        let t_s = j.d_ds3(&j.tangent).value();
        let g_s = j.d_ds3(&j.tangent_normal).value();
        let n_s = j.d_ds3(&j.normal).value();
        let (kg, kn, tg) = (t_s.dot(g), t_s.dot(n), g_s.dot(n));
        let rows = [
            t_s - (g * kg + n * kn),
            g_s - (t * (-kg) + n * tg),
            n_s - (t * (-kn) - g * tg),
        ];
        Ok(rows.iter().map(|r| r.norm()).fold(0.0, f64::max))
    }

    /// Largest row error of the Frenet system
    /// `T' = kappa N`, `N' = -kappa T + tau B`, `B' = -tau N`.
    pub fn frenet_residual(&self, s: f64) -> Result<f64> {
        let j = self.frame_jets(s)?;
        let t_s = j.d_ds3(&j.tangent);
        let kappa = t_s.norm();
        if kappa.value() < CURVATURE_THRESHOLD {
            return Err(Error::VanishingCurvature { kappa: kappa.value() });
        }
        let principal = t_s.div_scalar(&kappa);
        let binormal = j.tangent.cross(&principal);
        let n_s = j.d_ds3(&principal).value();
        let b_s = j.d_ds3(&binormal).value();
        let (t, nn, b) = (j.tangent.value(), principal.value(), binormal.value());
        let k = kappa.value();
        let tau = n_s.dot(b);
        let rows = [t_s.value() - nn * k, n_s - (t * (-k) + b * tau), b_s + nn * tau];
        Ok(rows.iter().map(|r| r.norm()).fold(0.0, f64::max))
    }

    /// Labels whose invariant stays below `tol` over [`CHECK_SAMPLES`]
    /// uniform arc-length samples.
    pub fn classify(&self, tol: f64) -> Result<Classification> {
        self.classify_on(&self.uniform_s(CHECK_SAMPLES), tol)
    }

    pub fn classify_on(&self, s_values: &[f64], tol: f64) -> Result<Classification> {
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
        }
        let mut c = Classification {
            max_abs_k_g: 0.0,
            max_abs_k_n: 0.0,
            max_abs_tau_g: 0.0,
            tol,
        };
        for &s in s_values {
            let x = self.sample(s)?;
            c.max_abs_k_g = c.max_abs_k_g.max(x.k_g.abs());
            c.max_abs_k_n = c.max_abs_k_n.max(x.k_n.abs());
            c.max_abs_tau_g = c.max_abs_tau_g.max(x.tau_g.abs());
        }
        Ok(c)
    }
}

/// `k_g, k_n, tau_g` and two arc-length derivatives each, from frame jets.
pub fn invariant_derivatives_from(j: &FrameJets) -> InvariantDerivatives {
    let t_s = j.d_ds3(&j.tangent);
    let g_s = j.d_ds3(&j.tangent_normal);
    let series = |f: Jet| {
        let f1 = j.d_ds(&f);
        let f2 = j.d_ds(&f1);
        [f.value(), f1.value(), f2.value()]
    };
    InvariantDerivatives {
        k_g: series(t_s.dot(&j.tangent_normal)),
        k_n: series(t_s.dot(&j.normal)),
        tau_g: series(g_s.dot(&j.normal)),
    }
}
