use crate::error::{Error, Result};

use super::quadrature::adaptive_simpson;

/// Speeds below this make a curve non-regular.
pub const MIN_SPEED: f64 = 1e-12;
const PANELS: usize = 64;
const PANEL_TOL: f64 = 1e-12;

fn checked<F>(speed: &F) -> impl FnMut(f64) -> Result<f64> + '_
where
    F: Fn(f64) -> Result<f64>,
{
    move |t| {
        let v = speed(t)?;
        if !(v >= MIN_SPEED) {
            return Err(Error::NonRegularCurve { t, speed: v });
        }
        Ok(v)
    }
}

/// Length of a curve with the given speed over `[t0, t1]`.
pub fn arc_length<F>(speed: &F, t0: f64, t1: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    Ok(ArcLengthMap::build(speed, t0, t1)?.total_length())
}

/// Cumulative arc length over a fixed panel partition of `[t_lo, t_hi]`.
///
/// The map stores only the panel table; queries take the speed function again
/// so the map stays a plain value that can be shared across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthMap {
    nodes: Vec<f64>,
    cumulative: Vec<f64>,
}

impl ArcLengthMap {
    pub fn build<F>(speed: &F, t_lo: f64, t_hi: f64) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if !(t_lo < t_hi) || !t_lo.is_finite() || !t_hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "parameter range [{t_lo}, {t_hi}] is empty"
            )));
        }
        let nodes: Vec<f64> = (0..=PANELS)
            .map(|i| {
                if i == PANELS {
                    t_hi
                } else {
                    t_lo + (t_hi - t_lo) * i as f64 / PANELS as f64
                }
            })
            .collect();
        let mut f = checked(speed);
        let mut cumulative = Vec::with_capacity(nodes.len());
        cumulative.push(0.0);
        let mut acc = 0.0;
        for w in nodes.windows(2) {
            acc += adaptive_simpson(&mut f, w[0], w[1], PANEL_TOL)?;
            cumulative.push(acc);
        }
        Ok(ArcLengthMap { nodes, cumulative })
    }

    pub fn t_lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn t_hi(&self) -> f64 {
        *self.nodes.last().expect("non-empty")
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative.last().expect("non-empty")
    }

    /// Arc length from `t_lo` to `t`.
    pub fn length_at<F>(&self, speed: &F, t: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if t < self.t_lo() || t > self.t_hi() {
            return Err(Error::OutOfRange {
                value: t,
                lo: self.t_lo(),
                hi: self.t_hi(),
            });
        }
        let k = self.panel_of(|i| self.nodes[i], t);
        let mut f = checked(speed);
        Ok(self.cumulative[k] + adaptive_simpson(&mut f, self.nodes[k], t, PANEL_TOL)?)
    }

    fn panel_of(&self, key: impl Fn(usize) -> f64, x: f64) -> usize {
        let n = self.nodes.len();
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if key(mid) <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo.min(n - 2)
    }

    /// Parameter `t` whose arc length from `t_lo` is `s`.
    ///
    /// Newton steps with the speed as exact derivative, falling back to
    /// bisection whenever a step leaves the current bracket.
    pub fn parameter_at<F>(&self, speed: &F, s: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let total = self.total_length();
        let slack = 1e-12 * (1.0 + total);
        if !(s >= -slack && s <= total + slack) {
            return Err(Error::OutOfRange {
                value: s,
                lo: 0.0,
                hi: total,
            });
        }
        if s <= 0.0 {
            return Ok(self.t_lo());
        }
        if s >= total {
            return Ok(self.t_hi());
        }
        let k = self.panel_of(|i| self.cumulative[i], s);
        let (start, base) = (self.nodes[k], self.cumulative[k]);
        let (mut lo, mut hi) = (start, self.nodes[k + 1]);
        let span = self.cumulative[k + 1] - base;
        let mut t = start + (hi - lo) * (s - base) / span;
        let tol = 1e-13 * (1.0 + total);
        let mut f = checked(speed);
        for _ in 0..200 {
            let residual = base + adaptive_simpson(&mut f, start, t, PANEL_TOL)? - s;
            if residual.abs() <= tol {
                return Ok(t);
            }
            if residual > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            if hi - lo <= 4.0 * f64::EPSILON * (1.0 + t.abs()) {
                return Ok(t);
            }
            let newton = t - residual / f(t)?;
            t = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(t)
    }
}
