use crate::error::Result;

const MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// Each subinterval is accepted once the Richardson estimate of its error is
/// below its share of `tol`; the share halves with every bisection. The
/// acceptance test is floored at a few ulps of the local value so round-off
/// cannot force bisection down to `MAX_DEPTH`.
pub fn adaptive_simpson<F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(f: &mut F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let sum = left + right;
    let delta = sum - whole;
    let floor = 64.0 * f64::EPSILON * sum.abs();
    if depth == 0 || delta.abs() <= 15.0 * tol.max(floor) {
        return Ok(sum + delta / 15.0);
    }
    Ok(refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_smooth_functions() {
        let v = adaptive_simpson(&mut |x: f64| Ok(x.sin()), 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
        let v = adaptive_simpson(&mut |x: f64| Ok((x * x).exp()), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 1.462_651_745_907_181_6).abs() < 1e-11);
    }

    #[test]
    fn polynomial_cubic_is_exact() {
        let v = adaptive_simpson(&mut |x: f64| Ok(x * x * x), 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-14);
    }

    #[test]
    fn errors_propagate() {
        let r = adaptive_simpson(
            &mut |x: f64| {
                if x > 0.5 {
                    Err(crate::Error::InvalidArgument("boom".into()))
                } else {
                    Ok(1.0)
                }
            },
            0.0,
            1.0,
            1e-12,
        );
        assert!(r.is_err());
    }
}
