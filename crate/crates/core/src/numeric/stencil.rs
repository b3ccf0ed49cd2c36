use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Shifts each angle by a multiple of 2π so consecutive entries differ by
/// less than π.
pub fn unwrap_angles(angles: &mut [f64]) {
    for i in 1..angles.len() {
        angles[i] = unwrap_near(angles[i], angles[i - 1]);
    }
}

/// Representative of `angle` mod 2π closest to `reference`.
pub fn unwrap_near(angle: f64, reference: f64) -> f64 {
    let mut a = angle;
    while a - reference > PI {
        a -= TAU;
    }
    while a - reference < -PI {
        a += TAU;
    }
    a
}

/// Five-point derivative weights for offsets `first..first+5` (in units of h).
fn weights(first: i32) -> [f64; 5] {
    match first {
        -2 => [1.0, -8.0, 0.0, 8.0, -1.0],
        0 => [-25.0, 48.0, -36.0, 16.0, -3.0],
        -4 => [3.0, -16.0, 36.0, -48.0, 25.0],
        _ => unreachable!("unsupported stencil"),
    }
}

fn stencil_start(x: f64, h: f64, lo: f64, hi: f64) -> i32 {
    if x - 2.0 * h >= lo && x + 2.0 * h <= hi {
        -2
    } else if x + 4.0 * h <= hi {
        0
    } else {
        -4
    }
}

/// Derivative of `f` at `x` from the exact derivative of the quartic through
/// five equally spaced samples. Uses the centered stencil when it fits in
/// `[lo, hi]` and one-sided stencils near the ends.
pub fn five_point_derivative<F>(f: &mut F, x: f64, h: f64, lo: f64, hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h > 0.0) || hi - lo < 4.0 * h {
        return Err(Error::InvalidArgument(format!(
            "stencil step {h} does not fit in [{lo}, {hi}]"
        )));
    }
    let first = stencil_start(x, h, lo, hi);
    let w = weights(first);
    let mut acc = 0.0;
    for (i, wi) in w.iter().enumerate() {
        let xi = (x + (first + i as i32) as f64 * h).clamp(lo, hi);
        acc += wi * f(xi)?;
    }
    Ok(acc / (12.0 * h))
}

/// Like [`five_point_derivative`] for an angle-valued `f`: samples are
/// unwrapped against the first one before differencing.
pub fn five_point_angle_derivative<F>(f: &mut F, x: f64, h: f64, lo: f64, hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut reference: Option<f64> = None;
    five_point_derivative(
        &mut |xi| {
            let a = f(xi)?;
            let a = match reference {
                Some(r) => unwrap_near(a, r),
                None => a,
            };
            reference = Some(a);
            Ok(a)
        },
        x,
        h,
        lo,
        hi,
    )
}

/// Derivative of uniformly spaced samples, five-point stencils throughout.
pub fn grid_derivative(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 5 {
        return Err(Error::InvalidArgument(
            "five-point stencil needs at least 5 samples".into(),
        ));
    }
    Ok((0..n)
        .map(|i| {
            let first: i32 = if i >= 2 && i + 2 < n {
                -2
            } else if i < 2 {
                0
            } else {
                -4
            };
            let w = weights(first);
            let sum: f64 = w
                .iter()
                .enumerate()
                .map(|(k, wk)| wk * values[(i as i32 + first + k as i32) as usize])
                .sum();
            sum / (12.0 * h)
        })
        .collect())
}
