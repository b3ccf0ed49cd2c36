use thiserror::Error;

use crate::expr::EvalError;

/// Geometry failures raised by the numeric, surface, frame, and
/// Smarandache layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("curve is not regular near t = {t} (speed {speed:e})")]
    NonRegularCurve { t: f64, speed: f64 },
    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("point (u, v) = ({u}, {v}) outside the surface domain")]
    OutOfDomain { u: f64, v: f64 },
    #[error("degenerate parameterization at (u, v) = ({u}, {v}): |r_u x r_v| = {norm:e}")]
    DegenerateParameterization { u: f64, v: f64, norm: f64 },
    #[error("curvature {kappa:e} below threshold; Frenet frame undefined")]
    VanishingCurvature { kappa: f64 },
    #[error("Smarandache curve is not regular here (radicand {radicand:e})")]
    NonRegularSmarandache { radicand: f64 },
    #[error("closed-form normalizer {value:e} is degenerate")]
    DegenerateNormalizer { value: f64 },
    #[error("base curve is not classified as {expected}")]
    ClassificationMismatch { expected: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
