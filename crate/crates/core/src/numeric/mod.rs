//! Quadrature, arc-length inversion, Taylor jets, and stencil derivatives.

mod arclength;
mod jet;
mod quadrature;
mod stencil;

pub use arclength::{arc_length, ArcLengthMap, MIN_SPEED};
pub use jet::{Jet, Jet3, JET_CAPACITY};
pub use quadrature::adaptive_simpson;
pub use stencil::{five_point_angle_derivative, five_point_derivative, grid_derivative, unwrap_angles, unwrap_near};
