// NaN must fail every range check, so comparisons are written as `!(a < b)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod frame;
pub mod io;
pub mod numeric;
pub mod presets;
pub mod smarandache;
pub mod surface;
pub mod vec3;
pub mod verify;

pub use error::{Error, Result};
pub use vec3::Vec3;
