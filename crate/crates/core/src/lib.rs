//! Design and analysis toolkit for drone-delivered resonant wireless charging
//! of sensor nodes.
//!
//! Lengths are metres, inductances henries and frequencies hertz throughout
//! the library; unit conversion happens at the CLI boundary.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coil;
pub mod coupling;
pub mod error;
pub mod gwp;
pub mod link;
pub mod measurement;
pub mod mission;
pub mod numerics;
pub mod presets;

pub use error::{Error, Result};
