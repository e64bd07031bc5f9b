//! Explicit staggered G-FDTD integrator for
//! `2i beta df/dz + d2f/dy2 + g(y) |f|^2 f = 0`.
//!
//! The real and imaginary parts live on interleaved z-levels. A step first
//! moves the integer level across the half level (`full_step`), then moves
//! the half level across the new integer level (`half_step`). Each move is a
//! truncated series in powers of the frozen operator; see [`kernel`].

mod diagnostics;
pub mod kernel;
mod params;
mod propagate;
mod step;

pub use diagnostics::{discrete_mass, steady_state_reached};
pub use kernel::{apply_series_operator, Parity};
pub use params::{Bootstrap, SchemeParams, WaveParams};
pub(crate) use propagate::step_count as propagate_step_count;
pub use propagate::{propagate, StepReport};
pub use step::{advance, bootstrap, full_step, half_step, Problem};
