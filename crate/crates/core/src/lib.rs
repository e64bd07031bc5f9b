//! Bright-soliton propagation in a nonlinear monolayer.
//!
//! The reduced model `2i beta df/dz + d2f/dy2 + g(y) |f|^2 f = 0` is integrated
//! with an explicit staggered finite-difference scheme ([`gfdtd`]) built on a
//! fourth-order stencil ([`stencil`]). Point defects enter through the
//! nonlinearity profile ([`nonlinearity`]). The exact soliton and the
//! physical electric field live in [`analytic`]; [`oracle`] is an independent
//! split-step spectral integrator used for cross-checks.

pub mod analytic;
pub mod config;
pub mod error;
pub mod experiment;
pub mod gfdtd;
pub mod grid;
pub mod io;
pub mod nonlinearity;
pub mod oracle;
pub mod stencil;

pub use error::{Error, Result};
pub use gfdtd::{Bootstrap, SchemeParams, WaveParams};
pub use grid::{make_grid, sample_on_grid, ComplexField, GridSpec, StaggeredState};
