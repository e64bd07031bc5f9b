//! Reference integrator: Strang-split Fourier method.
//!
//! The model is rewritten as `df/dz = (i / 2 beta) (d2f/dy2 + g |f|^2 f)` and
//! each step of length `d` composes
//!
//! ```text
//! exp(i g |f|^2 d / (4 beta))  ->  FFT, exp(-i k^2 d / (2 beta)), IFFT  ->  exp(i g |f|^2 d / (4 beta))
//! ```
//!
//! Both sub-steps are unitary, so the discrete L2 norm is preserved up to
//! transform roundoff. The spectral step imposes periodic boundaries; the
//! domain can be padded to keep the wrap-around away from the region of
//! interest.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::gfdtd::WaveParams;
use crate::grid::{ComplexField, GridSpec};
use crate::nonlinearity::NonlinearityProfile;

/// Maximum edge magnitude, relative to the peak, tolerated by the periodic step.
pub const EDGE_DECAY_LIMIT: f64 = 1e-3;

/// Values used to extend the field into the padding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaddingFill {
    Zero,
    /// The defect-free exact soliton at the initial level.
    AnalyticSoliton,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub dz_ref: f64,
    /// Padded length as a multiple of the original grid.
    pub padding_factor: usize,
    pub fill: PaddingFill,
}

impl OracleConfig {
    /// Step of `dz / 10`, doubled domain, soliton-filled padding.
    pub fn for_grid(grid: &GridSpec) -> Self {
        Self {
            dz_ref: grid.dz() / 10.0,
            padding_factor: 2,
            fill: PaddingFill::AnalyticSoliton,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dz_ref.is_finite() && self.dz_ref > 0.0) {
            return Err(Error::domain("dz_ref", "reference step must be positive"));
        }
        if self.padding_factor == 0 {
            return Err(Error::domain("padding_factor", "must be at least 1"));
        }
        Ok(())
    }
}

/// Integrates `f0` to `z_end` and returns the field on the original grid.
pub fn split_step_propagate(
    f0: &ComplexField,
    profile: &NonlinearityProfile,
    grid: &GridSpec,
    params: &WaveParams,
    config: &OracleConfig,
    z_end: f64,
) -> Result<ComplexField> {
    f0.check_len(grid, "f0")?;
    f0.check_finite()?;
    profile.check_len(grid)?;
    params.validate()?;
    config.validate()?;
    let steps = crate::gfdtd::propagate_step_count(f0.z_level, z_end, config.dz_ref)?;

    let n = grid.n_y();
    let extra = (config.padding_factor - 1) * n;
    let left = extra / 2;
    let total = n + extra;

    let mut psi = vec![Complex64::new(0.0, 0.0); total];
    let mut g = vec![profile.background; total];
    for j in 0..total {
        let k = j as isize - left as isize;
        if k >= 0 && (k as usize) < n {
            psi[j] = f0.get(k as usize);
            g[j] = profile.g[k as usize];
        } else if config.fill == PaddingFill::AnalyticSoliton {
            psi[j] = params.soliton(grid.y_signed(k), f0.z_level);
        }
    }

    let peak = psi.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let edge = psi[0].norm().max(psi[total - 1].norm());
    if peak > 0.0 && edge > EDGE_DECAY_LIMIT * peak {
        return Err(Error::domain(
            "f0",
            format!(
                "field at the periodic boundary is {:.3e} of its peak (limit {EDGE_DECAY_LIMIT:e}); \
                 increase padding_factor",
                edge / peak
            ),
        ));
    }

    let dz = config.dz_ref;
    let beta = params.beta;
    let length = total as f64 * grid.dy();
    let linear: Vec<Complex64> = (0..total)
        .map(|j| {
            let m = if j <= total / 2 {
                j as f64
            } else {
                j as f64 - total as f64
            };
            let k = 2.0 * PI * m / length;
            Complex64::from_polar(1.0, -k * k * dz / (2.0 * beta))
        })
        .collect();
    let half_nl = 0.5 * dz / (2.0 * beta);

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(total);
    let inverse = planner.plan_fft_inverse(total);
    let norm = 1.0 / total as f64;

    let rotate = |psi: &mut [Complex64]| {
        for (v, gj) in psi.iter_mut().zip(&g) {
            *v *= Complex64::from_polar(1.0, gj * v.norm_sqr() * half_nl);
        }
    };

    for _ in 0..steps {
        rotate(&mut psi);
        forward.process(&mut psi);
        for (v, l) in psi.iter_mut().zip(&linear) {
            *v *= l * norm;
        }
        inverse.process(&mut psi);
        rotate(&mut psi);
    }

    let mut out = ComplexField::zeros(n, f0.z_level + steps as f64 * dz);
    for k in 0..n {
        out.set(k, psi[k + left]);
    }
    if !out.is_finite() {
        return Err(Error::numerics(
            out.max_abs(),
            "oracle produced non-finite values",
        ));
    }
    Ok(out)
}
