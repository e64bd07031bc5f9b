use num_complex::Complex64;

use super::kernel::{series_sum, Parity, SeriesInputs};
use super::{Bootstrap, SchemeParams, WaveParams};
use crate::error::{Error, Result};
use crate::grid::{
    half_level, integer_level, sample_on_grid, ComplexField, GridSpec, StaggeredState,
};
use crate::nonlinearity::NonlinearityProfile;
use crate::stencil::GhostPolicy;

/// Problem data shared by every update of one run.
#[derive(Debug, Clone, Copy)]
pub struct Problem<'a> {
    pub profile: &'a NonlinearityProfile,
    pub grid: &'a GridSpec,
    pub params: &'a WaveParams,
    pub scheme: &'a SchemeParams,
    pub policy: &'a GhostPolicy,
}

impl<'a> Problem<'a> {
    pub fn new(
        profile: &'a NonlinearityProfile,
        grid: &'a GridSpec,
        params: &'a WaveParams,
        scheme: &'a SchemeParams,
        policy: &'a GhostPolicy,
    ) -> Result<Self> {
        profile.check_len(grid)?;
        params.validate()?;
        scheme.validate()?;
        policy.validate()?;
        Ok(Self {
            profile,
            grid,
            params,
            scheme,
            policy,
        })
    }

    /// `old - i * series(center)` with the modulus frozen at `frozen`.
    ///
    /// Expands to `re = old.re + S_real(center.im)` and
    /// `im = old.im + S_imag(center.re)`; the imaginary-update series is the
    /// negation of the real-update one, so a single evaluation serves both.
    fn centered_update(
        &self,
        old: &ComplexField,
        center: &ComplexField,
        frozen: &ComplexField,
        half_interval: f64,
        z_new: f64,
    ) -> Result<ComplexField> {
        let nonlin = frozen.modulus_squared();
        let inputs = SeriesInputs::new(
            center.z_level,
            &nonlin,
            self.profile,
            self.grid,
            self.params,
            self.scheme,
            self.policy,
            half_interval,
        );
        let s = series_sum(center, &inputs, Parity::RealUpdate)?;
        let mut out = ComplexField::zeros(old.len(), z_new);
        for k in 0..old.len() {
            out.re[k] = old.re[k] + s.im[k];
            out.im[k] = old.im[k] - s.re[k];
        }
        if !out.is_finite() || out.max_abs() > self.scheme.divergence_guard {
            return Err(Error::numerics(
                out.max_abs(),
                "field exceeded the divergence guard",
            ));
        }
        Ok(out)
    }
}

/// Integer-level update: `f^{n-1} -> f^n` using `f^{n-1/2}` for both the
/// targets and the frozen modulus.
pub fn full_step(state: &StaggeredState, problem: &Problem) -> Result<ComplexField> {
    state.f_int.check_len(problem.grid, "f_int")?;
    state.f_half.check_len(problem.grid, "f_half")?;
    let z_new = integer_level(state.step_index, problem.grid.dz());
    problem.centered_update(
        &state.f_int,
        &state.f_half,
        &state.f_half,
        0.5 * problem.grid.dz(),
        z_new,
    )
}

/// Half-level update: `f^{n-1/2} -> f^{n+1/2}` using the freshly computed `f^n`.
pub fn half_step(
    f_n: &ComplexField,
    f_half: &ComplexField,
    problem: &Problem,
) -> Result<ComplexField> {
    f_n.check_len(problem.grid, "f_n")?;
    f_half.check_len(problem.grid, "f_half")?;
    let z_new = f_n.z_level + 0.5 * problem.grid.dz();
    problem.centered_update(f_half, f_n, f_n, 0.5 * problem.grid.dz(), z_new)
}

/// One full and one half update.
pub fn advance(state: &StaggeredState, problem: &Problem) -> Result<StaggeredState> {
    let n = state.step_index;
    let f_int = full_step(state, problem)?;
    let mut f_half = half_step(&f_int, &state.f_half, problem)?;
    f_half.z_level = half_level(n, problem.grid.dz());
    Ok(StaggeredState {
        f_int,
        f_half,
        step_index: n + 1,
    })
}

/// Builds the initial staggered pair `(f^0, f^{1/2})`.
///
/// `soliton_data` states whether `f0` is the sampled exact soliton of
/// `problem.params`; the analytic shift is refused otherwise.
pub fn bootstrap(
    f0: &ComplexField,
    method: Bootstrap,
    soliton_data: bool,
    problem: &Problem,
) -> Result<StaggeredState> {
    f0.check_len(problem.grid, "f0")?;
    f0.check_finite()?;
    if f0.z_level != 0.0 {
        return Err(Error::domain("f0", "initial field must sit at z = 0"));
    }
    let dz = problem.grid.dz();
    let f_half = match method {
        Bootstrap::AnalyticHalfShift => {
            if !soliton_data {
                return Err(Error::domain(
                    "bootstrap",
                    "analytic half shift needs soliton initial data",
                ));
            }
            let p = *problem.params;
            sample_on_grid(problem.grid, |y| p.soliton(y, 0.5 * dz), half_level(0, dz))?
        }
        Bootstrap::SelfStart => {
            // predictor from f0, then a midpoint corrector over [0, dz/2]
            let quarter = 0.25 * dz;
            let mut centre = f0.clone();
            let pred = problem.centered_update(f0, &centre, &centre, quarter, half_level(0, dz))?;
            for k in 0..f0.len() {
                centre.set(k, (f0.get(k) + pred.get(k)) * Complex64::new(0.5, 0.0));
            }
            centre.z_level = quarter;
            problem.centered_update(f0, &centre, &centre, quarter, half_level(0, dz))?
        }
    };
    Ok(StaggeredState {
        f_int: f0.clone(),
        f_half,
        step_index: 1,
    })
}
