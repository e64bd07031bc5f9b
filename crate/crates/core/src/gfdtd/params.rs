use num_complex::Complex64;

use crate::analytic::exact_soliton;
use crate::error::{Error, Result};

/// Physical constants of the reduced propagation model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    /// Propagation constant; the scheme divides by `2 beta`.
    pub beta: f64,
    pub omega: f64,
    /// Phase offset between the auxiliary function and the envelope `F`.
    pub phi: f64,
    /// Soliton width.
    pub w: f64,
    /// Nonlinearity of the defect-free medium.
    pub g_background: f64,
}

impl Default for WaveParams {
    fn default() -> Self {
        Self {
            beta: -0.5,
            omega: 1.0,
            phi: 1.0,
            w: 2.0,
            g_background: 5.0,
        }
    }
}

impl WaveParams {
    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.beta, self.omega, self.phi, self.w, self.g_background]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::domain("params", "wave parameters must be finite"));
        }
        if self.beta == 0.0 {
            return Err(Error::domain("beta", "beta must be non-zero"));
        }
        if self.w <= 0.0 {
            return Err(Error::domain(
                "w",
                format!("soliton width {} must be positive", self.w),
            ));
        }
        if self.g_background <= 0.0 {
            return Err(Error::domain(
                "g_background",
                format!(
                    "background nonlinearity {} must be positive",
                    self.g_background
                ),
            ));
        }
        Ok(())
    }

    /// Phase advance per unit z of the bright soliton, `1 / (2 beta w^2)`.
    pub fn soliton_wavenumber(&self) -> f64 {
        1.0 / (2.0 * self.beta * self.w * self.w)
    }

    /// The defect-free soliton of these parameters.
    pub fn soliton(&self, y: f64, z: f64) -> Complex64 {
        exact_soliton(y, z, self.g_background, self.w, self.beta)
            .expect("wave parameters validated before use")
    }

    pub fn with_background(self, g_background: f64) -> Self {
        Self {
            g_background,
            ..self
        }
    }
}

/// How the half level `f^{1/2}` is produced from the initial field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bootstrap {
    /// Sample the exact soliton at `z = dz/2`. Only valid for soliton data.
    AnalyticHalfShift,
    /// Advance the initial field by `dz/2` with the series kernel.
    SelfStart,
}

/// Numerical controls of the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    /// Series truncation `M`: the update uses operator powers up to `2M + 1`.
    pub m_terms: usize,
    /// Abort once any intermediate exceeds this magnitude.
    pub divergence_guard: f64,
    pub steady_tol: f64,
}

impl Default for SchemeParams {
    fn default() -> Self {
        Self {
            m_terms: 1,
            divergence_guard: 1e3,
            steady_tol: 1e-6,
        }
    }
}

impl SchemeParams {
    pub fn with_m_terms(self, m_terms: usize) -> Self {
        Self { m_terms, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.divergence_guard.is_finite() && self.divergence_guard > 0.0) {
            return Err(Error::domain(
                "divergence_guard",
                "must be positive and finite",
            ));
        }
        if !(self.steady_tol.is_finite() && self.steady_tol > 0.0) {
            return Err(Error::domain("steady_tol", "must be positive and finite"));
        }
        Ok(())
    }
}
