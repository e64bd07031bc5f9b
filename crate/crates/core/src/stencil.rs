//! Fourth-order central approximation of `d^2/dy^2`.
//!
//! The five-point stencil `[-1, 16, -30, 16, -1] / (12 dy^2)` reaches two
//! points beyond each end of the grid. Those ghost values come from a
//! [`GhostPolicy`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gfdtd::WaveParams;
use crate::grid::{ComplexField, GridSpec};

/// Source of the two off-grid values needed on each side of the stencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GhostPolicy {
    /// Exterior follows the defect-free soliton of the given parameters,
    /// evaluated at the field's own z-level.
    AnalyticSoliton(WaveParams),
    ZeroDirichlet,
}

/// Ghost values at grid indices `-2, -1` (`left`) and `n, n + 1` (`right`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ghosts {
    pub left: [Complex64; 2],
    pub right: [Complex64; 2],
}

impl Ghosts {
    pub const ZERO: Ghosts = Ghosts {
        left: [Complex64::new(0.0, 0.0); 2],
        right: [Complex64::new(0.0, 0.0); 2],
    };

    pub fn scaled(&self, s: f64) -> Ghosts {
        Ghosts {
            left: [self.left[0] * s, self.left[1] * s],
            right: [self.right[0] * s, self.right[1] * s],
        }
    }

    fn re(&self) -> [f64; 4] {
        [
            self.left[0].re,
            self.left[1].re,
            self.right[0].re,
            self.right[1].re,
        ]
    }

    fn im(&self) -> [f64; 4] {
        [
            self.left[0].im,
            self.left[1].im,
            self.right[0].im,
            self.right[1].im,
        ]
    }
}

impl GhostPolicy {
    pub fn validate(&self) -> Result<()> {
        match self {
            GhostPolicy::AnalyticSoliton(p) => p.validate(),
            GhostPolicy::ZeroDirichlet => Ok(()),
        }
    }

    pub fn ghosts(&self, grid: &GridSpec, z: f64) -> Ghosts {
        match self {
            GhostPolicy::ZeroDirichlet => Ghosts::ZERO,
            GhostPolicy::AnalyticSoliton(p) => {
                let n = grid.n_y() as isize;
                let at = |k: isize| p.soliton(grid.y_signed(k), z);
                Ghosts {
                    left: [at(-2), at(-1)],
                    right: [at(n), at(n + 1)],
                }
            }
        }
    }
}

/// Second derivative of one real component. `ghost` is `[u(-2), u(-1), u(n), u(n+1)]`.
pub(crate) fn d2y_component(u: &[f64], ghost: [f64; 4], dy: f64, out: &mut [f64]) {
    let n = u.len();
    debug_assert!(n >= 4 && out.len() == n);
    let scale = 1.0 / (12.0 * dy * dy);
    let at = |k: isize| -> f64 {
        if k < 0 {
            ghost[(k + 2) as usize]
        } else if k as usize >= n {
            ghost[2 + (k as usize - n)]
        } else {
            u[k as usize]
        }
    };
    let edge = |k: usize| -> f64 {
        let k = k as isize;
        (-at(k + 2) + 16.0 * at(k + 1) - 30.0 * at(k) + 16.0 * at(k - 1) - at(k - 2)) * scale
    };
    for k in [0, 1, n - 2, n - 1] {
        out[k] = edge(k);
    }
    for k in 2..n - 2 {
        out[k] = (-u[k + 2] + 16.0 * u[k + 1] - 30.0 * u[k] + 16.0 * u[k - 1] - u[k - 2]) * scale;
    }
}

/// Applies the stencil to both components with explicit ghost values.
pub(crate) fn d2y_with_ghosts(
    field_re: &[f64],
    field_im: &[f64],
    ghosts: &Ghosts,
    dy: f64,
    out_re: &mut [f64],
    out_im: &mut [f64],
) {
    d2y_component(field_re, ghosts.re(), dy, out_re);
    d2y_component(field_im, ghosts.im(), dy, out_im);
}

/// Approximates `d^2 f / dy^2` at every grid point.
pub fn apply_d2y(
    field: &ComplexField,
    grid: &GridSpec,
    policy: &GhostPolicy,
) -> Result<ComplexField> {
    field.check_len(grid, "field")?;
    policy.validate()?;
    let ghosts = policy.ghosts(grid, field.z_level);
    let mut out = ComplexField::zeros(grid.n_y(), field.z_level);
    d2y_with_ghosts(
        &field.re,
        &field.im,
        &ghosts,
        grid.dy(),
        &mut out.re,
        &mut out.im,
    );
    if !out.is_finite() {
        return Err(Error::numerics(
            out.max_abs(),
            "second derivative is not finite",
        ));
    }
    Ok(out)
}
