//! Discretization geometry and the field containers shared by the solvers.
//!
//! The transverse coordinate `y` is sampled on `n_y` points that include both
//! endpoints, so `dy = (y_max - y_min) / (n_y - 1)`. The propagation step `dz`
//! travels with the grid because the scheme's dimensionless ratio
//! `sigma = dz / dy^2` depends on both.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest grid the five-point stencil can work on.
pub const MIN_POINTS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    y_min: f64,
    y_max: f64,
    n_y: usize,
    dz: f64,
    dy: f64,
}

impl GridSpec {
    pub fn new(y_min: f64, y_max: f64, n_y: usize, dz: f64) -> Result<Self> {
        if !y_min.is_finite() || !y_max.is_finite() {
            return Err(Error::domain("y_min/y_max", "bounds must be finite"));
        }
        if y_max <= y_min {
            return Err(Error::domain(
                "y_max",
                format!("y_max ({y_max}) must exceed y_min ({y_min})"),
            ));
        }
        if n_y < MIN_POINTS {
            return Err(Error::domain(
                "n_y",
                format!("n_y = {n_y} is too small, need at least {MIN_POINTS}"),
            ));
        }
        if !(dz.is_finite() && dz > 0.0) {
            return Err(Error::domain("dz", format!("dz = {dz} must be positive")));
        }
        let dy = (y_max - y_min) / (n_y - 1) as f64;
        Ok(Self {
            y_min,
            y_max,
            n_y,
            dz,
            dy,
        })
    }

    pub fn y_min(&self) -> f64 {
        self.y_min
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn dz(&self) -> f64 {
        self.dz
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    /// `dz / dy^2`.
    pub fn sigma(&self) -> f64 {
        self.dz / (self.dy * self.dy)
    }

    /// Coordinate of grid point `k`. The last point is pinned to `y_max`.
    pub fn y(&self, k: usize) -> f64 {
        if k + 1 == self.n_y {
            self.y_max
        } else {
            self.y_min + k as f64 * self.dy
        }
    }

    /// Coordinate of an arbitrary (possibly off-grid) signed index.
    pub fn y_signed(&self, k: isize) -> f64 {
        if k >= 0 && (k as usize) < self.n_y {
            self.y(k as usize)
        } else {
            self.y_min + k as f64 * self.dy
        }
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n_y).map(|k| self.y(k)).collect()
    }

    /// Index of the grid point closest to `y`; ties go to the smaller index.
    pub fn nearest_index(&self, y: f64) -> usize {
        let t = (y - self.y_min) / self.dy;
        let lo = t.floor().clamp(0.0, (self.n_y - 1) as f64) as usize;
        let hi = (lo + 1).min(self.n_y - 1);
        let d_lo = (y - self.y(lo)).abs();
        let d_hi = (self.y(hi) - y).abs();
        // ties within roundoff resolve to the lower index
        if d_hi < d_lo - 1e-9 * self.dy {
            hi
        } else {
            lo
        }
    }

    /// Same grid with a different propagation step.
    pub fn with_dz(&self, dz: f64) -> Result<Self> {
        Self::new(self.y_min, self.y_max, self.n_y, dz)
    }
}

/// Builds a [`GridSpec`]; see [`GridSpec::new`].
pub fn make_grid(y_min: f64, y_max: f64, n_y: usize, dz: f64) -> Result<GridSpec> {
    GridSpec::new(y_min, y_max, n_y, dz)
}

/// The auxiliary field at one z-level, split into real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub z_level: f64,
}

impl ComplexField {
    pub fn new(re: Vec<f64>, im: Vec<f64>, z_level: f64) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::domain(
                "im",
                format!(
                    "real part has {} entries, imaginary part {}",
                    re.len(),
                    im.len()
                ),
            ));
        }
        Ok(Self { re, im, z_level })
    }

    pub fn zeros(n: usize, z_level: f64) -> Self {
        Self {
            re: vec![0.0; n],
            im: vec![0.0; n],
            z_level,
        }
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn get(&self, k: usize) -> Complex64 {
        Complex64::new(self.re[k], self.im[k])
    }

    pub fn set(&mut self, k: usize, v: Complex64) {
        self.re[k] = v.re;
        self.im[k] = v.im;
    }

    pub fn abs(&self, k: usize) -> f64 {
        self.re[k].hypot(self.im[k])
    }

    pub fn abs_values(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.abs(k)).collect()
    }

    /// Pointwise `|f|^2`.
    pub fn modulus_squared(&self) -> Vec<f64> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| r * r + i * i)
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        (0..self.len()).map(|k| self.abs(k)).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.re.iter().chain(&self.im).all(|v| v.is_finite())
    }

    pub(crate) fn check_len(&self, grid: &GridSpec, what: &'static str) -> Result<()> {
        if self.len() != grid.n_y() {
            return Err(Error::domain(
                what,
                format!("field has {} points, grid has {}", self.len(), grid.n_y()),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::numerics(
                self.max_abs(),
                "field contains non-finite values",
            ))
        }
    }
}

/// Samples `f` at every grid point.
pub fn sample_on_grid<F>(grid: &GridSpec, f: F, z_level: f64) -> Result<ComplexField>
where
    F: Fn(f64) -> Complex64,
{
    let mut field = ComplexField::zeros(grid.n_y(), z_level);
    for k in 0..grid.n_y() {
        let v = f(grid.y(k));
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::numerics(
                f64::INFINITY,
                format!("sampled value at y = {} is not finite", grid.y(k)),
            ));
        }
        field.set(k, v);
    }
    Ok(field)
}

/// The pair of field copies advanced by the staggered scheme.
///
/// `f_int` lives at `z = (n - 1) dz` and `f_half` at `z = (n - 1/2) dz`,
/// where `n` is `step_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct StaggeredState {
    pub f_int: ComplexField,
    pub f_half: ComplexField,
    pub step_index: usize,
}

impl StaggeredState {
    pub fn z(&self) -> f64 {
        self.f_int.z_level
    }
}

/// z-coordinate of integer level `n` (no accumulated drift).
pub(crate) fn integer_level(n: usize, dz: f64) -> f64 {
    n as f64 * dz
}

/// z-coordinate of level `n + 1/2`.
pub(crate) fn half_level(n: usize, dz: f64) -> f64 {
    (n as f64 + 0.5) * dz
}
