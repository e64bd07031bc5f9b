//! Spatial Kerr coefficient `g(y)`, including point defects.

use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Spacing between neighbouring defects in the default multi-defect layout.
pub const DEFAULT_DEFECT_SPACING: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defect {
    pub y_location: f64,
    pub grid_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearityProfile {
    pub g: Vec<f64>,
    pub background: f64,
    pub defects: Vec<Defect>,
}

impl NonlinearityProfile {
    /// Arbitrary nonnegative profile without defect bookkeeping.
    pub fn from_values(grid: &GridSpec, g: Vec<f64>, background: f64) -> Result<Self> {
        if g.len() != grid.n_y() {
            return Err(Error::domain(
                "g",
                format!("profile has {} entries, grid has {}", g.len(), grid.n_y()),
            ));
        }
        if g.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::domain("g", "entries must be finite and nonnegative"));
        }
        Ok(Self {
            g,
            background,
            defects: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn defect_indices(&self) -> Vec<usize> {
        self.defects.iter().map(|d| d.grid_index).collect()
    }

    pub(crate) fn check_len(&self, grid: &GridSpec) -> Result<()> {
        if self.len() != grid.n_y() {
            return Err(Error::domain(
                "profile",
                format!(
                    "profile has {} entries, grid has {}",
                    self.len(),
                    grid.n_y()
                ),
            ));
        }
        Ok(())
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, format!("{v} must be positive")))
    }
}

pub fn uniform_profile(grid: &GridSpec, g: f64) -> Result<NonlinearityProfile> {
    positive("g", g)?;
    Ok(NonlinearityProfile {
        g: vec![g; grid.n_y()],
        background: g,
        defects: Vec::new(),
    })
}

/// One-cell defects at the grid points nearest `locations`.
pub fn point_defect_profile(
    grid: &GridSpec,
    locations: &[f64],
    g_defect: f64,
    g_background: f64,
) -> Result<NonlinearityProfile> {
    point_defect_profile_with_width(grid, locations, g_defect, g_background, 1)
}

/// Defects spanning `width_cells` grid points each, centred on the nearest
/// point (even widths extend one cell further to the right).
pub fn point_defect_profile_with_width(
    grid: &GridSpec,
    locations: &[f64],
    g_defect: f64,
    g_background: f64,
    width_cells: usize,
) -> Result<NonlinearityProfile> {
    positive("g_defect", g_defect)?;
    positive("g_background", g_background)?;
    if width_cells == 0 {
        return Err(Error::domain(
            "width_cells",
            "defect width must be at least one cell",
        ));
    }
    let n = grid.n_y();
    let lo_y = grid.y_min() + 2.0 * grid.dy();
    let hi_y = grid.y_max() - 2.0 * grid.dy();
    let slack = 1e-9 * grid.dy();

    let mut profile = uniform_profile(grid, g_background)?;
    let mut occupied = vec![false; n];
    for &y in locations {
        if !y.is_finite() || y < lo_y - slack || y > hi_y + slack {
            return Err(Error::domain(
                "locations",
                format!("defect at y = {y} lies outside [{lo_y}, {hi_y}]"),
            ));
        }
        let center = grid.nearest_index(y);
        let first = center as isize - (width_cells as isize - 1) / 2;
        let last = first + width_cells as isize - 1;
        if first < 2 || last > n as isize - 3 {
            return Err(Error::domain(
                "locations",
                format!("defect at y = {y} reaches into the boundary band"),
            ));
        }
        for (k, slot) in occupied
            .iter_mut()
            .enumerate()
            .take(last as usize + 1)
            .skip(first as usize)
        {
            if *slot {
                return Err(Error::domain(
                    "locations",
                    format!("defect at y = {y} collides with another defect at grid index {k}"),
                ));
            }
            *slot = true;
            profile.g[k] = g_defect;
        }
        profile.defects.push(Defect {
            y_location: y,
            grid_index: center,
        });
    }
    Ok(profile)
}

/// Evenly spaced defect positions, symmetric about `y = 0`.
pub fn default_defect_locations(count: usize) -> Vec<f64> {
    let mid = (count as f64 - 1.0) / 2.0;
    (0..count)
        .map(|i| (i as f64 - mid) * DEFAULT_DEFECT_SPACING)
        .collect()
}
