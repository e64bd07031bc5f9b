use crate::error::{Error, Result};
use crate::grid::{ComplexField, GridSpec};

/// `dy * sum |f|^2`.
pub fn discrete_mass(field: &ComplexField, grid: &GridSpec) -> Result<f64> {
    field.check_len(grid, "field")?;
    field.check_finite()?;
    Ok(grid.dy() * field.modulus_squared().iter().sum::<f64>())
}

/// Whether the modulus profile has stopped changing between `f_a` and `f_b`.
///
/// Compares `max_k ||f_a(k)| - |f_b(k)||` against `tol * max(1, max|f_b|)`.
/// The moduli are compared because even an exactly stationary soliton keeps
/// rotating its phase along z.
pub fn steady_state_reached(f_a: &ComplexField, f_b: &ComplexField, tol: f64) -> Result<bool> {
    if f_a.len() != f_b.len() {
        return Err(Error::domain(
            "f_a",
            format!("fields have {} and {} points", f_a.len(), f_b.len()),
        ));
    }
    let diff = (0..f_a.len())
        .map(|k| (f_a.abs(k) - f_b.abs(k)).abs())
        .fold(0.0, f64::max);
    Ok(diff / f_b.max_abs().max(1.0) <= tol)
}
