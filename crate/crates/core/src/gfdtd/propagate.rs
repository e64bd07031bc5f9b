use super::step::{advance, Problem};
use super::{discrete_mass, steady_state_reached};
use crate::error::{Error, Result};
use crate::grid::{ComplexField, StaggeredState};

/// Diagnostics recorded after each completed step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    /// Integer level just produced.
    pub step: usize,
    pub z: f64,
    pub mass: f64,
    pub max_abs_f: f64,
    /// Modulus unchanged (within `steady_tol`) since the previous integer level.
    pub steady: bool,
}

/// Number of `dz` steps spanning `[z_start, z_end]`.
pub(crate) fn step_count(z_start: f64, z_end: f64, dz: f64) -> Result<usize> {
    let span = z_end - z_start;
    let slack = 1e-9 * z_end.abs().max(1.0);
    if !z_end.is_finite() || span < -slack {
        return Err(Error::domain(
            "z_end",
            format!("z_end = {z_end} precedes the current level {z_start}"),
        ));
    }
    let steps = (span / dz).round().max(0.0);
    if (steps * dz - span).abs() > slack {
        return Err(Error::domain(
            "z_end",
            format!("distance {span} is not a whole number of steps of {dz}"),
        ));
    }
    Ok(steps as usize)
}

/// Advances `state0` until its integer level reaches `z_end`.
///
/// `observer` sees every report together with the new integer-level field.
pub fn propagate<O>(
    state0: &StaggeredState,
    problem: &Problem,
    z_end: f64,
    mut observer: O,
) -> Result<(StaggeredState, Vec<StepReport>)>
where
    O: FnMut(&StepReport, &ComplexField),
{
    let steps = step_count(state0.z(), z_end, problem.grid.dz())?;
    let mut state = state0.clone();
    let mut reports = Vec::with_capacity(steps);
    for _ in 0..steps {
        let n = state.step_index;
        let next = advance(&state, problem).map_err(|e| e.at_step(n))?;
        let report = StepReport {
            step: n,
            z: next.f_int.z_level,
            mass: discrete_mass(&next.f_int, problem.grid).map_err(|e| e.at_step(n))?,
            max_abs_f: next.f_int.max_abs(),
            steady: steady_state_reached(&next.f_int, &state.f_int, problem.scheme.steady_tol)?,
        };
        observer(&report, &next.f_int);
        reports.push(report);
        state = next;
    }
    Ok((state, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_counts() {
        assert_eq!(step_count(0.0, 1.0, 0.01).unwrap(), 100);
        assert_eq!(step_count(0.3, 0.3, 0.01).unwrap(), 0);
        assert_eq!(step_count(0.0, 0.1, 1e-4).unwrap(), 1000);
        assert!(step_count(0.0, 1.005, 0.01).is_err());
        assert!(step_count(1.0, 0.5, 0.01).is_err());
    }
}
