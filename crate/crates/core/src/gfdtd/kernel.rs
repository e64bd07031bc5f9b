//! The truncated operator series at the heart of each update.
//!
//! With the modulus frozen, one sub-interval of length `2h` advances the field
//! by `2 sum_m (-1)^m / (2m+1)! B^{2m+1}` applied to the centre value, where
//!
//! ```text
//! B u = -(h / (2 beta)) [ d2y(u) + g |f|^2 u ].
//! ```
//!
//! Powers of `B` are built by repeated application, so a step costs
//! `(2M + 1)` stencil sweeps.

use crate::error::{Error, Result};
use crate::gfdtd::{SchemeParams, WaveParams};
use crate::grid::{ComplexField, GridSpec};
use crate::nonlinearity::NonlinearityProfile;
use crate::stencil::{d2y_with_ghosts, GhostPolicy, Ghosts};

/// Which half of the split system a series result feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Coefficients `2 (-1)^m / (2m+1)!`.
    RealUpdate,
    /// Coefficients `2 (-1)^(m+1) / (2m+1)!`.
    ImagUpdate,
}

impl Parity {
    fn coefficient(self, m: usize) -> f64 {
        let factorial: f64 = (1..=2 * m + 1).map(|i| i as f64).product();
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let c = 2.0 * sign / factorial;
        match self {
            Parity::RealUpdate => c,
            Parity::ImagUpdate => -c,
        }
    }
}

/// Everything the series needs besides the target.
pub(crate) struct SeriesInputs<'a> {
    pub nonlin_sq: &'a [f64],
    pub g: &'a [f64],
    pub beta: f64,
    pub dy: f64,
    /// Half of the interval the update spans.
    pub half_interval: f64,
    pub m_terms: usize,
    pub guard: f64,
    /// Ghosts of the target itself.
    pub ghosts: Ghosts,
    /// Factor relating the ghosts of `B u` to those of `u`.
    pub ghost_ratio: f64,
}

impl SeriesInputs<'_> {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new<'a>(
        target_z: f64,
        nonlin_sq: &'a [f64],
        profile: &'a NonlinearityProfile,
        grid: &GridSpec,
        params: &WaveParams,
        scheme: &SchemeParams,
        policy: &GhostPolicy,
        half_interval: f64,
    ) -> SeriesInputs<'a> {
        // Outside the grid the field is the exact soliton, on which
        // (d2y + g|f|^2) acts as multiplication by 1/w^2.
        let ghost_ratio = match policy {
            GhostPolicy::AnalyticSoliton(p) => -half_interval * p.soliton_wavenumber(),
            GhostPolicy::ZeroDirichlet => 0.0,
        };
        SeriesInputs {
            nonlin_sq,
            g: &profile.g,
            beta: params.beta,
            dy: grid.dy(),
            half_interval,
            m_terms: scheme.m_terms,
            guard: scheme.divergence_guard,
            ghosts: policy.ghosts(grid, target_z),
            ghost_ratio,
        }
    }
}

/// `sum_{m=0}^{M} c_m B^{2m+1} target`.
pub(crate) fn series_sum(
    target: &ComplexField,
    inputs: &SeriesInputs,
    parity: Parity,
) -> Result<ComplexField> {
    let n = target.len();
    let scale = -inputs.half_interval / (2.0 * inputs.beta);
    let mut cur = target.clone();
    let mut acc = ComplexField::zeros(n, target.z_level);
    let mut d2 = ComplexField::zeros(n, target.z_level);
    let mut ghosts = inputs.ghosts;

    for power in 1..=2 * inputs.m_terms + 1 {
        d2y_with_ghosts(&cur.re, &cur.im, &ghosts, inputs.dy, &mut d2.re, &mut d2.im);
        let mut peak: f64 = 0.0;
        for k in 0..n {
            let pot = inputs.g[k] * inputs.nonlin_sq[k];
            cur.re[k] = scale * (d2.re[k] + pot * cur.re[k]);
            cur.im[k] = scale * (d2.im[k] + pot * cur.im[k]);
            peak = peak.max(cur.re[k].abs()).max(cur.im[k].abs());
        }
        if !peak.is_finite() || peak > inputs.guard {
            return Err(Error::numerics(
                peak,
                format!(
                    "operator power {power} exceeded the divergence guard {:e}",
                    inputs.guard
                ),
            ));
        }
        ghosts = ghosts.scaled(inputs.ghost_ratio);

        if power % 2 == 1 {
            let c = parity.coefficient((power - 1) / 2);
            for k in 0..n {
                acc.re[k] += c * cur.re[k];
                acc.im[k] += c * cur.im[k];
            }
        }
    }
    Ok(acc)
}

/// Applies the truncated series to each component of `target`, with `|f|^2`
/// frozen at `nonlin_sq` and the interval set by the grid's `dz`.
#[allow(clippy::too_many_arguments)]
pub fn apply_series_operator(
    target: &ComplexField,
    nonlin_sq: &[f64],
    profile: &NonlinearityProfile,
    grid: &GridSpec,
    params: &WaveParams,
    scheme: &SchemeParams,
    parity: Parity,
    policy: &GhostPolicy,
) -> Result<ComplexField> {
    target.check_len(grid, "target")?;
    profile.check_len(grid)?;
    if nonlin_sq.len() != grid.n_y() {
        return Err(Error::domain("nonlin_sq", "length differs from the grid"));
    }
    params.validate()?;
    scheme.validate()?;
    policy.validate()?;
    let inputs = SeriesInputs::new(
        target.z_level,
        nonlin_sq,
        profile,
        grid,
        params,
        scheme,
        policy,
        0.5 * grid.dz(),
    );
    series_sum(target, &inputs, parity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, sample_on_grid};
    use crate::nonlinearity::{uniform_profile, NonlinearityProfile};
    use num_complex::Complex64;

    fn soliton_setup(dz: f64) -> (GridSpec, WaveParams, ComplexField, NonlinearityProfile) {
        let grid = make_grid(-10.0, 10.0, 200, dz).unwrap();
        let params = WaveParams::default();
        let f = sample_on_grid(&grid, |y| params.soliton(y, 0.0), 0.0).unwrap();
        let profile = uniform_profile(&grid, params.g_background).unwrap();
        (grid, params, f, profile)
    }

    #[test]
    fn coefficients() {
        assert_eq!(Parity::RealUpdate.coefficient(0), 2.0);
        assert_eq!(Parity::RealUpdate.coefficient(1), -2.0 / 6.0);
        assert_eq!(Parity::ImagUpdate.coefficient(1), 2.0 / 6.0);
        assert!((Parity::RealUpdate.coefficient(2) - 2.0 / 120.0).abs() < 1e-18);
    }

    #[test]
    fn zero_target_maps_to_zero() {
        let (grid, params, f, profile) = soliton_setup(0.01);
        let zero = ComplexField::zeros(grid.n_y(), 0.0);
        let nl = f.modulus_squared();
        for m in 0..4 {
            for parity in [Parity::RealUpdate, Parity::ImagUpdate] {
                let s = SchemeParams::default().with_m_terms(m);
                let out = apply_series_operator(
                    &zero,
                    &nl,
                    &profile,
                    &grid,
                    &params,
                    &s,
                    parity,
                    &GhostPolicy::ZeroDirichlet,
                )
                .unwrap();
                assert!(out.re.iter().chain(&out.im).all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn first_term_matches_hand_rolled_single_application() {
        // independent scalar evaluation of 2 * B u with g = 0
        let grid = make_grid(-3.0, 3.0, 41, 0.02).unwrap();
        let params = WaveParams::default();
        let u = sample_on_grid(
            &grid,
            |y| Complex64::new((-y * y).exp(), 0.5 * y * (-y * y).exp()),
            0.0,
        )
        .unwrap();
        let profile = NonlinearityProfile::from_values(&grid, vec![0.0; 41], 0.0).unwrap();
        let nl = vec![0.0; 41];
        let s = SchemeParams::default().with_m_terms(0);
        let real = apply_series_operator(
            &u,
            &nl,
            &profile,
            &grid,
            &params,
            &s,
            Parity::RealUpdate,
            &GhostPolicy::ZeroDirichlet,
        )
        .unwrap();
        let imag = apply_series_operator(
            &u,
            &nl,
            &profile,
            &grid,
            &params,
            &s,
            Parity::ImagUpdate,
            &GhostPolicy::ZeroDirichlet,
        )
        .unwrap();

        let dy = grid.dy();
        let sigma = grid.dz() / (dy * dy);
        let get = |v: &[f64], k: isize| {
            if !(0..41).contains(&k) {
                0.0
            } else {
                v[k as usize]
            }
        };
        for k in 0..41isize {
            let lap = |v: &[f64]| {
                (-get(v, k + 2) + 16.0 * get(v, k + 1) - 30.0 * get(v, k) + 16.0 * get(v, k - 1)
                    - get(v, k - 2))
                    / 12.0
            };
            let b_re = -(1.0 / (2.0 * params.beta)) * (sigma / 2.0) * lap(&u.re);
            let b_im = -(1.0 / (2.0 * params.beta)) * (sigma / 2.0) * lap(&u.im);
            let i = k as usize;
            assert!((real.re[i] - 2.0 * b_re).abs() < 1e-13);
            assert!((real.im[i] - 2.0 * b_im).abs() < 1e-13);
            assert!((imag.re[i] + 2.0 * b_re).abs() < 1e-13);
        }
    }

    #[test]
    fn highest_term_scales_as_fifth_power_of_dz() {
        // the M=2 and M=1 sums differ by exactly the B^5 term, and B is linear in dz
        let mut diffs = Vec::new();
        for dz in [0.004, 0.002, 0.001] {
            let (grid, params, f, profile) = soliton_setup(dz);
            let nl = f.modulus_squared();
            let policy = GhostPolicy::AnalyticSoliton(params);
            let run = |m| {
                apply_series_operator(
                    &f,
                    &nl,
                    &profile,
                    &grid,
                    &params,
                    &SchemeParams::default().with_m_terms(m),
                    Parity::RealUpdate,
                    &policy,
                )
                .unwrap()
            };
            let (a, b) = (run(1), run(2));
            let d = (0..grid.n_y())
                .map(|k| (a.get(k) - b.get(k)).norm())
                .fold(0.0, f64::max);
            diffs.push(d);
        }
        for w in diffs.windows(2) {
            let ratio = w[0] / w[1];
            // B acts almost as a scalar on the soliton, so the B^5 term is tiny
            // and carries visible roundoff
            assert!((ratio - 32.0).abs() < 0.01 * 32.0, "ratio {ratio}");
        }
    }

    #[test]
    fn guard_trips_on_huge_values() {
        let (grid, params, f, profile) = soliton_setup(0.01);
        let nl = f.modulus_squared();
        let s = SchemeParams {
            divergence_guard: 1e-6,
            ..SchemeParams::default()
        };
        let r = apply_series_operator(
            &f,
            &nl,
            &profile,
            &grid,
            &params,
            &s,
            Parity::RealUpdate,
            &GhostPolicy::AnalyticSoliton(params),
        );
        assert!(matches!(r, Err(Error::Numerics { .. })));
    }
}
