//! Closed-form references: the bright soliton, the transverse envelope and
//! its overlap integrals, reconstruction of the physical electric field, and
//! error norms between fields.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gfdtd::WaveParams;
use crate::grid::{ComplexField, GridSpec};

/// Bright soliton `(1/w) sqrt(2/g) sech(y/w) exp(i z / (2 beta w^2))`.
pub fn exact_soliton(y: f64, z: f64, g: f64, w: f64, beta: f64) -> Result<Complex64> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::domain("g", format!("{g} must be positive")));
    }
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::domain("w", format!("{w} must be positive")));
    }
    if !beta.is_finite() || beta == 0.0 {
        return Err(Error::domain("beta", "beta must be finite and non-zero"));
    }
    let amplitude = (2.0 / g).sqrt() / w / (y / w).cosh();
    let phase = z / (2.0 * beta * w * w);
    Ok(Complex64::from_polar(amplitude, phase))
}

/// Transverse confinement profile `1 / (1 + x^2)`.
pub fn envelope(x: f64) -> f64 {
    1.0 / (1.0 + x * x)
}

fn envelope_second_derivative(x: f64) -> f64 {
    let d = 1.0 + x * x;
    (6.0 * x * x - 2.0) / (d * d * d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeIntegrals {
    /// `int |A|^2 dx`
    pub i1: f64,
    /// `int A A'' dx`
    pub i2: f64,
    /// `int |A|^4 dx`
    pub i3: f64,
}

const GAUSS5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GAUSS5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite five-point Gauss-Legendre rule on `[a, b]`.
fn gauss_composite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GAUSS5_NODES.iter().zip(GAUSS5_WEIGHTS) {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

fn integrals_with_panels(x_half_width: f64, panels: usize) -> [f64; 3] {
    let integrands: [fn(f64) -> f64; 3] = [
        |x| envelope(x).powi(2),
        |x| envelope(x) * envelope_second_derivative(x),
        |x| envelope(x).powi(4),
    ];
    integrands.map(|h| {
        if x_half_width.is_infinite() {
            // x = tan(theta) maps the real line onto (-pi/2, pi/2)
            let mapped = |theta: f64| {
                let c = theta.cos();
                h(theta.tan()) / (c * c)
            };
            gauss_composite(mapped, -FRAC_PI_2, FRAC_PI_2, panels)
        } else {
            gauss_composite(h, -x_half_width, x_half_width, panels)
        }
    })
}

/// Overlap integrals of [`envelope`] over `[-x_half_width, x_half_width]`
/// (`f64::INFINITY` for the full line).
pub fn envelope_integrals(
    x_half_width: f64,
    quadrature_points: usize,
) -> Result<EnvelopeIntegrals> {
    if quadrature_points < 100 {
        return Err(Error::domain(
            "quadrature_points",
            "need at least 100 points",
        ));
    }
    if x_half_width.is_nan() || x_half_width <= 0.0 {
        return Err(Error::domain("x_half_width", "must be positive"));
    }
    let panels = quadrature_points.div_ceil(GAUSS5_NODES.len());
    let coarse = integrals_with_panels(x_half_width, panels);
    let fine = integrals_with_panels(x_half_width, 2 * panels);
    for (c, f) in coarse.iter().zip(&fine) {
        let rel = (c - f).abs() / f.abs().max(f64::MIN_POSITIVE);
        if !f.is_finite() || rel > 1e-8 {
            return Err(Error::numerics(
                f.abs(),
                format!("quadrature not converged (relative change {rel:e})"),
            ));
        }
    }
    Ok(EnvelopeIntegrals {
        i1: fine[0],
        i2: fine[1],
        i3: fine[2],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOutput {
    Signed,
    Magnitude,
}

/// `E = -dA/dt` on the grid, where `A = Re[A(x) F(z,y) exp(i(beta z - omega t))]`
/// and `F = f exp(i phi z)`. The time derivative is taken analytically.
pub fn reconstruct_electric_field(
    f: &ComplexField,
    grid: &GridSpec,
    x: f64,
    z: f64,
    t: f64,
    params: &WaveParams,
    output: FieldOutput,
) -> Result<Vec<f64>> {
    f.check_len(grid, "f")?;
    if ![x, z, t, params.beta, params.omega, params.phi]
        .iter()
        .all(|v| v.is_finite())
    {
        return Err(Error::domain("params", "inputs must be finite"));
    }
    let carrier = Complex64::from_polar(1.0, params.phi * z + params.beta * z - params.omega * t);
    let scale = -params.omega * envelope(x);
    Ok((0..f.len())
        .map(|k| {
            let e = scale * (f.get(k) * carrier).im;
            match output {
                FieldOutput::Signed => e,
                FieldOutput::Magnitude => e.abs(),
            }
        })
        .collect())
}

/// Peak of `|E|` over one optical cycle at each grid point: `|omega A(x) f|`.
pub fn electric_field_envelope(f: &ComplexField, x: f64, params: &WaveParams) -> Vec<f64> {
    let scale = (params.omega * envelope(x)).abs();
    f.abs_values().into_iter().map(|a| scale * a).collect()
}

/// A time at which `|E|` reaches its cycle maximum for the field value `f_k`
/// at level `z`.
pub fn peak_time(f_k: Complex64, z: f64, params: &WaveParams) -> f64 {
    (f_k.arg() + (params.phi + params.beta) * z - FRAC_PI_2) / params.omega
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l2: f64,
    pub linf: f64,
    pub linf_relative: f64,
}

pub fn error_norms(
    numeric: &ComplexField,
    reference: &ComplexField,
    grid: &GridSpec,
) -> Result<ErrorNorms> {
    numeric.check_len(grid, "numeric")?;
    reference.check_len(grid, "reference")?;
    let mut sum_sq = 0.0;
    let mut linf: f64 = 0.0;
    for k in 0..grid.n_y() {
        let d = (numeric.get(k) - reference.get(k)).norm();
        sum_sq += d * d;
        linf = linf.max(d);
    }
    let ref_max = reference.max_abs();
    if ref_max == 0.0 {
        return Err(Error::domain(
            "reference",
            "relative norm undefined for an identically zero reference",
        ));
    }
    Ok(ErrorNorms {
        l2: (grid.dy() * sum_sq).sqrt(),
        linf,
        linf_relative: linf / ref_max,
    })
}
