//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! `[PASS]`/`[FAIL]` line each, and exits non-zero if any criterion failed.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use solfdtd::analytic::{
    electric_field_envelope, envelope_integrals, peak_time, reconstruct_electric_field, FieldOutput,
};
use solfdtd::config::{parse_config, SimulationConfig};
use solfdtd::experiment::{simulate, soliton_error, sweep, RunSummary};
use solfdtd::grid::ComplexField;
use solfdtd::Error;

const SINGLE_DEFECT: &str = "\
defects.locations = 0.0
defects.g_defect = 0.5
physics.g_background = 0.05
";

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }

    fn error(e: Error) -> Self {
        Self::new(false, format!("error: {e}"))
    }
}

/// Closed-form bright soliton, written out independently of the library.
fn soliton(y: f64, z: f64, g: f64, w: f64, beta: f64) -> Complex64 {
    let a = (2.0 / (g * w * w)).sqrt() / (y / w).cosh();
    Complex64::from_polar(a, z / (2.0 * beta * w * w))
}

fn single_defect(z_end: f64) -> SimulationConfig {
    let mut c = parse_config(SINGLE_DEFECT).expect("preset parses");
    c.run.z_end = z_end;
    c
}

fn strict_local_minima(v: &[f64]) -> Vec<usize> {
    (1..v.len() - 1)
        .filter(|&k| v[k] < v[k - 1] && v[k] < v[k + 1])
        .collect()
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &x)| {
            if x > bv {
                (i, x)
            } else {
                (bi, bv)
            }
        })
        .0
}

fn c1_defect_free() -> Outcome {
    let config = SimulationConfig::default();
    let start = Instant::now();
    let run = match simulate(&config, None, "c1") {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let grid = config.grid_spec().unwrap();
    let p = config.physics;
    let f = &run.final_field;
    let z = f.z_level;

    let mut err: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for k in 0..grid.n_y() {
        let exact = soliton(grid.y(k), z, p.g_background, p.w, p.beta);
        err = err.max((f.get(k) - exact).norm());
        peak = peak.max(exact.norm());
    }
    let rel = err / peak;

    // |E| at the grid point nearest y = 0, evaluated at its maximizing t
    let k0 = grid.nearest_index(0.0);
    let t = peak_time(f.get(k0), z, &p);
    let e = reconstruct_electric_field(f, &grid, 0.0, z, t, &p, FieldOutput::Magnitude).unwrap();
    let target = p.omega * 0.316228;
    let e_rel = (e[k0] - target).abs() / target;

    Outcome::new(
        rel <= 1e-3 && e_rel <= 1e-3 && elapsed <= 1.0,
        format!("rel L-inf {rel:.3e} (<= 1e-3), |E| peak {:.6} rel {e_rel:.3e} (<= 1e-3), runtime {elapsed:.3} s (<= 1 s)", e[k0]),
    )
}

fn c2_mass() -> Outcome {
    let free = simulate(&SimulationConfig::default(), None, "c2a");
    let defect = simulate(&single_defect(1.0), None, "c2b");
    match (free, defect) {
        (Ok(a), Ok(b)) => Outcome::new(
            a.max_mass_drift <= 1e-6 && b.max_mass_drift <= 1e-4,
            format!(
                "defect-free drift {:.3e} (<= 1e-6), single-defect drift {:.3e} (<= 1e-4)",
                a.max_mass_drift, b.max_mass_drift
            ),
        ),
        (Err(e), _) | (_, Err(e)) => Outcome::error(e),
    }
}

fn c3_spatial_order() -> Outcome {
    let config = SimulationConfig::default();
    let grids = [50usize, 100, 200];
    let mut errs = Vec::new();
    for n in grids {
        match soliton_error(&config, n, 1, 1e-4, 0.1) {
            Ok(Some(e)) => errs.push(e),
            Ok(None) => return Outcome::new(false, format!("n_y = {n} diverged")),
            Err(e) => return Outcome::error(e),
        }
    }
    let dy = |n: usize| 20.0 / (n - 1) as f64;
    let orders: Vec<f64> = (0..2)
        .map(|i| (errs[i] / errs[i + 1]).ln() / (dy(grids[i]) / dy(grids[i + 1])).ln())
        .collect();
    Outcome::new(
        orders.iter().all(|o| (3.5..=4.5).contains(o)),
        format!(
            "errors {:.3e} {:.3e} {:.3e}, observed orders {:.3} {:.3} (in [3.5, 4.5])",
            errs[0], errs[1], errs[2], orders[0], orders[1]
        ),
    )
}

fn c4_series_order() -> Outcome {
    let config = SimulationConfig::default();
    let e0 = soliton_error(&config, 200, 0, 0.05, 1.0);
    let e1 = soliton_error(&config, 200, 1, 0.05, 1.0);
    let show = |e: &Option<f64>| e.map_or("diverged".to_string(), |v| format!("{v:.3e}"));
    match (e0, e1) {
        (Ok(a), Ok(b)) => Outcome::new(
            matches!((a, b), (Some(x), Some(y)) if y < x),
            format!(
                "dz = 0.05: error(M=0) {}, error(M=1) {}",
                show(&a),
                show(&b)
            ),
        ),
        (Err(e), _) | (_, Err(e)) => Outcome::error(e),
    }
}

fn c5_oracle() -> Outcome {
    let mut config = single_defect(1.0);
    config.oracle.enabled = true;
    match simulate(&config, None, "c5") {
        Ok(RunSummary {
            oracle_linf: Some(d),
            ..
        }) => Outcome::new(d <= 1e-3, format!("L-inf vs split-step {d:.3e} (<= 1e-3)")),
        Ok(_) => Outcome::new(false, "oracle did not run"),
        Err(e) => Outcome::error(e),
    }
}

fn c6_steady() -> Outcome {
    match simulate(&single_defect(2.0), None, "c6") {
        Ok(run) => {
            let late: Vec<_> = run.steps.iter().filter(|r| r.z > 1.0 + 1e-9).collect();
            let unsteady = late.iter().filter(|r| !r.steady).count();
            Outcome::new(
                !late.is_empty() && unsteady == 0,
                format!(
                    "{unsteady} of {} steps with z > 1 not steady at tol 1e-6",
                    late.len()
                ),
            )
        }
        Err(e) => Outcome::error(e),
    }
}

fn c7_defect_dip() -> Outcome {
    let config = single_defect(2.0);
    let mut background = config.clone();
    background.defects.locations.clear();
    let (run, base) = match (
        simulate(&config, None, "c7"),
        simulate(&background, None, "c7b"),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::error(e),
    };
    let p = config.physics;
    let e = electric_field_envelope(&run.final_field, 0.0, &p);
    let b = electric_field_envelope(&base.final_field, 0.0, &p);
    let k = run.defect_indices[0];
    let second = e[k - 1] - 2.0 * e[k] + e[k + 1];
    let is_min = e[k] < e[k - 1] && e[k] < e[k + 1] && second > 0.0;
    let worst = (0..e.len())
        .filter(|&j| j.abs_diff(k) >= 5)
        .map(|j| (e[j] - b[j]).abs() / b[j])
        .fold(0.0, f64::max);
    Outcome::new(
        is_min && worst <= 0.05,
        format!(
            "second difference at defect {second:.3e} (> 0, strict minimum: {is_min}), worst relative deviation away from defect {worst:.3e} (<= 0.05)"
        ),
    )
}

fn c8_multi_defect() -> Outcome {
    let runs = match sweep(&single_defect(1.0), None) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, format!("sweep aborted: {e}")),
    };
    let p = single_defect(1.0).physics;
    let mut minima_ok = true;
    let mut counts = Vec::new();
    let mut peaks = Vec::new();
    for run in &runs {
        let e = electric_field_envelope(&run.final_field, 0.0, &p);
        let minima = strict_local_minima(&e);
        counts.push(minima.len());
        let each = run
            .defect_indices
            .iter()
            .all(|&d| minima.iter().filter(|&&m| m.abs_diff(d) <= 2).count() == 1);
        minima_ok &= each && minima.len() == run.defect_indices.len();
        peaks.push(argmax(&e));
    }
    let same_peak = peaks.windows(2).all(|w| w[0] == w[1]);
    Outcome::new(
        minima_ok && same_peak,
        format!(
            "{} runs without guard trips, local minima per run {counts:?} (want 0..=5), peak indices {peaks:?} (want all equal)",
            runs.len()
        ),
    )
}

fn c9_time_oscillation() -> Outcome {
    let config = single_defect(1.0);
    let run = match simulate(&config, None, "c9") {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let p = config.physics;
    let grid = config.grid_spec().unwrap();
    let f: &ComplexField = &run.final_field;
    let z = f.z_level;
    let k = grid.nearest_index(0.0);

    // E(t) = -omega A(0) Im[c exp(-i omega t)] with c = f exp(i (phi + beta) z)
    let c = f.get(k) * Complex64::from_polar(1.0, (p.phi + p.beta) * z);
    let amp = p.omega * c.norm();
    let mut worst: f64 = 0.0;
    for t in [0.0, 2.0, 4.0, 6.0, 8.0, 10.0] {
        let e =
            reconstruct_electric_field(f, &grid, 0.0, z, t, &p, FieldOutput::Signed).unwrap()[k];
        let e_next = reconstruct_electric_field(
            f,
            &grid,
            0.0,
            z,
            t + 2.0 * PI / p.omega,
            &p,
            FieldOutput::Signed,
        )
        .unwrap()[k];
        let model = -p.omega * (c.im * (p.omega * t).cos() - c.re * (p.omega * t).sin());
        worst = worst
            .max((e - model).abs() / amp)
            .max((e_next - e).abs() / amp);
    }
    Outcome::new(
        worst <= 1e-10,
        format!("largest deviation from sinusoid of period 2 pi / omega {worst:.3e} (<= 1e-10 relative)"),
    )
}

fn c10_envelope_integrals() -> Outcome {
    match envelope_integrals(f64::INFINITY, 400) {
        Ok(v) => {
            let rel = [
                (v.i1 - PI / 2.0).abs() / (PI / 2.0),
                (v.i2 + PI / 4.0).abs() / (PI / 4.0),
                (v.i3 - 5.0 * PI / 16.0).abs() / (5.0 * PI / 16.0),
            ];
            Outcome::new(
                rel.iter().all(|&r| r <= 1e-6),
                format!(
                    "I1 {:.12} I2 {:.12} I3 {:.12}, relative errors {:.1e} {:.1e} {:.1e} (<= 1e-6)",
                    v.i1, v.i2, v.i3, rel[0], rel[1], rel[2]
                ),
            )
        }
        Err(e) => Outcome::error(e),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("defect-free reproduction", c1_defect_free),
        ("mass conservation", c2_mass),
        ("spatial order", c3_spatial_order),
        ("series-order benefit", c4_series_order),
        ("oracle equivalence on defects", c5_oracle),
        ("steady state", c6_steady),
        ("defect dip", c7_defect_dip),
        ("multi-defect robustness", c8_multi_defect),
        ("time oscillation", c9_time_oscillation),
        ("envelope integrals", c10_envelope_integrals),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
