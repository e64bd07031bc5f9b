//! Experiment drivers behind the command-line subcommands.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::analytic::{error_norms, reconstruct_electric_field, ErrorNorms, FieldOutput};
use crate::config::{GhostKind, SimulationConfig};
use crate::error::{Error, Result};
use crate::gfdtd::{bootstrap, propagate, Bootstrap, Problem, StepReport};
use crate::grid::{sample_on_grid, ComplexField, GridSpec};
use crate::io::{
    format_float, read_snapshot, write_field_profile, write_snapshot, write_text, MetricsWriter,
};
use crate::nonlinearity::{default_defect_locations, uniform_profile};
use crate::oracle::split_step_propagate;

/// Largest defect count visited by `sweep`.
pub const SWEEP_MAX_DEFECTS: usize = 5;
pub const CONVERGENCE_GRIDS: [usize; 3] = [50, 100, 200];
pub const CONVERGENCE_M_TERMS: [usize; 2] = [0, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    Sweep,
    Convergence,
    Field,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Run => "run",
            Command::Sweep => "sweep",
            Command::Convergence => "convergence",
            Command::Field => "field",
        })
    }
}

/// Outcome of a single propagation.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub label: String,
    pub output_dir: Option<PathBuf>,
    pub defect_indices: Vec<usize>,
    pub steps: Vec<StepReport>,
    pub initial_mass: f64,
    /// Largest `|mass(z) - mass(0)| / mass(0)` over the run.
    pub max_mass_drift: f64,
    /// First z after which every step was flagged steady.
    pub steady_from: Option<f64>,
    /// Against the exact soliton; only for defect-free runs.
    pub exact_error: Option<ErrorNorms>,
    /// L-infinity distance to the split-step reference, when enabled.
    pub oracle_linf: Option<f64>,
    pub final_field: ComplexField,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvergenceKind {
    Spatial,
    SeriesOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub kind: ConvergenceKind,
    pub n_y: usize,
    pub m_terms: usize,
    pub dz: f64,
    /// `None` when the run tripped the divergence guard.
    pub linf: Option<f64>,
    pub observed_order: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: Command,
    pub output_dir: PathBuf,
    pub runs: Vec<RunSummary>,
    pub convergence: Vec<ConvergenceRow>,
    pub field_files: Vec<PathBuf>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.command, self.output_dir.display())?;
        for r in &self.runs {
            write!(
                f,
                "  {}: {} steps, z = {}, max |f| = {:.6}, mass drift = {:.3e}",
                r.label,
                r.steps.len(),
                r.final_field.z_level,
                r.final_field.max_abs(),
                r.max_mass_drift
            )?;
            if let Some(e) = r.exact_error {
                write!(f, ", rel L-inf vs exact = {:.3e}", e.linf_relative)?;
            }
            if let Some(d) = r.oracle_linf {
                write!(f, ", L-inf vs oracle = {d:.3e}")?;
            }
            writeln!(f)?;
        }
        for row in &self.convergence {
            writeln!(
                f,
                "  {:?} n_y={} M={} dz={}: linf={} order={}",
                row.kind,
                row.n_y,
                row.m_terms,
                row.dz,
                row.linf.map_or("diverged".into(), |v| format!("{v:.3e}")),
                row.observed_order.map_or("-".into(), |v| format!("{v:.3}")),
            )?;
        }
        for p in &self.field_files {
            writeln!(f, "  wrote {}", p.display())?;
        }
        Ok(())
    }
}

/// Exact soliton of the configured physics at level `z`.
pub fn soliton_field(config: &SimulationConfig, grid: &GridSpec, z: f64) -> Result<ComplexField> {
    let p = config.physics;
    sample_on_grid(grid, |y| p.soliton(y, z), z)
}

/// Propagates the configured soliton to `run.z_end`, writing outputs into
/// `out` when given.
pub fn simulate(config: &SimulationConfig, out: Option<&Path>, label: &str) -> Result<RunSummary> {
    config.validate()?;
    let grid = config.grid_spec()?;
    let profile = config.profile(&grid)?;
    let scheme = config.scheme_params();
    let policy = config.ghost_policy();
    let params = config.physics;
    let problem = Problem::new(&profile, &grid, &params, &scheme, &policy)?;

    let f0 = soliton_field(config, &grid, 0.0)?;
    let state0 = bootstrap(&f0, config.scheme.bootstrap, true, &problem)?;
    let initial_mass = crate::gfdtd::discrete_mass(&f0, &grid)?;

    let mut metrics = match out {
        Some(dir) => {
            let mut manifest = config.render();
            manifest.push_str(&format!(
                "# defect_indices = {}\n",
                profile
                    .defect_indices()
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            write_text(&dir.join("manifest"), &manifest)?;
            write_snapshot(&f0, &grid, &dir.join(snapshot_name(0)))?;
            Some(MetricsWriter::create(&dir.join("metrics.log"))?)
        }
        None => None,
    };

    let mut io_error = None;
    let every = config.run.snapshot_every;
    let (state, steps) = propagate(&state0, &problem, config.run.z_end, |report, field| {
        if io_error.is_some() {
            return;
        }
        let result = (|| -> Result<()> {
            if let (Some(dir), Some(m)) = (out, metrics.as_mut()) {
                m.record(report)?;
                if report.step % every == 0 {
                    write_snapshot(field, &grid, &dir.join(snapshot_name(report.step)))?;
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            io_error = Some(e);
        }
    })?;
    if let Some(e) = io_error {
        return Err(e);
    }
    if let Some(m) = metrics {
        m.finish()?;
    }

    let final_field = state.f_int;
    let max_mass_drift = steps
        .iter()
        .map(|r| ((r.mass - initial_mass) / initial_mass).abs())
        .fold(0.0, f64::max);
    let steady_from = steady_suffix_start(&steps);

    let defect_free = profile.defects.is_empty()
        && config.medium_background() == params.g_background
        && config.scheme.ghost_policy == GhostKind::AnalyticSoliton;
    let exact_error = if defect_free {
        Some(error_norms(
            &final_field,
            &soliton_field(config, &grid, final_field.z_level)?,
            &grid,
        )?)
    } else {
        None
    };

    let oracle_linf = if config.oracle.enabled {
        let reference = split_step_propagate(
            &f0,
            &profile,
            &grid,
            &params,
            &config.oracle_config(&grid),
            final_field.z_level,
        )?;
        if let Some(dir) = out {
            write_snapshot(&reference, &grid, &dir.join("oracle.csv"))?;
        }
        Some(error_norms(&final_field, &reference, &grid)?.linf)
    } else {
        None
    };

    if let Some(dir) = out {
        write_snapshot(&final_field, &grid, &dir.join("final.csv"))?;
    }

    Ok(RunSummary {
        label: label.to_string(),
        output_dir: out.map(Path::to_path_buf),
        defect_indices: profile.defect_indices(),
        steps,
        initial_mass,
        max_mass_drift,
        steady_from,
        exact_error,
        oracle_linf,
        final_field,
    })
}

fn snapshot_name(step: usize) -> String {
    format!("snapshot_{step:06}.csv")
}

fn steady_suffix_start(steps: &[StepReport]) -> Option<f64> {
    let last_unsteady = steps.iter().rposition(|r| !r.steady);
    match last_unsteady {
        None => steps.first().map(|r| r.z),
        Some(i) => steps.get(i + 1).map(|r| r.z),
    }
}

/// Runs the defect counts `0..=SWEEP_MAX_DEFECTS` with the default layout.
pub fn sweep(config: &SimulationConfig, out: Option<&Path>) -> Result<Vec<RunSummary>> {
    (0..=SWEEP_MAX_DEFECTS)
        .into_par_iter()
        .map(|count| {
            let mut c = config.clone();
            c.defects.locations = default_defect_locations(count);
            let dir = out.map(|d| d.join(format!("defects_{count}")));
            simulate(&c, dir.as_deref(), &format!("defects_{count}"))
        })
        .collect()
}

/// L-infinity error against the exact soliton after propagating the
/// defect-free problem; `None` if the divergence guard tripped.
pub fn soliton_error(
    config: &SimulationConfig,
    n_y: usize,
    m_terms: usize,
    dz: f64,
    z_end: f64,
) -> Result<Option<f64>> {
    let grid = GridSpec::new(config.grid.y_min, config.grid.y_max, n_y, dz)?;
    let params = config.physics;
    let profile = uniform_profile(&grid, params.g_background)?;
    let scheme = config.scheme_params().with_m_terms(m_terms);
    let policy = config.ghost_policy();
    let problem = Problem::new(&profile, &grid, &params, &scheme, &policy)?;
    let f0 = soliton_field(config, &grid, 0.0)?;
    let state0 = bootstrap(&f0, Bootstrap::AnalyticHalfShift, true, &problem)?;
    match propagate(&state0, &problem, z_end, |_, _| {}) {
        Ok((state, _)) => {
            let exact = soliton_field(config, &grid, state.f_int.z_level)?;
            Ok(Some(error_norms(&state.f_int, &exact, &grid)?.linf))
        }
        Err(Error::Numerics { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Observed order between consecutive refinements.
pub fn observed_order(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (h_coarse / h_fine).ln()
}

pub fn convergence(config: &SimulationConfig, out: Option<&Path>) -> Result<Vec<ConvergenceRow>> {
    config.validate()?;
    let dz = config.grid.dz;
    let z_end = config.run.z_end;
    let span = config.grid.y_max - config.grid.y_min;
    let mut rows = Vec::new();

    let mut prev: Option<(f64, f64)> = None;
    for n_y in CONVERGENCE_GRIDS {
        let linf = soliton_error(config, n_y, config.scheme.m_terms, dz, z_end)?;
        let dy = span / (n_y - 1) as f64;
        let observed = match (prev, linf) {
            (Some((e0, h0)), Some(e1)) => Some(observed_order(e0, e1, h0, dy)),
            _ => None,
        };
        prev = linf.map(|e| (e, dy));
        rows.push(ConvergenceRow {
            kind: ConvergenceKind::Spatial,
            n_y,
            m_terms: config.scheme.m_terms,
            dz,
            linf,
            observed_order: observed,
        });
    }
    for m in CONVERGENCE_M_TERMS {
        rows.push(ConvergenceRow {
            kind: ConvergenceKind::SeriesOrder,
            n_y: config.grid.n_y,
            m_terms: m,
            dz,
            linf: soliton_error(config, config.grid.n_y, m, dz, z_end)?,
            observed_order: None,
        });
    }

    if let Some(dir) = out {
        let mut text = String::from("kind,n_y,m_terms,dz,linf,observed_order\n");
        for r in &rows {
            text.push_str(&format!(
                "{},{},{},{},{},{}\n",
                match r.kind {
                    ConvergenceKind::Spatial => "spatial",
                    ConvergenceKind::SeriesOrder => "series",
                },
                r.n_y,
                r.m_terms,
                format_float(r.dz),
                r.linf.map_or("diverged".into(), format_float),
                r.observed_order.map_or(String::new(), format_float),
            ));
        }
        write_text(&dir.join("convergence.csv"), &text)?;
    }
    Ok(rows)
}

/// Output of [`field_profiles`].
#[derive(Debug, Clone)]
pub struct FieldProfiles {
    /// The propagation that produced the field, unless it was read from a snapshot.
    pub run: Option<RunSummary>,
    /// `(t, E_signed)` per requested time.
    pub profiles: Vec<(f64, Vec<f64>)>,
    pub files: Vec<PathBuf>,
}

/// Electric-field profiles for every `t` in `field.t_list`.
pub fn field_profiles(config: &SimulationConfig, out: Option<&Path>) -> Result<FieldProfiles> {
    config.validate()?;
    let grid = config.grid_spec()?;
    let (field, run) = match &config.field.snapshot {
        Some(path) => {
            let snap = read_snapshot(path)?;
            snap.field.check_len(&grid, "snapshot")?;
            (snap.field, None)
        }
        None => {
            let run = simulate(config, out, "steady_state")?;
            (run.final_field.clone(), Some(run))
        }
    };
    let z = field.z_level;
    let mut profiles = Vec::new();
    let mut files = Vec::new();
    for (i, &t) in config.field.t_list.iter().enumerate() {
        let e = reconstruct_electric_field(
            &field,
            &grid,
            config.field.x_sample,
            z,
            t,
            &config.physics,
            FieldOutput::Signed,
        )?;
        if let Some(dir) = out {
            let path = dir.join(format!("efield_{i:03}.csv"));
            write_field_profile(&path, &grid, config.field.x_sample, z, t, &e)?;
            files.push(path);
        }
        profiles.push((t, e));
    }
    Ok(FieldProfiles {
        run,
        profiles,
        files,
    })
}

pub fn execute(config: &SimulationConfig, command: Command) -> Result<RunReport> {
    let out = config.run.output_dir.clone();
    let mut report = RunReport {
        command,
        output_dir: out.clone(),
        runs: Vec::new(),
        convergence: Vec::new(),
        field_files: Vec::new(),
    };
    match command {
        Command::Run => report.runs.push(simulate(config, Some(&out), "run")?),
        Command::Sweep => report.runs = sweep(config, Some(&out))?,
        Command::Convergence => report.convergence = convergence(config, Some(&out))?,
        Command::Field => {
            let fp = field_profiles(config, Some(&out))?;
            report.runs.extend(fp.run);
            report.field_files = fp.files;
        }
    }
    Ok(report)
}
