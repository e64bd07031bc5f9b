//! Simulation configuration in a line-oriented `section.key = value` format.
//!
//! ```text
//! # single point defect
//! defects.locations = 0.0
//! defects.g_defect = 0.5
//! physics.g_background = 0.05
//! ```
//!
//! Absent keys take their defaults, which reproduce the defect-free
//! reference run. Unknown or repeated keys are rejected.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::gfdtd::{Bootstrap, SchemeParams, WaveParams};
use crate::grid::GridSpec;
use crate::nonlinearity::{point_defect_profile_with_width, NonlinearityProfile};
use crate::oracle::{OracleConfig, PaddingFill};
use crate::stencil::GhostPolicy;

#[derive(Debug, Clone, PartialEq)]
pub struct GridSection {
    pub y_min: f64,
    pub y_max: f64,
    pub n_y: usize,
    pub dz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectsSection {
    pub locations: Vec<f64>,
    pub g_defect: f64,
    /// Medium background when it should differ from `physics.g_background`
    /// (which always sets the injected soliton and the boundary exterior).
    pub g_background_override: Option<f64>,
    pub width_cells: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostKind {
    AnalyticSoliton,
    ZeroDirichlet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSection {
    pub m_terms: usize,
    pub steady_tol: f64,
    pub divergence_guard: f64,
    pub bootstrap: Bootstrap,
    pub ghost_policy: GhostKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSection {
    pub z_end: f64,
    pub snapshot_every: usize,
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSection {
    pub x_sample: f64,
    pub t_list: Vec<f64>,
    /// Precomputed steady-state snapshot; computed from scratch when absent.
    pub snapshot: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSection {
    pub enabled: bool,
    /// Defaults to `grid.dz / 10`.
    pub dz_ref: Option<f64>,
    pub padding_factor: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub grid: GridSection,
    pub physics: WaveParams,
    pub defects: DefectsSection,
    pub scheme: SchemeSection,
    pub run: RunSection,
    pub field: FieldSection,
    pub oracle: OracleSection,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            grid: GridSection {
                y_min: -10.0,
                y_max: 10.0,
                n_y: 200,
                dz: 0.01,
            },
            physics: WaveParams::default(),
            defects: DefectsSection {
                locations: Vec::new(),
                g_defect: 0.5,
                g_background_override: None,
                width_cells: 1,
            },
            scheme: SchemeSection {
                m_terms: 1,
                steady_tol: 1e-6,
                divergence_guard: 1e3,
                bootstrap: Bootstrap::AnalyticHalfShift,
                ghost_policy: GhostKind::AnalyticSoliton,
            },
            run: RunSection {
                z_end: 1.0,
                snapshot_every: 10,
                output_dir: PathBuf::from("out"),
            },
            field: FieldSection {
                x_sample: 0.0,
                t_list: vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0],
                snapshot: None,
            },
            oracle: OracleSection {
                enabled: false,
                dz_ref: None,
                padding_factor: 2,
            },
        }
    }
}

const KEYS: &[&str] = &[
    "grid.y_min",
    "grid.y_max",
    "grid.n_y",
    "grid.dz",
    "physics.beta",
    "physics.omega",
    "physics.phi",
    "physics.w",
    "physics.g_background",
    "defects.locations",
    "defects.g_defect",
    "defects.g_background_override",
    "defects.width_cells",
    "scheme.m_terms",
    "scheme.steady_tol",
    "scheme.divergence_guard",
    "scheme.bootstrap",
    "scheme.ghost_policy",
    "run.z_end",
    "run.snapshot_every",
    "run.output_dir",
    "field.x_sample",
    "field.t_list",
    "field.snapshot",
    "oracle.enabled",
    "oracle.dz_ref",
    "oracle.padding_factor",
];

fn parse_f64(v: &str) -> std::result::Result<f64, String> {
    v.parse::<f64>()
        .map_err(|_| format!("`{v}` is not a number"))
}

fn parse_usize(v: &str) -> std::result::Result<usize, String> {
    v.parse::<usize>()
        .map_err(|_| format!("`{v}` is not a nonnegative integer"))
}

fn parse_list(v: &str) -> std::result::Result<Vec<f64>, String> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|s| parse_f64(s.trim())).collect()
}

fn parse_optional<T>(
    v: &str,
    inner: impl Fn(&str) -> std::result::Result<T, String>,
) -> std::result::Result<Option<T>, String> {
    match v {
        "" | "none" => Ok(None),
        other => inner(other).map(Some),
    }
}

fn parse_bool(v: &str) -> std::result::Result<bool, String> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(format!("`{v}` is not a boolean")),
    }
}

impl SimulationConfig {
    fn assign(&mut self, key: &str, v: &str) -> std::result::Result<(), String> {
        match key {
            "grid.y_min" => self.grid.y_min = parse_f64(v)?,
            "grid.y_max" => self.grid.y_max = parse_f64(v)?,
            "grid.n_y" => self.grid.n_y = parse_usize(v)?,
            "grid.dz" => self.grid.dz = parse_f64(v)?,
            "physics.beta" => self.physics.beta = parse_f64(v)?,
            "physics.omega" => self.physics.omega = parse_f64(v)?,
            "physics.phi" => self.physics.phi = parse_f64(v)?,
            "physics.w" => self.physics.w = parse_f64(v)?,
            "physics.g_background" => self.physics.g_background = parse_f64(v)?,
            "defects.locations" => self.defects.locations = parse_list(v)?,
            "defects.g_defect" => self.defects.g_defect = parse_f64(v)?,
            "defects.g_background_override" => {
                self.defects.g_background_override = parse_optional(v, parse_f64)?
            }
            "defects.width_cells" => self.defects.width_cells = parse_usize(v)?,
            "scheme.m_terms" => self.scheme.m_terms = parse_usize(v)?,
            "scheme.steady_tol" => self.scheme.steady_tol = parse_f64(v)?,
            "scheme.divergence_guard" => self.scheme.divergence_guard = parse_f64(v)?,
            "scheme.bootstrap" => {
                self.scheme.bootstrap = match v {
                    "analytic_half_shift" => Bootstrap::AnalyticHalfShift,
                    "self_start" => Bootstrap::SelfStart,
                    _ => return Err(format!("unknown bootstrap `{v}`")),
                }
            }
            "scheme.ghost_policy" => {
                self.scheme.ghost_policy = match v {
                    "analytic_soliton" => GhostKind::AnalyticSoliton,
                    "zero_dirichlet" => GhostKind::ZeroDirichlet,
                    _ => return Err(format!("unknown ghost policy `{v}`")),
                }
            }
            "run.z_end" => self.run.z_end = parse_f64(v)?,
            "run.snapshot_every" => self.run.snapshot_every = parse_usize(v)?,
            "run.output_dir" => self.run.output_dir = PathBuf::from(v),
            "field.x_sample" => self.field.x_sample = parse_f64(v)?,
            "field.t_list" => self.field.t_list = parse_list(v)?,
            "field.snapshot" => self.field.snapshot = parse_optional(v, |s| Ok(PathBuf::from(s)))?,
            "oracle.enabled" => self.oracle.enabled = parse_bool(v)?,
            "oracle.dz_ref" => self.oracle.dz_ref = parse_optional(v, parse_f64)?,
            "oracle.padding_factor" => self.oracle.padding_factor = parse_usize(v)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::new(
            self.grid.y_min,
            self.grid.y_max,
            self.grid.n_y,
            self.grid.dz,
        )
    }

    pub fn scheme_params(&self) -> SchemeParams {
        SchemeParams {
            m_terms: self.scheme.m_terms,
            divergence_guard: self.scheme.divergence_guard,
            steady_tol: self.scheme.steady_tol,
        }
    }

    pub fn ghost_policy(&self) -> GhostPolicy {
        match self.scheme.ghost_policy {
            GhostKind::AnalyticSoliton => GhostPolicy::AnalyticSoliton(self.physics),
            GhostKind::ZeroDirichlet => GhostPolicy::ZeroDirichlet,
        }
    }

    /// Background nonlinearity of the medium.
    pub fn medium_background(&self) -> f64 {
        self.defects
            .g_background_override
            .unwrap_or(self.physics.g_background)
    }

    pub fn profile(&self, grid: &GridSpec) -> Result<NonlinearityProfile> {
        point_defect_profile_with_width(
            grid,
            &self.defects.locations,
            self.defects.g_defect,
            self.medium_background(),
            self.defects.width_cells,
        )
    }

    pub fn oracle_config(&self, grid: &GridSpec) -> OracleConfig {
        OracleConfig {
            dz_ref: self.oracle.dz_ref.unwrap_or(grid.dz() / 10.0),
            padding_factor: self.oracle.padding_factor,
            fill: PaddingFill::AnalyticSoliton,
        }
    }

    /// Checks every numeric constraint of the downstream types.
    pub fn validate(&self) -> Result<()> {
        let invalid = |e: Error| Error::Validation(e.to_string());
        let grid = self.grid_spec().map_err(invalid)?;
        self.physics.validate().map_err(invalid)?;
        self.scheme_params().validate().map_err(invalid)?;
        self.profile(&grid).map_err(invalid)?;
        crate::gfdtd::propagate_step_count(0.0, self.run.z_end, grid.dz()).map_err(invalid)?;
        if self.run.snapshot_every == 0 {
            return Err(Error::Validation(
                "run.snapshot_every must be at least 1".into(),
            ));
        }
        if !self.field.x_sample.is_finite() || self.field.t_list.iter().any(|t| !t.is_finite()) {
            return Err(Error::Validation(
                "field.x_sample and field.t_list must be finite".into(),
            ));
        }
        self.oracle_config(&grid).validate().map_err(invalid)?;
        Ok(())
    }

    /// Fully resolved configuration, parseable by [`parse_config`].
    pub fn render(&self) -> String {
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let opt = |v: Option<f64>| v.map_or("none".to_string(), |x| x.to_string());
        let bootstrap = match self.scheme.bootstrap {
            Bootstrap::AnalyticHalfShift => "analytic_half_shift",
            Bootstrap::SelfStart => "self_start",
        };
        let ghosts = match self.scheme.ghost_policy {
            GhostKind::AnalyticSoliton => "analytic_soliton",
            GhostKind::ZeroDirichlet => "zero_dirichlet",
        };
        let values: Vec<String> = vec![
            self.grid.y_min.to_string(),
            self.grid.y_max.to_string(),
            self.grid.n_y.to_string(),
            self.grid.dz.to_string(),
            self.physics.beta.to_string(),
            self.physics.omega.to_string(),
            self.physics.phi.to_string(),
            self.physics.w.to_string(),
            self.physics.g_background.to_string(),
            list(&self.defects.locations),
            self.defects.g_defect.to_string(),
            opt(self.defects.g_background_override),
            self.defects.width_cells.to_string(),
            self.scheme.m_terms.to_string(),
            self.scheme.steady_tol.to_string(),
            self.scheme.divergence_guard.to_string(),
            bootstrap.to_string(),
            ghosts.to_string(),
            self.run.z_end.to_string(),
            self.run.snapshot_every.to_string(),
            self.run.output_dir.display().to_string(),
            self.field.x_sample.to_string(),
            list(&self.field.t_list),
            self.field
                .snapshot
                .as_ref()
                .map_or("none".to_string(), |p| p.display().to_string()),
            self.oracle.enabled.to_string(),
            opt(self.oracle.dz_ref),
            self.oracle.padding_factor.to_string(),
        ];
        let mut out = String::new();
        for (key, value) in KEYS.iter().zip(values) {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<SimulationConfig> {
    let mut config = SimulationConfig::default();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected `section.key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(parse_err(format!("unknown key `{key}`")));
        }
        if !seen.insert(key.to_string()) {
            return Err(parse_err(format!("key `{key}` given twice")));
        }
        config.assign(key, value).map_err(parse_err)?;
    }
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_reference_preset() {
        let c = parse_config("").unwrap();
        assert_eq!(c, SimulationConfig::default());
        assert_eq!(
            (c.grid.y_min, c.grid.y_max, c.grid.n_y, c.grid.dz),
            (-10.0, 10.0, 200, 0.01)
        );
        assert_eq!(c.scheme.m_terms, 1);
        assert_eq!(c.physics.g_background, 5.0);
        assert_eq!(c.physics.w, 2.0);
        assert_eq!(c.physics.beta, -0.5);
        assert_eq!((c.physics.phi, c.physics.omega), (1.0, 1.0));
        assert_eq!(c.run.z_end, 1.0);
    }

    #[test]
    fn single_defect_preset() {
        let c = parse_config(
            "defects.locations = 0.0\ndefects.g_defect = 0.5\nphysics.g_background = 0.05",
        )
        .unwrap();
        assert_eq!(c.defects.locations, vec![0.0]);
        let grid = c.grid_spec().unwrap();
        let p = c.profile(&grid).unwrap();
        assert_eq!(p.defect_indices(), vec![99]);
        assert_eq!(p.g[99], 0.5);
        assert_eq!(p.g[0], 0.05);
    }

    #[test]
    fn small_grid_is_validation_error() {
        match parse_config("grid.n_y = 3") {
            Err(Error::Validation(msg)) => assert!(msg.contains("n_y"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_config("# comment\n\ngrid.ny = 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_config("grid.dz 0.1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_config("grid.dz = abc"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_config("grid.dz = 0.01\ngrid.dz = 0.02"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn validation_covers_downstream_invariants() {
        for text in [
            "physics.beta = 0",
            "physics.w = -1",
            "physics.g_background = 0",
            "defects.locations = 9.99",
            "defects.locations = 0.96, 0.97",
            "run.z_end = 1.005",
            "run.snapshot_every = 0",
            "scheme.steady_tol = 0",
            "oracle.padding_factor = 0",
        ] {
            assert!(
                matches!(parse_config(text), Err(Error::Validation(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn render_round_trips() {
        let text = "defects.locations = -4, -2, 0, 2, 4\nphysics.g_background = 0.05\n\
                    defects.g_background_override = 0.07\nscheme.bootstrap = self_start\n\
                    oracle.enabled = true\noracle.dz_ref = 0.0005\nfield.t_list = 0, 1.5\n\
                    run.output_dir = results/a b\n";
        let c = parse_config(text).unwrap();
        assert_eq!(parse_config(&c.render()).unwrap(), c);
        let d = SimulationConfig::default();
        assert_eq!(parse_config(&d.render()).unwrap(), d);
    }

    #[test]
    fn override_sets_medium_only() {
        let c = parse_config("defects.g_background_override = 0.05").unwrap();
        assert_eq!(c.medium_background(), 0.05);
        assert_eq!(c.physics.g_background, 5.0);
    }
}
