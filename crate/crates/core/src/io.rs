//! Output files: field snapshots, the per-step metrics log, and
//! electric-field profiles.
//!
//! Floats are written with 17 significant digits so that every finite value
//! survives a write/read cycle bit for bit.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gfdtd::StepReport;
use crate::grid::{ComplexField, GridSpec};

/// 17-significant-digit rendering; zeros print as `0` (or `-0`).
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        if v.is_sign_negative() { "-0" } else { "0" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

pub fn write_snapshot(field: &ComplexField, grid: &GridSpec, path: &Path) -> Result<()> {
    field.check_len(grid, "field")?;
    let mut out = create(path)?;
    let mut body = format!(
        "# z={}\ny,f_real,f_imag,abs_f\n",
        format_float(field.z_level)
    );
    for k in 0..grid.n_y() {
        body.push_str(&format!(
            "{},{},{},{}\n",
            format_float(grid.y(k)),
            format_float(field.re[k]),
            format_float(field.im[k]),
            format_float(field.abs(k)),
        ));
    }
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

/// A snapshot read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub y: Vec<f64>,
    pub field: ComplexField,
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut z = None;
    let mut y = Vec::new();
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line_no = idx + 1;
        let bad = |message: String| Error::Parse {
            line: line_no,
            message: format!("{}: {message}", path.display()),
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("bad number `{s}`")))
        };
        if let Some(rest) = line.strip_prefix("# z=") {
            z = Some(num(rest)?);
        } else if line.starts_with('y') || line.trim().is_empty() {
            continue;
        } else {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 4 {
                return Err(bad(format!("expected 4 columns, found {}", cols.len())));
            }
            y.push(num(cols[0])?);
            re.push(num(cols[1])?);
            im.push(num(cols[2])?);
        }
    }
    let z_level = z.ok_or_else(|| Error::Parse {
        line: 1,
        message: format!("{}: missing `# z=` header", path.display()),
    })?;
    Ok(Snapshot {
        y,
        field: ComplexField::new(re, im, z_level)?,
    })
}

/// Appends one line per step to `metrics.log`.
pub struct MetricsWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl MetricsWriter {
    pub fn create(path: &Path) -> Result<Self> {
        Ok(Self {
            path: path.to_path_buf(),
            out: create(path)?,
        })
    }

    pub fn record(&mut self, r: &StepReport) -> Result<()> {
        writeln!(
            self.out,
            "step:{} z:{} mass:{} max_abs_f:{} steady:{}",
            r.step,
            format_float(r.z),
            format_float(r.mass),
            format_float(r.max_abs_f),
            u8::from(r.steady)
        )
        .map_err(|e| Error::io(&self.path, e))
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))
    }
}

/// Parses one `metrics.log` line back into a report.
pub fn parse_metrics_line(line: &str) -> Option<StepReport> {
    let mut step = None;
    let mut z = None;
    let mut mass = None;
    let mut max_abs_f = None;
    let mut steady = None;
    for item in line.split_whitespace() {
        let (k, v) = item.split_once(':')?;
        match k {
            "step" => step = v.parse().ok(),
            "z" => z = v.parse().ok(),
            "mass" => mass = v.parse().ok(),
            "max_abs_f" => max_abs_f = v.parse().ok(),
            "steady" => steady = Some(v == "1"),
            _ => return None,
        }
    }
    Some(StepReport {
        step: step?,
        z: z?,
        mass: mass?,
        max_abs_f: max_abs_f?,
        steady: steady?,
    })
}

pub fn write_field_profile(
    path: &Path,
    grid: &GridSpec,
    x: f64,
    z: f64,
    t: f64,
    e_signed: &[f64],
) -> Result<()> {
    let mut out = create(path)?;
    let mut body = format!(
        "# x={} z={} t={}\ny,E_signed,E_abs\n",
        format_float(x),
        format_float(z),
        format_float(t)
    );
    for (k, e) in e_signed.iter().enumerate() {
        body.push_str(&format!(
            "{},{},{}\n",
            format_float(grid.y(k)),
            format_float(*e),
            format_float(e.abs())
        ));
    }
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut out = create(path)?;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}
