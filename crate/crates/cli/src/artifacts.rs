use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use wavop::wavefield::{Grid1D, ObservableReport};
use wavop::C64;

use crate::config::Output;
use crate::error::{CliError, CliResult};

/// Fixed float format for every CSV field: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const DENSITY_HEADER: &str = "method,t,q,re,im,density";
pub const OBSERVABLES_HEADER: &str = "method,t,norm,mean_q,mean_p,var_q,var_p";

/// One evolved state.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub t: f64,
    pub values: Vec<C64>,
    pub observables: ObservableReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodRun {
    pub method: String,
    pub frames: Vec<Frame>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub t: f64,
    pub l2_distance: f64,
    pub fidelity: f64,
    pub max_pointwise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub method_a: String,
    pub method_b: String,
    pub rows: Vec<ComparisonRow>,
}

/// A non-fatal condition raised while running.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunWarning {
    pub method: String,
    pub t: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: serde_json::Value,
    /// Places where the implemented formula differs from the commonly
    /// printed one, exercised by this run.
    pub errata: Vec<&'static str>,
    pub warnings: Vec<RunWarning>,
}

impl Metadata {
    pub fn new(config: serde_json::Value, errata: Vec<&'static str>) -> Self {
        Self {
            tool: "wavop",
            version: env!("CARGO_PKG_VERSION"),
            config,
            errata,
            warnings: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    pub grid: Grid1D,
    pub runs: Vec<MethodRun>,
    pub comparison: Option<Comparison>,
    pub metadata: Metadata,
}

impl RunArtifacts {
    pub fn density_csv(&self) -> String {
        let positions = self.grid.positions();
        let mut out = String::from(DENSITY_HEADER);
        out.push('\n');
        for run in &self.runs {
            for frame in &run.frames {
                let t = fmt_f64(frame.t);
                for (q, v) in positions.iter().zip(&frame.values) {
                    let _ = writeln!(
                        out,
                        "{},{t},{},{},{},{}",
                        run.method,
                        fmt_f64(*q),
                        fmt_f64(v.re),
                        fmt_f64(v.im),
                        fmt_f64(v.norm_sqr())
                    );
                }
            }
        }
        out
    }

    pub fn observables_csv(&self) -> String {
        let mut out = String::from(OBSERVABLES_HEADER);
        out.push('\n');
        for run in &self.runs {
            for frame in &run.frames {
                let o = &frame.observables;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    run.method,
                    fmt_f64(frame.t),
                    fmt_f64(o.norm),
                    fmt_f64(o.mean_q),
                    fmt_f64(o.mean_p),
                    fmt_f64(o.var_q),
                    fmt_f64(o.var_p)
                );
            }
        }
        out
    }

    pub fn comparison_json(&self) -> Option<String> {
        self.comparison.as_ref().map(pretty)
    }

    pub fn metadata_json(&self) -> String {
        pretty(&self.metadata)
    }

    /// One line per time point (per method), plus the comparison if any.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for run in &self.runs {
            for f in &run.frames {
                let o = &f.observables;
                lines.push(format!(
                    "t={} method={} norm={} mean_q={} mean_p={} var_q={}",
                    fmt_f64(f.t),
                    run.method,
                    fmt_f64(o.norm),
                    fmt_f64(o.mean_q),
                    fmt_f64(o.mean_p),
                    fmt_f64(o.var_q)
                ));
            }
        }
        if let Some(c) = &self.comparison {
            for row in &c.rows {
                lines.push(format!(
                    "t={} compare {} vs {} l2={} fidelity={}",
                    fmt_f64(row.t),
                    c.method_a,
                    c.method_b,
                    fmt_f64(row.l2_distance),
                    fmt_f64(row.fidelity)
                ));
            }
        }
        for w in &self.metadata.warnings {
            lines.push(format!("warning t={} method={}: {}", fmt_f64(w.t), w.method, w.message));
        }
        lines
    }

    pub fn write_outputs(&self, outputs: &[Output]) -> CliResult<()> {
        for output in outputs {
            match output {
                Output::DensityCsv(path) => write_file(path, &self.density_csv())?,
                Output::ObservablesCsv(path) => write_file(path, &self.observables_csv())?,
                Output::ComparisonJson(path) => {
                    let text = self.comparison_json().ok_or_else(|| {
                        CliError::Validation("comparison_json needs two methods".into())
                    })?;
                    write_file(path, &text)?
                }
                Output::MetadataJson(path) => write_file(path, &self.metadata_json())?,
            }
        }
        Ok(())
    }
}

pub(crate) fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("artifact types serialize");
    text.push('\n');
    text
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
