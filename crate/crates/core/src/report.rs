//! Residual reports and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypersurface::HypersurfaceChart;
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One named sub-residual of a check, maximized over points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub points: usize,
    pub skipped: usize,
    /// Skip reason → number of points.
    pub skip_reasons: BTreeMap<String, usize>,
    pub components: Vec<Component>,
    /// Informational maxima (not judged).
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

/// Per-point summary echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub u: [f64; 3],
    pub mean_curvature: f64,
    pub h: f64,
    pub v_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub scenario: Scenario,
    pub tol_scale: f64,
    pub checks: Vec<CheckRecord>,
    pub points: Vec<PointSummary>,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
    pub runtime_ms: f64,
}

impl ResidualReport {
    /// Pass iff no evaluated check fails.
    pub fn overall(checks: &[CheckRecord]) -> Verdict {
        if checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (json, csv, text)")),
        }
    }
}

pub fn to_json(r: &ResidualReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(r)?)
}

pub fn from_json(s: &str) -> Result<ResidualReport> {
    Ok(serde_json::from_str(s)?)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Skipped => "skipped",
    }
}

/// One header row plus one row per check record.
pub fn to_csv(r: &ResidualReport) -> String {
    let mut out = String::from("scenario,check,anchor,max_residual,tolerance,verdict,points,skipped\n");
    for c in &r.checks {
        let _ = writeln!(
            out,
            "{},{},{},{:e},{:e},{},{},{}",
            csv_field(&r.scenario.name),
            csv_field(&c.name),
            csv_field(&c.anchor),
            c.max_residual,
            c.tolerance,
            verdict_str(c.verdict),
            c.points,
            c.skipped
        );
    }
    out
}

pub fn to_text(r: &ResidualReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {} ({})", r.scenario.name, HypersurfaceChart::label(&r.scenario.hypersurface));
    let _ = writeln!(
        out,
        "product: c1 = {}, c2 = {}; samples = {}, seed = {}",
        r.scenario.c1, r.scenario.c2, r.scenario.samples, r.scenario.seed
    );
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for c in &r.checks {
        let _ = writeln!(
            out,
            "  [{:>7}] {:<24} max {:>10.3e}  tol {:>8.1e}  points {}{}",
            verdict_str(c.verdict),
            c.name,
            c.max_residual,
            c.tolerance,
            c.points,
            if c.skipped > 0 { format!(" (+{} skipped)", c.skipped) } else { String::new() }
        );
        if c.verdict == Verdict::Fail {
            let _ = writeln!(out, "            anchor: {}", c.anchor);
            for comp in c.components.iter().filter(|x| x.verdict == Verdict::Fail) {
                let _ = writeln!(out, "            {}: {:.3e} > {:.1e}", comp.name, comp.max_residual, comp.tolerance);
            }
        }
        for n in &c.notes {
            let _ = writeln!(out, "            note: {n}");
        }
    }
    let _ = writeln!(out, "verdict: {} ({:.1} ms)", verdict_str(r.verdict), r.runtime_ms);
    out
}

pub fn render(r: &ResidualReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(r)? + "\n",
        Format::Csv => to_csv(r),
        Format::Text => to_text(r),
    })
}

pub fn emit_report(r: &ResidualReport, format: Format, sink: &mut dyn Write) -> Result<()> {
    sink.write_all(render(r, format)?.as_bytes())?;
    Ok(())
}
