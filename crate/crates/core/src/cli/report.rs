//! Structured report and its two renderings: JSON (every float printed with
//! 17 significant digits) and a plain-text summary table.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Number, Value};

use super::config::{SurfaceConfig, SCHEMA};
use super::run::PointData;
use crate::classify::ClassReport;
use crate::error::Error;
use crate::surface::Backend;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub backend: Backend,
    pub passed: bool,
    pub worst: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointEntry {
    pub point: [f64; 2],
    pub backend: Backend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<PointData>,
}

impl PointEntry {
    pub fn ok(point: [f64; 2], backend: Backend, data: PointData) -> Self {
        PointEntry {
            point,
            backend,
            error: None,
            data: Some(data),
        }
    }

    pub fn failed(point: [f64; 2], backend: Backend, e: &Error) -> Self {
        PointEntry {
            point,
            backend,
            error: Some(e.to_string()),
            data: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub backend: Backend,
    pub report: ClassReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerance {
    pub backend: Backend,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub signature: [i8; 4],
    pub tolerances: Vec<Tolerance>,
    pub passed: bool,
    pub failed_points: usize,
    pub checks: Vec<CheckResult>,
    pub classification: Vec<Classification>,
    pub points: Vec<PointEntry>,
}

impl Report {
    pub fn new(
        cfg: &SurfaceConfig,
        tolerances: Vec<(Backend, f64)>,
        checks: Vec<CheckResult>,
        points: Vec<PointEntry>,
        classification: Vec<(Backend, ClassReport)>,
        failed_points: usize,
    ) -> Self {
        Report {
            schema: SCHEMA,
            name: cfg.name.clone(),
            description: cfg.description.clone(),
            signature: cfg.surface.metric.signs(),
            tolerances: tolerances.into_iter().map(|(backend, tol)| Tolerance { backend, tol }).collect(),
            passed: checks.iter().all(|c| c.passed),
            failed_points,
            checks,
            classification: classification.into_iter().map(|(backend, report)| Classification { backend, report }).collect(),
            points,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report is serializable");
        normalize_floats(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("value is serializable");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}  signature {:?}", self.name, self.signature);
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.name.clone(),
                    backend_name(c.backend).into(),
                    if c.passed { "pass" } else { "FAIL" }.into(),
                    format!("{:.3e}", c.worst),
                    c.detail.clone(),
                ]
            })
            .collect();
        let header = ["check", "backend", "status", "worst", "detail"].map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        for r in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = r.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        if self.failed_points > 0 {
            let _ = writeln!(out, "{} sample evaluations failed (see report)", self.failed_points);
        }
        let _ = writeln!(out, "overall: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }
}

fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Jet => "jet",
        Backend::Fd => "fd",
    }
}

/// Rewrite every non-integer number as `{:.16e}`; non-finite values are
/// already `null`.
fn normalize_floats(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                let text = format!("{x:.16e}");
                *n = text.parse::<Number>().expect("formatted float parses");
            }
        }
        Value::Array(items) => items.iter_mut().for_each(normalize_floats),
        Value::Object(map) => map.values_mut().for_each(normalize_floats),
        _ => {}
    }
}
