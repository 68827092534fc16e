//! Verification suites driven from the command line.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coverings::{child_extension_counts, connect_limit_patch, limit_depth_for_radius, Alpha};
use crate::curves::{embed, is_self_avoiding};
use crate::foldseq::{Family, FoldSpec};
use crate::lattice::hex::GosperFrame;
use crate::lattice::ORIGIN;
use crate::lip::strong_lip_report;

pub const SUITES: [&str; 4] = ["tri-selfavoid", "square-selfavoid", "gosper-extensions", "lip"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub count: usize,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Report {
    fn new(suite: &str, checks: Vec<Check>, details: Option<serde_json::Value>) -> Report {
        let first_counterexample = checks.iter().find_map(|c| c.counterexample.clone());
        Report { suite: suite.into(), pass: checks.iter().all(|c| c.pass), checks, first_counterexample, details }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: String,
    pub max_n: Option<usize>,
    pub radius: Option<i64>,
    pub spec: Option<String>,
}

fn timed(name: String, f: impl FnOnce() -> (usize, Option<String>)) -> Check {
    let t = Instant::now();
    let (count, counterexample) = f();
    Check { name, pass: counterexample.is_none(), count, millis: t.elapsed().as_millis(), counterexample }
}

fn self_avoid(family: Family, max_n: usize) -> Vec<Check> {
    (1..=max_n)
        .map(|n| {
            timed(format!("{} n={n}", family.name()), || {
                let specs = FoldSpec::all(family, n);
                let bad = specs.iter().find_map(|s| {
                    let c = embed(&s.word(), family, ORIGIN, 0).expect("fold words embed");
                    is_self_avoiding(&c).err().map(|e| format!("{s}: segments {} and {} coincide", e.0, e.1))
                });
                (specs.len(), bad)
            })
        })
        .collect()
}

fn gosper_extensions(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        for spec in FoldSpec::all(Family::Gosper, n) {
            checks.push(timed(format!("extensions {} level {}->{n}", spec.sign_string(), n - 1), || {
                let f = GosperFrame::new(ORIGIN, spec.signs());
                let rows = child_extension_counts(&f, f.anchor_tile(n as u32));
                let bad = rows.iter().find_map(|r| {
                    let want = match (r.central, r.lone_vertex_on_parent) {
                        (true, _) => vec![1, 1, 1],
                        (false, true) => vec![2, 1, 0],
                        (false, false) => vec![3, 0, 0],
                    };
                    (r.counts != want)
                        .then(|| format!("child at {:?}: counts {:?}, expected {want:?}", r.child.center, r.counts))
                });
                (rows.len(), bad)
            }));
        }
    }
    checks
}

fn lip(radius: i64, spec: Option<&str>) -> Result<(Vec<Check>, serde_json::Value), String> {
    let max_m = (0..).take_while(|&m| 6 * 3i64.pow(m) <= radius).last().ok_or("lip needs --radius >= 6")?;
    let n = limit_depth_for_radius(radius) as usize;
    let signs = match spec {
        Some(s) => s.to_string(),
        None => "+-".repeat(n).chars().take(n).collect(),
    };
    let spec = FoldSpec::parse(Family::Triangular, &signs).map_err(|e| e.to_string())?;
    if spec.len() < n {
        return Err(format!("radius {radius} needs a spec with at least {n} signs"));
    }
    let prefix = vec![ORIGIN; spec.len() + 1];
    let patch = connect_limit_patch(&spec, &prefix, Alpha::Plus, 1, radius).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let report = strong_lip_report(&patch, max_m).map_err(|e| e.to_string())?;
    let millis = t.elapsed().as_millis();
    let checks = report
        .rows
        .iter()
        .map(|r| Check {
            name: format!("recurrence m={} (pattern radius {}, reach {})", r.m, r.radius, r.reach),
            pass: r.failing_cores == 0 && r.cores > 0,
            count: r.cores,
            millis,
            counterexample: r
                .example_failure
                .map(|y| format!("core {y:?} misses {} of {} patterns", r.worst_missing, r.patterns)),
        })
        .collect();
    let details = serde_json::json!({ "spec": spec.sign_string(), "report": report });
    Ok((checks, details))
}

/// Runs a suite. `Err` is a usage problem, not a failed check.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Report, String> {
    match cfg.suite.as_str() {
        "tri-selfavoid" => Ok(Report::new(&cfg.suite, self_avoid(Family::Triangular, cfg.max_n.unwrap_or(7)), None)),
        "square-selfavoid" => Ok(Report::new(&cfg.suite, self_avoid(Family::Square, cfg.max_n.unwrap_or(10)), None)),
        "gosper-extensions" => Ok(Report::new(&cfg.suite, gosper_extensions(cfg.max_n.unwrap_or(1)), None)),
        "lip" => {
            let (checks, details) = lip(cfg.radius.unwrap_or(27), cfg.spec.as_deref())?;
            Ok(Report::new(&cfg.suite, checks, Some(details)))
        }
        other => Err(format!("unknown suite `{other}` (expected one of {})", SUITES.join(", "))),
    }
}
