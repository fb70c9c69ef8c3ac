//! Running a scenario end to end: tables and the JSON run report on disk.

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::Scenario;
use crate::scenarios::{execute, Check};

pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub seed: Option<u64>,
    pub wall_time_seconds: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Table files written, relative to the output directory.
    pub outputs: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {} in {:.2} s\n",
            self.scenario,
            if self.passed { "PASS" } else { "FAIL" },
            self.wall_time_seconds
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {} = {:.6e} (expected {})\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.measured,
                c.expected
            ));
        }
        out
    }
}

/// Execute `scenario`, write its tables and `report.json` into `out_dir`.
pub fn run(scenario: &Scenario, out_dir: &Path) -> Result<RunReport> {
    let start = Instant::now();
    let outcome = execute(scenario).with_context(|| format!("scenario {}", scenario.kind()))?;
    let wall_time_seconds = start.elapsed().as_secs_f64();
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut outputs = Vec::with_capacity(outcome.tables.len());
    for t in &outcome.tables {
        let path = out_dir.join(&t.file_name);
        fs::write(&path, &t.content).with_context(|| format!("writing {}", path.display()))?;
        outputs.push(t.file_name.clone());
    }
    let report = RunReport {
        scenario: scenario.kind().to_string(),
        seed: scenario.seed(),
        wall_time_seconds,
        passed: outcome.checks.iter().all(|c| c.passed),
        checks: outcome.checks,
        outputs,
    };
    let path = out_dir.join(REPORT_FILE);
    fs::write(&path, report.to_json()?).with_context(|| format!("writing {}", path.display()))?;
    Ok(report)
}
