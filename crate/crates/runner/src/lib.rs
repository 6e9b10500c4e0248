//! Scenario runner: loads a scenario, runs the selected identity suites and
//! assembles a deterministic report.

pub mod error;
pub mod report;
pub mod scenario;
pub mod suites;

use std::time::Instant;

use error::{ConfigError, ConfigResult};
use report::Report;
use scenario::{RandomConfig, Scenario};
use suites::{Ctx, SUITE_NAMES};

/// Command-line overrides of the scenario settings.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub suites: Vec<String>,
    pub seed: Option<u64>,
    pub degree: Option<u32>,
    pub cases: Option<usize>,
}

impl RunOptions {
    fn random(&self, base: RandomConfig) -> RandomConfig {
        RandomConfig {
            seed: self.seed.unwrap_or(base.seed),
            degree: self.degree.unwrap_or(base.degree),
            cases: self.cases.unwrap_or(base.cases),
        }
    }
}

/// Suites to run: the requested ones, else the scenario's, else all.
pub fn selected_suites(scenario: &Scenario, opts: &RunOptions) -> ConfigResult<Vec<String>> {
    let requested = if !opts.suites.is_empty() { &opts.suites } else { &scenario.suites };
    if requested.is_empty() {
        return Ok(SUITE_NAMES.iter().map(|s| s.to_string()).collect());
    }
    let mut out: Vec<String> = Vec::new();
    for s in requested {
        if !SUITE_NAMES.contains(&s.as_str()) {
            return Err(ConfigError::UnknownSuite(s.clone()));
        }
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    Ok(out)
}

pub fn run(scenario: &Scenario, opts: &RunOptions) -> ConfigResult<Report> {
    let names = selected_suites(scenario, opts)?;
    let random = opts.random(scenario.random);
    if random.degree == 0 {
        return Err(ConfigError::Invalid("degree must be at least 1".into()));
    }
    let ctx = Ctx::new(scenario, random);
    let start = Instant::now();
    let suites = names.iter().map(|n| suites::run_suite(n, &ctx)).collect();
    Ok(Report {
        scenario: scenario.name.clone(),
        group: scenario.chart.group().name().to_string(),
        seed: random.seed,
        degree: random.degree,
        cases: random.cases,
        suites,
        wall_ms: start.elapsed().as_millis(),
    })
}
