//! Run reports: one record per check, per-suite and overall summaries.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub identity: String,
    /// The identity being checked, written as a formula.
    pub law: String,
    pub case: usize,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckRecord>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    /// Identity ids in declaration order with their case counts.
    pub fn identities(&self) -> Vec<(&str, usize, usize)> {
        let mut out: Vec<(&str, usize, usize)> = Vec::new();
        for c in &self.checks {
            match out.last_mut() {
                Some((id, n, ok)) if *id == c.identity => {
                    *n += 1;
                    *ok += c.passed as usize;
                }
                _ => out.push((&c.identity, 1, c.passed as usize)),
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub group: String,
    pub seed: u64,
    pub degree: u32,
    pub cases: usize,
    pub suites: Vec<SuiteReport>,
    pub wall_ms: u128,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Record<'a> {
    Scenario {
        name: &'a str,
        group: &'a str,
        seed: u64,
        degree: u32,
        cases: usize,
    },
    Check(&'a CheckRecord),
    Suite {
        suite: &'a str,
        checks: usize,
        passed: usize,
        failed: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        wall_ms: Option<u128>,
    },
    Summary {
        checks: usize,
        passed: usize,
        failed: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        wall_ms: Option<u128>,
    },
}

impl Report {
    pub fn checks(&self) -> usize {
        self.suites.iter().map(|s| s.checks.len()).sum()
    }

    pub fn failed(&self) -> usize {
        self.suites.iter().map(SuiteReport::failed).sum()
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    /// 0 on a full pass, 1 if any check failed.
    pub fn exit_code(&self) -> i32 {
        if self.failed() == 0 {
            0
        } else {
            1
        }
    }

    /// Line-delimited JSON. Without timing the output depends only on the
    /// scenario and its randomization settings.
    pub fn to_records(&self, include_timing: bool) -> String {
        let timing = |ms: u128| include_timing.then_some(ms);
        let mut lines =
            vec![Record::Scenario { name: &self.scenario, group: &self.group, seed: self.seed, degree: self.degree, cases: self.cases }];
        for s in &self.suites {
            lines.extend(s.checks.iter().map(Record::Check));
            lines.push(Record::Suite {
                suite: &s.name,
                checks: s.checks.len(),
                passed: s.passed(),
                failed: s.failed(),
                wall_ms: timing(s.wall_ms),
            });
        }
        lines.push(Record::Summary {
            checks: self.checks(),
            passed: self.checks() - self.failed(),
            failed: self.failed(),
            wall_ms: timing(self.wall_ms),
        });
        let mut out = String::new();
        for r in lines {
            out.push_str(&serde_json::to_string(&r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "scenario {} (group {}, seed {}, degree {}, cases {})",
            self.scenario, self.group, self.seed, self.degree, self.cases
        );
        for s in &self.suites {
            let _ = writeln!(out, "\n[{}] {}/{} passed in {:.2} s", s.name, s.passed(), s.checks.len(), s.wall_ms as f64 / 1000.0);
            for (id, n, ok) in s.identities() {
                let mark = if ok == n { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "  {mark} {id:<40} {ok}/{n}");
            }
            for c in s.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(out, "    {} case {} (seed {}): {}", c.identity, c.case, c.seed, c.witness.as_deref().unwrap_or(""));
            }
        }
        let _ = writeln!(
            out,
            "\n{} checks, {} passed, {} failed in {:.2} s",
            self.checks(),
            self.checks() - self.failed(),
            self.failed(),
            self.wall_ms as f64 / 1000.0
        );
        out
    }
}
