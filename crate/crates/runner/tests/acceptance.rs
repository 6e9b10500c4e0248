//! Acceptance criteria, one line per criterion.
//!
//! Each criterion runs the relevant suites on the shipped scenarios and
//! checks coverage, outcome and a wall-clock budget.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use vertix_runner::report::{Report, SuiteReport};
use vertix_runner::scenario::Scenario;
use vertix_runner::{run, RunOptions};

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn load(name: &str) -> Scenario {
    Scenario::load(&scenario_path(name)).expect("shipped scenario loads")
}

fn run_suites(scn: &Scenario, suites: &[&str]) -> Report {
    let opts = RunOptions { suites: suites.iter().map(|s| s.to_string()).collect(), ..RunOptions::default() };
    run(scn, &opts).expect("run succeeds")
}

type Verdict = Result<(), String>;

/// Every listed identity is present, has at least `min_cases` cases and
/// passed all of them.
fn require(suite: &SuiteReport, ids: &[&str], min_cases: usize) -> Verdict {
    let found = suite.identities();
    for id in ids {
        let Some(&(_, n, ok)) = found.iter().find(|(name, _, _)| name == id) else {
            return Err(format!("{}: identity `{id}` missing", suite.name));
        };
        if n < min_cases {
            return Err(format!("{}: `{id}` ran {n} cases, need {min_cases}", suite.name));
        }
        if ok != n {
            return Err(format!("{}: `{id}` passed {ok}/{n}", suite.name));
        }
    }
    all_pass(suite)
}

fn all_pass(suite: &SuiteReport) -> Verdict {
    match suite.failed() {
        0 => Ok(()),
        n => Err(format!("{}: {n} failed checks", suite.name)),
    }
}

fn core_suite(name: &str) -> (Report, Scenario) {
    let scn = load("heisenberg_core.scn");
    (run_suites(&scn, &[name]), scn)
}

fn group_models() -> Verdict {
    for model in ["heisenberg3", "sl2", "gl1"] {
        let text = format!("[group]\nmodel = \"{model}\"\n[random]\nseed = 1\ncases = 5\n");
        let scn = Scenario::parse(model, &text).map_err(|e| e.to_string())?;
        let report = run_suites(&scn, &["group-model"]);
        let suite = report.suite("group-model").expect("suite ran");
        require(suite, &["shipped-model-invariants", "scenario-model-invariants", "fundamental-field-equation"], 1)?;
    }
    Ok(())
}

fn fn_identities() -> Verdict {
    let (report, scn) = core_suite("fn-identities");
    if scn.chart.group().name() != "heisenberg3" || scn.chart.n_base() != 2 || scn.random.degree > 2 {
        return Err("core scenario is not Heisenberg, n = 2, degree <= 2".into());
    }
    let ids = [
        "nr-antisymmetry",
        "nr-insertion-commutator",
        "lie-derivative-commutes-with-d",
        "lie-derivative-morphism",
        "lie-insertion-relation",
        "fn-antisymmetry",
        "fn-jacobi",
        "fn-decomposed-formula",
        "fn-bracket-of-fields",
        "fn-bracket-of-functions",
        "nr-bracket-of-function-and-differential",
    ];
    require(report.suite("fn-identities").unwrap(), &ids, 50)
}

fn extended_bracket() -> Verdict {
    let (report, _) = core_suite("extended-bracket");
    let ids = ["antisymmetry", "jacobi", "constant-reduction", "equivariant-reduction", "lift-morphism", "lift-operator-identities"];
    require(report.suite("extended-bracket").unwrap(), &ids, 50)
}

fn vertical_group() -> Verdict {
    let (report, _) = core_suite("vertical-group");
    let ids = [
        "composition-depth-2",
        "composition-depth-3",
        "composition-depth-4",
        "inverse-base-only",
        "inverse-equivariant",
        "equivariant-pointwise",
    ];
    require(report.suite("vertical-group").unwrap(), &ids, 1)
}

fn transformations() -> Verdict {
    let (report, _) = core_suite("transformations");
    let ids = [
        "pushforward-jacobian",
        "connection-pullback",
        "connection-double-pullback",
        "tensorial-pullback",
        "gauge-case",
        "dressing-case",
        "curvature-vertical-pairs",
        "connection-commutator",
        "tensorial-commutator",
    ];
    require(report.suite("transformations").unwrap(), &ids, 1)
}

fn nonpreservation() -> Verdict {
    let scn = load("witnesses.scn");
    if scn.witnesses.breaking.is_empty() || scn.witnesses.preserving.is_empty() {
        return Err("witness scenario declares no breaking or no preserving maps".into());
    }
    let report = run_suites(&scn, &["nonpreservation"]);
    let suite = report.suite("nonpreservation").unwrap();
    let mut ids: Vec<String> = scn.witnesses.breaking.iter().map(|(n, _)| format!("breaks-{n}")).collect();
    ids.extend(scn.witnesses.preserving.iter().map(|(n, _)| format!("preserves-{n}")));
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    require(suite, &ids, 1)
}

fn dressing() -> Verdict {
    let (report, _) = core_suite("dressing");
    require(report.suite("dressing").unwrap(), &["dressed-connection", "dressed-curvature", "dressed-tensorial"], 20)
}

fn local() -> Verdict {
    let (report, _) = core_suite("local");
    let ids = [
        "gluing-composition",
        "minimal-coupling-covariance",
        "gauge-rule-iteration",
        "variation-commutator-gauge-algebra",
        "passive-commutator",
        "trivial-rule-divergence",
    ];
    require(report.suite("local").unwrap(), &ids, 1)
}

fn brst() -> Verdict {
    let (report, _) = core_suite("brst");
    let ids = ["nilpotent-A", "nilpotent-c", "nilpotent-phi", "nilpotent-F", "nilpotent-composites", "abelian-ghost-closed"];
    require(report.suite("brst").unwrap(), &ids, 1)
}

fn determinism() -> Verdict {
    let scn = load("heisenberg_core.scn");
    let timed = || {
        let start = Instant::now();
        let report = run(&scn, &RunOptions::default()).map_err(|e| e.to_string())?;
        if start.elapsed() > Duration::from_secs(300) {
            return Err(format!("full run took {:.1} s", start.elapsed().as_secs_f64()));
        }
        Ok(report)
    };
    let first = timed()?;
    let second = timed()?;
    if first.to_records(false) != second.to_records(false) {
        return Err("machine reports differ".into());
    }
    if first.suites.len() != vertix_runner::suites::SUITE_NAMES.len() {
        return Err("full run did not cover every suite".into());
    }
    if first.failed() != 0 {
        return Err(format!("{} failed checks in the full run", first.failed()));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Verdict); 10] = [
        ("group models", 5, group_models),
        ("FN/NR/Lie derivative identities", 60, fn_identities),
        ("extended bracket", 60, extended_bracket),
        ("vertical group", 30, vertical_group),
        ("transformations", 60, transformations),
        ("non-preservation witnesses", 10, nonpreservation),
        ("dressing", 30, dressing),
        ("local gauge", 60, local),
        ("BRST", 30, brst),
        ("determinism, full run under 5 min", 600, determinism),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let verdict = verdict.and_then(|()| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("took {:.1} s, budget {budget} s", elapsed.as_secs_f64()))
            } else {
                Ok(())
            }
        });
        match &verdict {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({:.2} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
