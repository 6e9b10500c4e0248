use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn vertix(args: &[&str], envs: &[(&str, &std::path::Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vertix"));
    cmd.args(args).env_remove("VERTIX_REPORT_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vertix-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn passing_suite_exits_zero() {
    let path = scenario("heisenberg_core.scn");
    let out = vertix(&["run", path.to_str().unwrap(), "--suite", "fn-identities", "--seed", "42"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[fn-identities]"));
    assert!(text.contains("0 failed"));
}

#[test]
fn broken_group_exits_two_and_names_the_law() {
    let path = scenario("bad_group.scn");
    let out = vertix(&["run", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("multiplication"), "{err}");
}

#[test]
fn witness_scenario_exits_zero() {
    let path = scenario("witnesses.scn");
    let out = vertix(&["run", path.to_str().unwrap(), "--suite", "nonpreservation"], &[]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failing_check_exits_one() {
    let dir = temp_dir("fail");
    let path = dir.join("mislabelled.scn");
    // In an abelian group every base-only map is equivariant, so the
    // declared breaking witness fails.
    std::fs::write(
        &path,
        "suites = [\"nonpreservation\"]\n[group]\nmodel = \"gl1\"\n[maps.scale]\nkind = \"base_only\"\nparams = [\"1 + x1^2\"]\n\
         [witnesses]\nbreaking = [\"scale\"]\n",
    )
    .unwrap();
    let out = vertix(&["run", path.to_str().unwrap(), "--cases", "2"], &[]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn unknown_suite_is_a_config_error() {
    let path = scenario("witnesses.scn");
    let out = vertix(&["run", path.to_str().unwrap(), "--suite", "no-such-suite"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_a_config_error() {
    let out = vertix(&["run", "/nonexistent/scenario.scn"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn records_are_json_lines() {
    let path = scenario("witnesses.scn");
    let out = vertix(&["run", path.to_str().unwrap(), "--format", "records", "--cases", "3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.first().unwrap()["type"], "scenario");
    assert_eq!(records.last().unwrap()["type"], "summary");
    assert!(records.iter().any(|r| r["type"] == "check" && r["identity"] == "breaks-fiber_mixing"));
}

#[test]
fn report_directory_from_environment() {
    let dir = temp_dir("env");
    let path = scenario("witnesses.scn");
    let out = vertix(&["run", path.to_str().unwrap(), "--format", "records", "--cases", "2"], &[("VERTIX_REPORT_DIR", &dir)]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.join("witnesses.jsonl")).unwrap();
    assert_eq!(written, String::from_utf8(out.stdout).unwrap());
}

#[test]
fn explicit_report_path_wins() {
    let dir = temp_dir("explicit");
    let target = dir.join("out.txt");
    let path = scenario("witnesses.scn");
    let out =
        vertix(&["run", path.to_str().unwrap(), "--cases", "2", "--report", target.to_str().unwrap()], &[("VERTIX_REPORT_DIR", &dir)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&target).unwrap().contains("[nonpreservation]"));
    assert!(!dir.join("witnesses.txt").exists());
}
