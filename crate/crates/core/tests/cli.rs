use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spinlab::hypersurface::{Hypersurface, SpherePatch};
use spinlab::registry::CHECKS;
use spinlab::report::{self, ResidualReport, Verdict};
use spinlab::runner::{run_scenario, RunOptions};
use spinlab::scenario::Scenario;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spinlab"));
    c.env_remove("SPINLAB_TOL_SCALE");
    c
}

fn write_scenario(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn sphere_scenario() -> Scenario {
    let mut s = Scenario::new("round-sphere(r=1)", 0.0, 0.0, Hypersurface::RoundSphere { r: 1.0, patch: SpherePatch::Hopf });
    s.samples = 6;
    s.seed = 42;
    s
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn strip_runtime(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"runtime_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn list_checks_names_every_check() {
    let out = run(&["list-checks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for c in CHECKS {
        assert!(text.contains(c.id));
    }
}

#[test]
fn run_passes_and_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(dir.path(), "s.json", &serde_json::to_string(&sphere_scenario()).unwrap());
    let p = p.to_str().unwrap();
    let a = run(&["run", "--scenario", p, "--format", "json"]);
    let b = run(&["run", "--scenario", p, "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let (ja, jb) = (String::from_utf8(a.stdout).unwrap(), String::from_utf8(b.stdout).unwrap());
    assert_eq!(strip_runtime(&ja), strip_runtime(&jb));

    let rep = report::from_json(&ja).unwrap();
    assert!(rep.passed());
    for pt in &rep.points {
        assert!((pt.mean_curvature - 1.0).abs() < 1e-12);
    }

    let c = run(&["run", "--scenario", p, "--format", "json", "--seed", "43"]);
    assert_ne!(strip_runtime(&ja), strip_runtime(&String::from_utf8(c.stdout).unwrap()));
}

#[test]
fn json_round_trip_is_exact() {
    let rep = run_scenario(&sphere_scenario(), RunOptions::default()).unwrap();
    let back: ResidualReport = report::from_json(&report::to_json(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn csv_has_one_row_per_check() {
    let rep = run_scenario(&sphere_scenario(), RunOptions::default()).unwrap();
    let csv = report::to_csv(&rep);
    assert_eq!(csv.lines().count(), rep.checks.len() + 1);
    assert!(csv.lines().skip(1).all(|l| l.starts_with("round-sphere(r=1),")));
}

#[test]
fn unattainable_tolerance_exits_one_and_names_anchor() {
    let mut s = sphere_scenario();
    s.tolerances.insert("gauss".into(), 1e-300);
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(dir.path(), "tight.json", &serde_json::to_string(&s).unwrap());
    let out = run(&["run", "--scenario", p.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(spinlab::registry::lookup("gauss").unwrap().anchor));
}

#[test]
fn tiny_tolerance_fails_in_process() {
    let mut s = sphere_scenario();
    for c in ["gauss", "codazzi", "dirac"] {
        s.tolerances.insert(c.into(), 1e-20);
    }
    let rep = run_scenario(&s, RunOptions::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("garbage.json", "{not json".to_string()),
        ("unknown-check.json", r#"{"name":"x","c1":0,"c2":0,"hypersurface":{"kind":"flat-hyperplane"},"checks":["nope"]}"#.to_string()),
        ("zero-samples.json", r#"{"name":"x","c1":0,"c2":0,"hypersurface":{"kind":"flat-hyperplane"},"samples":0}"#.to_string()),
        ("bad-kind.json", r#"{"name":"x","c1":0,"c2":0,"hypersurface":{"kind":"torus"}}"#.to_string()),
        ("bad-tol.json", r#"{"name":"x","c1":0,"c2":0,"hypersurface":{"kind":"flat-hyperplane"},"tolerances":{"gauss":-1}}"#.to_string()),
        ("bad-expr.json", r#"{"name":"x","c1":0,"c2":0,"hypersurface":{"kind":"graph","expr":"u1 +* 2"}}"#.to_string()),
    ];
    for (name, body) in cases {
        let p = write_scenario(dir.path(), name, &body);
        let out = run(&["run", "--scenario", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    let out = run(&["run", "--scenario", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["run"]).status.code(), Some(2));
}

#[test]
fn tol_scale_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(dir.path(), "s.json", &serde_json::to_string(&sphere_scenario()).unwrap());
    let p = p.to_str().unwrap();
    let bad = bin().env("SPINLAB_TOL_SCALE", "abc").args(["run", "--scenario", p]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let tight = bin().env("SPINLAB_TOL_SCALE", "1e-30").args(["run", "--scenario", p]).output().unwrap();
    assert_eq!(tight.status.code(), Some(1));
    let loose = bin().env("SPINLAB_TOL_SCALE", "10").args(["run", "--scenario", p, "--format", "json"]).output().unwrap();
    assert_eq!(loose.status.code(), Some(0));
    let rep = report::from_json(&String::from_utf8(loose.stdout).unwrap()).unwrap();
    assert_eq!(rep.tol_scale, 10.0);
    assert!((rep.check("gauss").unwrap().tolerance - 1e-4).abs() < 1e-18);
}

#[test]
fn empty_check_list_passes_with_warning() {
    let mut s = sphere_scenario();
    s.checks = Some(vec![]);
    let rep = run_scenario(&s, RunOptions::default()).unwrap();
    assert!(rep.checks.is_empty());
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.warnings, vec!["no checks selected".to_string()]);
}

#[test]
fn out_path_and_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(dir.path(), "s.json", &serde_json::to_string(&sphere_scenario()).unwrap());
    let out_path = dir.path().join("report.csv");
    let out = run(&["run", "--scenario", p.to_str().unwrap(), "--format", "csv", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(out_path).unwrap();
    assert_eq!(csv.lines().count(), CHECKS.len() + 1);
    let bad = run(&["run", "--scenario", p.to_str().unwrap(), "--out", dir.path().join("no/such/dir/r.txt").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn flat_hyperplane_reports_zero_curvature_forms() {
    let s = Scenario::new("flat-hyperplane", 0.0, 0.0, Hypersurface::FlatHyperplane);
    let rep = run_scenario(&s, RunOptions::default()).unwrap();
    assert!(rep.passed());
    let omega = rep.check("spinc.omega").unwrap();
    assert_eq!(omega.metrics["max |Omega1|"], 0.0);
    assert_eq!(omega.metrics["max |Omega2|"], 0.0);
}

#[test]
fn catalog_passes_and_flipped_pairing_localizes_failures() {
    let ok = run(&["catalog", "--format", "csv"]);
    assert_eq!(ok.status.code(), Some(0));
    let flipped = run(&["catalog", "--format", "json", "--structure-pairing", "anti-second"]);
    assert_eq!(flipped.status.code(), Some(1));
    let reps: Vec<ResidualReport> = serde_json::from_slice(&flipped.stdout).unwrap();
    for r in &reps {
        let failing: Vec<&str> = r.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.name.as_str()).collect();
        assert!(failing.contains(&"spinc.algebraic"), "{}", r.scenario.name);
        for name in failing {
            assert!(["spinc.algebraic", "spinc.ide", "spinc.omega"].contains(&name), "{}: {name}", r.scenario.name);
        }
    }
}

#[test]
fn shipped_scenario_files_run() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let s = Scenario::load(&p).unwrap();
        let rep = run_scenario(&s, RunOptions::default()).unwrap();
        assert!(rep.passed(), "{}", p.display());
        n += 1;
    }
    assert!(n >= 3);
}
