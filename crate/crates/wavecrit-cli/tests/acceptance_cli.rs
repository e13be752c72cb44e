//! Acceptance criterion 9: the command-line contract. Exit codes 0/1/2,
//! deterministic reports (byte-identical modulo the manifest timestamp),
//! and a theorem tag in every report.
//!
//! Prints one `acceptance 9 (...): PASS|FAIL` line, matching the core
//! crate's acceptance suite for criteria 1-8.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wavecrit")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("WAVECRIT_OUT_DIR")
        .output()
        .expect("spawn wavecrit")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wavecrit-cli-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_json(dir: &Path, name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn acceptance_9_cli_contract() {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut check = |label: &str, cond: bool| {
        if !cond {
            notes.push(label.to_string());
        }
        ok &= cond;
    };

    // --- exit code 0: a valid classification, tagged with its theorem
    let d = tmp_dir("classify");
    let out = run_in(&d, &["classify", "--N", "3", "--p", "2", "--q", "1.5"]);
    check("classify exit 0", code(&out) == 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    check("classify cites Theorem 2(I)", stdout.contains("Theorem 2(I)"));
    let report = read_json(&d, "report.json");
    check("report has theorem_tag", report.get("theorem_tag").is_some());
    check(
        "verdict is Nonexistence",
        report["fujita"]["verdict"] == "Nonexistence",
    );

    // --- exit code 2: validation error with the required message
    let out = run_in(&d, &["classify", "--N", "3", "--p", "0.5", "--q", "2"]);
    check("invalid p exits 2", code(&out) == 2);
    check(
        "error names the bad parameter",
        String::from_utf8_lossy(&out.stderr).contains("p must exceed 1"),
    );

    // --- exit code 2: usage error from the parser itself
    let out = run_in(&d, &["classify", "--N", "3"]);
    check("missing flags exit 2", code(&out) == 2);

    // --- verify-lemma: pass = 0, hypothesis violation = 2, failed check = 1
    let d = tmp_dir("lemma");
    let out = run_in(
        &d,
        &["verify-lemma", "--lemma", "L1", "--m", "2", "--N", "3", "--theta", "0.5", "--ell", "4"],
    );
    check("verify-lemma pass exits 0", code(&out) == 0);
    let report = read_json(&d, "report.json");
    check("lemma report tagged", report["theorem_tag"] == "Lemma 2.1");
    check("lemma passes", report["result"]["pass"] == true);
    check("samples.csv written", d.join("samples.csv").exists());

    let out = run_in(&d, &["verify-lemma", "--lemma", "L1", "--m", "2", "--N", "3", "--ell", "1"]);
    check("ell below hypothesis exits 2", code(&out) == 2);

    let out = run_in(
        &d,
        &["verify-lemma", "--lemma", "L2", "--m", "2", "--N", "3", "--theta", "0.5", "--ell", "4", "--tol", "1e-18"],
    );
    check("unreachable tolerance exits 1", code(&out) == 1);

    // --- stationary: certified = 0 with small residual; impossible tol = 1
    let d = tmp_dir("stationary");
    let out = run_in(&d, &["stationary", "--N", "5", "--p", "3", "--a", "3"]);
    check("stationary exits 0", code(&out) == 0);
    let report = read_json(&d, "report.json");
    let residual = report["result"]["max_residual"].as_f64().unwrap();
    check("residual below 1e-9", residual < 1e-9);
    check("table.csv written", d.join("table.csv").exists());

    let out = run_in(&d, &["stationary", "--N", "5", "--p", "3", "--a", "3", "--tol", "1e-30"]);
    check("failed certification exits 1", code(&out) == 1);

    let out = run_in(&d, &["stationary", "--N", "3", "--p", "2", "--a", "2.5"]);
    check("subcritical p exits 2", code(&out) == 2);

    // --- criterion: answers are exit 0 regardless of verdict
    let d = tmp_dir("criterion");
    let out = run_in(
        &d,
        &["criterion", "--N", "3", "--p", "4", "--q", "2", "--w-bump", "--points", "5"],
    );
    check("criterion exits 0", code(&out) == 0);
    let report = read_json(&d, "report.json");
    check(
        "bounded evidence for supercritical p",
        report["result"]["verdict"] == "BoundedEvidence",
    );

    // gridded CSV input
    let csv_path = d.join("w.csv");
    let mut grid_csv = String::from("t,r,w\n");
    for it in 0..6 {
        for ir in 0..5 {
            grid_csv.push_str(&format!("{},{},1.0\n", 1000.0 * it as f64, 2.0 * ir as f64));
        }
    }
    std::fs::write(&csv_path, grid_csv).unwrap();
    let out = run_in(
        &d,
        &["criterion", "--N", "3", "--p", "2", "--q", "2",
          "--w-csv", csv_path.to_str().unwrap(), "--points", "5"],
    );
    check("gridded criterion exits 0", code(&out) == 0);
    let report = read_json(&d, "report.json");
    check(
        "out-of-domain probes flagged",
        report["result"]["out_of_domain"] == true,
    );

    // --- simulate presets: checks map to exit codes
    let d = tmp_dir("simulate");
    let out = run_in(&d, &["simulate", "--preset", "blowup-bump"]);
    check("blowup preset exits 0", code(&out) == 0);
    let report = read_json(&d, "report.json");
    check("blow-up recorded", report["result"]["blew_up"] == true);
    check(
        "refinement consistent",
        report["result"]["refinement_consistent"] == true,
    );

    let out = run_in(
        &d,
        &["simulate", "--preset", "stationary-check", "--n-r", "256", "--t-end", "2"],
    );
    check("stationary-check exits 0", code(&out) == 0);
    let report = read_json(&d, "report.json");
    check(
        "drift below bound",
        report["result"]["sup_drift_rel"].as_f64().unwrap() < 1e-2,
    );

    // --- sweep: region map tracks a* = 2p/(p-1)
    let d = tmp_dir("sweep");
    let config = d.join("regions.toml");
    std::fs::create_dir_all(&d).unwrap();
    std::fs::write(
        &config,
        "N = 5\nq = 2.0\n\n[p]\nmin = 3.0\nmax = 3.0000001\ncount = 2\n\n[a]\nmin = 1.0\nmax = 4.8\ncount = 20\n",
    )
    .unwrap();
    let out = run_in(&d, &["sweep", "--config", config.to_str().unwrap()]);
    check("sweep exits 0", code(&out) == 0);
    let region = std::fs::read_to_string(d.join("region.csv")).unwrap();
    // p = 3 gives a* = 3: rows with a < 3 must be Nonexistence, a >= 3
    // GlobalExistencePossible
    let mut boundary_ok = true;
    for line in region.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let a: f64 = cols[3].parse().unwrap();
        let verdict = cols[6];
        let expected = if a < 3.0 { "Nonexistence" } else { "GlobalExistencePossible" };
        boundary_ok &= verdict == expected;
    }
    check("region boundary tracks a*", boundary_ok);

    // --- determinism: identical inputs give byte-identical reports and
    // manifests that differ only in the timestamp
    let d1 = tmp_dir("det1");
    let d2 = tmp_dir("det2");
    let args = ["classify", "--N", "4", "--p", "3", "--q", "2", "--a", "2.5"];
    let out1 = run_in(&d1, &args);
    std::thread::sleep(std::time::Duration::from_millis(5));
    let out2 = run_in(&d2, &args);
    check("determinism runs exit 0", code(&out1) == 0 && code(&out2) == 0);
    let r1 = std::fs::read(d1.join("report.json")).unwrap();
    let r2 = std::fs::read(d2.join("report.json")).unwrap();
    check("reports byte-identical", r1 == r2);
    check("stdout byte-identical", out1.stdout == out2.stdout);
    let mut m1 = read_json(&d1, "manifest.json");
    let mut m2 = read_json(&d2, "manifest.json");
    check(
        "manifest digests equal",
        m1["config_digest"] == m2["config_digest"] && m1["config_digest"].as_str().unwrap().len() == 64,
    );
    m1.as_object_mut().unwrap().remove("timestamp");
    m2.as_object_mut().unwrap().remove("timestamp");
    // the recorded command includes the differing --out-dir value
    m1.as_object_mut().unwrap().remove("command");
    m2.as_object_mut().unwrap().remove("command");
    check("manifests identical modulo timestamp", m1 == m2);

    // --- every command's report carries a theorem tag
    let report = read_json(&d1, "report.json");
    check(
        "classify tagged",
        report["theorem_tag"].as_str().is_some_and(|s| !s.is_empty()),
    );

    // --- environment variable override for the output directory
    let d_env = tmp_dir("envdir");
    let out = Command::new(bin())
        .args(["classify", "--N", "3", "--p", "2", "--q", "2"])
        .env("WAVECRIT_OUT_DIR", &d_env)
        .output()
        .unwrap();
    check("env-dir run exits 0", code(&out) == 0);
    check("env-dir report written", d_env.join("report.json").exists());

    println!(
        "acceptance 9 (CLI contract): {}{}",
        if ok { "PASS" } else { "FAIL" },
        if notes.is_empty() {
            String::from(" [exit codes, determinism, tags, region map]")
        } else {
            format!(" [failed: {}]", notes.join("; "))
        }
    );
    assert!(ok, "failed checks: {}", notes.join("; "));
}
