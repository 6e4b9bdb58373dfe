//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_pairrank")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn two_item_csv(dir: &tempfile::TempDir) -> PathBuf {
    write_temp(
        dir,
        "two.csv",
        "item_i,item_j,wins_i,wins_j\nalice,bob,1,2\n",
    )
}

/// Deterministic synthetic complete-graph dataset with a known spread of
/// strengths (no RNG needed: win counts follow the index gap).
fn complete_csv(dir: &tempfile::TempDir, n: usize, k: u64) -> PathBuf {
    let mut text = String::from("item_i,item_j,wins_i,wins_j\n");
    for i in 0..n {
        for j in (i + 1)..n {
            // Stronger items have larger indices; i wins get rarer as the
            // index gap grows.
            let wins_i = (k / 2).saturating_sub((j - i) as u64).max(1);
            let wins_j = k - wins_i;
            text.push_str(&format!("n{i},n{j},{wins_i},{wins_j}\n"));
        }
    }
    write_temp(dir, "complete.csv", &text)
}

fn parse_csv_column(text: &str, column: &str) -> Vec<String> {
    let mut lines = text.lines();
    let headers: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = headers
        .iter()
        .position(|h| *h == column)
        .unwrap_or_else(|| panic!("column {column} in {headers:?}"));
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn rank_two_item_oracle_scores() {
    let dir = tempfile::tempdir().unwrap();
    let input = two_item_csv(&dir);
    let out = dir.path().join("result.json");
    let output = run(&[
        "rank",
        "--input",
        input.to_str().unwrap(),
        "--algo",
        "rc",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let scores = json["scores"].as_array().unwrap();
    assert!((scores[0].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    assert!((scores[1].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);
    assert_eq!(json["rank"][0], 2);
    assert_eq!(json["rank"][1], 1);
    assert_eq!(json["algorithm"], "rc");
    assert_eq!(json["diagnostics"]["connected"], true);
}

#[test]
fn rank_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = complete_csv(&dir, 8, 10);
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    let args = |out: &Path| {
        vec![
            "rank".to_string(),
            "--input".into(),
            input.display().to_string(),
            "--algo".into(),
            "mle".into(),
            "--seed".into(),
            "42".into(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let run_once = |out: &Path| {
        let output = Command::new(binary()).args(args(out)).output().unwrap();
        assert!(output.status.success());
        output.stdout
    };
    let stdout_a = run_once(&out_a);
    let stdout_b = run_once(&out_b);
    assert_eq!(stdout_a, stdout_b);
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
}

#[test]
fn unknown_algorithm_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = two_item_csv(&dir);
    let output = run(&[
        "rank",
        "--input",
        input.to_str().unwrap(),
        "--algo",
        "pagerank",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn disconnected_dataset_reports_components() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(
        &dir,
        "split.csv",
        "item_i,item_j,wins_i,wins_j\na,b,2,1\nc,d,1,2\n",
    );
    let output = run(&["rank", "--input", input.to_str().unwrap(), "--algo", "rc"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("disconnected"), "stderr: {stderr}");
    assert!(stderr.contains("2 components"), "stderr: {stderr}");
}

#[test]
fn malformed_row_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(
        &dir,
        "bad.csv",
        "item_i,item_j,wins_i,wins_j\na,b,1,2\na,a,1,0\n",
    );
    let output = run(&["rank", "--input", input.to_str().unwrap(), "--algo", "rc"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains(":3:"), "stderr: {stderr}");
}

#[test]
fn empty_dataset_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(&dir, "empty.csv", "item_i,item_j,wins_i,wins_j\n");
    let output = run(&["rank", "--input", input.to_str().unwrap(), "--algo", "rc"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("no data rows"));
}

#[test]
fn one_sided_data_suggests_regularization() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(
        &dir,
        "onesided.csv",
        "item_i,item_j,wins_i,wins_j\na,b,0,3\nb,c,0,3\na,c,0,3\n",
    );
    let output = run(&["rank", "--input", input.to_str().unwrap(), "--algo", "rc"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("epsilon"));
    // Regularized run succeeds.
    let output = run(&[
        "rank",
        "--input",
        input.to_str().unwrap(),
        "--algo",
        "rc_reg",
    ]);
    assert!(output.status.success());
}

#[test]
fn sweep_emits_all_cells_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let args = [
        "sweep",
        "--n",
        "12",
        "--b",
        "4",
        "--vary",
        "k",
        "--grid",
        "2,4",
        "--fixed",
        "6",
        "--trials",
        "3",
        "--algos",
        "rc,borda,mc2",
        "--seed",
        "5",
        "--out",
    ];
    let output = run(&[&args[..], &[out.to_str().unwrap()]].concat());
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    // |algos| x |grid| rows, nothing dropped.
    assert_eq!(text.lines().count(), 1 + 3 * 2);
    let algos = parse_csv_column(&text, "algorithm");
    assert_eq!(algos, vec!["rc", "rc", "borda", "borda", "mc2", "mc2"]);
    // No silent drops: every trial is either ok or counted as failed.
    let ok = parse_csv_column(&text, "trials_ok");
    let failed = parse_csv_column(&text, "failed");
    for (ok, failed) in ok.iter().zip(&failed) {
        let total: usize = ok.parse::<usize>().unwrap() + failed.parse::<usize>().unwrap();
        assert_eq!(total, 3);
    }

    let rerun = dir.path().join("sweep2.csv");
    let output = run(&[&args[..], &[rerun.to_str().unwrap()]].concat());
    assert!(output.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&rerun).unwrap());
}

#[test]
fn sweep_rejects_infeasible_grid_upfront() {
    let output = run(&[
        "sweep", "--n", "10", "--b", "4", "--vary", "d", "--grid", "4,20", "--fixed", "8",
        "--trials", "2", "--algos", "rc",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("outside [0, 10]"));
}

#[test]
fn crb_column_decreases_like_sqrt_k() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("crb.csv");
    let output = run(&[
        "crb",
        "--n",
        "40",
        "--d",
        "15",
        "--k",
        "1,2,4,8",
        "--b",
        "5",
        "--trials",
        "10",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let crb: Vec<f64> = parse_csv_column(&text, "crb")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    for pair in crb.windows(2) {
        assert!(pair[1] < pair[0], "crb not decreasing: {crb:?}");
        // Doubling k halves the squared bound: ratio ~ 1/sqrt(2).
        let ratio = pair[1] / pair[0];
        assert!((0.6..0.82).contains(&ratio), "ratio {ratio} crb {crb:?}");
    }
    // The estimators should sit at or above the floor on average.
    let rc: Vec<f64> = parse_csv_column(&text, "rc_error")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    for (rc_err, floor) in rc.iter().zip(&crb) {
        assert!(*rc_err > 0.8 * floor, "rc {rc_err} below floor {floor}");
    }
}

#[test]
fn robustness_is_zero_at_full_rate_and_favors_rc() {
    let dir = tempfile::tempdir().unwrap();
    let input = complete_csv(&dir, 20, 30);
    let out = dir.path().join("rob.csv");
    let output = run(&[
        "robustness",
        "--input",
        input.to_str().unwrap(),
        "--rates",
        "0.2,1.0",
        "--trials",
        "20",
        "--algos",
        "rc,borda",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let algo = parse_csv_column(&text, "algorithm");
    let rate = parse_csv_column(&text, "rate");
    let mean: Vec<f64> = parse_csv_column(&text, "mean_dl1")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    let cell = |a: &str, r: &str| -> f64 {
        algo.iter()
            .zip(&rate)
            .zip(&mean)
            .find(|((x, y), _)| x.as_str() == a && y.as_str() == r)
            .map(|(_, &m)| m)
            .unwrap()
    };
    assert_eq!(cell("rc", "1"), 0.0);
    assert_eq!(cell("borda", "1"), 0.0);
    assert!(
        cell("rc", "0.2") <= cell("borda", "0.2"),
        "rc {} vs borda {}",
        cell("rc", "0.2"),
        cell("borda", "0.2")
    );
}

#[test]
fn check_suite_passes() {
    let output = run(&["check", "--suite", "balance", "--seed", "1"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("PASS"), "{stdout}");
}

#[test]
fn emitted_csv_reingests_identically() {
    // Round-trip through the library: parse, emit, parse, emit again.
    let dir = tempfile::tempdir().unwrap();
    let input = complete_csv(&dir, 6, 8);
    let text = std::fs::read_to_string(&input).unwrap();
    let first = pairrank_cli::ingest::parse_csv(&text, "t").unwrap();
    let emitted = pairrank_cli::ingest::emit_csv(&first);
    let second = pairrank_cli::ingest::parse_csv(&emitted, "t").unwrap();
    assert_eq!(first.records, second.records);
    assert_eq!(pairrank_cli::ingest::emit_csv(&second), emitted);
}
