use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use ucrga::cli::{CompareReport, RgaReport};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucrga"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ucrga-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compute_all_skips_strict_on_singular_input() {
    let path = example("ones3.csv");
    let o = run(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "all",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("strict RGA skipped"));
    let reports: Vec<RgaReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let methods: Vec<_> = reports.iter().map(|r| r.method.as_str()).collect();
    assert_eq!(methods, ["mp", "uc"]);
}

#[test]
fn json_input_is_detected_from_extension() {
    let path = example("rank1_2x2.json");
    let o = run(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let m = ucrga::parse_csv(&stdout(&o)).unwrap();
    assert!(m.data().iter().all(|&x| (x - 0.25).abs() < 1e-12));
}

#[test]
fn format_flag_overrides_extension() {
    let path = temp_file("matrix.txt", "{\"rows\":1,\"cols\":2,\"data\":[3,4]}");
    let o = run(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: RgaReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.shape, [1, 2]);
    assert_eq!(r.rank, 1);
}

#[test]
fn json_report_has_the_documented_fields() {
    let path = example("a.csv");
    let o = run(&[
        "check",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "strict",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in [
        "method",
        "shape",
        "rank",
        "rga",
        "row_sums",
        "col_sums",
        "element_sum",
        "balancer_converged",
        "checks",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["rga"]["rows"], 3);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn check_on_zero_matrix_passes() {
    let path = temp_file("zeros.csv", "0,0,0\n0,0,0\n");
    let o = run(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: PASS"));
}

#[test]
fn check_mp_on_singular_input_fails_with_code_3() {
    let path = example("ones3.csv");
    let o = run(&["check", "--input", path.to_str().unwrap(), "--method", "mp"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[FAIL] scaling_invariance"));
}

#[test]
fn strict_refuses_rectangular_and_singular_input() {
    for name in ["m.csv", "ones3.csv"] {
        let path = example(name);
        let o = run(&[
            "compute",
            "--input",
            path.to_str().unwrap(),
            "--method",
            "strict",
        ]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stderr(&o).contains("--method uc"));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn bad_input_exits_with_code_1() {
    let ragged = temp_file("ragged.csv", "1,2\n3\n");
    let o = run(&["compute", "--input", ragged.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));

    let nan = temp_file("nan.csv", "1,NaN\n");
    assert_eq!(
        run(&["compute", "--input", nan.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    assert_eq!(
        run(&["compute", "--input", "/nonexistent/m.csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["compute"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));

    let path = example("a.csv");
    let o = run(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--rank-tol",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compare_reports_seeded_residuals() {
    let path = example("scaled_ones3.csv");
    let args = [
        "compare",
        "--input",
        path.to_str().unwrap(),
        "--output",
        "json",
        "--seed",
        "7",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let report: CompareReport = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(report.seed, 7);
    assert!(report.scaling_invariance.uc < 1e-9);
    assert!(report.scaling_invariance.mp > 1e-2);
    assert!((report.max_abs_difference - (4.0 / 9.0 - 1.0 / 9.0)).abs() < 1e-12);
    assert_eq!(stdout(&run(&args)), stdout(&first));
}

#[test]
fn table_output_respects_digits() {
    let path = example("a.csv");
    let o = run(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "strict",
        "--digits",
        "2",
    ]);
    let text = stdout(&o);
    assert!(text.contains("-2.47"), "{text}");
    assert!(!text.contains("-2.470"));
}

#[test]
fn help_and_version_exit_cleanly() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("compare"));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
