use std::process::{Command, Output};

use qrdesign::designs::DesignReport;
use qrdesign::enumerators::{JacobiJson, JacobiPolynomial};
use qrdesign::format::parse_generator_text;
use qrdesign::projective::OrbitPartition;

fn qrdesign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrdesign"))
        .args(args)
        .env_remove("QRDESIGN_BUDGET")
        .env_remove("QRDESIGN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn published_tables() -> Vec<String> {
    include_str!("fixtures/published_jacobi_42.txt")
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn build_writes_matrix_and_summary() {
    let dir = std::env::temp_dir().join(format!("qrdesign-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q42.txt");
    let o = qrdesign(&[
        "build",
        "--p",
        "41",
        "--extended",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("n=42, k=21"));
    assert!(stdout(&o).contains("10:1722"));
    let code = parse_generator_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((code.length(), code.dimension()), (42, 21));
    std::fs::remove_dir_all(&dir).ok();

    let o = qrdesign(&["build", "--p", "17", "--extended"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("18 9\n"));
    assert!(stderr(&o).contains("n=18, k=9"));
}

#[test]
fn build_refuses_weights_over_budget_but_writes_matrix() {
    let o = qrdesign(&["build", "--p", "73", "--extended"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("74 37\n"));
    assert!(stderr(&o).contains("k = 37"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_qrdesign"))
        .args(["build", "--p", "17", "--extended"])
        .env("QRDESIGN_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_exits_4() {
    for args in [
        &["build", "--p", "13"][..],
        &["build", "--p", "15"],
        &["design", "--p", "23", "--shell", "8"],
        &["jacobi", "--p", "17", "--T", "0,1,99"],
        &["jacobi", "--p", "17", "--T", "0,0"],
        &["design", "--p", "17", "--shell", "40"],
    ] {
        let o = qrdesign(args);
        assert_eq!(o.status.code(), Some(4), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn jacobi_paper_style_matches_published_tables() {
    let tables = published_tables();
    for (set, expected) in [("0,1,inf", &tables[0]), ("0,6,inf", &tables[1])] {
        let o = qrdesign(&["jacobi", "--p", "41", "--T", set, "--format", "paper-style"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), expected.as_str(), "T = {set}");
    }
}

#[test]
fn jacobi_json_round_trips() {
    let o = qrdesign(&[
        "jacobi", "--p", "17", "--T", "0,3,inf", "--dual", "--format", "json",
    ]);
    assert!(o.status.success());
    let json: JacobiJson = serde_json::from_str(&stdout(&o)).unwrap();
    let j = JacobiPolynomial::from_json(&json).unwrap();
    assert_eq!(j.mass(), 512);
    assert_eq!(
        serde_json::to_string(&j.to_json()).unwrap(),
        stdout(&o).trim()
    );
}

#[test]
fn design_reports_witness_for_shell_14() {
    let o = qrdesign(&["design", "--p", "41", "--t", "3", "--shell", "14"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("not a 3-design"), "{out}");
    assert!(out.contains("1584 vs 1575"), "{out}");

    let o = qrdesign(&["design", "--p", "41", "--t", "3", "--shell", "10"]);
    assert!(stdout(&o).contains("3-(42,10,18) design"));
}

#[test]
fn design_json_round_trips() {
    let o = qrdesign(&[
        "design", "--p", "41", "--t", "4", "--shell", "10", "--format", "json",
    ]);
    assert!(o.status.success());
    let report: DesignReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.blocks, 1722);
    assert!(report.is_design(3));
    assert!(!report.is_design(4));
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again, stdout(&o).trim());
    assert!(again.contains("\"code\": \"Q~\""));
}

#[test]
fn exhaustive_flag_agrees_on_union_shells() {
    let orbitwise = qrdesign(&["design", "--p", "17", "--t", "3", "--all", "--union"]);
    let exhaustive = qrdesign(&[
        "design",
        "--p",
        "17",
        "--t",
        "3",
        "--all",
        "--union",
        "--exhaustive",
    ]);
    assert!(orbitwise.status.success() && exhaustive.status.success());
    assert_eq!(stdout(&orbitwise), stdout(&exhaustive));
    assert!(!stdout(&orbitwise).contains("not a"));
}

#[test]
fn reproduce_passes_at_41_and_17() {
    for p in ["41", "17"] {
        let o = qrdesign(&["reproduce", "--p", p]);
        let out = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{out}{}", stderr(&o));
        assert!(!out.contains("FAIL"), "{out}");
    }
    let out = stdout(&qrdesign(&["reproduce", "--p", "41"]));
    assert!(
        out.contains("PASS J(T1) - J(T2) = x^9y^9(x^2-y^2)^9(wy-xz)^3"),
        "{out}"
    );
}

#[test]
fn orbits_json_round_trips() {
    let o = qrdesign(&["orbits", "--p", "17", "--format", "json"]);
    let orbits: OrbitPartition = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(orbits, OrbitPartition::new(17).unwrap());
    assert_eq!(orbits.labels.len(), 816);
}

#[test]
fn harmonic_output_and_profile() {
    let o = qrdesign(&["harmonic", "--p", "41"]);
    assert_eq!(
        stdout(&o).trim(),
        "-5740x^30y^12 + 51660x^28y^14 - 206640x^26y^16 + 482160x^24y^18 - 723240x^22y^20 + 723240x^20y^22 \
         - 482160x^18y^24 + 206640x^16y^26 - 51660x^14y^28 + 5740x^12y^30"
    );
    let o = qrdesign(&["profile", "--p", "41", "--t-max", "4"]);
    assert!(stdout(&o).contains("delta = 2, s = 3"), "{}", stdout(&o));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let one = qrdesign(&[
        "--threads",
        "1",
        "jacobi",
        "--p",
        "41",
        "--T",
        "0,2,5",
        "--format",
        "json",
    ]);
    let many = qrdesign(&[
        "--threads",
        "8",
        "jacobi",
        "--p",
        "41",
        "--T",
        "0,2,5",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&one), stdout(&many));
}
