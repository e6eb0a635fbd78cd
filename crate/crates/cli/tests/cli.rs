use std::process::{Command, Output};

use lamplighter::linalg::SparseIntMatrix;
use lamplighter::rep::tree_operator;
use num_rational::BigRational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamplighter")).args(args).output().expect("binary runs")
}

fn run_with_workers(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamplighter"))
        .args(args)
        .env("LAMPLIGHTER_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn spectrum_level_one() {
    let o = run(&["spectrum", "--level", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lambda,multiplicity,fraction_num,fraction_den\n0,1,1,2\n4,1,1,2\n");
}

#[test]
fn spectrum_level_zero_is_a_parameter_error() {
    assert_eq!(run(&["spectrum", "--level", "0"]).status.code(), Some(2));
}

#[test]
fn spectrum_beyond_the_dense_limit_is_a_resource_error() {
    let o = run(&["spectrum", "--level", "13"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact_multiplicity"));
}

#[test]
fn spectrum_level_twelve_fractions_sum_to_one() {
    let o = run(&["spectrum", "--level", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dim"], 4096);
    assert_eq!(v["total_fraction"], "1");
    let total: BigRational = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["fraction"].as_str().unwrap().parse::<BigRational>().unwrap())
        .sum();
    assert_eq!(total, BigRational::from_integer(1.into()));
    let kernel = v["points"].as_array().unwrap().iter().find(|p| p["lambda"] == "0").unwrap();
    assert_eq!(kernel["multiplicity"], 1365);
}

#[test]
fn kernel_reports_fraction_and_target() {
    let v = json(&run(&["kernel", "--rep", "tree", "--levels", "1", "--lambda", "0"]));
    assert_eq!(v["rows"][0]["fraction"], "1/2");
    assert_eq!(v["rows"][0]["distance"], "1/6");
    assert_eq!(v["target"], "1/3");
    let v = json(&run(&["kernel", "--levels", "1-3", "--lambda", "2"]));
    assert_eq!(v["target"], "1/7");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let v = json(&run(&["kernel", "--rep", "quotient", "--levels", "2", "--lambda", "-2"]));
    assert_eq!(v["rows"][0]["fraction"], "1/4");
}

#[test]
fn kernel_rejects_bad_input() {
    assert_eq!(run(&["kernel", "--levels", "1", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kernel", "--levels", "x"]).status.code(), Some(2));
    assert_eq!(run(&["kernel", "--levels", "0"]).status.code(), Some(2));
    assert_eq!(run(&["kernel", "--rep", "graph", "--levels", "1"]).status.code(), Some(2));
}

#[test]
fn kernel_output_is_independent_of_workers_and_runs() {
    let args = ["kernel", "--rep", "quotient", "--levels", "2-7", "--lambda", "0", "--seed", "5"];
    let one = run_with_workers(&args, "1");
    let four = run_with_workers(&args, "4");
    let again = run_with_workers(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn bad_worker_count_is_a_parameter_error() {
    assert_eq!(run_with_workers(&["bookkeeping"], "zero").status.code(), Some(2));
}

#[test]
fn moments_and_projector_rows() {
    let o = run(&["moments", "--max-k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rows"][1]["exact"], "4");
    assert_eq!(v["rows"][1]["status"], "PASS");
    assert_eq!(v["partial"], false);

    let o = run(&["projector", "--max-k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rows"][0]["exact"], "3/4");
    let third = BigRational::new(1.into(), 3.into());
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["status"], "PASS");
        assert!(row["exact"].as_str().unwrap().parse::<BigRational>().unwrap() > third);
    }
}

#[test]
fn moments_past_the_ceiling_are_partial() {
    let o = run(&["moments", "--max-k", "4", "--support-limit", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["partial"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn check_suites() {
    for suite in ["core", "rep", "ring"] {
        let o = run(&["check", "--suite", suite, "--samples", "500"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let core = stdout(&run(&["check", "--suite", "core", "--samples", "500"]));
    assert!(core.contains("PASS [core] relators of G"));
    let rep = stdout(&run(&["check", "--suite", "rep", "--samples", "500"]));
    assert!(rep.contains("PASS [rep] relation family of H"));
}

#[test]
fn corrupted_alpha_fails_the_checks() {
    let o = run(&["check", "--suite", "all", "--corrupt-alpha", "--samples", "500"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL [core] alpha is conjugation by s"));
}

#[test]
fn check_is_deterministic() {
    let args = ["check", "--suite", "all", "--seed", "3", "--samples", "300", "--corrupt-alpha"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn bookkeeping_verdicts() {
    let v = json(&run(&["bookkeeping"]));
    assert_eq!(v["chi"], 2);
    assert_eq!(v["bettis"]["2"], "7/3");
    assert_eq!(v["verdict"], "counterexample");
    assert_eq!(json(&run(&["bookkeeping", "--b3", "1/4"]))["verdict"], "consistent");
    assert_eq!(json(&run(&["bookkeeping", "--cells", "1,0,0,0", "--b3", "0"]))["chi"], 1);
    assert_eq!(run(&["bookkeeping", "--b3", "one third"]).status.code(), Some(2));
    assert_eq!(run(&["bookkeeping", "--cells", "1,2"]).status.code(), Some(2));
}

#[test]
fn matrix_export_round_trips() {
    let dir = std::env::temp_dir().join(format!("lamplighter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a3.txt");
    let o = run(&["matrix", "--level", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(SparseIntMatrix::from_coordinate_text(&text).unwrap(), tree_operator(3).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_subcommand_is_a_parameter_error() {
    assert_eq!(run(&["plot"]).status.code(), Some(2));
}
