use std::process::{Command, Output};

fn hypersum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn hypersum_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersum"))
        .args(args)
        .env("HYPERSUM_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON document")
}

fn complex_at(v: &serde_json::Value) -> (f64, f64) {
    let f = |x: &serde_json::Value| x.to_string().parse::<f64>().unwrap();
    (f(&v[0]), f(&v[1]))
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let idx = r.headers().unwrap().iter().position(|h| h == name).unwrap();
    r.records()
        .map(|rec| rec.unwrap()[idx].to_string())
        .collect()
}

#[test]
fn gen_exponential_coefficients() {
    let o = hypersum(&["gen", "--p", "0", "--q", "0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    for key in ["command", "params", "results", "diagnostics", "version"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    let g: Vec<(f64, f64)> = doc["results"]["g"]
        .as_array()
        .unwrap()
        .iter()
        .map(complex_at)
        .collect();
    assert_eq!(g, vec![(1.0, 0.0), (1.0, 0.0), (0.5, 0.0)]);
}

#[test]
fn gen_monic_first_degree() {
    let o = hypersum(&[
        "gen", "--p", "1", "--q", "1", "--a", "1", "--b", "2", "--n", "1", "--monic",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let g: Vec<(f64, f64)> = doc["results"]["G"]
        .as_array()
        .unwrap()
        .iter()
        .map(complex_at)
        .collect();
    assert_eq!(g, vec![(2.0, 0.0), (1.0, 0.0)]);
    assert_eq!(complex_at(&doc["results"]["delta"][1]), (2.0, 0.0));
}

#[test]
fn malformed_literal_names_flag() {
    let o = hypersum(&["gen", "--p", "1", "--q", "0", "--a", "1.5-0.25j"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--a"));
    let o = hypersum(&["gen", "--q", "1", "--b", "1, 2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn count_mismatch_is_usage_error() {
    let o = hypersum(&["gen", "--p", "2", "--a", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn excluded_lower_parameter_is_domain_error() {
    let o = hypersum(&["gen", "--q", "1", "--b", "-3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_exponential_full_suite() {
    let o = hypersum(&[
        "verify", "--p", "0", "--q", "0", "--n-max", "10", "--check", "all",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = json(&o);
    assert_eq!(doc["diagnostics"]["overall"], "PASS");
    assert_eq!(doc["results"]["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_circle_rep_precondition() {
    let o = hypersum(&[
        "verify",
        "--p",
        "1",
        "--q",
        "0",
        "--a",
        "2",
        "--check",
        "circle-rep",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_all_skips_unmet_preconditions() {
    let o = hypersum(&["verify", "--p", "1", "--q", "0", "--a", "2", "--n-max", "6"]);
    let doc = json(&o);
    let skipped: Vec<&str> = doc["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "SKIPPED")
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(skipped, vec!["circle-rep", "roots"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_roots_reports_modulus() {
    let o = hypersum(&[
        "verify", "--check", "roots", "--p", "0", "--q", "1", "--b", "1.5", "--n-max", "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let m = &doc["results"]["checks"][0]["measurements"][0];
    assert_eq!(m["name"], "min_root_modulus");
    assert!(m["value"].to_string().parse::<f64>().unwrap() > 1.0);
}

#[test]
fn verify_failure_exits_four() {
    let o = hypersum(&[
        "verify",
        "--check",
        "ode",
        "--tol",
        "ode_scaled_residual=-1",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let o = hypersum(&["verify", "--check", "ode", "--tol", "nonsense=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_convergence_strictly_decreasing() {
    let o = hypersum(&[
        "sweep",
        "--kind",
        "convergence",
        "--p",
        "0",
        "--q",
        "0",
        "--grid",
        "n=1,2,3,4,5,6,7,8,9,10,11,12,13,14",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let errs: Vec<f64> = csv_column(&stdout(&o), "sup_error")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(errs.len(), 14);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn sweep_root_modulus_grid() {
    let o = hypersum(&[
        "sweep",
        "--kind",
        "root-modulus",
        "--p",
        "0",
        "--q",
        "1",
        "--grid",
        "b1=1,1.5,2",
        "--n",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mins: Vec<f64> = csv_column(&stdout(&o), "min_modulus")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(mins.len(), 3);
    assert!(mins.iter().all(|&m| m >= 1.0 - 1e-9));
}

#[test]
fn sweep_empty_grid_header_only() {
    let o = hypersum(&[
        "sweep",
        "--kind",
        "root-modulus",
        "--p",
        "0",
        "--q",
        "1",
        "--grid",
        "b1=",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn sweep_independent_of_thread_count() {
    let args = [
        "sweep",
        "--kind",
        "gram",
        "--p",
        "1",
        "--q",
        "1",
        "--b",
        "3",
        "--grid",
        "a1=0.5,1,1.5,2",
        "--grid",
        "n=2,5,8",
    ];
    let one = hypersum_env(&args, "1");
    let four = hypersum_env(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 13);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("hypersum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.json");
    let args = ["roots", "--q", "1", "--b", "2", "--n", "6"];
    let direct = hypersum(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = hypersum(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pencil_worked_example() {
    let o = hypersum(&[
        "pencil",
        "--n",
        "2",
        "--j3-diag",
        "0,0",
        "--j3-off",
        "1,1",
        "--j5-diag",
        "0,0",
        "--j5-off1",
        "0,0",
        "--j5-off2",
        "1,1",
        "--alpha",
        "1",
        "--beta",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    let p2: Vec<(f64, f64)> = doc["results"]["p"][2]
        .as_array()
        .unwrap()
        .iter()
        .map(complex_at)
        .collect();
    assert_eq!(p2, vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
}

#[test]
fn pencil_rejects_nonpositive_gamma() {
    let o = hypersum(&[
        "pencil",
        "--n",
        "2",
        "--j3-diag",
        "0,0",
        "--j3-off",
        "1,1",
        "--j5-diag",
        "0,0",
        "--j5-off1",
        "0,0",
        "--j5-off2",
        "0,1",
        "--alpha",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn eval_reports_divergence_as_null() {
    let o = hypersum(&["eval", "--p", "1", "--a", "1", "--n", "10", "--z", "0.5,2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(complex_at(&doc["results"]["points"][0]["pfq"]), (2.0, 0.0));
    assert!(doc["results"]["points"][1]["pfq"].is_null());
}
