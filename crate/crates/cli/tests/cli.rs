use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freegauss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_slice(&o.stdout).expect("json output");
    (code(&o), v)
}

/// `w!` through the last return to the axis: `(u U v D)! = n · u! · v!`.
fn word_factorial(w: &str) -> u64 {
    if w.is_empty() {
        return 1;
    }
    let b = w.as_bytes();
    // start of the last primitive factor
    let mut depth = 0i32;
    let mut start = 0;
    for (i, &c) in b.iter().enumerate() {
        if depth == 0 {
            start = i;
        }
        depth += if c == b'U' { 1 } else { -1 };
    }
    let (u, v) = (&w[..start], &w[start + 1..w.len() - 1]);
    (w.len() / 2) as u64 * word_factorial(u) * word_factorial(v)
}

#[test]
fn connected_pairing_sequence() {
    let o = run(&["sequence", "a000699", "--max", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "1,1,4,27,248,2830"));
    for method in ["recursion", "pairings", "trees"] {
        let (c, v) = json(&["sequence", "a000699", "--max", "12", "--method", method]);
        assert_eq!(c, 0);
        assert_eq!(v["result"]["values"], serde_json::json!(["1", "1", "4", "27", "248", "2830"]));
    }
}

#[test]
fn config_is_echoed() {
    let (_, v) = json(&["--seed", "7", "sequence", "shifted", "--max", "4"]);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["command"]["subcommand"], "sequence");
    assert_eq!(v["config"]["command"]["max"], 4);
    let o = run(&["--format", "csv", "sequence", "shifted", "--max", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("# config: {"));
    assert_eq!(text.lines().nth(1), Some("n,value,decimal"));
}

#[test]
fn nt_stationary_weights_are_reciprocal_factorials() {
    let (c, v) = json(&["chains", "stationary", "--model", "nt", "--n", "3"]);
    assert_eq!(c, 0);
    let entries = v["result"]["entries"].as_array().expect("entries");
    assert_eq!(entries.len(), 5);
    for e in entries {
        let w = e["state"].as_str().unwrap();
        assert_eq!(e["weight"], format!("1/{}", word_factorial(w)), "{w}");
    }
}

#[test]
fn chain_graph_lists_out_edges() {
    let (c, v) = json(&["chains", "graph", "--model", "mtr", "--n", "3"]);
    assert_eq!(c, 0);
    let nodes = v["result"]["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 5);
    for n in nodes {
        assert!(n["weight"].as_str().unwrap().starts_with("1/"));
        assert!(!n["out"].as_array().unwrap().is_empty());
    }
}

#[test]
fn simulation_is_seed_deterministic() {
    let args = ["--seed", "42", "chains", "simulate", "--model", "nt", "--n", "3", "--steps", "5000"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--seed", "43", "chains", "simulate", "--model", "nt", "--n", "3", "--steps", "5000"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn dyck_mu_example() {
    let (c, v) = json(&["dyck", "mu", "--word", "UUDUDD"]);
    assert_eq!(c, 0);
    assert_eq!(
        v["result"],
        serde_json::json!({ "UDUDUD": "1", "UUDDUD": "2", "UUDUDD": "1" })
    );
}

#[test]
fn hopf_coproduct_and_laws() {
    let (c, v) = json(&["hopf", "coproduct", "--tree", "[3,[1],[2]]"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"].as_array().unwrap().len(), 6);
    let (c, v) = json(&["hopf", "laws", "--n", "3"]);
    assert_eq!(c, 0);
    assert!(v["result"].as_array().unwrap().iter().all(|r| r["holds"] == true));
    let (_, v) = json(&["hopf", "dimensions", "--n", "3"]);
    assert_eq!(v["result"], serde_json::json!(["1", "1", "4", "27"]));
}

#[test]
fn cumulant_routes_agree() {
    let series = json(&["cumulants", "convert", "--kind", "free", "--distribution", "poisson", "--order", "8"]);
    let lattice = json(&[
        "cumulants", "convert", "--kind", "free", "--distribution", "poisson", "--order", "8", "--method", "lattice",
    ]);
    assert_eq!(series.0, 0);
    assert_eq!(series.1["result"]["output"], lattice.1["result"]["output"]);
    let (c, v) = json(&["cumulants", "convert", "--kind", "free", "--direction", "to-moments", "--input", "0,0,1,0,0,0,0"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["output"]["values"], serde_json::json!(["1", "0", "1", "0", "2", "0", "5"]));
}

#[test]
fn weighted_sums_match_without_finding() {
    for (w, p) in [("cc", "1/3"), ("bdj", "1/2"), ("cr", "0")] {
        let (c, v) = json(&["cumulants", "weighted", "--weight", w, "--param", p, "--max", "8"]);
        assert_eq!(c, 0, "{w}");
        assert!(v["finding"].is_null());
    }
}

#[test]
fn fid_failures_are_findings() {
    let (c, v) = json(&["fid", "--c", "9/10", "--order", "200"]);
    assert_eq!(c, 2);
    assert_eq!(v["result"]["verdict"], "FAIL");
    assert_eq!(v["result"]["first_negative_index"], 97);
    let (c, v) = json(&["fid", "--c", "1", "--order", "200"]);
    assert_eq!(c, 2);
    assert_eq!(v["result"]["first_negative_index"], 83);
}

#[test]
fn fid_pass_exits_zero() {
    let (c, v) = json(&["fid", "--c", "-1/2", "--order", "60"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["verdict"], "PASS");
}

#[test]
fn transform_residuals_within_defaults() {
    for q in ["riccati", "decomposition", "compare"] {
        let (c, v) = json(&["transform", "--c", "0", "--quantity", q]);
        assert_eq!(c, 0, "{q}");
        assert_eq!(v["result"]["points"].as_array().unwrap().len(), 25);
    }
    let (c, v) = json(&["transform", "--c", "-1/2", "--grid", "-1:1:3,0.5:1:2"]);
    assert_eq!(c, 0);
    for p in v["result"]["points"].as_array().unwrap() {
        assert!(p["evaluation"]["value"][1].as_f64().unwrap() < 0.0);
    }
}

#[test]
fn impossible_tolerance_is_a_finding() {
    let (c, v) = json(&["transform", "--c", "0", "--quantity", "riccati", "--riccati-tol", "1e-30"]);
    assert_eq!(c, 2);
    assert!(v["finding"].is_string());
}

#[test]
fn gaussian_density() {
    let (c, v) = json(&["density", "--c", "0", "--range", "-2:2:1"]);
    assert_eq!(c, 0);
    let values = v["result"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 5);
    for p in values {
        let u = p[0].as_f64().unwrap();
        let d = p[1].as_f64().unwrap();
        let exact = (-u * u / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        assert!((d - exact).abs() < 1e-4, "u = {u}: {d} vs {exact}");
    }
}

#[test]
fn trajectory_assertions_hold() {
    let (c, v) = json(&["transform", "--c", "-9/10", "--quantity", "trajectory"]);
    assert_eq!(c, 0);
    assert!(v["result"]["assertions"].as_array().unwrap().iter().all(|a| a["holds"] == true));
}

#[test]
fn desk_check_exits_zero() {
    let o = run(&["check", "all", "--level", "desk"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let again = run(&["check", "all", "--level", "desk"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn errors_exit_one_with_error_object() {
    let o = run(&["sequence", "a000699", "--bogus"]);
    assert_eq!(code(&o), 1);
    let (c, v) = json(&["fid", "--c", "1", "--order", "1000"]);
    assert_eq!(c, 1);
    assert_eq!(v["error"]["kind"], "bound");
    let (c, v) = json(&["fid", "--c", "-2", "--order", "60"]);
    assert_eq!(c, 1);
    assert_eq!(v["error"]["kind"], "domain");
    let (c, v) = json(&["check", "nonsense"]);
    assert_eq!(c, 1);
    assert!(v["error"]["message"].is_string());
    let (c, v) = json(&["dyck", "mu", "--word", "UDD"]);
    assert_eq!(c, 1);
    assert!(v["error"].is_object());
}
