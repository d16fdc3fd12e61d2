use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discdisp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("discdisp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compare_fixtures_example_1() {
    let o = run(&["compare", "fixture:1a", "fixture:1b"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdicts"]["wd"]["relation"], "greater");
    assert_eq!(v["verdicts"]["st"]["relation"], "greater");
    assert_eq!(v["approximate"], false);
    assert_eq!(v["censored"], false);
    assert_eq!(v["measures_a"]["conventions"]["nu_rob_variant"], "raw");
    assert!(v["d_m"]["values"].as_array().unwrap().len() > 10);
}

#[test]
fn compare_example_2_is_incomparable() {
    let v = json(&run(&["compare", "fixture:2a", "fixture:2b", "--mmax", "5"]));
    assert_eq!(v["verdicts"]["wd"]["relation"], "incomparable");
    assert_eq!(v["d_m"]["values"].as_array().unwrap().len(), 6);
}

#[test]
fn compare_identical_specs_all_equivalent() {
    let v = json(&run(&["compare", "poisson(2.0)", "poisson(2)"]));
    for order in ["wd", "ek", "st", "lr", "rand"] {
        assert_eq!(v["verdicts"][order]["relation"], "equivalent", "{order}");
    }
    assert_eq!(v["approximate"], true);
}

#[test]
fn compare_swapped_mirrors_verdicts() {
    let ab = json(&run(&["compare", "fixture:4a", "binomial(6, 0.5)"]));
    let ba = json(&run(&["compare", "binomial(6, 0.5)", "fixture:4a"]));
    for order in ["wd", "ek", "st", "lr", "rand"] {
        let (x, y) = (&ab["verdicts"][order], &ba["verdicts"][order]);
        let flip = |r: &serde_json::Value| match r.as_str().unwrap() {
            "less" => "greater".to_string(),
            "greater" => "less".to_string(),
            other => other.to_string(),
        };
        assert_eq!(flip(&x["relation"]), y["relation"].as_str().unwrap(), "{order}");
        assert_eq!(x["witness_forward"], y["witness_backward"], "{order}");
    }
}

#[test]
fn counts_and_sample_files() {
    let counts = temp_file("c.csv", "# values\n0,3\n1,5\n2,2\n");
    let sample = temp_file("s.txt", "0 0 0\n1 1 1 1 1\n2 2\n");
    let a = format!("counts:{}", counts.display());
    let b = format!("sample:{}", sample.display());
    let v = json(&run(&["compare", &a, &b]));
    assert_eq!(v["verdicts"]["wd"]["relation"], "equivalent");
    assert_eq!(v["measures_a"]["values"]["sd"], v["measures_b"]["values"]["sd"]);

    let censored = temp_file("cens.csv", "0,3\n>=5,2\n");
    let c = format!("counts:{}", censored.display());
    let v = json(&run(&["compare", &c, &a]));
    assert_eq!(v["censored"], true);
    let o = run(&["compare", &c, &a, "--censor", "reject"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn qcurve_output() {
    let o = run(&["qcurve", "bernoulli(0.3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "eps,q\n0,0.7\n1,1\n");
    assert_eq!(stdout(&run(&["qcurve", "degenerate(2)"])), "eps,q\n0,1\n");
    let s = stdout(&run(&["qcurve", "fixture:1b"]));
    assert!(s.lines().nth(1).unwrap().starts_with("0,0.7976"));
}

#[test]
fn report_tables() {
    let o = run(&["report", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("sample 1"));
    assert!(text.contains("published"));
    assert!(stdout(&run(&["report", "3"])).contains("censored"));
    let v = json(&run(&["report", "4", "--json"]));
    let row = v["computed"][1].as_array().unwrap();
    let want = [3.91, 2.84, 4.50, 3.0, 2.11, 3.02, 1.14];
    for (got, w) in row.iter().zip(want) {
        assert!((got.as_f64().unwrap() - w).abs() <= 0.01);
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["compare", "zeta(2)", "poisson(1)"],
        vec!["compare", "poisson(-1)", "poisson(1)"],
        vec!["compare", "counts:/nonexistent/file.csv", "poisson(1)"],
        vec!["qcurve", "poisson(1)", "--tail-budget", "2"],
        vec!["report", "9"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let bad = temp_file("bad.csv", "0,1\n3,0\n");
    let o = run(&["qcurve", &format!("counts:{}", bad.display())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
