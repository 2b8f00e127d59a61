use std::process::{Command, Output};

use qseries::cli::parse_complex;

fn qseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(args)
        .env_remove("QSERIES_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn first_value(o: &Output) -> qseries::ComplexScalar {
    parse_complex(stdout(o).lines().next().unwrap()).unwrap()
}

#[test]
fn eval_prints_value_and_depth() {
    let o = qseries(&["eval", "qpoch", "--a", "0.5", "--q", "0.5", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.328125\nterms: 3\n");

    let o = qseries(&["eval", "theta", "--x", "-1", "--q", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(first_value(&o).norm() < 1e-14);

    // leading minus signs are values, not flags
    let o = qseries(&["eval", "qpoch", "--a", "-2i", "--q", "-0.5", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1+2i\nterms: 1\n");

    let o = qseries(&["eval", "phi", "--upper", "0.3", "--lower", "", "--q", "0.4", "--z", "0.5"]);
    let num = first_value(&qseries(&["eval", "qpoch", "--a", "0.15", "--q", "0.4"]));
    let den = first_value(&qseries(&["eval", "qpoch", "--a", "0.5", "--q", "0.4"]));
    let v = first_value(&o);
    assert!((v - num / den).norm() <= 1e-13 * v.norm());
    assert!(stdout(&o).contains("terms: "));
}

#[test]
fn eval_kinds_and_formats() {
    let o = qseries(&["eval", "kinf", "--y", "0.3-0.2i", "--q", "0.5"]);
    let e = qseries(&["eval", "eb", "--y", "0.3-0.2i", "--q", "0.5", "--b", "2"]);
    assert_eq!(stdout(&o), stdout(&e));

    let o = qseries(&["eval", "eop", "--y", "0.2", "--q", "0.5", "--b", "2", "--sign", "-1", "--x", "0.7", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));

    let o = qseries(&["eval", "psi", "--upper", "0.6", "--lower", "0.1", "--q", "0.4", "--z", "0.5", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(j["value"]["re"].is_f64() && j["terms"].as_u64().unwrap() > 2);

    let o = qseries(&["eval", "qpoch", "--a", "0.5", "--q", "0.5", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "re,im,terms\n0.328125,0,3\n");
}

#[test]
fn eval_exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["eval", "qpoch", "--a", "0.5x", "--q", "0.5"], 2, "--a"),
        (&["eval", "qpoch", "--a", "0.5", "--q", "1.5"], 2, "q"),
        (&["eval", "qpoch", "--q", "0.5"], 2, "--a"),
        (&["eval", "wat", "--q", "0.5"], 2, ""),
        (&["eval", "qpoch", "--a", "0.5", "--q", "0.5", "--n", "-1"], 3, "pole"),
        (&["eval", "phi", "--upper", "0.3", "--q", "0.4", "--z", "2"], 3, "|z|"),
        (&["eval", "phi", "--upper", "0.3", "--q", "0.4", "--z", "0.99", "--max-terms", "20"], 4, "20 terms"),
        (&["eval", "eop", "--y", "0.2", "--q", "0.5", "--b", "2", "--sign", "3", "--x", "1"], 2, "--sign"),
    ];
    for (args, code, needle) in cases {
        let o = qseries(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn max_terms_from_environment_and_flag() {
    let args = ["eval", "phi", "--upper", "0.3", "--q", "0.4", "--z", "0.99"];
    let env = |v: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_qseries"))
            .args(args)
            .args(extra)
            .env("QSERIES_MAX_TERMS", v)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(env("20", &[]), Some(4));
    assert_eq!(env("20", &["--max-terms", "100000"]), Some(0));
    assert_eq!(env("lots", &[]), Some(2));
}

#[test]
fn list_is_sorted_and_filtered() {
    let o = qseries(&["list", "--group", "A"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);

    let all = qseries(&["list", "--format", "csv"]);
    let text = stdout(&all);
    let mut rows: Vec<(String, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (it.next().unwrap().to_string(), it.next().unwrap().to_string())
        })
        .collect();
    assert_eq!(rows.len(), qseries::identities::registry().len());
    let listed = rows.clone();
    rows.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    assert_eq!(listed, rows);

    let o = qseries(&["list", "--group", "Z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = qseries(&["verify", "--id", "ramanujan-1psi1", "--samples", "50", "--seed", "42", "--tol", "1e-8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["cases"][0]["summary"]["n_pass"], 50);

    assert_eq!(qseries(&["verify", "--id", "nope"]).status.code(), Some(2));
    assert_eq!(qseries(&["verify"]).status.code(), Some(2));

    // an absurd tolerance makes expected-pass cases fail
    let o = qseries(&["verify", "--id", "q-binomial", "--samples", "3", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));

    // a flagged case alone never fails the run
    let o = qseries(&["verify", "--id", "bs-ramkernel-c", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("flagged"));
}

#[test]
fn verify_output_is_independent_of_jobs() {
    let dir = std::env::temp_dir().join(format!("qseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "3", "8"] {
        let path = dir.join(format!("run-{jobs}.json"));
        let o = qseries(&["verify", "--all", "--seed", "42", "--format", "json", "--jobs", jobs, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn csv_report_has_one_row_per_sample() {
    let o = qseries(&["verify", "--id", "q-binomial", "--id", "bailey-daum", "--samples", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 2 * 4);
}
