use std::process::{Command, Output};

fn z2z2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2z2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn record(path: &std::path::Path, values: &str) {
    std::fs::write(path, format!(r#"{{"kind":"algebra","field":"R","values":{{{values}}}}}"#)).unwrap();
}

#[test]
fn bch_lists_first_coefficients() {
    let o = z2z2(&["bch", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for c in ["c0=-1/2", "c1=1/12", "c2=0", "c3=-1/720"] {
        assert!(s.contains(c), "{s}");
    }
}

#[test]
fn normalize_admissible_and_corrupted_records() {
    let dir = std::env::temp_dir().join(format!("z2z2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    record(&good, r#""d1":"0","d2":"0","d3":"0","b1":"1","b2":"2","b3":"3""#);
    let o = z2z2(&["normalize", "--kind", "algebra", "--in", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("normalizes to"));

    // one constant corrupted
    let bad = dir.join("bad.json");
    record(&bad, r#""d1":"1","d2":"0","d3":"0","b1":"1","b2":"2","b3":"3""#);
    let o = z2z2(&["normalize", "--kind", "algebra", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("d1(b1-b2-b3) = -4"), "{}", stdout(&o));

    let o = z2z2(&["normalize", "--kind", "superalgebra", "--in", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(z2z2(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(z2z2(&["covderiv", "--case", "a9"]).status.code(), Some(2));
    assert_eq!(z2z2(&["model", "check", "s9"]).status.code(), Some(2));
    assert_eq!(z2z2(&["rep", "verify", "A99"]).status.code(), Some(2));
    assert_eq!(z2z2(&["normalize", "--in", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["rep", "closure", "--draws", "3", "--seed", "7", "--format", "json"];
    let a = z2z2(&args);
    let b = z2z2(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let s = &v["summary"];
    let total = s["pass"].as_u64().unwrap() + s["fail"].as_u64().unwrap() + s["inconclusive"].as_u64().unwrap();
    assert_eq!(total as usize, v["checks"].as_array().unwrap().len());
}

#[test]
fn rep_verify_and_emit() {
    let o = z2z2(&["rep", "verify", "A7", "--param", "lambda=1", "--param", "p=-1", "--param", "q=-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = z2z2(&["rep", "emit", "A7", "--param", "lambda=1", "--param", "p=-1", "--param", "q=-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"][0]["certificate"]["matrices"]["H"]["sector"], "00");
    assert_eq!(z2z2(&["rep", "verify", "A7", "--param", "lambda=1"]).status.code(), Some(2));
}

#[test]
fn models_report_exit_codes() {
    assert_eq!(z2z2(&["model", "check", "a1"]).status.code(), Some(0));
    assert_eq!(z2z2(&["model", "check", "s7-quantum", "--cos2", "1/2"]).status.code(), Some(0));
    // the printed S7 Lagrangian differs from its expansion
    let o = z2z2(&["model", "check", "s7-classical"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("f·θ·θ̇: expanded -1, printed 1"));
}

#[test]
fn riccati_accepts_negative_constant() {
    let o = z2z2(&["riccati", "--c", "-2", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("f_C(0) = C/2 for C = -2"));
}
