use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genfact")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    v["value"].as_str().unwrap().to_string()
}

fn lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn eval_examples() {
    assert_eq!(value(&["eval", "pn", "--alpha", "2", "--r", "1", "--n", "4"]), "105");
    assert_eq!(value(&["eval", "alphafact", "--n", "8", "--alpha", "3"]), "80");
    assert_eq!(value(&["eval", "harmonic", "--n", "3", "--r", "1"]), "11/6");
    assert_eq!(value(&["eval", "stirling1", "--n", "5", "--k", "2"]), "50");
    assert_eq!(value(&["eval", "stirling2", "--n", "5", "--k", "2"]), "15");
}

#[test]
fn verify_sweeps() {
    assert_eq!(run(&["verify", "--family", "chn", "--h-max", "6"]).status.code(), Some(0));
    let o = run(&["verify", "--family", "prop1", "--h", "4", "--conjectural"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = lines(&o);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["inputs"]["suite"] == "conjectural"));

    let o = run(&["verify", "--family", "sigma", "--id", "S1d", "--d-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(lines(&o).iter().all(|r| r["pass"] == true));
}

#[test]
fn checks_and_scans() {
    let o = run(&["check", "--kind", "wilson_prime", "--n", "563"]);
    assert!(o.status.success());
    assert_eq!(lines(&o)[0]["pass"], true);

    let o = run(&["check", "--kind", "wolstenholme", "--n", "16843"]);
    assert_eq!(lines(&o)[0]["pass"], true);

    let o = run(&["scan", "--kind", "sexy_triplet", "--max", "100"]);
    let hits: Vec<String> = lines(&o)
        .into_iter()
        .filter(|r| r["pass"] == true)
        .map(|r| r["inputs"]["n"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(hits, ["5", "7", "11", "17", "31", "41", "47", "61", "67", "97"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--family", "sigma", "--id", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "pn", "--n", "x"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "pn", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--kind", "no_such_kind", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--kind", "fermat", "--n", "5"]).status.code(), Some(3));
    assert_eq!(run(&["--guard", "100", "check", "--kind", "wilson_prime", "--n", "563"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic_across_formats() {
    let args = ["scan", "--kind", "twin", "--min", "3", "--max", "60"];
    let a = run(&args);
    assert_eq!(stdout(&a), stdout(&run(&args)));

    let jsonl = lines(&a);
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(&args);
    let arr: Vec<serde_json::Value> = serde_json::from_str(&stdout(&run(&full))).unwrap();
    assert_eq!(arr, jsonl);

    let mut csv = vec!["--format", "csv"];
    csv.extend_from_slice(&args);
    let text = stdout(&run(&csv));
    let mut rows = text.lines();
    assert!(rows.next().unwrap().starts_with("identity_id,"));
    let passes: Vec<&str> = rows.map(|l| l.split(',').nth(7).unwrap()).collect();
    let expect: Vec<&str> = jsonl.iter().map(|r| if r["pass"] == true { "true" } else { "false" }).collect();
    assert_eq!(passes, expect);
}

#[test]
fn table_rows() {
    let o = run(&["table", "stirling2", "--n", "3"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "3,2,3"));
}
