use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudostd"))
        .args(args)
        .env_remove("PSEUDO_GROWTH_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&run(args))).unwrap()
}

#[test]
fn json_documents_share_the_top_level_keys() {
    let docs = [
        json(&["generate", "1^w;(EERR)^w", "--steps", "2", "--format", "json"]),
        json(&["generate", "1^w;(EERR)^w", "--length", "9", "--format", "json"]),
        json(&["normalize", "1^w;(EERR)^w", "--format", "json"]),
        json(&["periodicity", "1^w;(EERR)^w", "--format", "json"]),
        json(&["complexity", "1^w;(EERR)^w", "--n-max", "3", "--format", "json"]),
        json(&["verify-4n", "--n-max", "12", "--k-max", "0", "--format", "json"]),
        json(&["sweep", "--count", "3", "--format", "json"]),
        json(&["normalize", "1^w;", "--format", "json"]),
    ];
    for doc in &docs {
        let mut keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["command", "diagnostics", "input", "result"], "{doc}");
    }
    assert_eq!(docs[1]["result"]["prefix"], "101011010");
    assert!(docs[7]["result"].is_null());
}

#[test]
fn csv_has_the_fixed_header_and_one_row_per_length() {
    let out = stdout(&run(&["complexity", "(01)^w;R^w", "--n-max", "20", "--format", "csv"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,C,dC,d2C,saturated"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 21);
    for (n, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], n.to_string());
        assert_eq!(fields[1], (n + 1).to_string());
        assert_eq!(fields[4], "true");
    }
}

#[test]
fn svg_chart_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chart.svg");
    let o = run(&["complexity", "1^w;(EERR)^w", "--n-max", "30", "--svg", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains("stroke-dasharray"));
    let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split(' ').count(), 31);
}

#[test]
fn long_words_wrap_at_53_letters() {
    let out = stdout(&run(&["generate", "1^w;(EERR)^w", "--steps", "11"]));
    let mut words: Vec<String> = Vec::new();
    for line in out.lines() {
        if line.starts_with("w_") {
            words.push(String::new());
        } else {
            assert!(line.len() <= 53);
            words.last_mut().unwrap().push_str(line);
        }
    }
    let lengths: Vec<usize> = words.iter().map(String::len).collect();
    assert_eq!(lengths, [2, 4, 5, 10, 22, 40, 77, 144, 290, 540, 1077]);
    assert!(words.windows(2).all(|w| w[1].starts_with(&w[0])));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["periodicity", "0^w;E^w"]), 0);
    assert_eq!(code(&["generate", "0^w;R^w"]), 2);
    assert_eq!(code(&["generate", "0^w;R^w", "--steps", "2", "--length", "3"]), 2);
    assert_eq!(code(&["complexity", "0^w;R^w", "--n-max", "0"]), 2);
    assert_eq!(code(&["complexity", "0^w;R^w", "--n-max", "3", "--format", "xml"]), 2);
    assert_eq!(code(&["verify-4n", "--n-max", "9"]), 2);
    assert_eq!(code(&["verify-4n", "--n-max", "10", "--k-max", "4"]), 2);
    assert_eq!(code(&["normalize", "0^w R^w"]), 2);
}

#[test]
fn growth_cap_comes_from_the_environment() {
    let with_cap = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_pseudostd"))
            .args(["generate", "1^w;(EERR)^w", "--length", "300"])
            .env("PSEUDO_GROWTH_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(with_cap("1000").status.code(), Some(0));
    let capped = with_cap("200");
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(stdout(&capped).lines().map(str::len).sum::<usize>(), 145);
    assert!(String::from_utf8_lossy(&capped.stderr).contains("growth cap"));
    assert_eq!(with_cap("lots").status.code(), Some(2));
}

#[test]
fn parse_errors_go_to_stderr_with_a_caret() {
    let o = run(&["periodicity", "(01)^w; (R2)^w"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 10"), "{err}");
    assert!(err.contains("\n            ^"), "{err}");
}

#[test]
fn sweeps_are_reproducible_per_seed() {
    let a = stdout(&run(&["sweep", "--count", "30", "--seed", "5"]));
    let b = stdout(&run(&["sweep", "--count", "30", "--seed", "5"]));
    assert_eq!(a, b);
    assert!(a.contains("0 disagreements"));
}
