//! Runs every `tests/golden/*.case` through the binary and compares stdout
//! with the sibling `.stdout` file and the exit code with the `exit:` line.
//! Set `PSEUDOSTD_BLESS=1` to rewrite the expected stdout files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

struct Case {
    args: Vec<String>,
    env: Vec<(String, String)>,
    exit: i32,
}

fn read_case(path: &Path) -> Case {
    let text = fs::read_to_string(path).unwrap();
    let mut case = Case {
        args: Vec::new(),
        env: Vec::new(),
        exit: 0,
    };
    for line in text.lines() {
        let (key, value) = line.split_once(':').unwrap_or_else(|| panic!("{}: bad line {line:?}", path.display()));
        let value = value.trim();
        match key {
            "args" => case.args = value.split_whitespace().map(String::from).collect(),
            "env" => {
                let (k, v) = value.split_once('=').expect("env lines read KEY=VALUE");
                case.env.push((k.to_string(), v.to_string()));
            }
            "exit" => case.exit = value.parse().unwrap(),
            other => panic!("{}: unknown key {other}", path.display()),
        }
    }
    case
}

fn case_files() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "case"))
        .collect();
    files.sort();
    files
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("PSEUDOSTD_BLESS").is_some();
    let files = case_files();
    assert!(files.len() >= 20, "golden cases are missing");
    let mut failures = Vec::new();
    for path in &files {
        let case = read_case(path);
        let output = Command::new(env!("CARGO_BIN_EXE_pseudostd"))
            .args(&case.args)
            .env_remove("PSEUDO_GROWTH_CAP")
            .envs(case.env.iter().map(|(k, v)| (k, v)))
            .output()
            .unwrap();
        let stdout = String::from_utf8(output.stdout).unwrap();
        let expected_path = path.with_extension("stdout");
        if bless {
            fs::write(&expected_path, &stdout).unwrap();
        }
        let expected = fs::read_to_string(&expected_path).unwrap_or_default();
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        if stdout != expected {
            failures.push(format!("{name}: stdout differs\n--- expected\n{expected}--- actual\n{stdout}"));
        }
        if output.status.code() != Some(case.exit) {
            failures.push(format!(
                "{name}: exit {:?}, expected {}\n{}",
                output.status.code(),
                case.exit,
                String::from_utf8_lossy(&output.stderr)
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
