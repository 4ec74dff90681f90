use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gf2trace"))
        .args(args)
        .env_remove("GF2TRACE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

/// Replaces timing columns and fields with 0 so output is reproducible.
fn normalize(text: &str, json: bool) -> String {
    let mut lines = text.lines();
    let mut out = String::new();
    if json {
        for line in lines {
            match line.find("\"elapsed_ms\": ") {
                Some(i) => {
                    let comma = if line.ends_with(',') { "," } else { "" };
                    out.push_str(&line[..i]);
                    out.push_str("\"elapsed_ms\": 0");
                    out.push_str(comma);
                }
                None => out.push_str(line),
            }
            out.push('\n');
        }
        return out;
    }
    let header = lines.next().unwrap_or_default();
    let col = header.split(',').position(|c| c == "elapsed_ms");
    out.push_str(header);
    out.push('\n');
    for line in lines {
        let mut cells: Vec<&str> = line.split(',').collect();
        if let Some(i) = col {
            cells[i] = "0";
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let got = normalize(&stdout(&out), name.ends_with(".json"));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(got, want, "{name}");
}

#[test]
fn golden_counts_csv() {
    golden("counts_2_12.csv", &["counts", "--min", "2", "--max", "12", "--method", "all", "--format", "csv"]);
}

#[test]
fn golden_counts_json() {
    golden("counts_field_2_8.json", &["counts", "--min", "2", "--max", "8", "--method", "field", "--format", "json"]);
}

#[test]
fn golden_verify_csv() {
    golden("verify_2_10.csv", &["verify", "2", "10", "--format", "csv"]);
}

#[test]
fn golden_table_json() {
    golden("table_2_6.json", &["table", "--min", "2", "--max", "6", "--format", "json"]);
}

#[test]
fn golden_classify_json() {
    golden("classify_0x3B.json", &["classify", "0x3B", "--format", "json"]);
}

#[test]
fn golden_bijection_json() {
    golden("bijection_3_7.json", &["bijection", "--min", "3", "--max", "7", "--samples", "2", "--format", "json"]);
}

#[test]
fn golden_sri_json() {
    golden("sri_8.json", &["sri", "8", "--format", "json"]);
}

#[test]
fn counts_all_agree_on_eleven_rows() {
    let out = run(&["counts", "--min", "2", "--max", "12", "--method", "all", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.contains(",all,")));
    assert!(rows.iter().any(|r| r.starts_with("8,7,7,7,9,all,")));
}

#[test]
fn classify_text() {
    let out = run(&["classify", "x^5+x^4+x^3+x+1"]);
    assert_eq!(stdout(&out), "irreducible, bucket S_{1,1}, signature 1\n");
    assert_eq!(stdout(&run(&["classify", "0x3F"])), "reducible\n");
}

#[test]
fn transform_text() {
    assert_eq!(stdout(&run(&["transform", "--op", "psi", "0x3B"])), "0x25\n");
    assert_eq!(stdout(&run(&["transform", "--op", "psi-inv", "0x37"])), "0x29\n");
    assert_eq!(stdout(&run(&["transform", "--op", "q", "x^2+x+1"])), "0x1F\n");
    assert_eq!(stdout(&run(&["transform", "--op", "q-root", "0x1F"])), "0x7\n");
    assert_eq!(
        stdout(&run(&["transform", "--op", "gl2", "--matrix", "0,1,1,0", "--style", "symbolic", "x^3+x+1"])),
        "x^3+x^2+1\n"
    );
}

#[test]
fn thread_flag_overrides_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gf2trace"))
        .args(["bench", "--n", "12", "--threads", "1", "--format", "json"])
        .env("GF2TRACE_THREADS", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["threads"], 1);
    let out = Command::new(env!("CARGO_BIN_EXE_gf2trace"))
        .args(["bench", "--n", "12", "--format", "json"])
        .env("GF2TRACE_THREADS", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["threads"], 3);
}

#[test]
fn exit_codes_on_success() {
    assert_eq!(code(&["counts", "--max", "6"]), 0);
    assert_eq!(code(&["table", "--max", "6"]), 0);
    assert_eq!(code(&["verify", "2", "8"]), 0);
    assert_eq!(code(&["classify", "0x25"]), 0);
    assert_eq!(code(&["transform", "--op", "reciprocal", "0xB"]), 0);
    assert_eq!(code(&["bijection", "--max", "9"]), 0);
    assert_eq!(code(&["sri", "16"]), 0);
    assert_eq!(code(&["bench", "--n", "14"]), 0);
}

#[test]
fn exit_codes_on_failed_checks() {
    assert_eq!(code(&["bench", "--n", "14", "--threshold-ms", "0"]), 1);
}

#[test]
fn exit_codes_on_usage_errors() {
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["counts", "--bogus"]), 2);
    assert_eq!(code(&["counts", "--min", "5", "--max", "3"]), 2);
    assert_eq!(code(&["counts", "--max", "20", "--method", "field", "--field-budget", "10"]), 2);
    assert_eq!(code(&["table", "--max", "27"]), 2);
    assert_eq!(code(&["verify", "2", "30"]), 2);
    assert_eq!(code(&["verify", "1", "4"]), 2);
    assert_eq!(code(&["classify", "x^2+y"]), 2);
    assert_eq!(code(&["classify", "1"]), 2);
    assert_eq!(code(&["transform", "--op", "q-root", "0xB"]), 2);
    assert_eq!(code(&["transform", "--op", "gl2", "--matrix", "1,1,1,1", "0xB"]), 2);
    assert_eq!(code(&["transform", "--op", "gl2", "0xB"]), 2);
    assert_eq!(code(&["transform", "--op", "psi", "0x3"]), 2);
    assert_eq!(code(&["bijection", "--min", "2"]), 2);
    assert_eq!(code(&["sri", "0"]), 2);
    assert_eq!(code(&["bench", "--n", "40"]), 2);
    let out = run(&["classify", "x^2+y"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
