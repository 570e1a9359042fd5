use std::process::{Command, Output};

use killing_core::characters::character_table;
use killing_core::build_named_group;

fn killing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_killing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = killing(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn survey_a5_markdown() {
    let out = stdout(&["survey", "A5"]);
    assert!(out.contains("| 2A | 15 | 3 | True | False (5) | 21 | (15, 0, 0) |"));
    assert!(out.contains("| 3A | 20 | 2 | True | True | 34 | (10, 10, 0) |"));
    assert_eq!(out.matches("| 5").count(), 2);
    assert!(!out.contains("Warnings"));
}

#[test]
fn survey_psl27_csv() {
    let out = stdout(&["survey", "PSL(2,7)", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# group=PSL(2,7) order=168 seed=0");
    assert_eq!(lines[1], killing_core::survey::SURVEY_CSV_HEADER);
    assert_eq!(lines[2], "2A,21,5,true,true,1,49,21,0,0,true");
    assert_eq!(lines.len(), 7);
}

#[test]
fn survey_s3_degeneracy() {
    let out = stdout(&["survey", "S3", "--format", "csv"]);
    assert!(out.contains("2A,3,1,true,false,3,3,3,0,0,true"));
    assert!(out.contains("3A,2,2,true,true,1,4,1,0,1,false"));
}

#[test]
fn output_is_byte_stable() {
    let a = killing(&["survey", "A6", "--format", "json", "--jobs", "1"]);
    let b = killing(&["survey", "A6", "--format", "json", "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seeded = stdout(&["survey", "A6", "--format", "json", "--seed", "7"]);
    assert!(seeded.contains("\"seed\": 7"));
}

#[test]
fn decompositions() {
    assert!(stdout(&["decompose", "A4", "2A"]).contains("1(9) ⊕ 1*(0) ⊕ 1̄*(0)"));
    assert!(stdout(&["decompose", "S4", "1234"]).contains("1(8) ⊕ 2(8) ⊕ 3̄(-4)"));
    let a5 = stdout(&["decompose", "A5", "5A", "--format", "csv"]);
    assert!(a5.contains("5A,-5.527864,true,"));
    assert!(a5.contains("5A,-14.472136,true,"));
    assert!(a5.contains("5A,24,false,1,1"));
}

#[test]
fn imported_character_table() {
    let g = build_named_group("A5", 1000).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&character_table(&g).unwrap().to_json()).unwrap();
    json["provenance"] = "hand-checked A5 table".into();
    let dir = std::env::temp_dir().join(format!("killing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a5.json");
    std::fs::write(&path, json.to_string()).unwrap();
    let out = stdout(&["decompose", "A5", "3A", "--char-table", path.to_str().unwrap()]);
    assert!(out.contains("1(34) ⊕ 4(24) ⊕ 5(18) ⊕ 4(-12)"), "{out}");
    assert!(out.contains("character table: hand-checked A5 table"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn casimirs() {
    assert!(stdout(&["casimir", "A5", "2A"]).contains("15/14·e − 1/42·θ_{2A}"));
    assert!(stdout(&["casimir", "S4", "2-cycles"]).contains("9/8·e − 1/8·θ_{2A}"));
    let out = killing(&["casimir", "S3", "3-cycles"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn spectrograms() {
    let s3 = stdout(&["spectrogram", "S3", "--format", "csv"]);
    assert_eq!(s3.lines().skip(2).collect::<Vec<_>>(), ["2A,3,3", "3A,4,1", "3A,0,1"]);
    let a5 = stdout(&["spectrogram", "A5", "--format", "csv"]);
    let rows: Vec<&str> = a5.lines().skip(2).collect();
    assert_eq!(rows.len(), 15);
    assert!(rows.contains(&"5B,-5.527864,3"));
    let trivial = stdout(&["spectrogram", "S1", "--format", "csv"]);
    assert_eq!(trivial.lines().count(), 2);
}

#[test]
fn partial_reports_and_errors() {
    let out = killing(&["survey", "A5", "--matrix-cap", "15", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2A,15,"));
    assert!(text.contains("# error 3A:"));
    assert_eq!(killing(&["survey", "NotAGroup"]).status.code(), Some(1));
    assert_eq!(killing(&["decompose", "S4", "9A"]).status.code(), Some(1));
}
