use std::path::Path;
use std::process::{Command, Output};

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lyndon-klr"))
        .args(args)
        .env("LYNDON_KLR_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn f4_table_matches_reference() {
    let (code, out, _) = run(&["good-lyndon", "--type", "F", "--rank", "4", "--check-paper"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("height 3: [012] [112] [123]"));
    assert!(out.contains("height 11: [21012310123]"));
    assert!(out.contains("check-paper: pass (24 reference words"));
}

#[test]
fn g2_and_a1_tables() {
    let (code, out, _) = run(&["good-lyndon", "--type", "G", "--rank", "2", "--check-paper"]);
    assert_eq!(code, 0);
    assert!(out.contains("height 5: [00101]"));
    let (code, out, _) = run(&["good-lyndon", "--type", "A", "--rank", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "good Lyndon words of A1 (right order): 1\nheight 1: [0]\n");
}

#[test]
fn e8_reference_mismatch_is_reported() {
    let (code, out, _) = run(&["good-lyndon", "--type", "E", "--rank", "8", "--check-paper"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("good Lyndon words of E8 (right order): 120\n"));
    assert_eq!(out.lines().filter(|l| l.contains("paper-table-discrepancy\te8-table")).count(), 34);
    assert_eq!(out.lines().filter(|l| l.contains("missing\te8-list")).count(), 11);
    assert!(out.contains("check-paper: FAIL"));
}

#[test]
fn root_vector_of_g2() {
    let (code, out, _) = run(&["root-vector", "--type", "G", "--rank", "2", "--word", "00101"]);
    assert_eq!(code, 0);
    // [2]_0 [3]_0 = q^3 + 2q + 2q^-1 + q^-3 and [2]_0 [3]_0 [2]_1 spread over q^6 .. q^-6.
    let want = "b*[00101] = (q^3 + 2*q + 2*q^-1 + q^-3)*[00101] + \
                (q^6 + 2*q^4 + 2*q^2 + 2 + 2*q^-2 + 2*q^-4 + q^-6)*[00011]\n\
                kappa = q^3 + 2*q + 2*q^-1 + q^-3\n";
    assert_eq!(out, want);
}

#[test]
fn root_vector_of_a_good_word_and_errors() {
    let (code, out, _) = run(&["root-vector", "--type", "A", "--rank", "2", "--word", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("E*[10] = "), "{out}");
    let (code, _, err) = run(&["root-vector", "--type", "A", "--rank", "2", "--word", "01", "--max-height", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("exceeds the cap"));
    let (code, _, _) = run(&["root-vector", "--type", "A", "--rank", "2", "--word", "05"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["root-vector", "--type", "A", "--rank", "3", "--word", "02"]);
    assert_eq!(code, 2);
}

#[test]
fn shuffle_of_two_letters() {
    let (code, out, _) = run(&["shuffle", "--type", "A", "--rank", "2", "0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "[10] + q*[01]\n");
    let (code, out, _) = run(&["shuffle", "--type", "A", "--rank", "12", "10,", "11,", "--format", "structured"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn standard_character_by_induction() {
    let (code, out, _) = run(&["standard-character", "--type", "A", "--rank", "3", "--good-word", "2.01"]);
    assert_eq!(code, 0);
    assert!(out.contains("ch = [201] + [021] + q*[012]"));
    assert!(out.ends_with("character: pass\n"));
    let (code, out, _) = run(&["standard-character", "--type", "B", "--rank", "3", "--good-word", "2.001"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = run(&["standard-character", "--type", "A", "--rank", "3", "--good-word", "01.2"]);
    assert_eq!(code, 2);
    assert!(err.contains("canonical factorization"));
}

#[test]
fn verify_cuspidal_summaries() {
    let (code, out, _) = run(&["verify-cuspidal", "--type", "B", "--rank", "3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("B3: 9 words checked, 9 passed, 0 failed\n"));
    let (code, out, _) = run(&["verify-cuspidal", "--type", "F", "--rank", "4", "--word", "112010123", "--jobs", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL [112010123] dim 42"));
    assert!(out.contains("explicit-construction: relation failure"));
    assert!(out.contains("\"witness\""));
}

#[test]
fn structured_output_is_line_json() {
    for args in [
        &["good-lyndon", "--type", "D", "--rank", "4", "--check-paper", "--format", "structured"][..],
        &["verify-cuspidal", "--type", "C", "--rank", "3", "--format", "structured"][..],
        &["root-vector", "--type", "F", "--rank", "4", "--word", "1012", "--format", "structured"][..],
    ] {
        let (code, out, _) = run(args);
        assert_eq!(code, 0, "{args:?}");
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{line}: {e}"));
            assert!(v.is_object());
        }
    }
}

#[test]
fn module_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let out = run_in(dir.path(), &["export-module", "--type", "F", "--rank", "4", "--word", "1012", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let out = run_in(dir.path(), &["verify-module", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("dim 3"));

    // Flip one degree: the grading checks must catch it.
    let text = std::fs::read_to_string(&a).unwrap();
    let bad = text.replacen("\"degree\":", "\"degree\":5", 1);
    std::fs::write(&b, bad).unwrap();
    let out = run_in(dir.path(), &["verify-module", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("grading"));

    std::fs::write(&b, "{\"kind\":\"matrix\"}\n").unwrap();
    assert_eq!(run_in(dir.path(), &["verify-module", b.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.jsonl");
    assert_eq!(run_in(dir.path(), &["verify-module", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn standard_modules_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.jsonl");
    let p = path.to_str().unwrap();
    let out = run_in(dir.path(), &["export-module", "--type", "B", "--rank", "3", "--good-word", "2.001", "--out", p]);
    assert!(out.status.success());
    assert_eq!(run_in(dir.path(), &["verify-module", p]).status.code(), Some(0));
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["root-vector", "--type", "F", "--rank", "4", "--word", "12010123"];
    let fresh = run_in(dir.path(), &[&args[..], &["--no-cache"]].concat());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none(), "--no-cache wrote a file");
    let first = run_in(dir.path(), &args);
    let cached = run_in(dir.path(), &args);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, cached.stdout);

    let file = dir.path().join("F4-right.json");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("\"sha256\""));
    // A tampered entry fails its stamp and is recomputed.
    let tampered = text.replacen("\"kappa\": \"", "\"kappa\": \"7 + ", 1);
    assert_ne!(tampered, text);
    std::fs::write(&file, tampered).unwrap();
    let again = run_in(dir.path(), &args);
    assert_eq!(again.stdout, fresh.stdout);

    let flag = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &[&args[..], &["--cache-dir", flag.path().to_str().unwrap()]].concat());
    assert_eq!(out.stdout, fresh.stdout);
    assert!(flag.path().join("F4-right.json").exists());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["good-lyndon", "--type", "Q", "--rank", "2"]).0, 2);
    assert_eq!(run(&["good-lyndon", "--type", "E", "--rank", "9"]).0, 2);
    assert_eq!(run(&["good-lyndon", "--rank", "2"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["export-module", "--type", "A", "--rank", "2", "--out", "x"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-cuspidal", "--type", "D", "--rank", "4", "--jobs", "3"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
}
