use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_analogy-mdl"))
        .args(args)
        .env("ANALOGY_MDL_LOG", "off")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(doc["schema"], 1);
    doc
}

fn corpus(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn solve_english_past_tense() {
    let doc = json(&run(&["solve", "work", "worked", "call"]));
    let top = &doc["solutions"][0];
    assert_eq!(top["y"], "called");
    assert_eq!(top["rank"], 1);
    assert_eq!(top["model"], r#"phi1=$1; phi2=$1."ed""#);
    assert!(top["total_bits"].as_u64().unwrap() > 0);
}

#[test]
fn solve_finnish_vowel_harmony() {
    let doc = json(&run(&["solve", "voihin", "vuossa", "soihin"]));
    assert_eq!(doc["solutions"][0]["y"], "suossa");
}

#[test]
fn solve_respects_top_k_and_tsv() {
    let out = run(&[
        "--top-k", "2", "--format", "tsv", "solve", "sing", "sang", "ring",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[0].starts_with("rank\ty\t"));
    assert!(lines[1].starts_with("1\trang\t"));
}

#[test]
fn solve_without_any_solution_exits_2() {
    let out = run(&["solve", "", "b", "c"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_input_exits_1() {
    assert_eq!(run(&["solve", "ça", "a", "b"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "a", "b"]).status.code(), Some(1));
    assert_eq!(
        run(&["--alphabet", "aa", "solve", "a", "a", "a"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["score", "--model", "phi1=", "--target", "a:b"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["score", "--source", "ab", "--target", "a:b"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn score_suffix_model_on_its_own_case() {
    let doc = json(&run(&[
        "score",
        "--model",
        r#"phi1=$1; phi2=$1."s""#,
        "--target",
        "film:films",
    ]));
    let m = &doc["model"];
    let k = m["model_bits"].as_u64().unwrap();
    assert_eq!(m["reusability"]["rho_weak"].as_u64(), Some(k - 1));
    assert_eq!(m["reusability"]["rho_strong"].as_u64(), Some(k - 1));
    assert_eq!(
        doc["target"]["argmin_models"],
        serde_json::json!([r#"phi1=$1; phi2=$1."s""#])
    );
}

#[test]
fn score_duplication_is_not_reusable() {
    let doc = json(&run(&[
        "score",
        "--model",
        r#"phi1=$1."-".$1; phi2=$1"#,
        "--target",
        "orang:orang-orang",
    ]));
    assert_eq!(doc["model"]["reusability"]["rho_weak"], 0);
    assert_eq!(doc["model"]["reusability"]["rho_strong"], 0);
}

#[test]
fn score_source_case_reports_transferability() {
    let doc = json(&run(&[
        "score",
        "--source",
        "work:works",
        "--target",
        "film:films",
    ]));
    let t = &doc["source"]["transfer"];
    assert_eq!(t["variant"], "weak");
    let tau_max = t["tau_max"].as_f64().unwrap();
    let tau_avg = t["tau_avg"].as_f64().unwrap();
    assert!(tau_max > 0.0 && tau_avg <= tau_max);
    assert_eq!(
        t["per_model"].as_array().unwrap().len() as u64,
        t["compatible_count"].as_u64().unwrap()
    );
}

#[test]
fn inspect_model_prints_bits_matching_cost() {
    let doc = json(&run(&["inspect-model", r#"phi1=$1; phi2=$1."s""#]));
    let bits = doc["bits"].as_str().unwrap();
    assert_eq!(bits.len() as u64, doc["cost"].as_u64().unwrap());
    assert!(bits.chars().all(|c| c == '0' || c == '1'));
    let parts: u64 = doc["breakdown"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["bits"].as_u64().unwrap())
        .sum();
    assert_eq!(parts, doc["cost"].as_u64().unwrap());
}

#[test]
fn eval_scores_a_small_corpus() {
    let f = corpus("work\tworked\tcall\tcalled\nvoihin\tvuossa\tsoihin\tsuossa\n");
    let doc = json(&run(&["eval", f.path().to_str().unwrap()]));
    let s = &doc["summary"];
    assert_eq!(s["scored"], 2);
    assert_eq!(s["skipped"], 0);
    assert_eq!(s["accuracy_at_1"], 1.0);
}

#[test]
fn eval_skips_malformed_lines() {
    let f = corpus("work\tworked\tcall\tcalled\nthis line is malformed\nsing\tsang\tring\trang\n");
    let doc = json(&run(&["eval", f.path().to_str().unwrap()]));
    let s = &doc["summary"];
    assert_eq!(s["records"], 3);
    assert_eq!(s["scored"], 2);
    assert_eq!(s["skipped"], 1);
    assert_eq!(doc["skipped"][0]["line"], 2);
}

#[test]
fn eval_of_an_empty_corpus_exits_1() {
    let f = corpus("");
    assert_eq!(
        run(&["eval", f.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["eval", "/nonexistent/corpus.tsv"]).status.code(),
        Some(1)
    );
}

#[test]
fn hand_built_corpus_is_solved_completely() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/data/regular_inflection.tsv"
    );
    let doc = json(&run(&["eval", path]));
    assert_eq!(doc["summary"]["scored"], 20);
    assert_eq!(doc["summary"]["accuracy_at_1"], 1.0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let f = corpus("work\tworked\tcall\tcalled\ntalo\ttalossa\tkoti\n");
    let path = f.path().to_str().unwrap();
    for args in [
        vec!["solve", "work", "worked", "call"],
        vec!["score", "--source", "work:works", "--target", "film:films"],
        vec!["--format", "tsv", "eval", path],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
