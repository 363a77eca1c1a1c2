use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const VINE_1: &str = "gbg1v1v1p1p1";
const NO_EXCEPTION_ROW: &str = "8";

fn vinesieve(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vinesieve"))
        .args(args)
        .env("VINESIEVE_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn canonical_line(row: &str) -> String {
    let text = include_str!("../../core/data/vines.tsv");
    text.lines().find(|l| l.split('\t').next() == Some(row)).expect("row in vine list").to_string()
}

#[test]
fn analyze_formats() {
    let dir = tempfile::tempdir().unwrap();
    let text = vinesieve(&["analyze", VINE_1, "--precision", "64"], dir.path());
    assert!(text.status.success());
    let t = stdout(&text);
    assert!(t.contains("           s: 6"), "{t}");
    assert!(t.contains("           N: 76"), "{t}");
    assert!(t.contains("norm_squared: 4.3027756377319946465596106337352479731256482869226231063552265"), "{t}");

    let json = vinesieve(&["analyze", VINE_1, "--json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["k"], 10);
    assert_eq!(v["r_bound"], 4);
    assert_eq!(v["n_bound"], 76);
    assert_eq!(v["precision"], 128);
    assert!(v["norm_squared"].as_str().unwrap().starts_with("4.30277563773199"));

    let csv = stdout(&vinesieve(&["analyze", VINE_1, "--csv"], dir.path()));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("graph,A,s,K,"));
    assert!(lines[1].starts_with("gbg1v1v1p1p1,"));

    let md = stdout(&vinesieve(&["analyze", VINE_1, "--md"], dir.path()));
    assert!(md.starts_with("| field | value |"));
    assert!(md.contains("| N | `76` |"));
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let rejected = vinesieve(&["analyze", "gbg1v1"], dir.path());
    assert_eq!(rejected.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("rejected"));

    let malformed = vinesieve(&["analyze", "xyz"], dir.path());
    assert_eq!(malformed.status.code(), Some(2));

    let conflicting = vinesieve(&["analyze", VINE_1, "--json", "--csv"], dir.path());
    assert!(!conflicting.status.success());
}

#[test]
fn survey_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("vines.tsv");
    fs::write(&list, format!("{}\n{}\n", canonical_line("1"), canonical_line("7"))).unwrap();
    let cache = dir.path().join("cache");
    let run = |out: &str, extra: &[&str]| {
        let out = dir.path().join(out);
        let mut args = vec!["survey", "--vines", list.to_str().unwrap(), "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = vinesieve(&args, &cache);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(out.join("survey.json")).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        strip_timing(&mut v);
        v
    };
    let fresh = run("a", &["--no-cache"]);
    let first = run("b", &[]);
    assert!(fs::read_dir(&cache).unwrap().count() >= 2);
    let cached = run("c", &[]);
    assert_eq!(fresh, first);
    assert_eq!(first, cached);

    let vines = fresh["vines"].as_array().unwrap();
    assert_eq!(vines.len(), 2);
    assert_eq!(vines[0]["profile"]["n_bound"], 76);
    let survivors: Vec<u64> = fresh["survivors"].as_array().unwrap().iter().map(|s| s["j"].as_u64().unwrap()).collect();
    assert_eq!(survivors, [0, 4]);

    let csv_out = dir.path().join("csv");
    let o = vinesieve(
        &["survey", "--vines", list.to_str().unwrap(), "--out", csv_out.to_str().unwrap(), "--format", "csv", "--no-cache"],
        &cache,
    );
    assert!(o.status.success());
    let csv = fs::read_to_string(csv_out.join("survey.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("row,graph,s,K,R,N,primes,exceptions"));
    assert!(csv.lines().nth(1).unwrap().ends_with(",0 1"));
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn survey_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.tsv");
    fs::write(&empty, "# nothing here\n").unwrap();
    let out = dir.path().join("out");
    let o = vinesieve(&["survey", "--vines", empty.to_str().unwrap(), "--out", out.to_str().unwrap(), "--no-cache"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("survey.json")).unwrap()).unwrap();
    assert_eq!(v["vines"].as_array().unwrap().len(), 0);

    // a vine whose every translate fails the cyclotomic test
    let single = dir.path().join("single.tsv");
    fs::write(&single, canonical_line(NO_EXCEPTION_ROW) + "\n").unwrap();
    let md = dir.path().join("md");
    let o = vinesieve(
        &["survey", "--vines", single.to_str().unwrap(), "--out", md.to_str().unwrap(), "--format", "md", "--no-cache"],
        dir.path(),
    );
    assert!(o.status.success());
    let text = fs::read_to_string(md.join("survey.md")).unwrap();
    assert!(text.contains("0 translates pass the cyclotomic test"), "{text}");
    assert!(text.contains("| none |"), "{text}");

    let missing = vinesieve(&["survey", "--vines", "/nonexistent", "--out", out.to_str().unwrap()], dir.path());
    assert_eq!(missing.status.code(), Some(2));
}
