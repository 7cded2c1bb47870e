use std::fs;
use std::io::Write;
use std::process::Command;

use binomdiv_cli::cache::{Cache, CacheRecord};
use binomdiv_cli::run;
use serde_json::json;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("binomdiv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn call_off(args: &[&str]) -> Run {
    let mut v = vec!["--cache", "off"];
    v.extend_from_slice(args);
    call(&v)
}

#[test]
fn seq_t_csv() {
    let r = call_off(&["seq", "t", "--max", "5", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "n,value");
    assert_eq!(lines[5], "5,3648677478873075576");
}

#[test]
fn seq_catalan_starts_at_zero() {
    let r = call_off(&["seq", "catalan", "--max", "5", "--format", "csv"]);
    assert_eq!(r.out, "n,value\n0,1\n1,1\n2,2\n3,5\n4,14\n5,42\n");
    let r = call_off(&["seq", "S:2", "--max", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["values"][1]["value"], json!("231"));
}

#[test]
fn big_values_are_decimal_strings() {
    let r = call_off(&["seq", "t", "--max", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["values"][4]["value"], json!("3648677478873075576"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--theorem", "1.3", "--n-max", "0"][..],
        &["verify", "--theorem", "9.9"],
        &["frobnicate"],
        &["seq", "t"],
        &["seq", "u", "--max", "3"],
        &["seq", "S:31", "--max", "3"],
        &["fsearch", "--k", "7"],
        &["fsearch", "--k", "7", "--l", "36", "--pairs", "paper"],
        &["fsearch", "--k", "7", "--l", "36", "--cap", "0"],
        &["conjecture", "1.2", "--k-max", "3"],
        &["conjecture", "1.3", "--k-max", "1"],
        &["ineq", "--theorem", "2.2", "--m-max", "2"],
        &["--workers", "0", "seq", "t", "--max", "2"],
        &["ratio", "(2n)! / (n)! (", "--n", "3"],
        &["seq", "t", "--max", "3", "--format", "xml"],
    ] {
        let r = call_off(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(!r.err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_go_to_stdout() {
    let r = call(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("fsearch"));
    let r = call(&["--version"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn mismatch_exits_1_with_structured_report() {
    // 6462 lies beyond a cap of 5000
    let r = call_off(&["fsearch", "--pairs", "paper", "--format", "json"]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["mismatches"], json!(1));
    assert_eq!(v["results"][4]["status"], json!({ "unknown_up_to": 5000 }));

    let r = call_off(&["fsearch", "--pairs", "paper", "--cap", "10000", "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("22,200,10000,found,6462,6462,true"));
}

#[test]
fn passing_runs_exit_0() {
    assert_eq!(call_off(&["verify", "--theorem", "1.4", "--n-max", "30"]).code, 0);
    assert_eq!(call_off(&["ineq", "--theorem", "2.3ii", "--m-max", "20"]).code, 0);
    assert_eq!(call_off(&["ineq", "--theorem", "L2.1", "--m-max", "30"]).code, 0);
    assert_eq!(call_off(&["conjecture", "1.2", "--n-max", "50"]).code, 0);
    assert_eq!(call_off(&["fsearch", "--k", "2", "--l", "4"]).code, 0);
}

#[test]
fn ratio_subcommand() {
    let r = call_off(&[
        "ratio",
        "(15n-1)! (2)! (4n)! / (12n+2)! (2n)! (5n-1)!",
        "--n",
        "3",
        "--mod",
        "97",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["value"], json!("77572"));
    assert_eq!(v["residue"], json!(77572 % 97));
    assert_eq!(v["parity"], json!("even"));

    let r = call_off(&["ratio", "(n)! / (2n)!", "--n", "2", "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert!(r.out.lines().nth(1).unwrap().starts_with("(n)! / (2n)!,2,false,2,"));
}

#[test]
fn bober_inconclusive_is_not_a_failure() {
    let r = call_off(&[
        "verify",
        "--theorem",
        "bober",
        "--k-max",
        "3",
        "--l-max",
        "6",
        "--n-max",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!(v["report"]["failures"].as_array().unwrap().is_empty());
    assert!(!v["report"]["inconclusive"].as_array().unwrap().is_empty());
}

#[test]
fn cache_hit_after_fsearch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let mut sink = Vec::new();
    let cache = Cache::new(&path);
    assert!(cache.lookup("fsearch", "k=7;l=36;cap=5000", &mut sink).is_none());

    let first = call(&["--cache", p, "fsearch", "--k", "7", "--l", "36", "--format", "csv"]);
    assert_eq!(first.code, 0);
    let rec = cache.lookup("fsearch", "k=7;l=36;cap=5000", &mut sink).unwrap();
    assert_eq!(rec.payload["status"], json!({ "found": 279 }));

    let second = call(&["--cache", p, "fsearch", "--k", "7", "--l", "36", "--format", "csv"]);
    assert_eq!(first.out, second.out);
    assert_eq!(
        fs::read_to_string(&path).unwrap().lines().count(),
        1,
        "a hit appends nothing"
    );
}

#[test]
fn cached_payload_is_served() {
    // A planted record proves the answer came from the cache.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let cache = Cache::new(&path);
    let planted = json!({ "k": 7, "l": 36, "status": { "found": 4 } });
    cache
        .append(&CacheRecord::new("fsearch", "k=7;l=36;cap=5000", planted))
        .unwrap();
    let r = call(&[
        "--cache",
        path.to_str().unwrap(),
        "fsearch",
        "--k",
        "7",
        "--l",
        "36",
        "--format",
        "csv",
    ]);
    assert!(r.out.contains("7,36,5000,found,4,,"));
}

#[test]
fn version_mismatched_records_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let cache = Cache::new(&path);
    let mut stale = CacheRecord::new(
        "fsearch",
        "k=7;l=36;cap=5000",
        json!({ "k": 7, "l": 36, "status": { "found": 4 } }),
    );
    stale.version = "999.0.0".into();
    cache.append(&stale).unwrap();
    let r = call(&[
        "--cache",
        path.to_str().unwrap(),
        "fsearch",
        "--k",
        "7",
        "--l",
        "36",
        "--format",
        "csv",
    ]);
    assert!(r.out.contains("7,36,5000,found,279,,"));
}

#[test]
fn corrupt_cache_lines_warn_and_continue() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    fs::File::create(&path).unwrap().write_all(b"{\"op\": trunc\n").unwrap();
    let r = call(&[
        "--cache",
        path.to_str().unwrap(),
        "fsearch",
        "--k",
        "7",
        "--l",
        "36",
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains(",279,"));
    assert!(r.err.contains("corrupt cache line 1"));
}

#[test]
fn unwritable_cache_only_warns() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("missing-dir").join("cache.jsonl");
    let r = call(&["--cache", p.to_str().unwrap(), "seq", "s", "--max", "2"]);
    assert_eq!(r.code, 0);
    let r = call(&["--cache", p.to_str().unwrap(), "fsearch", "--k", "7", "--l", "36"]);
    assert_eq!(r.code, 0);
    assert!(r.err.contains("warning: cannot write cache"));
}

const TRANSPARENCY_CASES: &[&[&str]] = &[
    &["verify", "--theorem", "1.2ii", "--k-max", "4", "--n-max", "40"],
    &[
        "verify",
        "--theorem",
        "bober",
        "--k-max",
        "4",
        "--l-max",
        "4",
        "--n-max",
        "10",
    ],
    &["seq", "Q:2", "--max", "6"],
    &["ineq", "--theorem", "2.1", "--m-max", "20"],
    &["ineq", "--theorem", "L2.1", "--m-max", "40"],
    &["conjecture", "1.1", "--m-max", "6", "--k-max", "3", "--n-max", "300"],
    &["conjecture", "1.3", "--k-max", "5", "--l-max", "5", "--n-max", "40"],
    &["fsearch", "--pairs", "paper"],
    &["ratio", "(4n)! / (2n)! (n)! [n+1]", "--n", "5"],
];

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    for args in TRANSPARENCY_CASES {
        for format in ["json", "csv", "plain"] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            let off = call_off(&a);
            let mut with = vec!["--cache", p];
            with.extend(&a);
            let cold = call(&with);
            let warm = call(&with);
            assert_eq!(off.code, cold.code, "{a:?}");
            assert_eq!(off.out, cold.out, "{a:?}");
            assert_eq!(off.out, warm.out, "{a:?}");
            assert_eq!(off.code, warm.code, "{a:?}");
        }
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    for args in TRANSPARENCY_CASES {
        for format in ["json", "csv"] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            let one = call_off(&[&["--workers", "1"][..], &a].concat());
            let four = call_off(&[&["--workers", "4"][..], &a].concat());
            let again = call_off(&[&["--workers", "4"][..], &a].concat());
            assert_eq!(one.out, four.out, "{a:?}");
            assert_eq!(four.out, again.out, "{a:?}");
        }
    }
}

#[test]
fn binary_reads_cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-cache.jsonl");
    let bin = env!("CARGO_BIN_EXE_binomdiv");
    let out = Command::new(bin)
        .args(["fsearch", "--k", "7", "--l", "36", "--format", "csv"])
        .env("BINOMDIV_CACHE", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "k,l,cap,status,value,published,match\n7,36,5000,found,279,,\n"
    );
    assert!(fs::read_to_string(&path).unwrap().contains("\"found\":279"));

    let off = Command::new(bin)
        .args(["--cache", "off", "seq", "s", "--max", "1"])
        .env("BINOMDIV_CACHE", dir.path().join("never.jsonl"))
        .output()
        .unwrap();
    assert!(off.status.success());
    let bad = Command::new(bin)
        .args(["verify", "--theorem", "1.3", "--n-max", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}
