use std::process::{Command, Output};

use shadowcf::farey::farey_shadow;
use shadowcf::rational::{format_fraction, parse_rational};
use shadowcf::shadows::shadows_of;

fn shadowcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shadowcf"))
        .args(args)
        .env_remove("SHADOWCF_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn shadow_of_five_halves() {
    let o = shadowcf(&["shadow", "5/2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("ES: 2 (2.000000000000)"), "{s}");
    assert!(s.contains("OS: 3/4 (0.750000000000)"), "{s}");
    assert!(s.contains("even vector: (5 + 4ξη, 2, 4ξ + 2η)"), "{s}");
    assert!(s.contains("odd vector: (5 + 4ξη, 2 + ξη, 5ξ + η)"), "{s}");
}

#[test]
fn shadow_examples() {
    let s = stdout(&shadowcf(&["shadow", "7/2"]));
    assert!(s.contains("OS: 5/4"), "{s}");
    let s = stdout(&shadowcf(&["shadow", "7/5"]));
    assert!(s.contains("ES: 22/25") && s.contains("OS: 12/25"), "{s}");
    let s = stdout(&shadowcf(&["shadow", "4"]));
    assert!(s.contains("ES: 3 ") && s.contains("OS: 0 ") && s.contains("FS: 2 "), "{s}");
}

#[test]
fn shadow_of_a_coefficient_list() {
    let o = shadowcf(&["shadow", "[0,2,2]", "--ascii"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("value: 2/5"), "{s}");
    assert!(s.contains("shadow: -8/25"), "{s}");
    assert!(!s.contains('ξ'), "{s}");
}

#[test]
fn shadow_rejects_nonpositive_input() {
    assert_eq!(code(&shadowcf(&["shadow", "0/5"])), 2);
    assert_eq!(code(&shadowcf(&["shadow", "3/0"])), 2);
    assert_eq!(code(&shadowcf(&["shadow", "1,0"])), 2);
}

#[test]
fn scan_integer_rows() {
    let o = shadowcf(&["scan", "--qmax", "1", "--lo", "1", "--hi", "5"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "p,q,value,es,os,fs");
    assert_eq!(lines.len(), 6);
    for (n, line) in (1..=5).zip(&lines[1..]) {
        assert_eq!(*line, format!("{n},1,{n}.000000000000,{}/1,0/1,", n - 1));
    }
}

#[test]
fn scan_empty_range_is_header_only() {
    let o = shadowcf(&["scan", "--qmax", "1", "--lo", "1/3", "--hi", "1/2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "p,q,value,es,os,fs\n");
    assert_eq!(code(&shadowcf(&["scan", "--qmax", "3", "--lo", "2", "--hi", "1"])), 2);
}

#[test]
fn scan_rows_parse_back_to_library_values() {
    let o = shadowcf(&["scan", "--qmax", "12", "--lo", "1", "--hi", "2", "--fs-depth", "64"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut previous = None;
    let mut rows = 0;
    for line in s.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (p, q): (u64, u64) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        let value = parse_rational(&format!("{p}/{q}")).unwrap();
        assert!(previous.as_ref().is_none_or(|v| v < &value), "not sorted at {line}");
        let (es, os) = shadows_of(p, q).unwrap();
        let fs = farey_shadow(p, q, 64).unwrap().unwrap().fs;
        assert_eq!(parse_rational(f[3]).unwrap(), es, "{line}");
        assert_eq!(parse_rational(f[4]).unwrap(), os, "{line}");
        assert_eq!(parse_rational(f[5]).unwrap(), fs, "{line}");
        assert_eq!(f[3], format_fraction(&es));
        // localization at n = 1
        assert!(es >= parse_rational("0").unwrap() && es <= parse_rational("1").unwrap());
        previous = Some(value);
        rows += 1;
    }
    assert_eq!(rows, 47);
}

#[test]
fn scan_output_does_not_depend_on_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_shadowcf"))
            .args(["scan", "--qmax", "15", "--lo", "0", "--hi", "3", "--fs-depth", "40"])
            .env("SHADOWCF_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_shadowcf"))
        .args(["shadow", "5/2"])
        .env("SHADOWCF_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn scan_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.svg");
    let o = shadowcf(&[
        "scan",
        "--qmax",
        "6",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    let rows = stdout(&o).lines().count() - 1;
    assert!(svg.starts_with("<svg"));
    // one point each for ES and OS
    assert_eq!(svg.matches("<circle").count(), 2 * rows);
}

#[test]
fn converge_golden_and_silver() {
    let o = shadowcf(&["converge", "golden", "--tol", "1e-12"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("n,a_n,shadow,decimal,delta\n"));
    assert!(s.contains("# decimal = 0.72360679775"), "{s}");
    let s = stdout(&shadowcf(&["converge", "silver"]));
    assert!(s.contains("# decimal = 1.70710678118"), "{s}");
}

#[test]
fn converge_reports_non_convergence() {
    let o = shadowcf(&["converge", "periodic:1", "--max-terms", "3"]);
    assert_eq!(code(&o), 3);
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["n,a_n,shadow,decimal,delta", "1,1,0/1,0.000000000000,", "2,1,1/1,1.000000000000,1/1", "3,1,1/4,0.250000000000,3/4"]);
}

#[test]
fn converge_finite_file_stream() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cf.txt");
    std::fs::write(&path, "2 1\n1\n").unwrap();
    let spec = format!("file:{}", path.display());
    let o = shadowcf(&["converge", &spec]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("# limit = 3/4"), "{}", stdout(&o));
}

#[test]
fn converge_rejects_bad_streams() {
    assert_eq!(code(&shadowcf(&["converge", "bronze"])), 2);
    assert_eq!(code(&shadowcf(&["converge", "periodic:1,0;1"])), 2);
    assert_eq!(code(&shadowcf(&["converge", "golden", "--tol", "0"])), 2);
}

#[test]
fn tree_formats_and_limit() {
    let s = stdout(&shadowcf(&["tree", "--depth", "0"]));
    assert_eq!(
        s,
        "fishbone:  (1, 0, 0)  (0, 1, 0)  (1, 1, ξ)  (-1, 1, η)\ndown 0:  (1, 1, ξ)\nup 0:  (-1, 1, η)\n"
    );
    let o = shadowcf(&["tree", "--depth", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let outers: Vec<&str> = json["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["display"]["outer"].as_str().unwrap())
        .collect();
    assert!(outers.contains(&"(2 + ξη, 1, ξ + η)"), "{outers:?}");
    let s = stdout(&shadowcf(&["tree", "--format", "dot"]));
    assert!(s.starts_with("digraph"));
    assert_eq!(code(&shadowcf(&["tree", "--depth", "13"])), 2);
    assert_eq!(code(&shadowcf(&["tree", "--depth", "13", "--limit", "13"])), 0);
}

#[test]
fn verify_exit_codes() {
    let o = shadowcf(&["verify", "--suite", "ring"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = shadowcf(&["verify", "--suite", "conjectures"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("4/3 (ES 1, FS -2/9, OS 4/9)"));

    // the Stilde generator fails the membership conditions
    let o = shadowcf(&["verify", "--suite", "group"]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    let failures: Vec<&str> = s.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    assert_eq!(failures.len(), 1, "{s}");
    assert!(failures[0].contains("is_osp(Stilde)"));

    let o = shadowcf(&["verify", "--suite", "farey"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn iterate_golden() {
    let o = shadowcf(&["iterate", "golden", "--depth", "3"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("\n1,") && s.contains(",0.723606797750,"), "{s}");
    assert!(s.contains("\n2,") && s.contains("# stopped: level 2 value is not positive"), "{s}");
}
