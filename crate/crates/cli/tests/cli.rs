use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn immerse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_immerse")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("immerse-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn gen_to(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(file);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&path)]);
    let o = immerse(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn gen_cocktail_header() {
    let o = immerse(&["gen", "cocktail", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("8 24"));
    assert_eq!(text.lines().count(), 25);
}

#[test]
fn gen_mycielski_three_is_five_cycle() {
    let text = stdout(&immerse(&["gen", "mycielski", "3"]));
    assert_eq!(text.lines().next(), Some("5 5"));
}

#[test]
fn gen_rejects_impossible_degree() {
    let o = immerse(&["gen", "random-mindeg", "--n", "5", "--d", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_random_mindeg_meets_degree() {
    let text = stdout(&immerse(&["gen", "random-mindeg", "--n", "40", "--d", "21", "--seed", "1"]));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split_whitespace().next(), Some("40"));
    let mut deg = [0usize; 40];
    for l in lines {
        let e: Vec<usize> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
        assert_ne!(e[0], e[1]);
        deg[e[0]] += 1;
        deg[e[1]] += 1;
    }
    assert!(deg.iter().all(|&d| d >= 21), "{deg:?}");
}

#[test]
fn timing_is_opt_in() {
    let dir = scratch("timing");
    let g = gen_to(&dir, "g.txt", &["cocktail", "3"]);
    assert!(json(&immerse(&["find", s(&g), "--strategy", "dense"])).get("wall_seconds").is_none());
    let r = json(&immerse(&["find", s(&g), "--strategy", "dense", "--timing"]));
    assert!(r["wall_seconds"].as_f64().is_some());
}

#[test]
fn dense_on_cocktail() {
    let dir = scratch("dense");
    let g = gen_to(&dir, "g.txt", &["cocktail", "4"]);
    let o = immerse(&["find", s(&g), "--strategy", "dense"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["outcome"]["kind"], "certificate");
    assert_eq!(r["outcome"]["order"], 4);
    assert!(r["claims"].as_array().unwrap().iter().any(|c| c["claim"] == "certificate-verifies"));
    let cert = dir.join("g.txt.cert");
    assert!(cert.exists());
    assert_eq!(immerse(&["verify", s(&g), s(&cert)]).status.code(), Some(0));
}

#[test]
fn stable3_on_five_cycle() {
    let dir = scratch("stable3");
    let g = gen_to(&dir, "c5.txt", &["mycielski", "3"]);
    let cert = dir.join("out.cert");
    let o = immerse(&["find", s(&g), "--strategy", "stable3", "--out", s(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["outcome"]["order"], 2);
    assert_eq!(r["outcome"]["strong"], true);
    assert_eq!(immerse(&["verify", s(&g), s(&cert), "--strong"]).status.code(), Some(0));
}

#[test]
fn stable3_refuses_stable_triple() {
    let dir = scratch("triple");
    let g = dir.join("empty.txt");
    fs::write(&g, "5 0\n").unwrap();
    let o = immerse(&["find", s(&g), "--strategy", "stable3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["outcome"]["kind"], "none");
}

#[test]
fn auto_on_complete_ten() {
    let dir = scratch("auto");
    let g = gen_to(&dir, "k10.txt", &["complete", "10"]);
    let o = immerse(&["find", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["outcome"]["order"], 10);
    assert!(r["attempts"].as_array().unwrap().len() >= 2);
}

#[test]
fn oracle_queries() {
    let dir = scratch("oracle");
    let g = gen_to(&dir, "c5.txt", &["mycielski", "3"]);
    let chi = immerse(&["oracle", "chi", s(&g)]);
    assert_eq!(chi.status.code(), Some(0));
    assert_eq!(json(&chi)["value"], 3);
    assert_eq!(immerse(&["oracle", "immersion", s(&g), "--t", "3"]).status.code(), Some(0));
    let k4 = immerse(&["oracle", "immersion", s(&g), "--t", "4"]);
    assert_eq!(k4.status.code(), Some(1));
    assert_eq!(json(&k4)["result"], "not_found");
}

#[test]
fn verify_exit_codes() {
    let dir = scratch("verify");
    let g = gen_to(&dir, "g.txt", &["cocktail", "4"]);
    let other = gen_to(&dir, "k8.txt", &["complete", "8"]);
    let cert = dir.join("g.cert");
    assert_eq!(immerse(&["find", s(&g), "--strategy", "dense", "--out", s(&cert)]).status.code(), Some(0));
    assert_eq!(immerse(&["verify", s(&g), s(&cert)]).status.code(), Some(0));

    // second route replaced by a copy of the first
    let text = fs::read_to_string(&cert).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let at = lines.iter().position(|l| l.starts_with("routes")).unwrap();
    lines[at + 2] = lines[at + 1];
    let tampered = dir.join("tampered.cert");
    fs::write(&tampered, lines.join("\n") + "\n").unwrap();
    let o = immerse(&["verify", s(&g), s(&tampered)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("reject"));

    assert_eq!(immerse(&["verify", s(&other), s(&cert)]).status.code(), Some(2));
    assert_eq!(immerse(&["verify", s(&g), s(&dir.join("absent.cert"))]).status.code(), Some(2));
}

#[test]
fn malformed_graph_is_format_error() {
    let dir = scratch("bad");
    let g = dir.join("bad.txt");
    fs::write(&g, "not a graph\n").unwrap();
    assert_eq!(immerse(&["find", s(&g)]).status.code(), Some(2));
}

#[test]
fn find_report_is_reproducible() {
    let dir = scratch("repro");
    let g = gen_to(&dir, "g.txt", &["random-mindeg", "--n", "60", "--d", "28", "--p", "0.2", "--seed", "3"]);
    let a = immerse(&["find", s(&g), "--strategy", "mindeg"]);
    let b = immerse(&["find", s(&g), "--strategy", "mindeg"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["outcome"]["order"], 3);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_quick_is_deterministic() {
    let a = immerse(&["selftest", "--level", "quick"]);
    let b = immerse(&["selftest", "--level", "quick"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
}
