use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copcover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).display().to_string()
}

#[test]
fn gen_prints_graph6() {
    let o = bin(&["gen", "petersen"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "I?LRCecq?");
    assert_eq!(stdout(&bin(&["gen", "grid", "2", "3"])).trim(), "EkSg");
    let a = stdout(&bin(&["gen", "random_gnp", "12", "30", "--seed", "9"]));
    assert_eq!(a, stdout(&bin(&["gen", "random_gnp", "12", "30", "--seed", "9"])));
    assert_eq!(bin(&["gen", "nonsense"]).status.code(), Some(2));
}

#[test]
fn copnum_document() {
    let g6 = stdout(&bin(&["gen", "petersen"]));
    let v = json(&bin(&["copnum", g6.trim()]));
    assert_eq!(v["cop_number"], 3);
    assert_eq!(v["k"], 3);
    assert_eq!(v["copwin"], true);
    assert_eq!(v["n"], 10);
    for key in ["states", "ranks_histogram", "best_placement", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn solve_without_cop_number() {
    let v = json(&bin(&["solve", "Dhc", "-k", "1"]));
    assert_eq!(v["copwin"], false);
    assert!(v.get("cop_number").is_none());
    assert!(v["ranks_histogram"]["unresolved"].as_u64().unwrap() > 0);
}

#[test]
fn bad_graph6_is_an_input_error() {
    let o = bin(&["copnum", "zz"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncated"));
}

#[test]
fn bounds_table_csv() {
    let o = bin(&["bounds", "--table", "--max-genus", "7"]);
    assert_eq!(stdout(&o), "g,ns_bound,here_bound\n1,3,3\n2,5,4\n3,7,5\n4,9,7\n5,11,9\n6,13,10\n7,15,12\n");
    let v = json(&bin(&["bounds", "--table", "--max-genus", "2", "--format", "json"]));
    assert_eq!(v[1]["here_bound"], 4);
}

#[test]
fn embedding_commands() {
    let faces = json(&bin(&["faces", &corpus("embeddings/petersen_projective.json")]));
    assert_eq!(faces["faces"], 6);
    assert_eq!(faces["euler_genus"], 1);
    assert_eq!(faces["orientable"], false);

    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    let cover = bin(&["doublecover", &corpus("embeddings/petersen_projective.json"), "--map", map.to_str().unwrap()]);
    let cover_path = dir.path().join("cover.json");
    std::fs::write(&cover_path, &cover.stdout).unwrap();
    let f = json(&bin(&["faces", cover_path.to_str().unwrap()]));
    assert_eq!(
        (f["faces"].as_u64(), f["euler_genus"].as_u64(), f["orientable"].as_bool()),
        (Some(12), Some(0), Some(true))
    );

    let crossed = bin(&["crosscap", &corpus("embeddings/c3_planar.json")]);
    let crossed_path = dir.path().join("crossed.json");
    std::fs::write(&crossed_path, &crossed.stdout).unwrap();
    assert_eq!(json(&bin(&["faces", crossed_path.to_str().unwrap()]))["euler_genus"], 1);
}

#[test]
fn genus_search() {
    let k33 = stdout(&bin(&["gen", "complete_bipartite", "3", "3"]));
    let v = json(&bin(&["genus", k33.trim(), "--exhaustive", "--mode", "orientable"]));
    assert_eq!(v["euler_genus"], 2);
    assert_eq!(v["orientable_genus"], 1);
}

#[test]
fn weakcover_check() {
    let map = corpus("covers/c6_c3.json");
    let c6 = stdout(&bin(&["gen", "cycle", "6"]));
    let c3 = stdout(&bin(&["gen", "cycle", "3"]));
    let o = bin(&["weakcover", "--check", &map, c6.trim(), c3.trim()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["two_sheeted"], true);
    assert_eq!(bin(&["weakcover", "--check", &map, c3.trim(), c3.trim()]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let doc = format!(
        "{{\"source_graph6\":\"{}\",\"target_graph6\":\"{}\",\"p\":[0,0,0,0,0,0],\"kind\":\"weak_cover\"}}",
        c6.trim(),
        c3.trim()
    );
    std::fs::write(&bad, doc).unwrap();
    assert_eq!(bin(&["weakcover", "--check", bad.to_str().unwrap(), c6.trim(), c3.trim()]).status.code(), Some(1));
}

#[test]
fn transfer_verifies_and_simulates() {
    let dir = tempfile::tempdir().unwrap();
    let cover = corpus("covers/dodecahedron_petersen.json");
    let text = std::fs::read_to_string(&cover).unwrap();
    let source: Value = serde_json::from_str(&text).unwrap();
    let strat = dir.path().join("s.json");
    let o =
        bin(&["solve", source["source_graph6"].as_str().unwrap(), "-k", "3", "--strategy", strat.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json(&bin(&["transfer", "--cover", &cover, "--strategy", strat.to_str().unwrap()]));
    assert_eq!(v["winning"], true);
    let t = json(&bin(&["transfer", "--cover", &cover, "--strategy", strat.to_str().unwrap(), "--simulate"]));
    assert_eq!(t["outcome"], "capture");
    assert!(t["capture_index"].as_u64().is_some());
}

#[test]
fn play_against_scripted_robber() {
    let t = json(&bin(&["play", "Dhc", "-k", "2", "--robber", "2,3,4"]));
    assert_eq!(t["outcome"], "capture");
    assert_eq!(t["placements"]["robber"], 2);
}

#[test]
fn verify_shipped_corpus() {
    let o = bin(&["verify", &corpus("embeddings"), "--covers", &corpus("covers")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["summary"]["failures"], 0);
}

#[test]
fn verify_reports_bad_input() {
    assert_eq!(bin(&["verify", "/nonexistent/dir"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.json"), "{\"n\": 3}").unwrap();
    let o = bin(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corpus_is_deterministic_and_planar_bound_holds() {
    let path = corpus("graphs/planar.g6");
    let a = bin(&["corpus", "copnum", &path, "--workers", "1"]);
    let b = bin(&["corpus", "copnum", &path, "--workers", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let max = v["histogram"].as_object().unwrap().keys().map(|k| k.parse::<u64>().unwrap()).max().unwrap();
    assert!(max <= 3);
}

#[test]
fn empty_corpus_is_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["corpus", "copnum", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["items"], 0);
}
