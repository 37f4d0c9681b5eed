use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypcongest"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const SQUARE_TAIL: &str = "# C4 with a pendant edge\na b\nb c\nc d\nd a\nd e\n";

#[test]
fn hyperbolicity_report_has_envelope() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", SQUARE_TAIL);
    let v = report(&run(&["hyperbolicity", "--edges", s(&g)]));
    assert_eq!(v["schema"], "hypcongest-report/1");
    assert_eq!(v["command"], "hyperbolicity");
    assert!(v["rng"].as_str().unwrap().contains("ChaCha8"));
    assert_eq!(v["labels"], serde_json::json!(["a", "b", "c", "d", "e"]));
    assert_eq!(v["result"]["delta"], 1.0);
    assert_eq!(v["result"]["diameter"], 3);
}

#[test]
fn core_of_a_path() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n8 9\n");
    let v = report(&run(&["core", "--edges", s(&g), "--profile", "all", "--alpha", "1/2"]));
    let c = &v["result"];
    assert_eq!((c["radius"].as_u64(), c["threshold"].as_u64()), (Some(0), Some(25)));
    assert_eq!(v["labels"][c["center"].as_u64().unwrap() as usize], "4");
    assert_eq!(c["intercepted_pairs"], 30);
}

#[test]
fn core_with_profile_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", SQUARE_TAIL);
    let x = write(&dir, "x.txt", "a, c e\n");
    let v = report(&run(&["core", "--edges", s(&g), "--profile", s(&x)]));
    let c = &v["result"];
    assert_eq!(c["threshold"], 3);
    assert!(c["intercepted_pairs"].as_u64() >= c["threshold"].as_u64());
}

#[test]
fn traffic_is_exact() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", SQUARE_TAIL);
    let d = write(&dir, "d.txt", "a c\ne b\n");
    let v = report(&run(&["traffic", "--edges", s(&g), "--demand", s(&d), "--set", "b"]));
    // a-c has two geodesics, one through b; e-b ends at b
    assert_eq!(v["result"]["mu"], "3/2");
    assert_eq!(v["result"]["mu_decimal"], 1.5);
}

#[test]
fn multicore_and_radius_floor() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n");
    let c = write(&dir, "c.txt", "0 1\n4 5\n");
    let v = report(&run(&["multicore", "--edges", s(&g), "--commodity", s(&c), "--radius", "0"]));
    assert_eq!(v["result"]["multicore"]["centers"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["multicore"]["covered"], true);
    let cyc = write(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let cc = write(&dir, "cc.txt", "0 2\n");
    let out = run(&["multicore", "--edges", s(&cyc), "--commodity", s(&cc), "--radius", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("8 delta"));
}

#[test]
fn beamcore_and_hitpack() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", SQUARE_TAIL);
    let v = report(&run(&["beamcore", "--edges", s(&g)]));
    assert_eq!(v["result"]["beam_core"]["all_beams_intercepted"], true);
    assert_eq!(v["result"]["structure"]["diam_rad"]["holds"], true);
    let f = write(&dir, "f.json", r#"[{"name": "I", "vertices": ["a", "b"]}, {"name": "J", "vertices": ["e"]}]"#);
    let v = report(&run(&["hitpack", "--edges", s(&g), "--family", s(&f), "--base", "c"]));
    let hp = &v["result"]["hitpack"];
    assert_eq!(hp["hitting_set"].as_array().unwrap().len(), hp["packing"].as_array().unwrap().len());
    assert_eq!(v["result"]["certificate"]["hits_all"], true);
}

#[test]
fn helly_family_and_balls() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 2\n2 3\n3 4\n2 5\n5 6\n");
    let f = write(&dir, "f.json", r#"[{"name": "A", "vertices": [0, 1, 2]}, {"name": "B", "vertices": [2, 3, 4]}, {"name": "C", "vertices": [2, 5, 6]}]"#);
    let v = report(&run(&["helly", "--edges", s(&g), "--family", s(&f)]));
    assert_eq!(v["result"]["meets"], serde_json::json!([true, true, true]));
    let b = write(&dir, "b.txt", "0 2\n4 2\n6 2\n");
    let v = report(&run(&["helly", "--edges", s(&g), "--balls", s(&b)]));
    assert_eq!(v["labels"][v["result"]["common_vertex"].as_u64().unwrap() as usize], "2");
    let far = write(&dir, "far.json", r#"[{"name": "A", "vertices": [0]}, {"name": "B", "vertices": [6]}]"#);
    assert_eq!(run(&["helly", "--edges", s(&g), "--family", s(&far)]).status.code(), Some(1));
}

#[test]
fn kappa_end_to_end_on_a_generated_tree() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("t.txt");
    let gen = run(&["--seed", "7", "generate", "--kind", "tree", "--n", "20", "--out", s(&g)]);
    assert_eq!(gen.status.code(), Some(0));
    let f = write(
        &dir,
        "k.json",
        r#"[{"name": "A", "parts": [[0, 3], [5]]}, {"name": "B", "parts": [[7, 2]]}, {"name": "C", "parts": [[11], [14, 19]]}, {"name": "D", "parts": [[16]]}]"#,
    );
    let v = report(&run(&["kappa", "--edges", s(&g), "--family", s(&f), "--r", "3"]));
    let k = &v["result"]["kappa"];
    let (t, p, kappa) = (
        k["hitting_set"].as_array().unwrap().len(),
        k["packing"].as_array().unwrap().len(),
        k["kappa"].as_u64().unwrap() as usize,
    );
    assert_eq!(kappa, 2);
    assert!(t <= 2 * kappa * kappa * p);
    assert!(k["certificates"].as_object().unwrap().values().all(|c| c == true));
}

#[test]
fn generate_is_reproducible_and_rereadable() {
    let a = run(&["--seed", "7", "generate", "--kind", "gnp", "--n", "30", "--p", "0.15"]);
    let b = run(&["--seed", "7", "generate", "--kind", "gnp", "--n", "30", "--p", "0.15"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("# generator {\"kind\":\"gnp_connected\""));
    let (g, labels) = hypcongest::io::parse_edge_list(&text).unwrap();
    assert_eq!((g.n(), labels.len()), (30, 30));
    assert!(g.is_connected());
}

#[test]
fn input_errors_exit_one_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb\n");
    let out = run(&["hyperbolicity", "--edges", s(&g)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["core", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["hyperbolicity", "--edges", "/nonexistent/g.txt"]).status.code(), Some(1));
    let ok = write(&dir, "ok.txt", SQUARE_TAIL);
    assert_eq!(run(&["--max-n", "3", "hyperbolicity", "--edges", s(&ok)]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn inflated_balls_meet_on_a_hexagon() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    // pairwise intersecting, but no vertex lies in all three
    let b = write(&dir, "b.txt", "0 1\n2 1\n4 1\n");
    let v = report(&run(&["helly", "--edges", s(&g), "--balls", s(&b)]));
    assert!(v["result"]["common_vertex"].is_u64());
    assert_eq!(v["certificates_failed"], serde_json::json!([]));
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", SQUARE_TAIL);
    let o = dir.path().join("r.json");
    let out = run(&["beamcore", "--edges", s(&g), "--out", s(&o)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&o).unwrap()).unwrap();
    assert_eq!(v["command"], "beamcore");
}

#[test]
fn triangle_beam_core_fails_its_certificate() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "a b\nb c\nc a\n");
    let out = run(&["beamcore", "--edges", s(&g)]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificates_failed"], serde_json::json!(["all_beams_intercepted"]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("certificate failure"));
}
