use std::path::PathBuf;
use std::process::Command;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fourlist"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn code(args: &[&str]) -> i32 {
    run(args).0
}

fn result(args: &[&str]) -> serde_json::Value {
    let (_, out) = run(args);
    serde_json::from_str::<serde_json::Value>(&out).unwrap()["result"].clone()
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("fourlist-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn success_paths() {
    assert_eq!(code(&["faces", "--fixture", "c4"]), 0);
    assert_eq!(code(&["genus", "--fixture", "torus_4x4"]), 0);
    assert_eq!(code(&["find-configs", "--fixture", "rule1_example"]), 0);
    assert_eq!(code(&["scan", "--fixture", "c4_H1", "--max-size", "3"]), 0);
    assert_eq!(
        code(&["check-reducible", "--fixture", "c4", "--q", "0,1,2,3"]),
        0
    );
    assert_eq!(code(&["discharge", "--fixture", "cube_Hside"]), 0);
    assert_eq!(code(&["verify-bound", "--fixture", "c4_H1"]), 0);
}

#[test]
fn documented_examples() {
    let cube = fixtures().join("cube.json");
    let (c, out) = run(&["discharge", "--gamma", "4/195", cube.to_str().unwrap()]);
    assert_eq!(c, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["identity"]["holds"], true);
    assert_eq!(v["result"]["identity"]["total"], "-8");

    let c4 = fixtures().join("c4_2lists.json");
    let (c, out) = run(&["count", "--threshold", "2", c4.to_str().unwrap()]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["kind"], "threshold_reached");
    assert_eq!(v["result"]["threshold"], "2");

    let r = result(&["faces", "--fixture", "c4"]);
    let lengths: Vec<u64> = r["faces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["length"].as_u64().unwrap())
        .collect();
    assert_eq!(lengths, vec![4, 4]);

    let r = result(&["count", "--fixture", "c4_4lists"]);
    assert_eq!(r["count"], "84");
}

#[test]
fn verified_false() {
    assert_eq!(
        code(&["check-reducible", "--fixture", "c5", "--q", "0,1,2,3,4"]),
        1
    );
    assert_eq!(
        code(&["check-reducible", "--abstract", "--fixture", "cube", "--q", "0"]),
        1
    );
    assert_eq!(code(&["discharge", "--fixture", "torus_4x4"]), 1);
    assert_eq!(
        code(&["verify-bound", "--fixture", "c4_H1", "--epsilon", "2", "--rescaled-alpha", "0"]),
        1
    );
    assert_eq!(
        code(&["criticality", "--fixture", "path3", "--epsilon", "0", "--alpha", "0"]),
        1
    );
}

#[test]
fn critical_instance() {
    let doc = r#"{"version": "1", "n": 3, "rotations": [[1], [0, 2], [1]],
        "H_vertices": [0, 2], "lists": [[1, 2], [1, 2], [1, 2]]}"#;
    let path = temp_file("critical.json", doc);
    assert_eq!(
        code(&["criticality", &path, "--epsilon", "0", "--alpha", "0"]),
        0
    );
    assert_eq!(
        code(&["criticality", &path, "--epsilon", "0", "--alpha", "0", "--reading", "split"]),
        0
    );
}

#[test]
fn input_errors() {
    assert_eq!(code(&["faces", "/nonexistent/file.json"]), 2);
    assert_eq!(code(&["faces", &temp_file("bad.json", "{\"version\": ")]), 2);
    assert_eq!(code(&["faces", "--fixture", "no_such_fixture"]), 2);
    assert_eq!(code(&["faces"]), 2);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["discharge", "--fixture", "cube", "--gamma", "0.02"]), 2);
    assert_eq!(code(&["discharge", "--fixture", "cube", "--gamma", "0"]), 2);
    // lists of size 2 where 4-lists are required
    let (c, out) = run(&["verify-bound", "--fixture", "c4_2lists"]);
    assert_eq!(c, 2);
    assert!(out.contains("vertex 0"));
    let dangling = r#"{"version": "1", "n": 4, "rotations": [[1, 3], [2, 0], [3, 1], [0, 2]],
        "H_vertices": [0], "H_edges": [[0, 1]]}"#;
    assert_eq!(code(&["faces", &temp_file("dangling.json", dangling)]), 2);
}

#[test]
fn cap_exceeded() {
    assert_eq!(
        code(&["check-reducible", "--fixture", "torus_4x4", "--q", "0,1,2,3"]),
        3
    );
    assert_eq!(code(&["verify-bound", "--fixture", "torus_4x4"]), 3);
    assert_eq!(code(&["criticality", "--fixture", "torus_4x4"]), 3);
    assert_eq!(code(&["scan", "--fixture", "torus_4x4", "--concrete"]), 3);
}

#[test]
fn graph6_input() {
    let census = fixtures().join("census/connected_upto6.g6");
    let census = census.to_str().unwrap();
    assert_eq!(code(&["genus", "--graph6", census, "--index", "10"]), 0);
    assert_eq!(code(&["genus", "--graph6", census, "--index", "143"]), 2);
    let g6 = temp_file("c4.g6", "Cl\n");
    let rot = temp_file("c4.rot", "[[1, 3], [2, 0], [3, 1], [0, 2]]\n");
    let from_g6 = result(&["faces", "--graph6", &g6, "--rotations", &rot]);
    let native = temp_file(
        "c4.json",
        r#"{"version": "1", "n": 4, "rotations": [[1, 3], [2, 0], [3, 1], [0, 2]]}"#,
    );
    assert_eq!(from_g6, result(&["faces", &native]));
    let bad_rot = temp_file("c5.rot", "[[1, 2], [0, 2], [0, 1]]\n");
    assert_eq!(code(&["faces", "--graph6", &g6, "--rotations", &bad_rot]), 2);
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        &["discharge", "--fixture", "dodecahedron_H"][..],
        &["count", "--fixture", "cube_H1"][..],
        &["scan", "--fixture", "c4_H1", "--max-size", "4"][..],
        &["criticality", "--fixture", "c4_H1", "--alpha", "0"][..],
    ] {
        let (_, a) = run(args);
        let (_, b) = run(args);
        let mut single = args.to_vec();
        single.extend(["--jobs", "1"]);
        let (_, c) = run(&single);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, c, "{args:?} with one job");
    }
}
