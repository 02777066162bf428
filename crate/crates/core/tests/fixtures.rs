//! The JSON files under `fixtures/` must match the in-crate corpus.
//! Run with `FOURLIST_BLESS=1` to rewrite them.

use fourlist::corpus;
use fourlist::io::{import_graph6, parse_embedding, EmbeddingDocument};
use std::path::PathBuf;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn fixture_files_match_corpus() {
    let bless = std::env::var_os("FOURLIST_BLESS").is_some();
    for f in corpus::all() {
        let path = dir().join(format!("{}.json", f.name));
        let expected = EmbeddingDocument::from_fixture(&f).to_json();
        if bless {
            std::fs::write(&path, &expected).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}; rerun with FOURLIST_BLESS=1", path.display()));
        assert_eq!(on_disk, expected, "{} is stale", path.display());
        parse_embedding(&on_disk).unwrap();
    }
}

#[test]
fn no_orphan_fixture_files() {
    let names: Vec<String> = corpus::all().iter().map(|f| format!("{}.json", f.name)).collect();
    for entry in std::fs::read_dir(dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".json") {
            assert!(names.contains(&name), "{name} has no corpus entry");
        }
    }
}

#[test]
fn census_has_every_small_connected_graph() {
    let text = std::fs::read_to_string(dir().join("census/connected_upto6.g6")).unwrap();
    let docs = import_graph6(&text, None).unwrap();
    let mut by_order = [0usize; 7];
    for d in &docs {
        let inst = d.validate().unwrap();
        assert!(inst.graph.graph().is_connected());
        by_order[d.n] += 1;
    }
    // connected graphs on 1..=6 vertices, up to isomorphism
    assert_eq!(by_order, [0, 1, 1, 2, 6, 21, 112]);
}
