//! The JSON fixtures under `fixtures/` must match the in-code builders.
//! Run with `DECOSIM_BLESS=1` to rewrite them.

use std::path::PathBuf;

use decosim_core::medium::{fixtures, CircuitDocument};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn fixture_files_match_builders() {
    let bless = std::env::var_os("DECOSIM_BLESS").is_some();
    for (name, doc) in fixtures::all() {
        let path = dir().join(format!("{name}.json"));
        if bless {
            std::fs::write(&path, doc.to_json()).unwrap();
        }
        let loaded = CircuitDocument::load(&path).unwrap();
        assert_eq!(loaded, doc, "{name}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, doc.to_json(), "{name} is not in canonical form");
    }
}

#[test]
fn round_trip_preserves_documents() {
    for (name, doc) in fixtures::all() {
        let again = CircuitDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(again, doc, "{name}");
    }
}
