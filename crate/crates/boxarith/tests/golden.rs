//! CLI transcript against a frozen copy. Set `BOXARITH_BLESS=1` to rewrite
//! `tests/golden/session.txt` after an intended output change.

mod common;

use std::fs;
use std::path::PathBuf;

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/session.txt")
}

#[test]
fn session_matches_golden_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let got = common::transcript(dir.path());
    if std::env::var_os("BOXARITH_BLESS").is_some() {
        fs::write(golden_path(), &got).unwrap();
        return;
    }
    let want = fs::read_to_string(golden_path()).expect("golden transcript present");
    if got != want {
        for (i, (g, w)) in got.lines().zip(want.lines()).enumerate() {
            assert_eq!(g, w, "first difference at transcript line {}", i + 1);
        }
        assert_eq!(got.lines().count(), want.lines().count(), "transcript length differs");
    }
}
