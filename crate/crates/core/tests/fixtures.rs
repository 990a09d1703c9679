use std::path::PathBuf;

use mtc_core::catalog;
use mtc_core::CategoryFile;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Set `MTC_BLESS=1` to rewrite the JSON files from the catalog.
#[test]
fn fixture_files_match_catalog() {
    let dir = fixture_dir();
    let bless = std::env::var_os("MTC_BLESS").is_some();
    for file in catalog::all() {
        let path = dir.join(format!("{}.json", file.name));
        let expected = file.to_json();
        if bless {
            std::fs::write(&path, &expected).unwrap();
            continue;
        }
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (run with MTC_BLESS=1)", path.display()));
        assert_eq!(on_disk, expected, "{} is stale", path.display());
        assert_eq!(CategoryFile::from_json(&on_disk).unwrap(), file);
    }
}

#[test]
fn every_fixture_validates() {
    for file in catalog::all() {
        let report = file.validate(1e-9).unwrap();
        assert!(report.passed(), "{}:\n{report}", file.name);
    }
}

#[test]
fn serialization_is_deterministic() {
    let a: Vec<String> = catalog::all().iter().map(CategoryFile::to_json).collect();
    let b: Vec<String> = catalog::all().iter().map(CategoryFile::to_json).collect();
    assert_eq!(a, b);
}
