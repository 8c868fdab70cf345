//! Paths to the inputs shared by the benchmarks.

use std::path::PathBuf;

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// The head-first fixture repository, eight small projects.
pub fn fixture_repository() -> PathBuf {
    workspace().join("fixtures/headfirst")
}

/// The shipped pattern definitions.
pub fn pattern_dir() -> PathBuf {
    workspace().join("crates/core/patterns")
}

pub fn srs_text() -> PathBuf {
    workspace().join("fixtures/srs/duck-srs.txt")
}
