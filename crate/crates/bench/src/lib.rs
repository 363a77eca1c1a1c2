//! Inputs shared by the benchmarks.

use vinesieve::survey::canonical_vines;
use vinesieve::Bigraph;

/// Row numbers benchmarked: a small vine, a mid-sized one and the slowest
/// row of the survey.
pub const SAMPLE_ROWS: [&str; 3] = ["1", "7", "29"];

/// The canonical vine with the given row label.
pub fn vine(row: &str) -> Bigraph {
    let v = canonical_vines().into_iter().find(|v| v.label == row).expect("row in vine list");
    Bigraph::parse(&v.graph).expect("canonical vines parse").with_label(row)
}

pub fn samples() -> Vec<Bigraph> {
    SAMPLE_ROWS.iter().map(|r| vine(r)).collect()
}
