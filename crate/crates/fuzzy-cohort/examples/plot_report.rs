//! Render an assessment as a standalone SVG: per-stage bar charts with
//! centroid markers plus the comparison triangle diagram.
//!
//! Run with: cargo run --example plot_report

use std::fs;

use fuzzy_cohort::centroid::{compare_groups, TieBreakPolicy};
use fuzzy_cohort::io::{assess_dataset, parse_cohort, AssessmentReport, ComparisonRecord, InputFormat};
use fuzzy_cohort::svg::render_svg;

fn main() -> fuzzy_cohort::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let g1 = parse_cohort(&fs::read(format!("{dir}/fixtures/group1.json"))?, InputFormat::Json, "group1")?;
    let g2 = parse_cohort(&fs::read(format!("{dir}/fixtures/group2.json"))?, InputFormat::Json, "group2")?;

    let a = assess_dataset(&g1)?;
    let b = assess_dataset(&g2)?;

    let comparisons = a
        .centroids
        .iter()
        .zip(&b.centroids)
        .zip(&a.stage_names)
        .map(|((&x, &y), stage)| ComparisonRecord {
            first_group: a.name.clone(),
            second_group: b.name.clone(),
            stage_name: stage.clone(),
            comparison: compare_groups(x, y, TieBreakPolicy::YcDirectional),
        })
        .collect();

    let report = AssessmentReport { groups: vec![a, b], comparisons, ..Default::default() };
    let svg = render_svg(&report);

    let out = std::env::temp_dir().join("fuzzy_cohort_report.svg");
    fs::write(&out, &svg)?;
    println!("wrote {} bytes to {}", svg.len(), out.display());
    Ok(())
}
