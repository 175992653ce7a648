//! Defuzzify two groups' stage sets to centroid points and compare them
//! stage by stage.
//!
//! Run with: cargo run --example centroid_compare

use std::fs;

use fuzzy_cohort::centroid::{reference_points, stagewise_group_comparison, TieBreakPolicy};
use fuzzy_cohort::io::{format_decimal, parse_cohort, InputFormat};

fn main() -> fuzzy_cohort::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let g1 = parse_cohort(&fs::read(format!("{dir}/fixtures/group1.json"))?, InputFormat::Json, "group1")?;
    let g2 = parse_cohort(&fs::read(format!("{dir}/fixtures/group2.json"))?, InputFormat::Json, "group2")?;

    let refs = reference_points();
    println!(
        "reference points: worst ({}, {}), center ({}, {}), ideal ({}, {})\n",
        format_decimal(refs.worst.x, 2),
        format_decimal(refs.worst.y, 2),
        format_decimal(refs.center.x, 2),
        format_decimal(refs.center.y, 2),
        format_decimal(refs.ideal.x, 2),
        format_decimal(refs.ideal.y, 2),
    );

    let first = g1.stage_sets()?;
    let second = g2.stage_sets()?;
    let comparisons =
        stagewise_group_comparison(&first, &second, TieBreakPolicy::YcDirectional)?;

    println!("{:<18} {:>10} {:>10}  verdict", "stage", "x_c(g1)", "x_c(g2)");
    for (name, c) in g1.stage_names.iter().zip(&comparisons) {
        println!(
            "{:<18} {:>10} {:>10}  {}",
            name,
            format_decimal(c.first.x, 3),
            format_decimal(c.second.x, 3),
            c.verdict,
        );
        if let Some((y1, y2)) = c.tie_break {
            println!(
                "{:<18} tie broken on y_c: {} vs {}",
                "",
                format_decimal(y1, 3),
                format_decimal(y2, 3),
            );
        }
    }
    Ok(())
}
