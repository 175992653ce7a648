//! Contrast exact rational arithmetic with the 3-decimal rounding mode:
//! possibility ratios computed from rounded memberships can drift from
//! their exact values.
//!
//! Run with: cargo run --example exact_vs_rounded

use std::fs;

use fuzzy_cohort::io::{
    build_profile_table, format_decimal, format_exact, parse_cohort, InputFormat, RoundingMode,
};
use fuzzy_cohort::profile::ProfileRelation;

fn main() -> fuzzy_cohort::Result<()> {
    let path = format!("{}/fixtures/group1.json", env!("CARGO_MANIFEST_DIR"));
    let dataset = parse_cohort(&fs::read(&path)?, InputFormat::Json, "group1")?;
    let named = vec![(
        dataset.group_name.clone(),
        ProfileRelation::build(dataset.stage_sets()?)?,
    )];

    let exact = build_profile_table(&named, RoundingMode::Exact, false, true)?;
    let rounded = build_profile_table(&named, RoundingMode::Paper3, false, true)?;

    println!("{:<9} {:>12} {:>12} {:>12}", "profile", "p(s) exact", "", "p(s) 3dp");
    for (e, r) in exact.rows.iter().zip(&rounded.rows) {
        let pe = e.probability[0];
        let pr = r.probability[0];
        let marker = if format_decimal(pe, 3) != format_decimal(pr, 3) { "  <- differs" } else { "" };
        println!(
            "{:<9} {:>12} {:>12} {:>12}{}",
            e.profile.key(),
            format_exact(pe),
            format_decimal(pe, 3),
            format_decimal(pr, 3),
            marker,
        );
    }
    Ok(())
}
