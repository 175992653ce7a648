//! Build the possibility/probability table of well-ordered profiles for one
//! group, from a pregraded JSON fixture.
//!
//! Run with: cargo run --example profile_table

use std::fs;

use fuzzy_cohort::io::{build_profile_table, parse_cohort, InputFormat, RoundingMode};
use fuzzy_cohort::profile::ProfileRelation;

fn main() -> fuzzy_cohort::Result<()> {
    let path = format!("{}/fixtures/group1.json", env!("CARGO_MANIFEST_DIR"));
    let dataset = parse_cohort(&fs::read(&path)?, InputFormat::Json, "group1")?;

    let relation = ProfileRelation::build(dataset.stage_sets()?)?;
    let zero = fuzzy_cohort::ratio(0, 1);
    println!(
        "{} profiles have nonzero membership (of {} total)",
        relation.iter().filter(|(_, e)| e.membership > zero).count(),
        5usize.pow(dataset.stage_count() as u32),
    );

    let named = vec![(dataset.group_name.clone(), relation)];
    let table = build_profile_table(&named, RoundingMode::Paper3, false, true)?;
    println!("\n{}", table.to_markdown(3));
    Ok(())
}
