//! Combine two groups into one relation via pseudo-frequencies and print
//! the merged table.
//!
//! Run with: cargo run --example combine_groups

use std::fs;

use fuzzy_cohort::io::{build_combined_table, parse_cohort, InputFormat};
use fuzzy_cohort::profile::{CombinedRelation, ProfileRelation};

fn load(name: &str) -> fuzzy_cohort::Result<(String, ProfileRelation)> {
    let path = format!("{}/fixtures/{}.json", env!("CARGO_MANIFEST_DIR"), name);
    let dataset = parse_cohort(&fs::read(&path)?, InputFormat::Json, name)?;
    Ok((dataset.group_name.clone(), ProfileRelation::build(dataset.stage_sets()?)?))
}

fn main() -> fuzzy_cohort::Result<()> {
    let named = vec![load("group1")?, load("group2")?];
    let relations: Vec<ProfileRelation> = named.iter().map(|(_, r)| r.clone()).collect();
    let combined = CombinedRelation::build(&relations)?;

    let table = build_combined_table(&named, &combined, true)?;
    println!("{}", table.to_markdown(3));
    Ok(())
}
