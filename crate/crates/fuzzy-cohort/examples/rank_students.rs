//! Rank individual students by the componentwise partial order on their
//! label profiles.
//!
//! Run with: cargo run --example rank_students

use std::fs;

use fuzzy_cohort::io::{parse_cohort, CohortData, InputFormat};
use fuzzy_cohort::profile::{compare_profiles, Profile, ProfileOrder};

fn main() -> fuzzy_cohort::Result<()> {
    let path = format!("{}/fixtures/group1.csv", env!("CARGO_MANIFEST_DIR"));
    let dataset = parse_cohort(&fs::read(&path)?, InputFormat::Csv, "group1")?;
    let records = match &dataset.data {
        CohortData::Records(records) => records,
        CohortData::Pregraded(_) => unreachable!("csv input always carries records"),
    };

    // pick a handful of students spread across the roster and compare pairwise
    let step = (records.len() / 4).max(1);
    let sample: Vec<_> = records.iter().step_by(step).take(4).collect();
    for (i, a) in sample.iter().enumerate() {
        for b in &sample[i + 1..] {
            let p = Profile::new(a.stage_labels.clone());
            let q = Profile::new(b.stage_labels.clone());
            let order = compare_profiles(&p, &q)?;
            let word = match order {
                ProfileOrder::Less => "ranks below",
                ProfileOrder::Equal => "ties with",
                ProfileOrder::Greater => "ranks above",
                ProfileOrder::Incomparable => "is incomparable to",
            };
            println!("{} ({}) {} {} ({})", a.student_id, p.key(), word, b.student_id, q.key());
        }
    }
    Ok(())
}
