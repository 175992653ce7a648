//! Grade raw per-label counts into a stage fuzzy set.
//!
//! Run with: cargo run --example grade_cohort

use fuzzy_cohort::fuzzy::{build_stage_set, normalize_distribution, CohortStageCounts};
use fuzzy_cohort::io::{format_decimal, format_exact};
use fuzzy_cohort::label::ALL_LABELS;

fn main() -> fuzzy_cohort::Result<()> {
    // 35 students at one reasoning stage: 15 scored c, 12 scored d, 8 scored e
    let counts = CohortStageCounts::new(35, [0, 0, 15, 12, 8])?;
    let set = build_stage_set(&counts)?;

    println!("cohort of {} students", counts.cohort_size());
    println!("{:<10} {:>6} {:>10} {:>10}", "label", "count", "degree", "exact");
    for (label, degree) in set.iter() {
        println!(
            "{:<10} {:>6} {:>10} {:>10}",
            label.name(),
            counts.count(label),
            format_decimal(degree, 3),
            format_exact(degree),
        );
    }

    let normalized = normalize_distribution(&set)?;
    let weights: Vec<String> = ALL_LABELS
        .iter()
        .zip(normalized.weights())
        .map(|(l, w)| format!("{}={}", l.symbol(), format_exact(*w)))
        .collect();
    println!("\nnormalized weights: {}", weights.join(", "));
    Ok(())
}
