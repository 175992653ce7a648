//! Quintile membership grading and stage fuzzy sets.

use num_traits::Zero;

use crate::label::{Label, ALL_LABELS, LABEL_COUNT};
use crate::{ratio, Error, Rational, Result};

/// A membership degree produced by quintile grading.
///
/// Grading a count against a cohort of size `n` always yields one of
/// 0, 1/4, 1/2, 3/4 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MembershipGrade(Rational);

impl MembershipGrade {
    pub fn value(self) -> Rational {
        self.0
    }
}

/// Per-label head counts for one stage of a cohort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohortStageCounts {
    n: u64,
    counts: [u64; LABEL_COUNT],
}

impl CohortStageCounts {
    /// Counts indexed by label rank; they must sum to the cohort size `n`
    /// (each individual receives exactly one label per stage).
    pub fn new(n: u64, counts: [u64; LABEL_COUNT]) -> Result<Self> {
        let sum: u64 = counts.iter().sum();
        if sum != n || n == 0 {
            return Err(Error::CountSumMismatch { sum, n });
        }
        Ok(Self { n, counts })
    }

    pub fn cohort_size(&self) -> u64 {
        self.n
    }

    pub fn count(&self, label: Label) -> u64 {
        self.counts[label.rank()]
    }

    pub fn counts(&self) -> &[u64; LABEL_COUNT] {
        &self.counts
    }
}

/// Fuzzy subset of the label universe attached to one reasoning stage.
///
/// Every label is present; an absent label is stored as degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageFuzzySet {
    memberships: [Rational; LABEL_COUNT],
}

impl StageFuzzySet {
    /// Builds a set from degrees indexed by label rank. Degrees must lie in [0, 1].
    pub fn new(memberships: [Rational; LABEL_COUNT]) -> Result<Self> {
        for m in &memberships {
            if *m < Rational::zero() || *m > Rational::from_integer(1) {
                return Err(Error::DegreeOutOfRange(m.to_string()));
            }
        }
        Ok(Self { memberships })
    }

    pub fn membership(&self, label: Label) -> Rational {
        self.memberships[label.rank()]
    }

    pub fn memberships(&self) -> &[Rational; LABEL_COUNT] {
        &self.memberships
    }

    /// True when every degree is zero.
    pub fn is_empty(&self) -> bool {
        self.memberships.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, Rational)> + '_ {
        ALL_LABELS.iter().map(move |&l| (l, self.membership(l)))
    }
}

/// Membership degrees rescaled to sum to exactly 1, indexed by label rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedDistribution {
    y: [Rational; LABEL_COUNT],
}

impl NormalizedDistribution {
    pub fn weights(&self) -> &[Rational; LABEL_COUNT] {
        &self.y
    }

    /// True when all five weights equal 1/5.
    pub fn is_uniform(&self) -> bool {
        self.y.iter().all(|w| *w == ratio(1, 5))
    }
}

/// Grades a per-label count against cohort size `n` on the quintile scale:
/// 1 on (4n/5, n], 3/4 on (3n/5, 4n/5], 1/2 on (2n/5, 3n/5], 1/4 on
/// (n/5, 2n/5] and 0 on [0, n/5].
///
/// Threshold comparisons are exact cross-multiplications (`5·count` against
/// `k·n`), so fractional thresholds need no rounding convention.
pub fn membership_grade(count: u64, n: u64) -> Result<MembershipGrade> {
    if n == 0 || count > n {
        return Err(Error::CountExceedsCohort { count, n });
    }
    let scaled = 5 * count as u128;
    let n = n as u128;
    let quarters = match scaled {
        s if s > 4 * n => 4,
        s if s > 3 * n => 3,
        s if s > 2 * n => 2,
        s if s > n => 1,
        _ => 0,
    };
    Ok(MembershipGrade(ratio(quarters, 4)))
}

/// Grades all five counts of a stage into its fuzzy set.
pub fn build_stage_set(counts: &CohortStageCounts) -> Result<StageFuzzySet> {
    let mut memberships = [Rational::zero(); LABEL_COUNT];
    for label in ALL_LABELS {
        memberships[label.rank()] =
            membership_grade(counts.count(label), counts.cohort_size())?.value();
    }
    StageFuzzySet::new(memberships)
}

/// Divides each degree by the sum of all degrees; the result sums to
/// exactly 1. An all-zero set has no normalization.
pub fn normalize_distribution(set: &StageFuzzySet) -> Result<NormalizedDistribution> {
    normalize_weights(set.memberships())
}

/// Normalizes arbitrary nonnegative weights to sum 1.
pub fn normalize_weights(weights: &[Rational; LABEL_COUNT]) -> Result<NormalizedDistribution> {
    let total: Rational = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::EmptyFuzzySet);
    }
    let mut y = *weights;
    for w in &mut y {
        *w /= total;
    }
    debug_assert!(y.iter().sum::<Rational>() == Rational::from_integer(1));
    Ok(NormalizedDistribution { y })
}
