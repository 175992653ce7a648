//! The five-label universe of discourse and numeric score classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ordered linguistic performance label, `a` (very low) through `e` (very high).
///
/// Each label owns one unit interval of the score axis: `[rank, rank + 1)`
/// for `a`..`d` and the closed `[4, 5]` for `e`. Together the intervals
/// partition `[0, 5]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
}

/// Number of labels in the universe.
pub const LABEL_COUNT: usize = 5;

/// All labels in ascending order of success.
pub const ALL_LABELS: [Label; LABEL_COUNT] = [Label::A, Label::B, Label::C, Label::D, Label::E];

impl Label {
    /// Position in the order, 0 for `a` up to 4 for `e`.
    pub fn rank(self) -> usize {
        self as usize
    }

    pub fn from_rank(rank: usize) -> Option<Label> {
        ALL_LABELS.get(rank).copied()
    }

    /// Single-character symbol `a`..`e`.
    pub fn symbol(self) -> char {
        (b'a' + self.rank() as u8) as char
    }

    /// Long name, `very_low` .. `very_high`.
    pub fn name(self) -> &'static str {
        match self {
            Label::A => "very_low",
            Label::B => "low",
            Label::C => "intermediate",
            Label::D => "high",
            Label::E => "very_high",
        }
    }

    /// Score interval owned by this label: `[rank, rank+1)`, closed at 5 for `e`.
    pub fn score_interval(self) -> (f64, f64) {
        (self.rank() as f64, self.rank() as f64 + 1.0)
    }

    /// Parses a label token: `a`..`e` or the long name, case-insensitive.
    pub fn parse(token: &str) -> Result<Label> {
        let t = token.trim().to_ascii_lowercase();
        for label in ALL_LABELS {
            if t.len() == 1 && t.starts_with(label.symbol()) {
                return Ok(label);
            }
            if t == label.name() || t == label.name().replace('_', " ") {
                return Ok(label);
            }
        }
        Err(Error::UnknownLabel(token.trim().to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Classifies a numeric score in `[0, 5]` into the label whose interval
/// contains it. 5 itself classifies as `e`.
pub fn classify_numeric_score(score: f64) -> Result<Label> {
    if !(0.0..=5.0).contains(&score) {
        return Err(Error::ScoreOutOfRange(score));
    }
    let rank = (score.floor() as usize).min(LABEL_COUNT - 1);
    Ok(ALL_LABELS[rank])
}
