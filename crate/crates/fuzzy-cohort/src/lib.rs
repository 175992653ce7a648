//! Fuzzy assessment of cohort reasoning performance.
//!
//! A cohort works on a staged reasoning task. Each individual's success at
//! each stage is graded with one of five ordered linguistic labels
//! (very low .. very high). Per-stage label counts are turned into fuzzy
//! sets over the label universe, profiles (one label per stage) get
//! membership, possibility and probability values, several cohorts can be
//! merged through pseudo-frequencies, and a cohort's performance at a stage
//! is summarized by the centre of gravity of its membership bar graph.
//!
//! The core is exact: all membership degrees, possibilities, probabilities
//! and centroid coordinates are rationals. Decimal output is a presentation
//! concern, handled by the reporting layer.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod centroid;
pub mod cli;
mod error;
pub mod fuzzy;
pub mod io;
pub mod label;
pub mod profile;
pub mod svg;

pub use error::Error;

/// Exact rational used throughout the core.
pub type Rational = num_rational::Ratio<i64>;

/// Convenience constructor for `Rational`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub type Result<T> = std::result::Result<T, Error>;
