//! Profiles over the label universe, the well-ordered fuzzy relation,
//! possibility/probability tables, group combination and the profile
//! partial order.

use std::fmt;

use num_traits::Zero;

use crate::fuzzy::StageFuzzySet;
use crate::label::{Label, ALL_LABELS, LABEL_COUNT};
use crate::{Error, Rational, Result};

/// An individual's overall state: one label per reasoning stage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    labels: Vec<Label>,
}

impl Profile {
    pub fn new(labels: Vec<Label>) -> Self {
        Self { labels }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Compact key such as `cca`, used for stable lookup and serialization.
    pub fn key(&self) -> String {
        self.labels.iter().map(|l| l.symbol()).collect()
    }

    pub fn parse(key: &str) -> Result<Profile> {
        key.chars()
            .map(|c| Label::parse(&c.to_string()))
            .collect::<Result<Vec<_>>>()
            .map(Profile::new)
    }

    /// Index of this profile in the ascending lexicographic enumeration.
    pub fn lex_index(&self) -> usize {
        self.labels
            .iter()
            .fold(0, |acc, l| acc * LABEL_COUNT + l.rank())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// All `5^k` profiles of length `k`, ascending lexicographic by rank
/// (`(a, .., a)` first).
pub fn enumerate_profiles(k: usize) -> Vec<Profile> {
    assert!(k >= 1, "profile length must be at least 1");
    let total = LABEL_COUNT.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut labels = vec![Label::A; k];
            for slot in labels.iter_mut().rev() {
                *slot = ALL_LABELS[idx % LABEL_COUNT];
                idx /= LABEL_COUNT;
            }
            Profile::new(labels)
        })
        .collect()
}

/// True when success is non-increasing along the stages.
pub fn is_well_ordered(profile: &Profile) -> bool {
    profile.labels().windows(2).all(|w| w[0] >= w[1])
}

/// Membership degree of a profile: the product of the per-stage degrees
/// when the profile is well ordered, exactly 0 otherwise.
pub fn relation_membership(stage_sets: &[StageFuzzySet], profile: &Profile) -> Result<Rational> {
    if stage_sets.len() != profile.len() {
        return Err(Error::StageCountMismatch {
            expected: stage_sets.len(),
            got: profile.len(),
        });
    }
    if !is_well_ordered(profile) {
        return Ok(Rational::zero());
    }
    Ok(stage_sets
        .iter()
        .zip(profile.labels())
        .map(|(set, &label)| set.membership(label))
        .product())
}

/// Per-profile values of the relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub membership: Rational,
    pub possibility: Rational,
    pub probability: Rational,
}

/// The full fuzzy relation over all `5^k` profiles of a group, with
/// membership, possibility and probability per profile.
#[derive(Debug, Clone)]
pub struct ProfileRelation {
    stage_sets: Vec<StageFuzzySet>,
    profiles: Vec<Profile>,
    entries: Vec<ProfileEntry>,
}

impl ProfileRelation {
    /// Evaluates the relation on every profile. Possibility divides by the
    /// maximal membership, probability by the sum; both exact.
    pub fn build(stage_sets: Vec<StageFuzzySet>) -> Result<Self> {
        let k = stage_sets.len();
        if k == 0 {
            return Err(Error::StageCountMismatch { expected: 1, got: 0 });
        }
        let profiles = enumerate_profiles(k);
        let memberships: Vec<Rational> = profiles
            .iter()
            .map(|p| relation_membership(&stage_sets, p))
            .collect::<Result<_>>()?;
        let max = memberships.iter().max().copied().unwrap_or_default();
        let sum: Rational = memberships.iter().sum();
        if max.is_zero() {
            return Err(Error::EmptyRelation);
        }
        let entries = memberships
            .into_iter()
            .map(|m| ProfileEntry {
                membership: m,
                possibility: m / max,
                probability: m / sum,
            })
            .collect();
        Ok(Self { stage_sets, profiles, entries })
    }

    pub fn stage_count(&self) -> usize {
        self.stage_sets.len()
    }

    pub fn stage_sets(&self) -> &[StageFuzzySet] {
        &self.stage_sets
    }

    /// Profiles in ascending lexicographic order, paired with their entries.
    pub fn iter(&self) -> impl Iterator<Item = (&Profile, &ProfileEntry)> {
        self.profiles.iter().zip(self.entries.iter())
    }

    pub fn entry(&self, profile: &Profile) -> Option<&ProfileEntry> {
        if profile.len() != self.stage_count() {
            return None;
        }
        self.entries.get(profile.lex_index())
    }

    pub fn max_membership(&self) -> Rational {
        self.entries
            .iter()
            .map(|e| e.membership)
            .max()
            .unwrap_or_default()
    }
}

/// Per-profile values after merging several groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedEntry {
    pub pseudo_frequency: Rational,
    pub probability: Rational,
    pub possibility: Rational,
}

/// Pseudo-frequency table over all profiles for two or more groups:
/// `f(s)` is the sum of the groups' membership degrees of `s`, and the
/// combined probability/possibility renormalize `f`.
#[derive(Debug, Clone)]
pub struct CombinedRelation {
    group_count: usize,
    profiles: Vec<Profile>,
    entries: Vec<CombinedEntry>,
}

impl CombinedRelation {
    pub fn build(relations: &[ProfileRelation]) -> Result<Self> {
        if relations.len() < 2 {
            return Err(Error::Usage(
                "combining requires at least two groups".into(),
            ));
        }
        let k = relations[0].stage_count();
        for r in relations {
            if r.stage_count() != k {
                return Err(Error::StageCountMismatch { expected: k, got: r.stage_count() });
            }
        }
        let profiles = enumerate_profiles(k);
        let freqs: Vec<Rational> = (0..profiles.len())
            .map(|i| relations.iter().map(|r| r.entries[i].membership).sum())
            .collect();
        let max = freqs.iter().max().copied().unwrap_or_default();
        let sum: Rational = freqs.iter().sum();
        if max.is_zero() {
            return Err(Error::EmptyCombinedRelation);
        }
        let entries = freqs
            .into_iter()
            .map(|f| CombinedEntry {
                pseudo_frequency: f,
                probability: f / sum,
                possibility: f / max,
            })
            .collect();
        Ok(Self { group_count: relations.len(), profiles, entries })
    }

    pub fn group_count(&self) -> usize {
        self.group_count
    }

    pub fn stage_count(&self) -> usize {
        self.profiles.first().map_or(0, Profile::len)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Profile, &CombinedEntry)> {
        self.profiles.iter().zip(self.entries.iter())
    }

    pub fn entry(&self, profile: &Profile) -> Option<&CombinedEntry> {
        if profile.len() != self.stage_count() {
            return None;
        }
        self.entries.get(profile.lex_index())
    }
}

/// Outcome of the componentwise comparison of two profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl fmt::Display for ProfileOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProfileOrder::Less => "less",
            ProfileOrder::Equal => "equal",
            ProfileOrder::Greater => "greater",
            ProfileOrder::Incomparable => "incomparable",
        };
        f.write_str(s)
    }
}

/// Componentwise partial order on profiles: `p` is greater than `q` iff
/// every stage label of `p` ranks at least as high with at least one
/// strictly higher, and symmetrically for less. Mixed directions are
/// incomparable.
pub fn compare_profiles(p: &Profile, q: &Profile) -> Result<ProfileOrder> {
    if p.len() != q.len() {
        return Err(Error::StageCountMismatch { expected: p.len(), got: q.len() });
    }
    let mut some_greater = false;
    let mut some_less = false;
    for (a, b) in p.labels().iter().zip(q.labels()) {
        if a > b {
            some_greater = true;
        } else if a < b {
            some_less = true;
        }
    }
    Ok(match (some_greater, some_less) {
        (false, false) => ProfileOrder::Equal,
        (true, false) => ProfileOrder::Greater,
        (false, true) => ProfileOrder::Less,
        (true, true) => ProfileOrder::Incomparable,
    })
}
