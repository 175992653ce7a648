//! Dataset ingestion, rounding-mode control and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::centroid::{CentroidPoint, PerformanceComparison, TieBreakPolicy};
use crate::fuzzy::{build_stage_set, CohortStageCounts, NormalizedDistribution, StageFuzzySet};
use crate::label::{Label, ALL_LABELS, LABEL_COUNT};
use crate::profile::{CombinedRelation, Profile, ProfileRelation};
use crate::{ratio, Error, Rational, Result};

/// How numeric cells are computed and displayed.
///
/// `Exact` computes every ratio from exact rationals and rounds only at
/// display time. `Paper3` first rounds each membership degree to three
/// decimals (half-to-even) and derives possibilities, pseudo-frequencies
/// and their ratios from the rounded values, reproducing printed tables
/// that were worked at three-decimal accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoundingMode {
    #[default]
    Exact,
    Paper3,
}

impl RoundingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RoundingMode::Exact => "exact",
            RoundingMode::Paper3 => "paper3",
        }
    }
}

impl FromStr for RoundingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RoundingMode::Exact),
            "paper3" => Ok(RoundingMode::Paper3),
            other => Err(Error::Usage(format!("unknown rounding mode '{other}'"))),
        }
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rounds a nonnegative rational to three decimals, ties to even.
pub fn round3_half_even(r: Rational) -> Rational {
    debug_assert!(!r.is_negative());
    let scaled = r * Rational::from_integer(1000);
    let floor = scaled.floor().to_integer();
    let rem = scaled - Rational::from_integer(floor);
    let units = if rem > ratio(1, 2) {
        floor + 1
    } else if rem < ratio(1, 2) {
        floor
    } else if floor % 2 == 0 {
        floor
    } else {
        floor + 1
    };
    ratio(units, 1000)
}

/// Renders a nonnegative rational as a fixed-point decimal with the given
/// number of places, rounding half-up.
pub fn format_decimal(r: Rational, places: usize) -> String {
    debug_assert!(!r.is_negative());
    let scale: i128 = 10i128.pow(places as u32);
    let n = *r.numer() as i128;
    let d = *r.denom() as i128;
    let units = (n * scale * 2 + d) / (2 * d);
    let int = units / scale;
    if places == 0 {
        return int.to_string();
    }
    let frac = units % scale;
    format!("{int}.{frac:0width$}", width = places)
}

/// Decimal rendering with trailing zeros (and a bare point) trimmed.
pub fn format_decimal_trim(r: Rational, places: usize) -> String {
    let s = format_decimal(r, places);
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Renders a rational as `p/q` (or `p` when integral).
pub fn format_exact(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a rational from a decimal string (`0.25`) or `p/q` form (`1/4`).
pub fn parse_rational(token: &str) -> Result<Rational> {
    let t = token.trim();
    let bad = || Error::Parse { line: 0, msg: format!("invalid number '{t}'") };
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(ratio(n, d));
    }
    let (int_part, frac_part) = match t.split_once('.') {
        Some((i, f)) => (i, f),
        None => (t, ""),
    };
    if frac_part.len() > 18 || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(bad());
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    let int: i64 = if int_digits.is_empty() { 0 } else { int_digits.parse().map_err(|_| bad())? };
    let mut value = Rational::from_integer(int);
    if !frac_part.is_empty() {
        let frac: i64 = frac_part.parse().map_err(|_| bad())?;
        let denom = 10i64.pow(frac_part.len() as u32);
        value += ratio(frac, denom);
    }
    Ok(if negative { -value } else { value })
}

/// One individual's graded record: an identifier plus one label per stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StudentRecord {
    pub student_id: String,
    pub stage_labels: Vec<Label>,
}

/// Cohort input, either raw per-student records or pregraded fuzzy sets.
#[derive(Debug, Clone, PartialEq)]
pub enum CohortData {
    Records(Vec<StudentRecord>),
    Pregraded(Vec<StageFuzzySet>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CohortDataset {
    pub group_name: String,
    pub stage_names: Vec<String>,
    pub data: CohortData,
}

pub const DEFAULT_STAGE_NAMES: [&str; 3] = ["imagination", "visualization", "idea_generation"];

impl CohortDataset {
    pub fn stage_count(&self) -> usize {
        self.stage_names.len()
    }

    pub fn is_records(&self) -> bool {
        matches!(self.data, CohortData::Records(_))
    }

    /// Grades records into per-stage fuzzy sets, or returns the pregraded
    /// sets as given.
    pub fn stage_sets(&self) -> Result<Vec<StageFuzzySet>> {
        match &self.data {
            CohortData::Pregraded(sets) => Ok(sets.clone()),
            CohortData::Records(_) => self
                .tabulate_counts()?
                .iter()
                .map(build_stage_set)
                .collect(),
        }
    }

    /// Per-stage label counts. Records mode only.
    pub fn tabulate_counts(&self) -> Result<Vec<CohortStageCounts>> {
        let records = match &self.data {
            CohortData::Records(r) => r,
            CohortData::Pregraded(_) => return Err(Error::RecordsRequired),
        };
        let n = records.len() as u64;
        (0..self.stage_count())
            .map(|stage| {
                let mut counts = [0u64; LABEL_COUNT];
                for rec in records {
                    counts[rec.stage_labels[stage].rank()] += 1;
                }
                CohortStageCounts::new(n, counts)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

/// Parses a cohort dataset from raw bytes.
///
/// CSV carries per-student records (`student_id,<stage names...>` header);
/// JSON carries either a pregraded document or a records document.
/// `default_group` names the dataset when the source does not.
pub fn parse_cohort(bytes: &[u8], format: InputFormat, default_group: &str) -> Result<CohortDataset> {
    match format {
        InputFormat::Csv => parse_records_csv(bytes, default_group),
        InputFormat::Json => parse_json(bytes),
    }
}

fn parse_records_csv(bytes: &[u8], group: &str) -> Result<CohortDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
        .clone();
    if headers.is_empty() || headers.get(0) != Some("student_id") || headers.len() < 2 {
        return Err(Error::Parse {
            line: 1,
            msg: "expected header 'student_id,<stage_1>,...,<stage_k>'".into(),
        });
    }
    let stage_names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        if row.len() != headers.len() {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, found {}", headers.len(), row.len()),
            });
        }
        let student_id = row.get(0).unwrap_or_default().to_string();
        if student_id.is_empty() {
            return Err(Error::Parse { line, msg: "empty student_id".into() });
        }
        let stage_labels = row
            .iter()
            .skip(1)
            .map(Label::parse)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        records.push(StudentRecord { student_id, stage_labels });
    }
    if records.is_empty() {
        return Err(Error::Parse { line: 1, msg: "no records in input".into() });
    }
    Ok(CohortDataset {
        group_name: group.to_string(),
        stage_names,
        data: CohortData::Records(records),
    })
}

fn json_rational(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse { line: 0, msg: format!("expected number, found {other}") }),
    }
}

fn parse_json(bytes: &[u8]) -> Result<CohortDataset> {
    let doc: Value = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse { line: 1, msg: "expected a JSON object".into() })?;
    let group = obj
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse { line: 1, msg: "missing string field 'group'".into() })?
        .to_string();
    let stages = obj
        .get("stages")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse { line: 1, msg: "missing array field 'stages'".into() })?;
    if stages.is_empty() {
        return Err(Error::Parse { line: 1, msg: "'stages' must not be empty".into() });
    }

    if let Some(records) = obj.get("records") {
        // records document: stages are names, records carry labels
        let stage_names = stages
            .iter()
            .map(|s| {
                s.as_str().map(str::to_string).ok_or_else(|| Error::Parse {
                    line: 1,
                    msg: "records document requires string stage names".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let records = records
            .as_array()
            .ok_or_else(|| Error::Parse { line: 1, msg: "'records' must be an array".into() })?
            .iter()
            .map(|r| {
                let id = r
                    .get("student_id")
                    .and_then(Value::as_str)
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| Error::Parse { line: 1, msg: "record missing 'student_id'".into() })?;
                let labels = r
                    .get("labels")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse { line: 1, msg: "record missing 'labels'".into() })?
                    .iter()
                    .map(|l| {
                        l.as_str()
                            .ok_or_else(|| Error::Parse { line: 1, msg: "labels must be strings".into() })
                            .and_then(Label::parse)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if labels.len() != stage_names.len() {
                    return Err(Error::StageCountMismatch {
                        expected: stage_names.len(),
                        got: labels.len(),
                    });
                }
                Ok(StudentRecord { student_id: id.to_string(), stage_labels: labels })
            })
            .collect::<Result<Vec<_>>>()?;
        if records.is_empty() {
            return Err(Error::Parse { line: 1, msg: "no records in input".into() });
        }
        return Ok(CohortDataset { group_name: group, stage_names, data: CohortData::Records(records) });
    }

    // pregraded document
    let mut stage_names = Vec::new();
    let mut sets = Vec::new();
    for stage in stages {
        let name = stage
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse { line: 1, msg: "stage missing 'name'".into() })?;
        let memberships = stage
            .get("memberships")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse { line: 1, msg: "stage missing 'memberships'".into() })?;
        let mut degrees = [Rational::zero(); LABEL_COUNT];
        for (key, value) in memberships {
            let label = Label::parse(key)?;
            degrees[label.rank()] = json_rational(value)?;
        }
        stage_names.push(name.to_string());
        sets.push(StageFuzzySet::new(degrees)?);
    }
    Ok(CohortDataset { group_name: group, stage_names, data: CohortData::Pregraded(sets) })
}

/// Lossless JSON rendering of a dataset; `parse_cohort` on the output
/// reproduces the dataset exactly, including record order.
pub fn render_dataset_json(dataset: &CohortDataset) -> String {
    let doc = match &dataset.data {
        CohortData::Records(records) => json!({
            "group": dataset.group_name,
            "stages": dataset.stage_names,
            "records": records.iter().map(|r| json!({
                "student_id": r.student_id,
                "labels": r.stage_labels.iter().map(|l| l.symbol().to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        CohortData::Pregraded(sets) => json!({
            "group": dataset.group_name,
            "stages": dataset.stage_names.iter().zip(sets).map(|(name, set)| json!({
                "name": name,
                "memberships": set.iter()
                    .map(|(l, m)| (l.symbol().to_string(), Value::String(format_exact(m))))
                    .collect::<Map<String, Value>>(),
            })).collect::<Vec<_>>(),
        }),
    };
    serde_json::to_string_pretty(&doc).expect("dataset serialization cannot fail")
}

/// One row of a profile table; values are rationals already computed under
/// the table's rounding mode (display precision is applied later).
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub profile: Profile,
    pub membership: Vec<Rational>,
    pub possibility: Vec<Rational>,
    pub probability: Vec<Rational>,
    pub pseudo_frequency: Option<Rational>,
    pub combined_possibility: Option<Rational>,
    pub combined_probability: Option<Rational>,
}

/// Profile table over one or more groups: per-group membership and
/// possibility (plus probability), and combined pseudo-frequency columns
/// when requested. Rows cover every profile with a nonzero membership in
/// at least one group, in ascending lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub group_names: Vec<String>,
    pub rounding: RoundingMode,
    pub combined: bool,
    pub include_probability: bool,
    pub rows: Vec<ProfileRow>,
}

/// Builds the profile table for the named relations under a rounding mode.
/// With `combined` set (requires at least two groups) the pseudo-frequency
/// and combined possibility/probability columns are included.
pub fn build_profile_table(
    named: &[(String, ProfileRelation)],
    rounding: RoundingMode,
    combined: bool,
    include_probability: bool,
) -> Result<ProfileTable> {
    if named.is_empty() {
        return Err(Error::Usage("profile table needs at least one group".into()));
    }
    let relations: Vec<&ProfileRelation> = named.iter().map(|(_, r)| r).collect();
    let k = relations[0].stage_count();
    for r in &relations {
        if r.stage_count() != k {
            return Err(Error::StageCountMismatch { expected: k, got: r.stage_count() });
        }
    }

    // per-group membership vectors under the rounding mode, profile-indexed
    let memberships: Vec<Vec<Rational>> = relations
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|(_, e)| match rounding {
                    RoundingMode::Exact => e.membership,
                    RoundingMode::Paper3 => round3_half_even(e.membership),
                })
                .collect()
        })
        .collect();
    let profiles: Vec<Profile> = relations[0].iter().map(|(p, _)| p.clone()).collect();

    let per_group: Vec<(Vec<Rational>, Vec<Rational>)> = memberships
        .iter()
        .map(|ms| {
            let max: Rational = ms.iter().max().copied().unwrap_or_default();
            let sum: Rational = ms.iter().sum();
            if max.is_zero() {
                return Err(Error::EmptyRelation);
            }
            let poss = ms.iter().map(|m| m / max).collect();
            let prob = ms.iter().map(|m| m / sum).collect();
            Ok((poss, prob))
        })
        .collect::<Result<_>>()?;

    let combined_cols = if combined {
        if named.len() < 2 {
            return Err(Error::Usage("combined columns require at least two groups".into()));
        }
        let freqs: Vec<Rational> = (0..profiles.len())
            .map(|i| memberships.iter().map(|ms| ms[i]).sum())
            .collect();
        let max = freqs.iter().max().copied().unwrap_or_default();
        let sum: Rational = freqs.iter().sum();
        if max.is_zero() {
            return Err(Error::EmptyCombinedRelation);
        }
        Some((freqs.clone(), max, sum))
    } else {
        None
    };

    let rows = profiles
        .iter()
        .enumerate()
        .filter(|(i, _)| memberships.iter().any(|ms| !ms[*i].is_zero()))
        .map(|(i, p)| {
            let (freq, c_poss, c_prob) = match &combined_cols {
                Some((freqs, max, sum)) => {
                    (Some(freqs[i]), Some(freqs[i] / max), Some(freqs[i] / sum))
                }
                None => (None, None, None),
            };
            ProfileRow {
                profile: p.clone(),
                membership: memberships.iter().map(|ms| ms[i]).collect(),
                possibility: per_group.iter().map(|(poss, _)| poss[i]).collect(),
                probability: per_group.iter().map(|(_, prob)| prob[i]).collect(),
                pseudo_frequency: freq,
                combined_possibility: c_poss,
                combined_probability: c_prob,
            }
        })
        .collect();

    Ok(ProfileTable {
        group_names: named.iter().map(|(n, _)| n.clone()).collect(),
        rounding,
        combined,
        include_probability,
        rows,
    })
}

/// Builds the profile table from a `CombinedRelation` and its member
/// relations, using exact arithmetic.
pub fn build_combined_table(
    named: &[(String, ProfileRelation)],
    combined: &CombinedRelation,
    include_probability: bool,
) -> Result<ProfileTable> {
    let mut table = build_profile_table(named, RoundingMode::Exact, true, include_probability)?;
    // cross-check against the relation-level combination
    for row in &mut table.rows {
        let entry = combined
            .entry(&row.profile)
            .ok_or_else(|| Error::Usage("combined relation does not cover table profile".into()))?;
        debug_assert_eq!(row.pseudo_frequency, Some(entry.pseudo_frequency));
        row.pseudo_frequency = Some(entry.pseudo_frequency);
        row.combined_possibility = Some(entry.possibility);
        row.combined_probability = Some(entry.probability);
    }
    Ok(table)
}

impl ProfileTable {
    pub fn row(&self, key: &str) -> Option<&ProfileRow> {
        self.rows.iter().find(|r| r.profile.key() == key)
    }

    pub fn to_markdown(&self, precision: usize) -> String {
        let mut header = vec!["profile".to_string()];
        for name in &self.group_names {
            header.push(format!("m_s({name})"));
            header.push(format!("r_s({name})"));
            if self.include_probability {
                header.push(format!("p_s({name})"));
            }
        }
        if self.combined {
            header.push("f(s)".into());
            header.push("r(s)".into());
            if self.include_probability {
                header.push("p(s)".into());
            }
        }
        let mut out = String::new();
        out.push_str(&format!("| {} |\n", header.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", self.row_cells(row, precision).join(" | ")));
        }
        out
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut header = vec!["profile".to_string()];
        for name in &self.group_names {
            header.push(format!("m_s({name})"));
            header.push(format!("r_s({name})"));
            if self.include_probability {
                header.push(format!("p_s({name})"));
            }
        }
        if self.combined {
            header.push("f(s)".into());
            header.push("r(s)".into());
            if self.include_probability {
                header.push("p(s)".into());
            }
        }
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&self.row_cells(row, precision).join(","));
            out.push('\n');
        }
        out
    }

    fn row_cells(&self, row: &ProfileRow, precision: usize) -> Vec<String> {
        let mut cells = vec![row.profile.key()];
        for g in 0..self.group_names.len() {
            cells.push(format_decimal(row.membership[g], precision));
            cells.push(format_decimal(row.possibility[g], precision));
            if self.include_probability {
                cells.push(format_decimal(row.probability[g], precision));
            }
        }
        if self.combined {
            cells.push(format_decimal(row.pseudo_frequency.unwrap_or_default(), precision));
            cells.push(format_decimal(row.combined_possibility.unwrap_or_default(), precision));
            if self.include_probability {
                cells.push(format_decimal(row.combined_probability.unwrap_or_default(), precision));
            }
        }
        cells
    }
}

/// Everything assessed for one group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAssessment {
    pub name: String,
    pub stage_names: Vec<String>,
    pub stage_sets: Vec<StageFuzzySet>,
    pub normalized: Vec<NormalizedDistribution>,
    pub centroids: Vec<CentroidPoint>,
}

/// One stagewise verdict between a pair of groups.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRecord {
    pub first_group: String,
    pub second_group: String,
    pub stage_name: String,
    pub comparison: PerformanceComparison,
}

/// Serializable assessment document, the unit of output of the toolkit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AssessmentReport {
    pub rounding: RoundingMode,
    pub groups: Vec<GroupAssessment>,
    pub profiles: Option<ProfileTable>,
    pub comparisons: Vec<ComparisonRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

fn num_cell(r: Rational, precision: usize) -> Value {
    json!({ "exact": format_exact(r), "decimal": format_decimal(r, precision) })
}

fn policy_str(policy: TieBreakPolicy) -> &'static str {
    match policy {
        TieBreakPolicy::YcDirectional => "y_c_directional",
        TieBreakPolicy::StrictTie => "strict_tie",
    }
}

/// Renders a report. JSON is lossless (every value carries its exact
/// rational next to the decimal rendering); CSV and markdown use decimals
/// at the given precision.
pub fn render_report(report: &AssessmentReport, format: ReportFormat, precision: usize) -> String {
    match format {
        ReportFormat::Json => render_report_json(report, precision),
        ReportFormat::Markdown => render_report_markdown(report, precision),
        ReportFormat::Csv => render_report_csv(report, precision),
    }
}

fn render_report_json(report: &AssessmentReport, precision: usize) -> String {
    let groups: Vec<Value> = report
        .groups
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "stages": g.stage_names.iter().enumerate().map(|(i, name)| json!({
                    "name": name,
                    "memberships": g.stage_sets[i].iter()
                        .map(|(l, m)| (l.symbol().to_string(), num_cell(m, precision)))
                        .collect::<Map<String, Value>>(),
                    "normalized": g.normalized[i].weights().iter()
                        .map(|w| num_cell(*w, precision)).collect::<Vec<_>>(),
                    "centroid": json!({
                        "x_c": num_cell(g.centroids[i].x, precision),
                        "y_c": num_cell(g.centroids[i].y, precision),
                    }),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();

    let centroids: Vec<Value> = report
        .groups
        .iter()
        .flat_map(|g| {
            g.stage_names.iter().zip(&g.centroids).map(|(stage, c)| {
                json!({
                    "group": g.name,
                    "stage": stage,
                    "x_c": num_cell(c.x, precision),
                    "y_c": num_cell(c.y, precision),
                })
            })
        })
        .collect();

    let profiles: Value = match &report.profiles {
        None => Value::Array(Vec::new()),
        Some(table) => Value::Array(
            table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    obj.insert("profile".into(), Value::String(row.profile.key()));
                    let mut groups = Map::new();
                    for (g, name) in table.group_names.iter().enumerate() {
                        groups.insert(
                            name.clone(),
                            json!({
                                "membership": num_cell(row.membership[g], precision),
                                "possibility": num_cell(row.possibility[g], precision),
                                "probability": num_cell(row.probability[g], precision),
                            }),
                        );
                    }
                    obj.insert("groups".into(), Value::Object(groups));
                    if let (Some(f), Some(r), Some(p)) = (
                        row.pseudo_frequency,
                        row.combined_possibility,
                        row.combined_probability,
                    ) {
                        obj.insert("pseudo_frequency".into(), num_cell(f, precision));
                        obj.insert("combined_possibility".into(), num_cell(r, precision));
                        obj.insert("combined_probability".into(), num_cell(p, precision));
                    }
                    Value::Object(obj)
                })
                .collect(),
        ),
    };

    let comparisons: Vec<Value> = report
        .comparisons
        .iter()
        .map(|c| {
            json!({
                "first": c.first_group,
                "second": c.second_group,
                "stage": c.stage_name,
                "verdict": c.comparison.verdict.to_string(),
                "x_c_first": num_cell(c.comparison.first.x, precision),
                "x_c_second": num_cell(c.comparison.second.x, precision),
                "policy": policy_str(c.comparison.policy),
                "tie_break": c.comparison.tie_break.map(|(a, b)| json!({
                    "y_c_first": num_cell(a, precision),
                    "y_c_second": num_cell(b, precision),
                })),
            })
        })
        .collect();

    let doc = json!({
        "rounding_mode": report.rounding.as_str(),
        "groups": groups,
        "profiles": profiles,
        "centroids": centroids,
        "comparisons": comparisons,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("report serialization cannot fail");
    out.push('\n');
    out
}

fn render_report_markdown(report: &AssessmentReport, precision: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("# Assessment report (rounding: {})\n", report.rounding));
    for g in &report.groups {
        out.push_str(&format!("\n## Group {}\n\n", g.name));
        out.push_str("| stage | a | b | c | d | e | x_c | y_c |\n");
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for (i, stage) in g.stage_names.iter().enumerate() {
            let cells: Vec<String> = g.stage_sets[i]
                .memberships()
                .iter()
                .map(|m| format_decimal(*m, precision))
                .collect();
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                stage,
                cells.join(" | "),
                format_decimal(g.centroids[i].x, precision),
                format_decimal(g.centroids[i].y, precision),
            ));
        }
        out.push_str("\nNormalized distributions:\n\n");
        for (i, stage) in g.stage_names.iter().enumerate() {
            let cells: Vec<String> = g.normalized[i]
                .weights()
                .iter()
                .map(|w| format_decimal(*w, precision))
                .collect();
            out.push_str(&format!("- {stage}: ({})\n", cells.join(", ")));
        }
    }
    if let Some(table) = &report.profiles {
        out.push_str("\n## Profiles with nonzero membership\n\n");
        out.push_str(&table.to_markdown(precision));
    }
    if !report.comparisons.is_empty() {
        out.push_str("\n## Comparisons\n\n");
        out.push_str("| first | second | stage | x_c first | x_c second | verdict |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in &report.comparisons {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                c.first_group,
                c.second_group,
                c.stage_name,
                format_decimal(c.comparison.first.x, precision),
                format_decimal(c.comparison.second.x, precision),
                c.comparison.verdict,
            ));
        }
    }
    out
}

fn render_report_csv(report: &AssessmentReport, precision: usize) -> String {
    let mut out = String::from("section,group,stage,key,value\n");
    for g in &report.groups {
        for (i, stage) in g.stage_names.iter().enumerate() {
            for (l, m) in g.stage_sets[i].iter() {
                out.push_str(&format!(
                    "membership,{},{},{},{}\n",
                    g.name,
                    stage,
                    l.symbol(),
                    format_decimal(m, precision)
                ));
            }
            for (l, w) in ALL_LABELS.iter().zip(g.normalized[i].weights()) {
                out.push_str(&format!(
                    "normalized,{},{},{},{}\n",
                    g.name,
                    stage,
                    l.symbol(),
                    format_decimal(*w, precision)
                ));
            }
            out.push_str(&format!(
                "centroid,{},{},x_c,{}\n",
                g.name,
                stage,
                format_decimal(g.centroids[i].x, precision)
            ));
            out.push_str(&format!(
                "centroid,{},{},y_c,{}\n",
                g.name,
                stage,
                format_decimal(g.centroids[i].y, precision)
            ));
        }
    }
    if let Some(table) = &report.profiles {
        for line in table.to_csv(precision).lines().skip(1) {
            let profile = line.split(',').next().unwrap_or_default().to_string();
            out.push_str(&format!("profile,,,{profile},\"{line}\"\n"));
        }
    }
    for c in &report.comparisons {
        out.push_str(&format!(
            "comparison,{}|{},{},verdict,{}\n",
            c.first_group, c.second_group, c.stage_name, c.comparison.verdict
        ));
    }
    out
}

/// Builds the per-group assessment (sets, normalized distributions and
/// centroids) from a dataset.
pub fn assess_dataset(dataset: &CohortDataset) -> Result<GroupAssessment> {
    let stage_sets = dataset.stage_sets()?;
    let normalized = stage_sets
        .iter()
        .map(crate::fuzzy::normalize_distribution)
        .collect::<Result<Vec<_>>>()?;
    let centroids = stage_sets
        .iter()
        .map(crate::centroid::centroid_of_set)
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupAssessment {
        name: dataset.group_name.clone(),
        stage_names: dataset.stage_names.clone(),
        stage_sets,
        normalized,
        centroids,
    })
}

/// Deterministic map from label symbols to counts, for diagnostics.
pub fn count_map(counts: &CohortStageCounts) -> BTreeMap<char, u64> {
    ALL_LABELS
        .iter()
        .map(|&l| (l.symbol(), counts.count(l)))
        .collect()
}
