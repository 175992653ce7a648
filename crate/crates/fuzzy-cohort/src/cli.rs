//! Command-line front end: ingestion, relation building, centroid scoring,
//! comparison, ranking and plot emission.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::centroid::{stagewise_group_comparison, TieBreakPolicy};
use crate::io::{
    assess_dataset, build_combined_table, build_profile_table, parse_cohort, render_report,
    AssessmentReport, CohortData, CohortDataset, ComparisonRecord, InputFormat, ReportFormat,
    RoundingMode,
};
use crate::profile::{compare_profiles, CombinedRelation, Profile, ProfileOrder, ProfileRelation};
use crate::svg::render_svg;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Exact,
    Paper3,
}

impl From<RoundingArg> for RoundingMode {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::Exact => RoundingMode::Exact,
            RoundingArg::Paper3 => RoundingMode::Paper3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Assess,
    Profiles,
    Combine,
    Compare,
    Rank,
    Plot,
}

/// Fully resolved invocation, independent of the argument parser.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub rounding: RoundingMode,
    pub format: OutputFormat,
    pub precision: usize,
    pub output: Option<PathBuf>,
    /// Expected stage count; inputs with a different stage count are rejected.
    pub stages: Option<usize>,
}

#[derive(Parser, Debug)]
#[command(
    name = "fuzzy-cohort",
    about = "Fuzzy assessment of cohort reasoning performance",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(clap::Args, Debug)]
struct CommonArgs {
    /// Dataset paths (CSV records or JSON documents); `-` reads standard input
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Numeric pipeline: exact rationals or three-decimal table arithmetic
    #[arg(long, value_enum, default_value = "exact")]
    rounding: RoundingArg,
    /// Output format
    #[arg(long, value_enum, default_value = "markdown")]
    format: OutputFormat,
    /// Decimal places in rendered output
    #[arg(long, default_value_t = 3)]
    precision: usize,
    /// Write output to this path instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// Expected stage count for records inputs
    #[arg(long)]
    stages: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Per-stage fuzzy sets, normalized distributions and centroids per group
    Assess(CommonArgs),
    /// Profile table (membership, possibility, probability) per group
    Profiles(CommonArgs),
    /// Pseudo-frequency table combining two or more groups
    Combine(CommonArgs),
    /// Stagewise centroid comparison of two or more groups
    Compare(CommonArgs),
    /// Pairwise partial-order report over students (records input only)
    Rank(CommonArgs),
    /// SVG bar charts and centroid diagrams
    Plot(CommonArgs),
}

fn to_config(command: Command, args: CommonArgs) -> CliConfig {
    CliConfig {
        command,
        inputs: args.inputs,
        rounding: args.rounding.into(),
        format: args.format,
        precision: args.precision,
        output: args.output,
        stages: args.stages,
    }
}

/// Parses process arguments and runs; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let config = match cli.command {
        CliCommand::Assess(a) => to_config(Command::Assess, a),
        CliCommand::Profiles(a) => to_config(Command::Profiles, a),
        CliCommand::Combine(a) => to_config(Command::Combine, a),
        CliCommand::Compare(a) => to_config(Command::Compare, a),
        CliCommand::Rank(a) => to_config(Command::Rank, a),
        CliCommand::Plot(a) => to_config(Command::Plot, a),
    };
    let output_path = config.output.clone();
    match run(&config) {
        Ok(document) => {
            let written = match output_path {
                Some(path) => std::fs::write(path, &document).map_err(Error::from),
                None => {
                    print!("{document}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read(path)?)
    }
}

fn detect_format(path: &Path, bytes: &[u8]) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
        Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
        _ => {
            // stdin or unknown extension: sniff the first byte
            let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
            if first == Some(&b'{') {
                InputFormat::Json
            } else {
                InputFormat::Csv
            }
        }
    }
}

fn load_datasets(config: &CliConfig) -> Result<Vec<CohortDataset>> {
    let mut datasets = Vec::new();
    for path in &config.inputs {
        let bytes = read_input(path)?;
        let format = detect_format(path, &bytes);
        let default_group = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("group")
            .to_string();
        let ds = parse_cohort(&bytes, format, &default_group)?;
        if let Some(expected) = config.stages {
            if ds.stage_count() != expected {
                return Err(Error::StageCountMismatch { expected, got: ds.stage_count() });
            }
        }
        datasets.push(ds);
    }
    let k = datasets[0].stage_count();
    for ds in &datasets {
        if ds.stage_count() != k {
            return Err(Error::StageCountMismatch { expected: k, got: ds.stage_count() });
        }
    }
    Ok(datasets)
}

/// Executes one invocation and returns the emitted document.
pub fn run(config: &CliConfig) -> Result<String> {
    let min_inputs = match config.command {
        Command::Combine | Command::Compare => 2,
        _ => 1,
    };
    if config.inputs.len() < min_inputs {
        return Err(Error::Usage(format!(
            "this command requires at least {min_inputs} input dataset(s)"
        )));
    }
    if config.format == OutputFormat::Svg && config.command != Command::Plot {
        return Err(Error::Usage("svg output is only available for 'plot'".into()));
    }

    let datasets = load_datasets(config)?;
    match config.command {
        Command::Assess => {
            let report = assessment_report(&datasets, config.rounding)?;
            Ok(render_document(&report, config))
        }
        Command::Profiles => {
            let mut report = assessment_report(&datasets, config.rounding)?;
            let named = build_relations(&datasets)?;
            let table = build_profile_table(&named, config.rounding, false, true)?;
            // in csv the table is the whole document
            if config.format == OutputFormat::Csv {
                return Ok(table.to_csv(config.precision));
            }
            report.profiles = Some(table);
            Ok(render_document(&report, config))
        }
        Command::Combine => {
            let mut report = assessment_report(&datasets, config.rounding)?;
            let named = build_relations(&datasets)?;
            let table = match config.rounding {
                RoundingMode::Paper3 => build_profile_table(&named, config.rounding, true, true)?,
                RoundingMode::Exact => {
                    let relations: Vec<ProfileRelation> =
                        named.iter().map(|(_, r)| r.clone()).collect();
                    let combined = CombinedRelation::build(&relations)?;
                    build_combined_table(&named, &combined, true)?
                }
            };
            if config.format == OutputFormat::Csv {
                return Ok(table.to_csv(config.precision));
            }
            report.profiles = Some(table);
            Ok(render_document(&report, config))
        }
        Command::Compare => {
            let mut report = assessment_report(&datasets, config.rounding)?;
            report.comparisons = pairwise_comparisons(&report)?;
            Ok(render_document(&report, config))
        }
        Command::Rank => rank_students(&datasets[0], config),
        Command::Plot => {
            let mut report = assessment_report(&datasets, config.rounding)?;
            if datasets.len() >= 2 {
                report.comparisons = pairwise_comparisons(&report)?;
            }
            Ok(render_svg(&report))
        }
    }
}

fn assessment_report(datasets: &[CohortDataset], rounding: RoundingMode) -> Result<AssessmentReport> {
    Ok(AssessmentReport {
        rounding,
        groups: datasets.iter().map(assess_dataset).collect::<Result<_>>()?,
        profiles: None,
        comparisons: Vec::new(),
    })
}

fn build_relations(datasets: &[CohortDataset]) -> Result<Vec<(String, ProfileRelation)>> {
    datasets
        .iter()
        .map(|ds| Ok((ds.group_name.clone(), ProfileRelation::build(ds.stage_sets()?)?)))
        .collect()
}

fn pairwise_comparisons(report: &AssessmentReport) -> Result<Vec<ComparisonRecord>> {
    let mut out = Vec::new();
    for i in 0..report.groups.len() {
        for j in i + 1..report.groups.len() {
            let (a, b) = (&report.groups[i], &report.groups[j]);
            let stage_cmps =
                stagewise_group_comparison(&a.stage_sets, &b.stage_sets, TieBreakPolicy::default())?;
            for (stage, comparison) in a.stage_names.iter().zip(stage_cmps) {
                out.push(ComparisonRecord {
                    first_group: a.name.clone(),
                    second_group: b.name.clone(),
                    stage_name: stage.clone(),
                    comparison,
                });
            }
        }
    }
    Ok(out)
}

fn render_document(report: &AssessmentReport, config: &CliConfig) -> String {
    let format = match config.format {
        OutputFormat::Json => ReportFormat::Json,
        OutputFormat::Csv => ReportFormat::Csv,
        OutputFormat::Markdown => ReportFormat::Markdown,
        OutputFormat::Svg => unreachable!("svg is rejected for report commands"),
    };
    render_report(report, format, config.precision)
}

fn rank_students(dataset: &CohortDataset, config: &CliConfig) -> Result<String> {
    let records = match &dataset.data {
        CohortData::Records(r) => r,
        CohortData::Pregraded(_) => return Err(Error::RecordsRequired),
    };
    let profiles: Vec<(String, Profile)> = records
        .iter()
        .map(|r| (r.student_id.clone(), Profile::new(r.stage_labels.clone())))
        .collect();
    let n = profiles.len();
    let mut matrix = vec![vec![ProfileOrder::Equal; n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = compare_profiles(&profiles[i].1, &profiles[j].1)?;
        }
    }
    // maximal students: no other student strictly dominates them
    let maximal: Vec<&str> = (0..n)
        .filter(|&i| (0..n).all(|j| matrix[j][i] != ProfileOrder::Greater))
        .map(|i| profiles[i].0.as_str())
        .collect();

    match config.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "group": dataset.group_name,
                "students": profiles.iter().map(|(id, p)| serde_json::json!({
                    "student_id": id,
                    "profile": p.key(),
                })).collect::<Vec<_>>(),
                "matrix": matrix.iter().map(|row| {
                    row.iter().map(|o| o.to_string()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
                "maximal": maximal,
            });
            let mut out = serde_json::to_string_pretty(&doc).expect("rank serialization cannot fail");
            out.push('\n');
            Ok(out)
        }
        OutputFormat::Markdown | OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&format!("# Partial-order ranking: {}\n\n", dataset.group_name));
            out.push_str("| student | profile |\n|---|---|\n");
            for (id, p) in &profiles {
                out.push_str(&format!("| {id} | {} |\n", p.key()));
            }
            out.push_str("\nComparability matrix (row vs column):\n\n");
            let ids: Vec<&str> = profiles.iter().map(|(id, _)| id.as_str()).collect();
            out.push_str(&format!("| | {} |\n", ids.join(" | ")));
            out.push_str(&format!("|{}\n", "---|".repeat(n + 1)));
            for (i, (id, _)) in profiles.iter().enumerate() {
                let cells: Vec<&str> = matrix[i]
                    .iter()
                    .map(|o| match o {
                        ProfileOrder::Less => "<",
                        ProfileOrder::Equal => "=",
                        ProfileOrder::Greater => ">",
                        ProfileOrder::Incomparable => "x",
                    })
                    .collect();
                out.push_str(&format!("| {id} | {} |\n", cells.join(" | ")));
            }
            out.push_str(&format!("\nMaximal students: {}\n", maximal.join(", ")));
            Ok(out)
        }
        OutputFormat::Svg => Err(Error::Usage("svg output is only available for 'plot'".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_requires_two_inputs() {
        let config = CliConfig {
            command: Command::Compare,
            inputs: vec![PathBuf::from("only.json")],
            rounding: RoundingMode::Exact,
            format: OutputFormat::Markdown,
            precision: 3,
            output: None,
            stages: None,
        };
        assert!(matches!(run(&config), Err(Error::Usage(_))));
    }

    #[test]
    fn svg_rejected_outside_plot() {
        let config = CliConfig {
            command: Command::Assess,
            inputs: vec![PathBuf::from("g.json")],
            rounding: RoundingMode::Exact,
            format: OutputFormat::Svg,
            precision: 3,
            output: None,
            stages: None,
        };
        assert!(matches!(run(&config), Err(Error::Usage(_))));
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format(Path::new("x.csv"), b"{"), InputFormat::Csv);
        assert_eq!(detect_format(Path::new("x.JSON"), b"a,b"), InputFormat::Json);
        assert_eq!(detect_format(Path::new("-"), b"  {\"group\":1}"), InputFormat::Json);
        assert_eq!(detect_format(Path::new("-"), b"student_id,s1"), InputFormat::Csv);
    }
}
