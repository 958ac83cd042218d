//! Command-line surface. clap handles flag syntax (exit 2 on bad usage,
//! 0 on `--help`/`--version`); [`Cli::into_config`] does the
//! cross-flag validation clap cannot.

use std::path::PathBuf;

use chrono::{DateTime, Utc};
use clap::{ArgAction, Parser, ValueEnum};

use logminer_core::classify::ClassifierConfig;
use logminer_core::report::ReportFormat;
use logminer_core::scalar::parse_decimal;
use logminer_core::{DomainError, Exact};

use crate::{RunConfig, SectionSet, UsageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectionArg {
    General,
    Access,
    Corelations,
    Rules,
    All,
}

fn confidence_in_unit_interval(text: &str) -> Result<Exact, String> {
    let value = parse_decimal(text).map_err(|e| e.to_string())?;
    if value <= Exact::new(0, 1) || value > Exact::new(1, 1) {
        return Err(format!("{text} is not in (0, 1]"));
    }
    Ok(value)
}

/// Analyze web-server access logs: general/access statistics,
/// co-relation tables and association rules.
#[derive(Debug, Parser)]
#[command(name = "logminer", version, about)]
pub struct Cli {
    /// Input log file (plain or gzip); repeat to concatenate several in
    /// argument order
    #[arg(long, value_name = "PATH", required = true, action = ArgAction::Append, num_args = 1..)]
    pub input: Vec<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,

    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Minimum support count for the classic frequent-itemset miner
    #[arg(long, value_name = "N", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_support: u64,

    /// Minimum successful-hit count for the grouped co-relation miner
    #[arg(long, value_name = "N", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub min_hits: u64,

    /// Minimum rule confidence in (0, 1]
    #[arg(long, value_name = "R", default_value = "0.5", value_parser = confidence_in_unit_interval)]
    pub min_confidence: Exact,

    /// Sections to compute (comma-separated)
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub sections: Vec<SectionArg>,

    /// Extensions classified as page views (comma-separated, lowercase)
    #[arg(long, value_name = "CSV", value_delimiter = ',')]
    pub page_ext: Option<Vec<String>>,

    /// Extensions classified as image views
    #[arg(long, value_name = "CSV", value_delimiter = ',')]
    pub image_ext: Option<Vec<String>>,

    /// Extensions classified as file downloads
    #[arg(long, value_name = "CSV", value_delimiter = ',')]
    pub download_ext: Option<Vec<String>>,

    /// Cap each table at the first N rows
    #[arg(long, value_name = "N")]
    pub top_n: Option<u64>,

    /// Fix the report's generation timestamp (RFC 3339); reruns with the
    /// same inputs then produce byte-identical output
    #[arg(long, value_name = "RFC3339")]
    pub timestamp: Option<String>,
}

fn flag_for(set: &'static str) -> &'static str {
    match set {
        "page" => "--page-ext",
        "image" => "--image-ext",
        "download" => "--download-ext",
        other => other,
    }
}

impl Cli {
    /// Validates cross-flag constraints and produces the run config.
    pub fn into_config(self) -> Result<RunConfig, UsageError> {
        let defaults = ClassifierConfig::default();
        let as_vec = |set: &std::collections::BTreeSet<String>| -> Vec<String> {
            set.iter().cloned().collect()
        };
        let page = self
            .page_ext
            .unwrap_or_else(|| as_vec(defaults.page_extensions()));
        let image = self
            .image_ext
            .unwrap_or_else(|| as_vec(defaults.image_extensions()));
        let download = self
            .download_ext
            .unwrap_or_else(|| as_vec(defaults.download_extensions()));
        let classifier = ClassifierConfig::new(&page, &image, &download).map_err(|err| {
            match err {
                DomainError::OverlappingExtensions {
                    extension,
                    first,
                    second,
                } => UsageError(format!(
                    "{} and {} both claim extension {extension:?}",
                    flag_for(first),
                    flag_for(second)
                )),
                other => UsageError(other.to_string()),
            }
        })?;

        let timestamp = match &self.timestamp {
            None => None,
            Some(text) => Some(
                DateTime::parse_from_rfc3339(text)
                    .map(|t| t.with_timezone(&Utc))
                    .map_err(|e| UsageError(format!("--timestamp {text:?}: {e}")))?,
            ),
        };

        let mut sections = SectionSet {
            general: false,
            access: false,
            corelations: false,
            rules: false,
        };
        for section in &self.sections {
            match section {
                SectionArg::General => sections.general = true,
                SectionArg::Access => sections.access = true,
                SectionArg::Corelations => sections.corelations = true,
                SectionArg::Rules => sections.rules = true,
                SectionArg::All => sections = SectionSet::all(),
            }
        }

        Ok(RunConfig {
            inputs: self.input,
            format: self.format.into(),
            output: self.output,
            min_support: self.min_support,
            min_hits: self.min_hits,
            min_confidence: self.min_confidence,
            sections,
            classifier,
            top_n: self.top_n,
            timestamp,
        })
    }
}
