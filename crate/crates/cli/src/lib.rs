//! Pipeline orchestration for the `logminer` binary: argument handling,
//! parse -> classify -> aggregate -> mine -> render, and exit-code
//! mapping.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O), 2 usage error.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use chrono::{DateTime, SecondsFormat, Utc};
use thiserror::Error;

use logminer_core::classify::ClassifierConfig;
use logminer_core::mining::{
    apriori, build_transactions, custom_apriori, generate_rules, TransactionScheme,
};
use logminer_core::parser::{open_log, parse_log, LogRecord, ParseStats};
use logminer_core::report::{
    render_document, CountRow, Metadata, PerDaySection, ReportDocument, ReportFormat, RuleRow,
    SCHEMA_VERSION,
};
use logminer_core::scalar::Scalar;
use logminer_core::stats::{access_stats, general_stats, per_day, AccessKey, AccessRow};
use logminer_core::Exact;

pub mod args;

/// Report sections that can be requested independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionSet {
    pub general: bool,
    pub access: bool,
    pub corelations: bool,
    pub rules: bool,
}

impl SectionSet {
    pub fn all() -> Self {
        SectionSet {
            general: true,
            access: true,
            corelations: true,
            rules: true,
        }
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = Vec::new();
        if self.general {
            names.push("general".to_string());
        }
        if self.access {
            names.push("access".to_string());
        }
        if self.corelations {
            names.push("corelations".to_string());
        }
        if self.rules {
            names.push("rules".to_string());
        }
        names
    }
}

/// A validated run: every invariant the flags promise already holds.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub format: ReportFormat,
    pub output: Option<PathBuf>,
    pub min_support: u64,
    pub min_hits: u64,
    pub min_confidence: Exact,
    pub sections: SectionSet,
    pub classifier: ClassifierConfig,
    pub top_n: Option<u64>,
    /// Fixed generation instant; `None` stamps the current time.
    pub timestamp: Option<DateTime<Utc>>,
}

/// Bad flag combinations, found after clap's own parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Runtime failure: the run was well-formed but could not complete.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("writing {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("internal invariant violated: {0}")]
    Internal(#[from] logminer_core::DomainError),
}

fn truncate<T>(rows: &mut Vec<T>, top_n: Option<u64>) {
    if let Some(limit) = top_n {
        rows.truncate(limit as usize);
    }
}

fn ratio_to_f64_rows(rows: Vec<AccessRow<Exact>>) -> Vec<AccessRow<f64>> {
    rows.into_iter()
        .map(|row| AccessRow {
            success_ratio: f64::from_count_ratio(row.hits - row.incomplete, row.hits),
            key: row.key,
            hits: row.hits,
            incomplete: row.incomplete,
        })
        .collect()
}

fn corelation_to_f64(
    tables: logminer_core::mining::CoRelationTables<Exact>,
) -> logminer_core::mining::CoRelationTables<f64> {
    let convert = |rows: Vec<logminer_core::mining::CoRelationRow<Exact>>| {
        rows.into_iter()
            .map(|row| logminer_core::mining::CoRelationRow {
                success_ratio: f64::from_count_ratio(row.hits - row.incomplete, row.hits),
                ip: row.ip,
                url: row.url,
                path: row.path,
                hits: row.hits,
                incomplete: row.incomplete,
            })
            .collect()
    };
    logminer_core::mining::CoRelationTables {
        ip_url: convert(tables.ip_url),
        url_path: convert(tables.url_path),
        ip_path: convert(tables.ip_path),
        ip_url_path: convert(tables.ip_url_path),
    }
}

/// Parses every input in argument order into one record stream.
fn read_inputs(config: &RunConfig) -> Result<(Vec<LogRecord>, ParseStats), RunError> {
    let mut records = Vec::new();
    let mut stats = ParseStats::default();
    for path in &config.inputs {
        let with_path = |source: io::Error| RunError::Input {
            path: path.display().to_string(),
            source,
        };
        let reader = open_log(path).map_err(with_path)?;
        let (mut file_records, file_stats) = parse_log(reader).map_err(with_path)?;
        records.append(&mut file_records);
        stats.merge(&file_stats);
    }
    Ok((records, stats))
}

/// Builds the report document for a config. Only requested sections are
/// computed.
pub fn build_report(config: &RunConfig) -> Result<ReportDocument, RunError> {
    let (records, parse_stats) = read_inputs(config)?;

    let generated_at = config
        .timestamp
        .unwrap_or_else(Utc::now)
        .to_rfc3339_opts(SecondsFormat::Secs, true);

    let mut document = ReportDocument {
        schema_version: SCHEMA_VERSION,
        metadata: Metadata {
            inputs: config
                .inputs
                .iter()
                .map(|p| p.display().to_string())
                .collect(),
            format: config.format.name().to_string(),
            sections: config.sections.names(),
            min_support: config.min_support,
            min_hits: config.min_hits,
            min_confidence: config.min_confidence.approx_f64(),
            top_n: config.top_n,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            generated_at,
            parse: parse_stats,
        },
        general: None,
        per_day: None,
        browsers: None,
        errors: None,
        access_ip: None,
        access_url: None,
        corelations: None,
        rules: None,
    };

    if config.sections.general {
        document.general = Some(general_stats(&records, &config.classifier));
        let (rows, average_hits_per_day) = per_day(&records);
        document.per_day = Some(PerDaySection {
            rows,
            average_hits_per_day,
        });
        let mut browsers = CountRow::from_pairs(&logminer_core::stats::browser_stats(&records));
        truncate(&mut browsers, config.top_n);
        document.browsers = Some(browsers);
        let mut errors = CountRow::from_pairs(&logminer_core::stats::error_report(&records));
        truncate(&mut errors, config.top_n);
        document.errors = Some(errors);
    }

    if config.sections.access {
        let mut by_ip = ratio_to_f64_rows(access_stats::<Exact>(&records, AccessKey::Ip));
        truncate(&mut by_ip, config.top_n);
        document.access_ip = Some(by_ip);
        let mut by_url = ratio_to_f64_rows(access_stats::<Exact>(&records, AccessKey::Url));
        truncate(&mut by_url, config.top_n);
        document.access_url = Some(by_url);
    }

    if config.sections.corelations {
        let mut tables = corelation_to_f64(custom_apriori::<Exact>(&records, config.min_hits));
        truncate(&mut tables.ip_url, config.top_n);
        truncate(&mut tables.url_path, config.top_n);
        truncate(&mut tables.ip_path, config.top_n);
        truncate(&mut tables.ip_url_path, config.top_n);
        document.corelations = Some(tables);
    }

    if config.sections.rules {
        let (transactions, dictionary) = build_transactions(&records, TransactionScheme::PerIp);
        let levels = apriori(&transactions, config.min_support)?;
        let mined = generate_rules::<Exact>(&levels, &config.min_confidence)?;
        let mut rules: Vec<RuleRow> = mined
            .iter()
            .map(|rule| RuleRow::from_rule(rule, &dictionary))
            .collect();
        truncate(&mut rules, config.top_n);
        document.rules = Some(rules);
    }

    Ok(document)
}

/// Runs the full pipeline and writes the report. Malformed log lines are
/// tallied in metadata and never affect the outcome.
pub fn run(config: &RunConfig) -> Result<(), RunError> {
    let document = build_report(config)?;
    let rendered = render_document(&document, config.format);
    match &config.output {
        Some(path) => fs::write(path, rendered).map_err(|source| RunError::Output {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let stdout = io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(rendered.as_bytes())
                .map_err(|source| RunError::Output {
                    path: "<stdout>".to_string(),
                    source,
                })?;
        }
    }
    Ok(())
}
