//! Report assembly and rendering: tabular text, RFC 4180 CSV, and a
//! versioned JSON document.
//!
//! Rendering is pure: the same document always produces the same bytes.
//! Ratio cells are derived from the row's integer counts by exact long
//! division ([`crate::scalar::format_ratio`]), never from a float.

use serde::{Deserialize, Serialize};

use crate::mining::{
    AssociationRule, CoRelationRow, CoRelationShape, CoRelationTables, Item, ItemDictionary,
};
use crate::parser::ParseStats;
use crate::scalar::Scalar;
use crate::stats::{AccessRow, DailyRow, GeneralStats};

mod csv;
mod text;

/// Output encoding for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn name(&self) -> &'static str {
        match self {
            ReportFormat::Text => "text",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

/// Current JSON document schema version.
pub const SCHEMA_VERSION: u32 = 1;

/// A labelled count, used for the browser and error tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub key: String,
    pub count: u64,
}

impl CountRow {
    pub fn from_pairs(pairs: &[(String, u64)]) -> Vec<CountRow> {
        pairs
            .iter()
            .map(|(key, count)| CountRow {
                key: key.clone(),
                count: *count,
            })
            .collect()
    }
}

/// Per-day table plus its floored daily average.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerDaySection {
    pub rows: Vec<DailyRow>,
    pub average_hits_per_day: u64,
}

/// One association rule with its items resolved, ready for output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRow {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
    pub support: u64,
    pub antecedent_support: u64,
    pub confidence: f64,
}

impl RuleRow {
    pub fn from_rule<S: Scalar>(rule: &AssociationRule<S>, dictionary: &ItemDictionary) -> Self {
        RuleRow {
            antecedent: dictionary.resolve(&rule.antecedent),
            consequent: dictionary.resolve(&rule.consequent),
            support: rule.support,
            antecedent_support: rule.antecedent_support,
            confidence: f64::from_count_ratio(rule.support, rule.antecedent_support),
        }
    }
}

/// Run parameters and provenance embedded in every report. The
/// thresholds recorded here are the ones the run actually applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub inputs: Vec<String>,
    pub format: String,
    pub sections: Vec<String>,
    pub min_support: u64,
    pub min_hits: u64,
    pub min_confidence: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_n: Option<u64>,
    pub tool_version: String,
    /// Injectable generation instant; fixing it makes output
    /// byte-reproducible.
    pub generated_at: String,
    pub parse: ParseStats,
}

/// The complete analysis result. Sections not requested stay `None` and
/// are omitted from output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general: Option<GeneralStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_day: Option<PerDaySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub browsers: Option<Vec<CountRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<Vec<CountRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub access_ip: Option<Vec<AccessRow<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub access_url: Option<Vec<AccessRow<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corelations: Option<CoRelationTables<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<RuleRow>>,
}

/// Serialises the document as pretty-printed JSON with a trailing
/// newline.
pub fn render_json(document: &ReportDocument) -> String {
    let mut out =
        serde_json::to_string_pretty(document).expect("report document serialises infallibly");
    out.push('\n');
    out
}

/// Parses a JSON report back into a document.
pub fn parse_json(text: &str) -> Result<ReportDocument, serde_json::Error> {
    serde_json::from_str(text)
}

/// Renders the whole document in the requested format.
pub fn render_document(document: &ReportDocument, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => text::render_document(document),
        ReportFormat::Csv => csv::render_document(document),
        ReportFormat::Json => render_json(document),
    }
}

/// Renders the general-statistics family: summary counters, per-day
/// table with its average, browser table and error report.
pub fn render_general(
    stats: &GeneralStats,
    per_day: &PerDaySection,
    browsers: &[CountRow],
    errors: &[CountRow],
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Text => text::render_general(stats, per_day, browsers, errors),
        ReportFormat::Csv => csv::render_general(stats, per_day, browsers, errors),
        ReportFormat::Json => {
            let value = serde_json::json!({
                "general": stats,
                "per_day": per_day,
                "browsers": browsers,
                "errors": errors,
            });
            let mut out = serde_json::to_string_pretty(&value).expect("plain data serialises");
            out.push('\n');
            out
        }
    }
}

/// Renders one access-statistics table. `key_header` names the key
/// column (`IPADDRESS` or `URL`).
pub fn render_access_table<S>(
    rows: &[AccessRow<S>],
    title: &str,
    key_header: &str,
    format: ReportFormat,
) -> String
where
    S: Scalar + Serialize,
{
    match format {
        ReportFormat::Text => text::render_access_table(rows, title, key_header),
        ReportFormat::Csv => csv::render_access_table(rows, title, key_header),
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(rows).expect("plain data serialises");
            out.push('\n');
            out
        }
    }
}

/// Renders one co-relation table with the key columns its shape calls
/// for.
pub fn render_corelation_table<S>(
    rows: &[CoRelationRow<S>],
    shape: CoRelationShape,
    title: &str,
    format: ReportFormat,
) -> String
where
    S: Scalar + Serialize,
{
    match format {
        ReportFormat::Text => text::render_corelation_table(rows, shape, title),
        ReportFormat::Csv => csv::render_corelation_table(rows, shape, title),
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(rows).expect("plain data serialises");
            out.push('\n');
            out
        }
    }
}

/// Renders association rules, items in canonical order.
pub fn render_rules<S: Scalar>(
    rules: &[AssociationRule<S>],
    dictionary: &ItemDictionary,
    format: ReportFormat,
) -> String {
    let rows: Vec<RuleRow> = rules
        .iter()
        .map(|rule| RuleRow::from_rule(rule, dictionary))
        .collect();
    render_rule_rows(&rows, format)
}

/// Renders already-resolved rule rows.
pub fn render_rule_rows(rows: &[RuleRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => text::render_rules(rows),
        ReportFormat::Csv => csv::render_rules(rows),
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(rows).expect("plain data serialises");
            out.push('\n');
            out
        }
    }
}

pub(crate) fn items_braced(items: &[Item]) -> String {
    let inner: Vec<String> = items.iter().map(Item::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}
