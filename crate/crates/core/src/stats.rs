//! General and access statistics: the summary counters, per-day table,
//! browser table, error report and per-key hit tables.
//!
//! Every aggregation here is a permutation-invariant fold over the
//! record multiset, so results never depend on input order.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::classify::{ClassifierConfig, Outcome, RequestClass};
use crate::error::DomainError;
use crate::parser::LogRecord;
use crate::scalar::Scalar;

/// Summary counters for a record set.
///
/// `successful_hits + incomplete_hits == total_hits`, and the four
/// resource classes partition the successful hits (failed requests are
/// not views of anything).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralStats {
    pub total_hits: u64,
    pub successful_hits: u64,
    pub incomplete_hits: u64,
    /// Distinct client hosts.
    pub visitors: u64,
    pub page_views: u64,
    pub image_views: u64,
    pub file_downloads: u64,
    pub other_assets: u64,
}

/// One row of the per-day table, bucketed by the date the server logged
/// (original utc offset, not normalised).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DailyRow {
    pub date: NaiveDate,
    pub hits: u64,
    pub successful: u64,
    pub incomplete: u64,
}

/// Which record field keys an access table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccessKey {
    Ip,
    Url,
}

/// One access-statistics row: a key with its hit counts and the
/// successful fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccessRow<S> {
    pub key: String,
    pub hits: u64,
    pub incomplete: u64,
    pub success_ratio: S,
}

/// Successful fraction `(hits - incomplete) / hits`, the report's
/// "% OF TOTAL" column. Exact when `S` is [`crate::Exact`].
pub fn success_ratio<S: Scalar>(hits: u64, incomplete: u64) -> Result<S, DomainError> {
    if hits == 0 {
        return Err(DomainError::ZeroHits);
    }
    if incomplete > hits {
        return Err(DomainError::IncompleteExceedsHits { hits, incomplete });
    }
    Ok(S::from_count_ratio(hits - incomplete, hits))
}

#[derive(Default)]
struct HitCounts {
    hits: u64,
    incomplete: u64,
}

impl HitCounts {
    fn add(&mut self, outcome: Outcome) {
        self.hits += 1;
        if outcome == Outcome::Incomplete {
            self.incomplete += 1;
        }
    }
}

/// Computes the summary counters. Empty input gives all zeros.
pub fn general_stats(records: &[LogRecord], config: &ClassifierConfig) -> GeneralStats {
    let mut stats = GeneralStats::default();
    let mut ips = std::collections::BTreeSet::new();
    for record in records {
        stats.total_hits += 1;
        ips.insert(record.ip.as_str());
        match record.outcome() {
            Outcome::Incomplete => stats.incomplete_hits += 1,
            Outcome::Successful => {
                stats.successful_hits += 1;
                match record.resource_class(config) {
                    RequestClass::PageView => stats.page_views += 1,
                    RequestClass::ImageView => stats.image_views += 1,
                    RequestClass::FileDownload => stats.file_downloads += 1,
                    RequestClass::OtherAsset => stats.other_assets += 1,
                }
            }
        }
    }
    stats.visitors = ips.len() as u64;
    stats
}

/// Per-day rows (ascending by date) plus the floored average hits per
/// day over the days that actually appear.
pub fn per_day(records: &[LogRecord]) -> (Vec<DailyRow>, u64) {
    let mut days: BTreeMap<NaiveDate, HitCounts> = BTreeMap::new();
    for record in records {
        days.entry(record.timestamp.date_naive())
            .or_default()
            .add(record.outcome());
    }
    let rows: Vec<DailyRow> = days
        .into_iter()
        .map(|(date, counts)| DailyRow {
            date,
            hits: counts.hits,
            successful: counts.hits - counts.incomplete,
            incomplete: counts.incomplete,
        })
        .collect();
    let average = if rows.is_empty() {
        0
    } else {
        records.len() as u64 / rows.len() as u64
    };
    (rows, average)
}

fn count_grouped<F>(records: &[LogRecord], mut key: F) -> Vec<(String, u64)>
where
    F: FnMut(&LogRecord) -> Option<String>,
{
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for record in records {
        if let Some(k) = key(record) {
            *counts.entry(k).or_insert(0) += 1;
        }
    }
    let mut rows: Vec<(String, u64)> = counts.into_iter().collect();
    // descending by count; the BTreeMap already ordered ties by key
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    rows
}

/// Hit counts per browser family, most popular first.
pub fn browser_stats(records: &[LogRecord]) -> Vec<(String, u64)> {
    count_grouped(records, |r| Some(r.browser_family()))
}

/// Incomplete hits grouped by status label, most frequent first.
pub fn error_report(records: &[LogRecord]) -> Vec<(String, u64)> {
    count_grouped(records, |r| match r.outcome() {
        Outcome::Incomplete => Some(crate::classify::status_label(r.status)),
        Outcome::Successful => None,
    })
}

/// Per-key hit table: one row per distinct ip or url, keys ascending.
pub fn access_stats<S: Scalar>(records: &[LogRecord], key_by: AccessKey) -> Vec<AccessRow<S>> {
    let mut counts: BTreeMap<&str, HitCounts> = BTreeMap::new();
    for record in records {
        let key = match key_by {
            AccessKey::Ip => record.ip.as_str(),
            AccessKey::Url => record.url.as_str(),
        };
        counts.entry(key).or_default().add(record.outcome());
    }
    counts
        .into_iter()
        .map(|(key, counts)| AccessRow {
            key: key.to_string(),
            hits: counts.hits,
            incomplete: counts.incomplete,
            success_ratio: S::from_count_ratio(counts.hits - counts.incomplete, counts.hits),
        })
        .collect()
}
