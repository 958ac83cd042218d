//! Grouped co-relation mining over (ip, url, path) record attributes.
//!
//! The level-wise structure mirrors the classic miner, but groups are
//! attribute-value tuples counted straight off the records: level 1 is
//! the distinct values per attribute, level 2 joins values co-occurring
//! in the same record, level 3 builds triples from the surviving pairs.
//! The prune step drops any group whose successful co-occurrences fall
//! below `min_hits`; pruned groups can never resurface at a later level
//! because a tuple's successful count never exceeds any sub-tuple's.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::Outcome;
use crate::parser::{extract_path, LogRecord};
use crate::scalar::Scalar;

/// One grouped tuple with its hit statistics. Pair tables leave the
/// unused attribute `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoRelationRow<S> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ip: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub hits: u64,
    pub incomplete: u64,
    pub success_ratio: S,
}

/// Which attributes a co-relation table carries, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoRelationShape {
    IpUrl,
    UrlPath,
    IpPath,
    IpUrlPath,
}

impl CoRelationShape {
    pub fn has_ip(&self) -> bool {
        !matches!(self, CoRelationShape::UrlPath)
    }

    pub fn has_url(&self) -> bool {
        !matches!(self, CoRelationShape::IpPath)
    }

    pub fn has_path(&self) -> bool {
        !matches!(self, CoRelationShape::IpUrl)
    }
}

/// The four rule-shape tables, each sorted ascending by its key tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoRelationTables<S> {
    pub ip_url: Vec<CoRelationRow<S>>,
    pub url_path: Vec<CoRelationRow<S>>,
    pub ip_path: Vec<CoRelationRow<S>>,
    pub ip_url_path: Vec<CoRelationRow<S>>,
}

impl<S> CoRelationTables<S> {
    pub fn is_empty(&self) -> bool {
        self.ip_url.is_empty()
            && self.url_path.is_empty()
            && self.ip_path.is_empty()
            && self.ip_url_path.is_empty()
    }
}

#[derive(Default)]
struct GroupCounts {
    hits: u64,
    incomplete: u64,
}

impl GroupCounts {
    fn add(&mut self, outcome: Outcome) {
        self.hits += 1;
        if outcome == Outcome::Incomplete {
            self.incomplete += 1;
        }
    }

    fn successful(&self) -> u64 {
        self.hits - self.incomplete
    }
}

/// Runs the grouped miner over the records. A tuple survives when its
/// successful co-occurrence count reaches `min_hits`; surviving rows
/// still report their full hit and incomplete counts, which is why
/// incomplete columns are non-zero in the output. A surviving pair's
/// endpoints and a surviving triple's three pairs always survive too,
/// since successful counts only shrink as tuples grow.
pub fn custom_apriori<S: Scalar>(records: &[LogRecord], min_hits: u64) -> CoRelationTables<S> {
    debug_assert!(min_hits >= 1, "min_hits must be at least 1");

    let mut ip_url: BTreeMap<(&str, &str), GroupCounts> = BTreeMap::new();
    let mut url_path: BTreeMap<(&str, String), GroupCounts> = BTreeMap::new();
    let mut ip_path: BTreeMap<(&str, String), GroupCounts> = BTreeMap::new();
    let mut ip_url_path: BTreeMap<(&str, &str, String), GroupCounts> = BTreeMap::new();

    for record in records {
        let outcome = record.outcome();
        let ip = record.ip.as_str();
        let url = record.url.as_str();
        let path = extract_path(url);

        ip_url.entry((ip, url)).or_default().add(outcome);
        url_path
            .entry((url, path.clone()))
            .or_default()
            .add(outcome);
        ip_path.entry((ip, path.clone())).or_default().add(outcome);
        ip_url_path.entry((ip, url, path)).or_default().add(outcome);
    }

    let keep = |counts: &GroupCounts| counts.successful() >= min_hits;
    let row = |ip: Option<&str>, url: Option<&str>, path: Option<&str>, counts: &GroupCounts| {
        CoRelationRow {
            ip: ip.map(str::to_string),
            url: url.map(str::to_string),
            path: path.map(str::to_string),
            hits: counts.hits,
            incomplete: counts.incomplete,
            success_ratio: S::from_count_ratio(counts.successful(), counts.hits),
        }
    };

    CoRelationTables {
        ip_url: ip_url
            .iter()
            .filter(|(_, c)| keep(c))
            .map(|((ip, url), c)| row(Some(ip), Some(url), None, c))
            .collect(),
        url_path: url_path
            .iter()
            .filter(|(_, c)| keep(c))
            .map(|((url, path), c)| row(None, Some(url), Some(path), c))
            .collect(),
        ip_path: ip_path
            .iter()
            .filter(|(_, c)| keep(c))
            .map(|((ip, path), c)| row(Some(ip), None, Some(path), c))
            .collect(),
        ip_url_path: ip_url_path
            .iter()
            .filter(|(_, c)| keep(c))
            .map(|((ip, url, path), c)| row(Some(ip), Some(url), Some(path), c))
            .collect(),
    }
}
