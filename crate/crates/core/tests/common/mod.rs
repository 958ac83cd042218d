//! Helpers shared by the integration tests.

use chrono::{FixedOffset, TimeZone};
use logminer_core::parser::{LogFormat, LogRecord};

/// Builds a record directly, bypassing the parser, for aggregation
/// tests that do not care about raw lines.
pub fn record(ip: &str, url: &str, status: u16, day: u32, user_agent: Option<&str>) -> LogRecord {
    let offset = FixedOffset::east_opt(5 * 3600 + 30 * 60).unwrap();
    LogRecord {
        ip: ip.to_string(),
        identity: None,
        authuser: None,
        timestamp: offset.with_ymd_and_hms(2008, 11, day, 10, 0, 0).unwrap(),
        method: "GET".to_string(),
        url: url.to_string(),
        protocol: Some("HTTP/1.1".to_string()),
        status,
        bytes: Some(1),
        referrer: None,
        user_agent: user_agent.map(str::to_string),
        format: LogFormat::Common,
        line_number: 1,
    }
}
