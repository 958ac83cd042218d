//! Common Log Format / Combined Log Format parsing.
//!
//! One physical line per record:
//!
//! ```text
//! host ident authuser [dd/Mon/yyyy:HH:MM:SS +zzzz] "METHOD url PROTO" status bytes
//! ```
//!
//! with Combined appending `"referrer" "user-agent"`. Malformed lines are
//! never fatal: [`parse_log`] skips them and tallies the reason in
//! [`ParseStats`].

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use chrono::{DateTime, FixedOffset};
use flate2::bufread::MultiGzDecoder;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const TIMESTAMP_FORMAT: &str = "%d/%b/%Y:%H:%M:%S %z";

/// Line layout a record was parsed from. Kept so a record serialises back
/// to exactly the shape it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFormat {
    Common,
    Combined,
}

/// One parsed access-log line.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRecord {
    /// Client host: dotted quad or hostname, as logged.
    pub ip: String,
    /// RFC 1413 identity; `-` in the log means absent.
    pub identity: Option<String>,
    /// Authenticated user; `-` means absent.
    pub authuser: Option<String>,
    /// Request instant with the offset the server logged.
    pub timestamp: DateTime<FixedOffset>,
    pub method: String,
    /// Request target as logged: path plus optional query.
    pub url: String,
    /// Protocol token (`HTTP/1.1`); old HTTP/0.9 lines omit it.
    pub protocol: Option<String>,
    /// Status in 100..=599.
    pub status: u16,
    /// Response size; `-` means absent.
    pub bytes: Option<u64>,
    pub referrer: Option<String>,
    pub user_agent: Option<String>,
    pub format: LogFormat,
    /// 1-based line number within its source file.
    pub line_number: u64,
}

impl LogRecord {
    /// Serialises the record back into a log line. For every well-formed
    /// input line this is the identity up to whitespace normalisation.
    pub fn to_log_line(&self) -> String {
        let mut line = format!(
            "{} {} {} [{}] \"{}",
            self.ip,
            self.identity.as_deref().unwrap_or("-"),
            self.authuser.as_deref().unwrap_or("-"),
            self.timestamp.format(TIMESTAMP_FORMAT),
            self.method,
        );
        line.push(' ');
        line.push_str(&self.url);
        if let Some(proto) = &self.protocol {
            line.push(' ');
            line.push_str(proto);
        }
        line.push_str("\" ");
        line.push_str(&self.status.to_string());
        line.push(' ');
        match self.bytes {
            Some(b) => line.push_str(&b.to_string()),
            None => line.push('-'),
        }
        if self.format == LogFormat::Combined {
            line.push_str(" \"");
            line.push_str(self.referrer.as_deref().unwrap_or("-"));
            line.push_str("\" \"");
            line.push_str(self.user_agent.as_deref().unwrap_or("-"));
            line.push('"');
        }
        line
    }
}

/// Why a line was skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MalformedReason {
    Blank,
    MissingField(&'static str),
    MissingTimestampBracket,
    Timestamp,
    MissingRequestQuote,
    Request,
    RequestTarget,
    Status,
    StatusRange,
    Bytes,
    Trailer,
}

impl MalformedReason {
    /// Stable label used as the `skip_reasons` key.
    pub fn label(&self) -> String {
        match self {
            MalformedReason::Blank => "blank".to_string(),
            MalformedReason::MissingField(field) => format!("missing {field}"),
            MalformedReason::MissingTimestampBracket => "missing timestamp bracket".to_string(),
            MalformedReason::Timestamp => "unparseable timestamp".to_string(),
            MalformedReason::MissingRequestQuote => "missing request quote".to_string(),
            MalformedReason::Request => "malformed request".to_string(),
            MalformedReason::RequestTarget => "invalid request target".to_string(),
            MalformedReason::Status => "non-numeric status".to_string(),
            MalformedReason::StatusRange => "status out of range".to_string(),
            MalformedReason::Bytes => "malformed bytes".to_string(),
            MalformedReason::Trailer => "malformed referrer/user-agent".to_string(),
        }
    }
}

impl fmt::Display for MalformedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Per-line parse failure. Never aborts the stream; [`parse_log`] counts
/// these and moves on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: u64, reason: MalformedReason },
}

impl ParseError {
    pub fn reason(&self) -> MalformedReason {
        match self {
            ParseError::MalformedLine { reason, .. } => *reason,
        }
    }
}

/// Tally of what [`parse_log`] saw. `parsed + skipped == total_lines`
/// always holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseStats {
    pub total_lines: u64,
    pub parsed: u64,
    pub skipped: u64,
    /// Skip counts keyed by reason label, e.g. `"blank"`.
    #[serde(default)]
    pub skip_reasons: BTreeMap<String, u64>,
}

impl ParseStats {
    fn record_parsed(&mut self) {
        self.total_lines += 1;
        self.parsed += 1;
    }

    fn record_skip(&mut self, reason: MalformedReason) {
        self.total_lines += 1;
        self.skipped += 1;
        *self.skip_reasons.entry(reason.label()).or_insert(0) += 1;
    }

    /// Folds another tally into this one (multi-file runs).
    pub fn merge(&mut self, other: &ParseStats) {
        self.total_lines += other.total_lines;
        self.parsed += other.parsed;
        self.skipped += other.skipped;
        for (reason, count) in &other.skip_reasons {
            *self.skip_reasons.entry(reason.clone()).or_insert(0) += count;
        }
    }
}

struct Scanner<'a> {
    rest: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(line: &'a str) -> Self {
        Scanner { rest: line }
    }

    fn skip_spaces(&mut self) {
        self.rest = self.rest.trim_start_matches(' ');
    }

    fn at_end(&mut self) -> bool {
        self.skip_spaces();
        self.rest.is_empty()
    }

    /// Next space-delimited token.
    fn token(&mut self) -> Option<&'a str> {
        self.skip_spaces();
        if self.rest.is_empty() {
            return None;
        }
        let end = self.rest.find(' ').unwrap_or(self.rest.len());
        let (tok, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some(tok)
    }

    /// Content of a `[...]` group.
    fn bracketed(&mut self) -> Option<&'a str> {
        self.delimited('[', ']')
    }

    /// Content of a `"..."` group. No escape handling: CLF writers do not
    /// escape quotes.
    fn quoted(&mut self) -> Option<&'a str> {
        self.delimited('"', '"')
    }

    fn delimited(&mut self, open: char, close: char) -> Option<&'a str> {
        self.skip_spaces();
        let mut chars = self.rest.chars();
        if chars.next() != Some(open) {
            return None;
        }
        let inner = chars.as_str();
        let end = inner.find(close)?;
        let value = &inner[..end];
        self.rest = &inner[end + close.len_utf8()..];
        Some(value)
    }
}

fn optional(token: &str) -> Option<String> {
    if token == "-" {
        None
    } else {
        Some(token.to_string())
    }
}

fn valid_request_target(url: &str) -> bool {
    url.starts_with('/') || url == "*" || url.contains("://")
}

/// Parses one log line (without trailing newline) into a [`LogRecord`].
pub fn parse_line(line: &str, line_number: u64) -> Result<LogRecord, ParseError> {
    let malformed = |reason| ParseError::MalformedLine {
        line: line_number,
        reason,
    };

    if line.trim().is_empty() {
        return Err(malformed(MalformedReason::Blank));
    }

    let mut scanner = Scanner::new(line);
    let ip = scanner
        .token()
        .ok_or(malformed(MalformedReason::MissingField("host")))?
        .to_string();
    let identity = optional(
        scanner
            .token()
            .ok_or(malformed(MalformedReason::MissingField("identity")))?,
    );
    let authuser = optional(
        scanner
            .token()
            .ok_or(malformed(MalformedReason::MissingField("authuser")))?,
    );

    let timestamp_text = scanner
        .bracketed()
        .ok_or(malformed(MalformedReason::MissingTimestampBracket))?;
    let timestamp = DateTime::parse_from_str(timestamp_text, TIMESTAMP_FORMAT)
        .map_err(|_| malformed(MalformedReason::Timestamp))?;

    let request = scanner
        .quoted()
        .ok_or(malformed(MalformedReason::MissingRequestQuote))?;
    let mut request_parts = request.split_whitespace();
    let method = request_parts
        .next()
        .ok_or(malformed(MalformedReason::Request))?
        .to_string();
    let url = request_parts
        .next()
        .ok_or(malformed(MalformedReason::Request))?
        .to_string();
    let protocol = request_parts.next().map(str::to_string);
    if request_parts.next().is_some() {
        return Err(malformed(MalformedReason::Request));
    }
    if !valid_request_target(&url) {
        return Err(malformed(MalformedReason::RequestTarget));
    }

    let status: u16 = scanner
        .token()
        .ok_or(malformed(MalformedReason::MissingField("status")))?
        .parse()
        .map_err(|_| malformed(MalformedReason::Status))?;
    if !(100..=599).contains(&status) {
        return Err(malformed(MalformedReason::StatusRange));
    }

    let bytes_token = scanner
        .token()
        .ok_or(malformed(MalformedReason::MissingField("bytes")))?;
    let bytes = match bytes_token {
        "-" => None,
        digits => Some(
            digits
                .parse::<u64>()
                .map_err(|_| malformed(MalformedReason::Bytes))?,
        ),
    };

    let (format, referrer, user_agent) = if scanner.at_end() {
        (LogFormat::Common, None, None)
    } else {
        let referrer = scanner
            .quoted()
            .ok_or(malformed(MalformedReason::Trailer))?;
        let user_agent = scanner
            .quoted()
            .ok_or(malformed(MalformedReason::Trailer))?;
        if !scanner.at_end() {
            return Err(malformed(MalformedReason::Trailer));
        }
        (LogFormat::Combined, optional(referrer), optional(user_agent))
    };

    Ok(LogRecord {
        ip,
        identity,
        authuser,
        timestamp,
        method,
        url,
        protocol,
        status,
        bytes,
        referrer,
        user_agent,
        format,
        line_number,
    })
}

/// Parses a whole stream, in order and in one pass. Per-line failures are
/// tallied in [`ParseStats`]; only real I/O failures abort.
pub fn parse_log<R: BufRead>(mut reader: R) -> io::Result<(Vec<LogRecord>, ParseStats)> {
    let mut records = Vec::new();
    let mut stats = ParseStats::default();
    let mut line = String::new();
    let mut line_number = 0u64;

    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        line_number += 1;
        let trimmed = line.trim_end_matches(['\n', '\r']);
        match parse_line(trimmed, line_number) {
            Ok(record) => {
                stats.record_parsed();
                records.push(record);
            }
            Err(err) => stats.record_skip(err.reason()),
        }
    }

    Ok((records, stats))
}

/// Opens a log file for reading, transparently decoding gzip (detected
/// by magic bytes, not extension). Concatenated gzip members, as rotated
/// logs produce, decode as one stream.
pub fn open_log(path: &Path) -> io::Result<Box<dyn BufRead>> {
    let mut reader = BufReader::new(File::open(path)?);
    let magic = reader.fill_buf()?;
    if magic.starts_with(&[0x1f, 0x8b]) {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(reader))))
    } else {
        Ok(Box::new(reader))
    }
}

/// Directory component of a request target: everything up to and
/// including the last `/` before any query string. Targets without a
/// slash collapse to `/`.
pub fn extract_path(url: &str) -> String {
    let without_query = match url.find('?') {
        Some(idx) => &url[..idx],
        None => url,
    };
    match without_query.rfind('/') {
        Some(idx) => without_query[..=idx].to_string(),
        None => "/".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_log_line() {
        let line = r#"1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] "GET /index.html HTTP/1.1" 200 512"#;
        let rec = parse_line(line, 1).unwrap();
        assert_eq!(rec.ip, "1.2.3.4");
        assert_eq!(rec.identity, None);
        assert_eq!(rec.authuser, None);
        assert_eq!(rec.method, "GET");
        assert_eq!(rec.url, "/index.html");
        assert_eq!(rec.protocol.as_deref(), Some("HTTP/1.1"));
        assert_eq!(rec.status, 200);
        assert_eq!(rec.bytes, Some(512));
        assert_eq!(rec.referrer, None);
        assert_eq!(rec.user_agent, None);
        assert_eq!(rec.format, LogFormat::Common);
        assert_eq!(rec.line_number, 1);
        assert_eq!(rec.timestamp.to_rfc3339(), "2008-11-27T10:00:00+05:30");
    }

    #[test]
    fn dash_bytes_means_absent() {
        let line = r#"1.2.3.4 - - [27/Nov/2008:10:00:01 +0530] "GET /x HTTP/1.0" 404 -"#;
        let rec = parse_line(line, 1).unwrap();
        assert_eq!(rec.status, 404);
        assert_eq!(rec.bytes, None);
    }

    #[test]
    fn parses_combined_trailer() {
        let line = r#"10.0.0.1 - alice [01/Jan/2020:00:00:00 +0000] "POST /api HTTP/1.1" 201 7 "http://ref.example/" "Mozilla/4.0 (compatible; MSIE 6.0)""#;
        let rec = parse_line(line, 3).unwrap();
        assert_eq!(rec.authuser.as_deref(), Some("alice"));
        assert_eq!(rec.referrer.as_deref(), Some("http://ref.example/"));
        assert_eq!(
            rec.user_agent.as_deref(),
            Some("Mozilla/4.0 (compatible; MSIE 6.0)")
        );
        assert_eq!(rec.format, LogFormat::Combined);
    }

    #[test]
    fn dash_trailer_fields_are_absent_but_format_sticks() {
        let line = r#"10.0.0.1 - - [01/Jan/2020:00:00:00 +0000] "GET / HTTP/1.1" 200 1 "-" "-""#;
        let rec = parse_line(line, 1).unwrap();
        assert_eq!(rec.referrer, None);
        assert_eq!(rec.user_agent, None);
        assert_eq!(rec.format, LogFormat::Combined);
        assert_eq!(rec.to_log_line(), line);
    }

    #[test]
    fn garbage_line_is_malformed() {
        let err = parse_line("garbage line", 7).unwrap_err();
        assert_eq!(
            err,
            ParseError::MalformedLine {
                line: 7,
                reason: MalformedReason::MissingField("authuser")
            }
        );
        assert!(parse_line("complete and utter garbage here", 1).is_err());
    }

    #[test]
    fn malformed_variants() {
        let cases = [
            ("", MalformedReason::Blank),
            ("   ", MalformedReason::Blank),
            ("1.2.3.4 - -", MalformedReason::MissingTimestampBracket),
            (
                "1.2.3.4 - - [nonsense] \"GET / HTTP/1.1\" 200 1",
                MalformedReason::Timestamp,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] GET / 200 1",
                MalformedReason::MissingRequestQuote,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"\" 200 1",
                MalformedReason::Request,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET index.html HTTP/1.1\" 200 1",
                MalformedReason::RequestTarget,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" abc 1",
                MalformedReason::Status,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 999 1",
                MalformedReason::StatusRange,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 200 12x",
                MalformedReason::Bytes,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 200 1 \"ref\"",
                MalformedReason::Trailer,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 200 1 trailing",
                MalformedReason::Trailer,
            ),
            (
                "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 200",
                MalformedReason::MissingField("bytes"),
            ),
        ];
        for (line, reason) in cases {
            let err = parse_line(line, 1).unwrap_err();
            assert_eq!(err.reason(), reason, "line: {line:?}");
        }
    }

    #[test]
    fn asterisk_and_absolute_targets_accepted() {
        let line = r#"1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] "OPTIONS * HTTP/1.1" 200 0"#;
        assert_eq!(parse_line(line, 1).unwrap().url, "*");
        let line =
            r#"1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] "GET http://example.com/a HTTP/1.1" 200 0"#;
        assert_eq!(parse_line(line, 1).unwrap().url, "http://example.com/a");
    }

    #[test]
    fn parse_log_counts_and_orders() {
        let input = "\
1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET /a HTTP/1.1\" 200 1\n\
not a log line\n\
\n\
1.2.3.4 - - [27/Nov/2008:10:00:02 +0530] \"GET /b HTTP/1.1\" 200 2\n";
        let (records, stats) = parse_log(input.as_bytes()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].line_number, 1);
        assert_eq!(records[1].line_number, 4);
        assert_eq!(stats.total_lines, 4);
        assert_eq!(stats.parsed, 2);
        assert_eq!(stats.skipped, 2);
        assert_eq!(stats.skip_reasons.get("blank"), Some(&1));
        assert_eq!(stats.parsed + stats.skipped, stats.total_lines);
    }

    #[test]
    fn parse_log_empty_stream() {
        let (records, stats) = parse_log(io::empty()).unwrap();
        assert!(records.is_empty());
        assert_eq!(stats, ParseStats::default());
    }

    #[test]
    fn stats_merge_adds_reason_maps() {
        let (_, mut a) = parse_log("junk\n".as_bytes()).unwrap();
        let (_, b) = parse_log("junk\n\n".as_bytes()).unwrap();
        a.merge(&b);
        assert_eq!(a.total_lines, 3);
        assert_eq!(a.skipped, 3);
        assert_eq!(a.skip_reasons.get("blank"), Some(&1));
    }

    #[test]
    fn extract_path_examples() {
        assert_eq!(extract_path("/atten_files/arrow.gif"), "/atten_files/");
        assert_eq!(extract_path("/"), "/");
        assert_eq!(extract_path("/combined.pdf?v=2"), "/");
        assert_eq!(extract_path("/a/b/c.html?x=/y/"), "/a/b/");
        assert_eq!(extract_path("*"), "/");
    }

    /// Independent check for the query-aware directory split: scan
    /// characters, remembering the last slash seen before the first `?`.
    fn naive_directory(url: &str) -> String {
        let mut last_slash = None;
        for (idx, ch) in url.char_indices() {
            if ch == '?' {
                break;
            }
            if ch == '/' {
                last_slash = Some(idx);
            }
        }
        match last_slash {
            Some(idx) => url[..=idx].to_string(),
            None => "/".to_string(),
        }
    }

    #[test]
    fn extract_path_matches_naive_scan() {
        for url in [
            "/combined.pdf?v=2",
            "/a/b/c?d=/e/",
            "/x",
            "/x/",
            "/atten_files/menu.js",
            "*",
            "http://h/a/b.gif?q=1",
        ] {
            assert_eq!(extract_path(url), naive_directory(url), "url: {url}");
        }
    }

    #[test]
    fn round_trips_to_log_line() {
        let lines = [
            r#"1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] "GET /index.html HTTP/1.1" 200 512"#,
            r#"1.2.3.4 - - [27/Nov/2008:10:00:01 +0530] "GET /x HTTP/1.0" 404 -"#,
            r#"10.0.0.1 ident bob [01/Jan/2020:12:34:56 -0700] "HEAD /a" 304 3"#,
            r#"host.example - - [29/Feb/2020:23:59:59 +0000] "GET /d/ HTTP/1.1" 206 0 "-" "curl/7.19.7""#,
        ];
        for line in lines {
            let rec = parse_line(line, 1).unwrap();
            assert_eq!(rec.to_log_line(), line);
        }
    }

    #[test]
    fn extra_spaces_normalize_on_round_trip() {
        let sloppy = "1.2.3.4  -   - [27/Nov/2008:10:00:00 +0530]  \"GET / HTTP/1.1\"  200  7";
        let canonical = r#"1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] "GET / HTTP/1.1" 200 7"#;
        let rec = parse_line(sloppy, 1).unwrap();
        assert_eq!(rec.to_log_line(), canonical);
    }

    #[test]
    fn open_log_reads_plain_and_gzip() {
        use std::io::Write;

        let dir = tempfile::tempdir().unwrap();
        let line = "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET /a HTTP/1.1\" 200 1\n";

        let plain = dir.path().join("access.log");
        std::fs::write(&plain, line).unwrap();

        let gz = dir.path().join("access.log.gz");
        let mut encoder =
            flate2::write::GzEncoder::new(File::create(&gz).unwrap(), flate2::Compression::fast());
        encoder.write_all(line.as_bytes()).unwrap();
        encoder.finish().unwrap();

        let (plain_records, plain_stats) = parse_log(open_log(&plain).unwrap()).unwrap();
        let (gz_records, gz_stats) = parse_log(open_log(&gz).unwrap()).unwrap();
        assert_eq!(plain_records, gz_records);
        assert_eq!(plain_stats, gz_stats);
        assert_eq!(plain_records.len(), 1);
    }
}
