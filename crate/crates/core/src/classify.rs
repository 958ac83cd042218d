//! Categorical layer over parsed records: request outcome, resource
//! class, status label and browser family. Everything downstream counts
//! in these terms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::DomainError;
use crate::parser::LogRecord;

/// Whether a hit completed. 2xx is successful; redirects, client and
/// server errors all count as incomplete, which is what makes the
/// successful/incomplete partition exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Successful,
    Incomplete,
}

/// Resource class of a successful request, decided by url extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RequestClass {
    PageView,
    ImageView,
    FileDownload,
    OtherAsset,
}

/// Extension sets driving [`classify_resource`]. The three sets must be
/// pairwise disjoint. Urls ending in `/` are always page views.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    page_extensions: BTreeSet<String>,
    image_extensions: BTreeSet<String>,
    download_extensions: BTreeSet<String>,
}

fn to_set(extensions: &[&str]) -> BTreeSet<String> {
    extensions.iter().map(|e| e.to_string()).collect()
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            page_extensions: to_set(&["html", "htm", "php", "asp", "jsp"]),
            image_extensions: to_set(&["gif", "jpg", "jpeg", "png", "bmp", "ico"]),
            download_extensions: to_set(&["pdf", "zip", "doc", "ppt", "xls", "rar", "exe"]),
        }
    }
}

impl ClassifierConfig {
    /// Builds a config from explicit extension lists, rejecting overlap
    /// between the sets. Extensions are matched lowercase without dots.
    pub fn new<S: AsRef<str>>(
        page: &[S],
        image: &[S],
        download: &[S],
    ) -> Result<Self, DomainError> {
        let normalize = |list: &[S]| -> BTreeSet<String> {
            list.iter()
                .map(|e| e.as_ref().trim_start_matches('.').to_ascii_lowercase())
                .filter(|e| !e.is_empty())
                .collect()
        };
        let config = ClassifierConfig {
            page_extensions: normalize(page),
            image_extensions: normalize(image),
            download_extensions: normalize(download),
        };
        config.check_disjoint()?;
        Ok(config)
    }

    fn check_disjoint(&self) -> Result<(), DomainError> {
        let sets = [
            ("page", &self.page_extensions),
            ("image", &self.image_extensions),
            ("download", &self.download_extensions),
        ];
        for (i, (first, a)) in sets.iter().enumerate() {
            for (second, b) in &sets[i + 1..] {
                if let Some(shared) = a.intersection(b).next() {
                    return Err(DomainError::OverlappingExtensions {
                        extension: shared.clone(),
                        first,
                        second,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn page_extensions(&self) -> &BTreeSet<String> {
        &self.page_extensions
    }

    pub fn image_extensions(&self) -> &BTreeSet<String> {
        &self.image_extensions
    }

    pub fn download_extensions(&self) -> &BTreeSet<String> {
        &self.download_extensions
    }
}

/// Maps a status code onto an [`Outcome`]. Total over valid codes:
/// successful iff 2xx.
pub fn classify_status(status: u16) -> Result<Outcome, DomainError> {
    if !(100..=599).contains(&status) {
        return Err(DomainError::StatusOutOfRange(status));
    }
    if (200..=299).contains(&status) {
        Ok(Outcome::Successful)
    } else {
        Ok(Outcome::Incomplete)
    }
}

/// Report label for a status code. 404 keeps its traditional error-report
/// wording; everything else uses the standard reason phrase, with a
/// numeric fallback for codes that have none.
pub fn status_label(status: u16) -> String {
    let phrase = match status {
        100 => "CONTINUE",
        101 => "SWITCHING PROTOCOLS",
        200 => "OK",
        201 => "CREATED",
        202 => "ACCEPTED",
        203 => "NON-AUTHORITATIVE INFORMATION",
        204 => "NO CONTENT",
        205 => "RESET CONTENT",
        206 => "PARTIAL CONTENT",
        300 => "MULTIPLE CHOICES",
        301 => "MOVED PERMANENTLY",
        302 => "FOUND",
        303 => "SEE OTHER",
        304 => "NOT MODIFIED",
        307 => "TEMPORARY REDIRECT",
        308 => "PERMANENT REDIRECT",
        400 => "BAD REQUEST",
        401 => "UNAUTHORIZED",
        403 => "FORBIDDEN",
        404 => "REQUEST NOT FOUND",
        405 => "METHOD NOT ALLOWED",
        406 => "NOT ACCEPTABLE",
        408 => "REQUEST TIMEOUT",
        409 => "CONFLICT",
        410 => "GONE",
        411 => "LENGTH REQUIRED",
        412 => "PRECONDITION FAILED",
        413 => "PAYLOAD TOO LARGE",
        414 => "URI TOO LONG",
        415 => "UNSUPPORTED MEDIA TYPE",
        416 => "RANGE NOT SATISFIABLE",
        429 => "TOO MANY REQUESTS",
        500 => "INTERNAL SERVER ERROR",
        501 => "NOT IMPLEMENTED",
        502 => "BAD GATEWAY",
        503 => "SERVICE UNAVAILABLE",
        504 => "GATEWAY TIMEOUT",
        505 => "HTTP VERSION NOT SUPPORTED",
        other => return format!("STATUS {other}"),
    };
    phrase.to_string()
}

/// Classifies a request target by extension. The query string is ignored;
/// the extension is whatever follows the last dot of the final path
/// segment, lowercased.
pub fn classify_resource(url: &str, config: &ClassifierConfig) -> RequestClass {
    let without_query = match url.find('?') {
        Some(idx) => &url[..idx],
        None => url,
    };
    if without_query.ends_with('/') {
        return RequestClass::PageView;
    }
    let segment = match without_query.rfind('/') {
        Some(idx) => &without_query[idx + 1..],
        None => without_query,
    };
    let extension = match segment.rfind('.') {
        Some(idx) if idx + 1 < segment.len() => segment[idx + 1..].to_ascii_lowercase(),
        _ => return RequestClass::OtherAsset,
    };
    if config.page_extensions.contains(&extension) {
        RequestClass::PageView
    } else if config.image_extensions.contains(&extension) {
        RequestClass::ImageView
    } else if config.download_extensions.contains(&extension) {
        RequestClass::FileDownload
    } else {
        RequestClass::OtherAsset
    }
}

/// Browser family: the first whitespace-delimited token of the user
/// agent, version included. Missing or blank agents group as `unknown`.
pub fn browser_family(user_agent: Option<&str>) -> String {
    user_agent
        .and_then(|ua| ua.split_whitespace().next())
        .unwrap_or("unknown")
        .to_string()
}

impl LogRecord {
    /// Outcome of this record. Status range is validated at parse time,
    /// so this cannot fail on parser output.
    pub fn outcome(&self) -> Outcome {
        classify_status(self.status).expect("status range validated at parse time")
    }

    pub fn is_successful(&self) -> bool {
        self.outcome() == Outcome::Successful
    }

    pub fn resource_class(&self, config: &ClassifierConfig) -> RequestClass {
        classify_resource(&self.url, config)
    }

    pub fn browser_family(&self) -> String {
        browser_family(self.user_agent.as_deref())
    }
}
