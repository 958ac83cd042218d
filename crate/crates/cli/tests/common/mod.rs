//! Fixture generators shared by the CLI integration and acceptance
//! tests. Everything here is deterministic: either fully computed or
//! seeded.

#![allow(dead_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// One generated well-formed line together with the fields it encodes;
/// the parser must recover exactly these.
#[derive(Debug, Clone)]
pub struct SyntheticLine {
    pub line: String,
    pub ip: String,
    pub identity: Option<String>,
    pub authuser: Option<String>,
    pub timestamp: String,
    pub method: &'static str,
    pub url: String,
    pub protocol: Option<&'static str>,
    pub status: u16,
    pub bytes: Option<u64>,
    /// `None` for plain CLF lines, otherwise the referrer/user-agent
    /// pair (either may be absent, logged as `-`).
    pub trailer: Option<(Option<String>, Option<String>)>,
}

const METHODS: [&str; 5] = ["GET", "POST", "HEAD", "PUT", "OPTIONS"];
const MONTHS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

fn random_url(rng: &mut StdRng) -> String {
    let dirs = ["", "atten_files/", "index_files/", "deep/nested/"];
    let names = ["index", "menu", "best", "arrow", "combined", "top_br"];
    let exts = ["html", "gif", "jpg", "pdf", "js", "css"];
    let mut url = String::from("/");
    url.push_str(dirs[rng.random_range(0..dirs.len())]);
    if rng.random_bool(0.85) {
        let _ = write!(
            url,
            "{}.{}",
            names[rng.random_range(0..names.len())],
            exts[rng.random_range(0..exts.len())]
        );
    }
    if rng.random_bool(0.2) {
        let _ = write!(url, "?v={}", rng.random_range(0..100));
    }
    url
}

/// Deterministic corpus of well-formed CLF and Combined lines.
pub fn synthetic_lines(seed: u64, count: usize) -> Vec<SyntheticLine> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ip = format!(
                "{}.{}.{}.{}",
                rng.random_range(1..224u8),
                rng.random_range(0..=255u8),
                rng.random_range(0..=255u8),
                rng.random_range(1..=254u8)
            );
            let identity = rng.random_bool(0.1).then(|| format!("id{}", rng.random_range(0..9)));
            let authuser = rng.random_bool(0.1).then(|| format!("user{}", rng.random_range(0..9)));
            let timestamp = format!(
                "{:02}/{}/{}:{:02}:{:02}:{:02} +0530",
                rng.random_range(1..=28),
                MONTHS[rng.random_range(0..12)],
                rng.random_range(2005..=2012),
                rng.random_range(0..24),
                rng.random_range(0..60),
                rng.random_range(0..60),
            );
            let method = METHODS[rng.random_range(0..METHODS.len())];
            let url = random_url(&mut rng);
            let protocol = rng
                .random_bool(0.95)
                .then(|| if rng.random_bool(0.8) { "HTTP/1.1" } else { "HTTP/1.0" });
            let status = *[200u16, 200, 200, 206, 301, 304, 403, 404, 404, 500]
                .get(rng.random_range(0..10))
                .unwrap();
            let bytes = rng.random_bool(0.9).then(|| rng.random_range(0..5_000_000u64));
            let trailer = rng.random_bool(0.7).then(|| {
                let referrer = rng
                    .random_bool(0.6)
                    .then(|| format!("http://ref{}.example.com/page", rng.random_range(0..5)));
                let user_agent = rng.random_bool(0.9).then(|| {
                    [
                        "Mozilla/4.0 (compatible; MSIE 6.0; Windows NT 5.1)",
                        "Mozilla/5.0 (X11; Linux x86_64) Gecko/20100101",
                        "curl/7.19.7 (x86_64-pc-linux-gnu)",
                        "Wget/1.11.4",
                    ][rng.random_range(0..4)]
                        .to_string()
                });
                (referrer, user_agent)
            });

            let mut line = format!(
                "{} {} {} [{}] \"{}",
                ip,
                identity.as_deref().unwrap_or("-"),
                authuser.as_deref().unwrap_or("-"),
                timestamp,
                method,
            );
            let _ = write!(line, " {url}");
            if let Some(protocol) = protocol {
                let _ = write!(line, " {protocol}");
            }
            let _ = write!(line, "\" {status} ");
            match bytes {
                Some(b) => {
                    let _ = write!(line, "{b}");
                }
                None => line.push('-'),
            }
            if let Some((referrer, user_agent)) = &trailer {
                let _ = write!(
                    line,
                    " \"{}\" \"{}\"",
                    referrer.as_deref().unwrap_or("-"),
                    user_agent.as_deref().unwrap_or("-")
                );
            }

            SyntheticLine {
                line,
                ip,
                identity,
                authuser,
                timestamp,
                method,
                url,
                protocol,
                status,
                bytes,
                trailer,
            }
        })
        .collect()
}

/// Fifty malformed lines: five copies of ten distinct defects.
pub fn malformed_corpus() -> Vec<String> {
    let templates = [
        "".to_string(),
        "   ".to_string(),
        "complete garbage".to_string(),
        "1.2.3.4 - - [not a date] \"GET / HTTP/1.1\" 200 1".to_string(),
        "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] GET / HTTP/1.1 200 1".to_string(),
        "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET no-slash HTTP/1.1\" 200 1".to_string(),
        "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" twohundred 1".to_string(),
        "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 777 1".to_string(),
        "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 200 1x2".to_string(),
        "1.2.3.4 - - [27/Nov/2008:10:00:00 +0530] \"GET / HTTP/1.1\" 200 1 \"lonely".to_string(),
    ];
    let mut lines = Vec::with_capacity(50);
    for _ in 0..5 {
        lines.extend(templates.iter().cloned());
    }
    lines
}

/// Builds the two-day fixture whose aggregate statistics equal the
/// published summary exactly: 4776 hits = 2717 successful + 2059
/// incomplete, day totals 2504 = 1315 + 1189 and 2272 = 1402 + 870,
/// class mix 1029/1298/59/331, browser families 2904 + 1791 with an
/// 81-record remainder, and 1516 not-found errors.
pub fn summary_fixture_lines() -> Vec<String> {
    struct DayPlan {
        date: &'static str,
        pages: u64,
        images: u64,
        downloads: u64,
        other: u64,
        not_found: u64,
        not_modified: u64,
    }
    let plans = [
        DayPlan {
            date: "27/Nov/2008",
            pages: 500,
            images: 630,
            downloads: 30,
            other: 155,
            not_found: 800,
            not_modified: 389,
        },
        DayPlan {
            date: "28/Nov/2008",
            pages: 529,
            images: 668,
            downloads: 29,
            other: 176,
            not_found: 716,
            not_modified: 154,
        },
    ];

    let mut entries: Vec<(&'static str, &'static str, u16)> = Vec::new();
    for plan in &plans {
        for _ in 0..plan.pages {
            entries.push((plan.date, "/atten.html", 200));
        }
        for _ in 0..plan.images {
            entries.push((plan.date, "/atten_files/arrow.gif", 200));
        }
        for _ in 0..plan.downloads {
            entries.push((plan.date, "/combined.pdf", 200));
        }
        for _ in 0..plan.other {
            entries.push((plan.date, "/atten_files/menu.js", 200));
        }
        for _ in 0..plan.not_found {
            entries.push((plan.date, "/vignants.ac.htm", 404));
        }
        for _ in 0..plan.not_modified {
            entries.push((plan.date, "/index_files/best.jpg", 304));
        }
    }
    assert_eq!(entries.len(), 4776);

    entries
        .iter()
        .enumerate()
        .map(|(i, (date, url, status))| {
            let ip = format!("119.235.{}.{}", 49 + i % 4, 1 + i % 200);
            let hour = i / 3600;
            let minute = (i / 60) % 60;
            let second = i % 60;
            let timestamp = format!("{date}:{hour:02}:{minute:02}:{second:02} +0530");
            let user_agent = if i < 2904 {
                Some("Mozilla/4.0 (compatible; MSIE 6.0)")
            } else if i < 2904 + 1791 {
                Some("Mozilla/5.0 (X11; Linux)")
            } else {
                None
            };
            match user_agent {
                Some(ua) => format!(
                    "{ip} - - [{timestamp}] \"GET {url} HTTP/1.1\" {status} 512 \"-\" \"{ua}\""
                ),
                None => format!("{ip} - - [{timestamp}] \"GET {url} HTTP/1.1\" {status} 512"),
            }
        })
        .collect()
}

/// Random log shaped for mining: a handful of ips and urls, so tuples
/// co-occur often enough to survive realistic thresholds.
pub fn random_log_lines(seed: u64, count: usize) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let urls = [
        "/",
        "/atten.html",
        "/atten_files/arrow.gif",
        "/atten_files/menu.js",
        "/index_files/best.jpg",
        "/index_files/menu.js",
        "/combined.pdf",
        "/deep/nested/list.html",
    ];
    (0..count)
        .map(|i| {
            let ip = format!("10.0.0.{}", rng.random_range(1..=8));
            let url = urls[rng.random_range(0..urls.len())];
            let status = if rng.random_bool(0.7) { 200 } else { 404 };
            let day = 27 + (i % 2);
            format!(
                "{ip} - - [{day}/Nov/2008:10:{:02}:{:02} +0530] \"GET {url} HTTP/1.1\" {status} 100",
                (i / 60) % 60,
                i % 60
            )
        })
        .collect()
}

/// Large but mining-tractable log: each of a thousand ips browses a
/// fixed five-url menu inside its cluster, so baskets stay small and
/// frequent itemsets stay local.
pub fn large_log_lines(count: usize) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(9);
    let clusters: Vec<Vec<String>> = (0..5)
        .map(|c| {
            (0..30)
                .map(|u| format!("/cluster{c}/page{u:02}.html"))
                .collect()
        })
        .collect();
    let menus: Vec<Vec<&String>> = (0..1000usize)
        .map(|ip_index| {
            let cluster = &clusters[ip_index % 5];
            let mut menu_rng = StdRng::seed_from_u64(1000 + ip_index as u64);
            let mut picked = std::collections::BTreeSet::new();
            while picked.len() < 5 {
                picked.insert(menu_rng.random_range(0..cluster.len()));
            }
            picked.into_iter().map(|u| &cluster[u]).collect()
        })
        .collect();
    (0..count)
        .map(|i| {
            let ip_index = rng.random_range(0..1000usize);
            let ip = format!("172.16.{}.{}", ip_index / 250, ip_index % 250 + 1);
            let menu = &menus[ip_index];
            let url = menu[rng.random_range(0..menu.len())];
            let status = if rng.random_bool(0.8) { 200 } else { 404 };
            let day = 27 + (i % 2);
            let ua = ["Mozilla/4.0 (compatible)", "Mozilla/5.0 (X11)", "curl/7.19.7"]
                [rng.random_range(0..3)];
            format!(
                "{ip} - - [{day}/Nov/2008:{:02}:{:02}:{:02} +0530] \"GET {url} HTTP/1.1\" {status} 1024 \"-\" \"{ua}\"",
                (i / 3600) % 24,
                (i / 60) % 60,
                i % 60
            )
        })
        .collect()
}

pub fn write_log(dir: &Path, name: &str, lines: &[String]) -> PathBuf {
    let path = dir.join(name);
    let mut text = lines.join("\n");
    text.push('\n');
    fs::write(&path, text).expect("write fixture log");
    path
}

pub fn logminer_exe() -> &'static str {
    env!("CARGO_BIN_EXE_logminer")
}
