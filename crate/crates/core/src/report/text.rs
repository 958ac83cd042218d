//! Tab-separated text rendering in the classic report layout.

use crate::mining::{CoRelationRow, CoRelationShape};
use crate::scalar::{format_ratio, Scalar};
use crate::stats::{AccessRow, GeneralStats};

use super::{items_braced, CountRow, PerDaySection, ReportDocument, RuleRow};

const DATE_FORMAT: &str = "%d/%b/%Y";

fn push_row(out: &mut String, cells: &[&str]) {
    out.push_str(&cells.join("\t"));
    out.push('\n');
}

pub(super) fn render_general(
    stats: &GeneralStats,
    per_day: &PerDaySection,
    browsers: &[CountRow],
    errors: &[CountRow],
) -> String {
    let mut out = String::new();

    out.push_str("GENERAL STATISTICS\n");
    for (label, value) in [
        ("TOTALNO OF HITS", stats.total_hits),
        ("TOTALNO OF VISITORS", stats.visitors),
        ("TOTALNO OF SUCCESSFUL HITS", stats.successful_hits),
        ("TOTALNO OF INCOMPLETE HITS", stats.incomplete_hits),
        ("PAGE VIEWS", stats.page_views),
        ("IMAGE VIEWS", stats.image_views),
        ("FILE DOWNLOADS", stats.file_downloads),
        ("OTHER ASSETS", stats.other_assets),
    ] {
        push_row(&mut out, &[label, &value.to_string()]);
    }

    out.push_str("\nPER DAY ANALYSIS\n");
    push_row(&mut out, &["DAY", "HITS", "SUCCESSFUL", "INCOMPLETE"]);
    for row in &per_day.rows {
        push_row(
            &mut out,
            &[
                &row.date.format(DATE_FORMAT).to_string(),
                &row.hits.to_string(),
                &row.successful.to_string(),
                &row.incomplete.to_string(),
            ],
        );
    }
    push_row(
        &mut out,
        &[
            "AVERAGE HITS PER DAY",
            &per_day.average_hits_per_day.to_string(),
        ],
    );

    out.push_str("\nPOPULAR BROWSERS\n");
    push_row(&mut out, &["BROWSER", "COUNT"]);
    for row in browsers {
        push_row(&mut out, &[&row.key, &row.count.to_string()]);
    }

    out.push_str("\nERROR REPORTS FOR PAGE ACCESS\n");
    for row in errors {
        push_row(&mut out, &[&row.key, &row.count.to_string()]);
    }

    out
}

pub(super) fn render_access_table<S: Scalar>(
    rows: &[AccessRow<S>],
    title: &str,
    key_header: &str,
) -> String {
    let mut out = String::new();
    out.push_str(title);
    out.push('\n');
    push_row(&mut out, &[key_header, "HITS", "INCOMPLETE HITS", "% OF TOTAL"]);
    for row in rows {
        push_row(
            &mut out,
            &[
                &row.key,
                &row.hits.to_string(),
                &row.incomplete.to_string(),
                &format_ratio(row.hits - row.incomplete, row.hits),
            ],
        );
    }
    out
}

pub(super) fn corelation_headers(shape: CoRelationShape) -> Vec<&'static str> {
    let mut headers = Vec::new();
    if shape.has_ip() {
        headers.push("IPADDRESS");
    }
    if shape.has_url() {
        headers.push("URL");
    }
    if shape.has_path() {
        headers.push("PATH");
    }
    headers.extend(["HITS", "INCOMPLETE", "% OF TOTAL"]);
    headers
}

pub(super) fn corelation_cells<S: Scalar>(
    row: &CoRelationRow<S>,
    shape: CoRelationShape,
) -> Vec<String> {
    let mut cells = Vec::new();
    if shape.has_ip() {
        cells.push(row.ip.clone().unwrap_or_default());
    }
    if shape.has_url() {
        cells.push(row.url.clone().unwrap_or_default());
    }
    if shape.has_path() {
        cells.push(row.path.clone().unwrap_or_default());
    }
    cells.push(row.hits.to_string());
    cells.push(row.incomplete.to_string());
    cells.push(format_ratio(row.hits - row.incomplete, row.hits));
    cells
}

pub(super) fn render_corelation_table<S: Scalar>(
    rows: &[CoRelationRow<S>],
    shape: CoRelationShape,
    title: &str,
) -> String {
    let mut out = String::new();
    out.push_str(title);
    out.push('\n');
    let headers = corelation_headers(shape);
    push_row(&mut out, &headers);
    for row in rows {
        let cells = corelation_cells(row, shape);
        let refs: Vec<&str> = cells.iter().map(String::as_str).collect();
        push_row(&mut out, &refs);
    }
    out
}

pub(super) fn render_rules(rows: &[RuleRow]) -> String {
    let mut out = String::from("ASSOCIATION RULES\n");
    for rule in rows {
        out.push_str(&format!(
            "{} => {}  support={} confidence={}\n",
            items_braced(&rule.antecedent),
            items_braced(&rule.consequent),
            rule.support,
            format_ratio(rule.support, rule.antecedent_support),
        ));
    }
    out
}

fn render_metadata(document: &ReportDocument) -> String {
    let meta = &document.metadata;
    let mut out = String::from("ANALYSIS METADATA\n");
    push_row(&mut out, &["INPUTS", &meta.inputs.join(", ")]);
    push_row(&mut out, &["FORMAT", &meta.format]);
    push_row(&mut out, &["SECTIONS", &meta.sections.join(", ")]);
    push_row(&mut out, &["MIN SUPPORT", &meta.min_support.to_string()]);
    push_row(&mut out, &["MIN HITS", &meta.min_hits.to_string()]);
    push_row(&mut out, &["MIN CONFIDENCE", &meta.min_confidence.to_string()]);
    if let Some(top_n) = meta.top_n {
        push_row(&mut out, &["TOP N", &top_n.to_string()]);
    }
    push_row(&mut out, &["TOOL VERSION", &meta.tool_version]);
    push_row(&mut out, &["GENERATED AT", &meta.generated_at]);
    push_row(&mut out, &["TOTAL LINES", &meta.parse.total_lines.to_string()]);
    push_row(&mut out, &["PARSED LINES", &meta.parse.parsed.to_string()]);
    push_row(&mut out, &["SKIPPED LINES", &meta.parse.skipped.to_string()]);
    for (reason, count) in &meta.parse.skip_reasons {
        push_row(&mut out, &[&format!("SKIPPED ({reason})"), &count.to_string()]);
    }
    out
}

pub(super) fn render_document(document: &ReportDocument) -> String {
    let mut sections: Vec<String> = Vec::new();

    if let (Some(general), Some(per_day)) = (&document.general, &document.per_day) {
        sections.push(render_general(
            general,
            per_day,
            document.browsers.as_deref().unwrap_or(&[]),
            document.errors.as_deref().unwrap_or(&[]),
        ));
    }
    if let Some(rows) = &document.access_ip {
        sections.push(render_access_table(rows, "POPULAR VISITS", "IPADDRESS"));
    }
    if let Some(rows) = &document.access_url {
        sections.push(render_access_table(rows, "POPULAR URLS", "URL"));
    }
    if let Some(tables) = &document.corelations {
        sections.push(render_corelation_table(
            &tables.ip_url,
            CoRelationShape::IpUrl,
            "POPULAR URL",
        ));
        sections.push(render_corelation_table(
            &tables.url_path,
            CoRelationShape::UrlPath,
            "CO-RELATION URL->PATH",
        ));
        sections.push(render_corelation_table(
            &tables.ip_path,
            CoRelationShape::IpPath,
            "CO-RELATION IPADD->PATH",
        ));
        sections.push(render_corelation_table(
            &tables.ip_url_path,
            CoRelationShape::IpUrlPath,
            "CO-RELATION IPADD->URL->PATH",
        ));
    }
    if let Some(rules) = &document.rules {
        sections.push(render_rules(rules));
    }
    sections.push(render_metadata(document));

    sections.join("\n")
}
