//! RFC 4180 CSV rendering. Each table is introduced by a `# TITLE`
//! comment line; within a table every row has the same cell count.

use crate::mining::{CoRelationRow, CoRelationShape};
use crate::scalar::{format_ratio, Scalar};
use crate::stats::{AccessRow, GeneralStats};

use super::text::{corelation_cells, corelation_headers};
use super::{items_braced, CountRow, PerDaySection, ReportDocument, RuleRow};

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn push_record(out: &mut String, cells: &[&str]) {
    let escaped: Vec<String> = cells.iter().map(|c| escape(c)).collect();
    out.push_str(&escaped.join(","));
    out.push_str("\r\n");
}

fn push_title(out: &mut String, title: &str) {
    out.push_str("# ");
    out.push_str(title);
    out.push_str("\r\n");
}

pub(super) fn render_general(
    stats: &GeneralStats,
    per_day: &PerDaySection,
    browsers: &[CountRow],
    errors: &[CountRow],
) -> String {
    let mut out = String::new();

    push_title(&mut out, "GENERAL STATISTICS");
    push_record(&mut out, &["LABEL", "VALUE"]);
    for (label, value) in [
        ("TOTALNO OF HITS", stats.total_hits),
        ("TOTALNO OF VISITORS", stats.visitors),
        ("TOTALNO OF SUCCESSFUL HITS", stats.successful_hits),
        ("TOTALNO OF INCOMPLETE HITS", stats.incomplete_hits),
        ("PAGE VIEWS", stats.page_views),
        ("IMAGE VIEWS", stats.image_views),
        ("FILE DOWNLOADS", stats.file_downloads),
        ("OTHER ASSETS", stats.other_assets),
        ("AVERAGE HITS PER DAY", per_day.average_hits_per_day),
    ] {
        push_record(&mut out, &[label, &value.to_string()]);
    }

    push_title(&mut out, "PER DAY ANALYSIS");
    push_record(&mut out, &["DAY", "HITS", "SUCCESSFUL", "INCOMPLETE"]);
    for row in &per_day.rows {
        push_record(
            &mut out,
            &[
                &row.date.format("%d/%b/%Y").to_string(),
                &row.hits.to_string(),
                &row.successful.to_string(),
                &row.incomplete.to_string(),
            ],
        );
    }

    push_title(&mut out, "POPULAR BROWSERS");
    push_record(&mut out, &["BROWSER", "COUNT"]);
    for row in browsers {
        push_record(&mut out, &[&row.key, &row.count.to_string()]);
    }

    push_title(&mut out, "ERROR REPORTS FOR PAGE ACCESS");
    push_record(&mut out, &["ERROR", "COUNT"]);
    for row in errors {
        push_record(&mut out, &[&row.key, &row.count.to_string()]);
    }

    out
}

pub(super) fn render_access_table<S: Scalar>(
    rows: &[AccessRow<S>],
    title: &str,
    key_header: &str,
) -> String {
    let mut out = String::new();
    push_title(&mut out, title);
    push_record(&mut out, &[key_header, "HITS", "INCOMPLETE HITS", "% OF TOTAL"]);
    for row in rows {
        push_record(
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

pub(super) fn render_corelation_table<S: Scalar>(
    rows: &[CoRelationRow<S>],
    shape: CoRelationShape,
    title: &str,
) -> String {
    let mut out = String::new();
    push_title(&mut out, title);
    push_record(&mut out, &corelation_headers(shape));
    for row in rows {
        let cells = corelation_cells(row, shape);
        let refs: Vec<&str> = cells.iter().map(String::as_str).collect();
        push_record(&mut out, &refs);
    }
    out
}

pub(super) fn render_rules(rows: &[RuleRow]) -> String {
    let mut out = String::new();
    push_title(&mut out, "ASSOCIATION RULES");
    push_record(
        &mut out,
        &["ANTECEDENT", "CONSEQUENT", "SUPPORT", "CONFIDENCE"],
    );
    for rule in rows {
        push_record(
            &mut out,
            &[
                &items_braced(&rule.antecedent),
                &items_braced(&rule.consequent),
                &rule.support.to_string(),
                &format_ratio(rule.support, rule.antecedent_support),
            ],
        );
    }
    out
}

fn render_metadata(document: &ReportDocument) -> String {
    let meta = &document.metadata;
    let mut out = String::new();
    push_title(&mut out, "ANALYSIS METADATA");
    push_record(&mut out, &["LABEL", "VALUE"]);
    push_record(&mut out, &["INPUTS", &meta.inputs.join(", ")]);
    push_record(&mut out, &["FORMAT", &meta.format]);
    push_record(&mut out, &["SECTIONS", &meta.sections.join(", ")]);
    push_record(&mut out, &["MIN SUPPORT", &meta.min_support.to_string()]);
    push_record(&mut out, &["MIN HITS", &meta.min_hits.to_string()]);
    push_record(&mut out, &["MIN CONFIDENCE", &meta.min_confidence.to_string()]);
    if let Some(top_n) = meta.top_n {
        push_record(&mut out, &["TOP N", &top_n.to_string()]);
    }
    push_record(&mut out, &["TOOL VERSION", &meta.tool_version]);
    push_record(&mut out, &["GENERATED AT", &meta.generated_at]);
    push_record(&mut out, &["TOTAL LINES", &meta.parse.total_lines.to_string()]);
    push_record(&mut out, &["PARSED LINES", &meta.parse.parsed.to_string()]);
    push_record(&mut out, &["SKIPPED LINES", &meta.parse.skipped.to_string()]);
    for (reason, count) in &meta.parse.skip_reasons {
        push_record(&mut out, &[&format!("SKIPPED ({reason})"), &count.to_string()]);
    }
    out
}

pub(super) fn render_document(document: &ReportDocument) -> String {
    let mut out = String::new();

    if let (Some(general), Some(per_day)) = (&document.general, &document.per_day) {
        out.push_str(&render_general(
            general,
            per_day,
            document.browsers.as_deref().unwrap_or(&[]),
            document.errors.as_deref().unwrap_or(&[]),
        ));
    }
    if let Some(rows) = &document.access_ip {
        out.push_str(&render_access_table(rows, "POPULAR VISITS", "IPADDRESS"));
    }
    if let Some(rows) = &document.access_url {
        out.push_str(&render_access_table(rows, "POPULAR URLS", "URL"));
    }
    if let Some(tables) = &document.corelations {
        out.push_str(&render_corelation_table(
            &tables.ip_url,
            CoRelationShape::IpUrl,
            "POPULAR URL",
        ));
        out.push_str(&render_corelation_table(
            &tables.url_path,
            CoRelationShape::UrlPath,
            "CO-RELATION URL->PATH",
        ));
        out.push_str(&render_corelation_table(
            &tables.ip_path,
            CoRelationShape::IpPath,
            "CO-RELATION IPADD->PATH",
        ));
        out.push_str(&render_corelation_table(
            &tables.ip_url_path,
            CoRelationShape::IpUrlPath,
            "CO-RELATION IPADD->URL->PATH",
        ));
    }
    if let Some(rules) = &document.rules {
        out.push_str(&render_rules(rules));
    }
    out.push_str(&render_metadata(document));

    out
}
