use indexmap::IndexSet;
use serde::Serialize;

use crate::args::Format;
use crate::record::{format_sig, ErrorInfo, OutputRecord, CSV_DIGITS};

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Document<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
    records: &'a [OutputRecord],
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    error: &'a ErrorInfo,
}

pub fn render(records: &[OutputRecord], format: Format, quiet_meta: bool) -> String {
    match format {
        Format::Json => {
            let meta = (!quiet_meta).then_some(Meta {
                tool: "heston-geom",
                version: env!("CARGO_PKG_VERSION"),
            });
            let mut s = serde_json::to_string_pretty(&Document { meta, records }).expect("records serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(records),
    }
}

pub fn render_error(e: &ErrorInfo, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&ErrorDocument { error: e }).expect("error serializes");
            s.push('\n');
            s
        }
        Format::Csv => write_csv(&["error_kind", "message"], [vec![e.kind.clone(), e.message.clone()]]),
    }
}

/// One row per record. Columns are the union of input and output keys in
/// order of first appearance, then any diagnostics that some record carries.
fn render_csv(records: &[OutputRecord]) -> String {
    let mut keys: IndexSet<&str> = IndexSet::new();
    for r in records {
        keys.extend(r.inputs.keys().map(String::as_str));
    }
    for r in records {
        keys.extend(r.outputs.keys().map(String::as_str));
    }
    let diag = |pick: fn(&OutputRecord) -> Option<String>| -> Option<Vec<String>> {
        let col: Vec<Option<String>> = records.iter().map(pick).collect();
        col.iter().any(Option::is_some).then(|| col.into_iter().map(Option::unwrap_or_default).collect())
    };
    let diagnostics: Vec<(&str, Vec<String>)> = [
        ("branch", diag(|r| r.diagnostics.branch.clone())),
        ("method", diag(|r| r.diagnostics.method.clone())),
        ("iterations", diag(|r| r.diagnostics.iterations.map(|n| n.to_string()))),
        ("residual", diag(|r| r.diagnostics.residual.map(|x| format_sig(x, CSV_DIGITS)))),
        ("error_kind", diag(|r| r.diagnostics.error.as_ref().map(|e| e.kind.clone()))),
        ("error_message", diag(|r| r.diagnostics.error.as_ref().map(|e| e.message.clone()))),
    ]
    .into_iter()
    .filter_map(|(name, col)| col.map(|c| (name, c)))
    .collect();

    let mut header = vec!["kind"];
    header.extend(keys.iter().copied());
    header.extend(diagnostics.iter().map(|(name, _)| *name));
    let rows = records.iter().enumerate().map(|(i, r)| {
        let mut row = vec![r.kind.as_str().to_string()];
        row.extend(keys.iter().map(|k| {
            r.inputs
                .get(*k)
                .or_else(|| r.outputs.get(*k))
                .map(|f| f.to_csv())
                .unwrap_or_default()
        }));
        row.extend(diagnostics.iter().map(|(_, col)| col[i].clone()));
        row
    });
    write_csv(&header, rows)
}

fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(&row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 fields")
}
