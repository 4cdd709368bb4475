//! JSON / CSV / Markdown rendering of a result document.

use serde_json::Value;

use cyclocover::arith::EnumRow;

use crate::checks::CheckOutcome;
use crate::Format;

/// Row-shaped view of a document, used by CSV and Markdown where a flat
/// key/value listing would be unreadable.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Markdown override (bullet list instead of a table).
    pub bullets: Option<Vec<String>>,
}

pub fn render(fmt: Format, doc: &Value, table: Option<&Table>) -> String {
    match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => match table {
            Some(t) => csv_table(&t.headers, &t.rows),
            None => {
                let flat = flatten(doc);
                let headers = flat.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>();
                let values = flat.into_iter().map(|(_, v)| v).collect::<Vec<_>>();
                csv_table(&headers, &[values])
            }
        },
        Format::Md => match table {
            Some(Table { bullets: Some(b), .. }) => {
                let mut s = String::new();
                for line in b {
                    s.push_str("- ");
                    s.push_str(line);
                    s.push('\n');
                }
                s
            }
            Some(t) => md_table(&t.headers, &t.rows),
            None => {
                let rows: Vec<Vec<String>> = flatten(doc).into_iter().map(|(k, v)| vec![k, v]).collect();
                md_table(&["field".to_string(), "value".to_string()], &rows)
            }
        },
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted-path flattening; arrays are indexed.
fn flatten(doc: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    go(&key(k), x, out);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    go(&key(&i.to_string()), x, out);
                }
            }
            other => out.push((prefix.to_string(), scalar(other))),
        }
    }
    let mut out = Vec::new();
    go("", doc, &mut out);
    out
}

fn csv_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn md_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut s = format!("| {} |\n", headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | "));
    s.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")));
    }
    s
}

pub fn enumeration_table(rows: &[EnumRow]) -> Table {
    let headers = ["family", "degree", "q", "l", "p", "n", "label"].map(String::from).to_vec();
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.verdict.family.to_string(),
                r.verdict.degree.to_string(),
                r.verdict.q.to_string(),
                r.l.to_string(),
                r.p.to_string(),
                r.n.to_string(),
                r.verdict.label(),
            ]
        })
        .collect();
    let bullets = rows
        .iter()
        .map(|r| {
            let l = r.l;
            format!(
                "{} is a Galois group over Q: degree ({})n - 2 = {} with l = {l}, p = {} (p = {} mod {l}), n = {} (n = {} mod {l}, not -2)",
                r.verdict.label(),
                l - 1,
                r.verdict.degree,
                r.p,
                r.p % l,
                r.n,
                r.n % l,
            )
        })
        .collect();
    Table {
        headers,
        rows: body,
        bullets: Some(bullets),
    }
}

pub fn selftest_table(outcomes: &[CheckOutcome]) -> Table {
    let headers = ["id", "check", "status", "failures"].map(String::from).to_vec();
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                o.name.to_string(),
                o.status.to_string(),
                o.failures.join("; "),
            ]
        })
        .collect();
    Table {
        headers,
        rows,
        bullets: None,
    }
}
