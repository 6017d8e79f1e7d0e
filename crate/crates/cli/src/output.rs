//! Row and report formatting. Every real is printed with 17 significant
//! digits so that values survive a text round trip bit for bit.

use serde::Serialize;
use serde_json::value::RawValue;

pub const SCHEMA: &str = "finfourier/1";

pub const CSV_HEADER: [&str; 9] = [
    "family",
    "n",
    "params",
    "lambda",
    "method",
    "re",
    "im",
    "est_rel_err",
    "flags",
];

/// `x` in scientific notation with 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// A JSON number token for `x`, `null` when it is not finite.
pub fn json_real(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { real(x) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted reals are valid JSON")
}

/// One evaluated transform.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub family: &'static str,
    pub n: usize,
    pub params: String,
    pub lambda: f64,
    pub method: &'static str,
    pub re: f64,
    pub im: f64,
    pub est_rel_err: f64,
    pub flags: Vec<&'static str>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    family: &'a str,
    n: usize,
    params: &'a str,
    lambda: Box<RawValue>,
    method: &'a str,
    re: Box<RawValue>,
    im: Box<RawValue>,
    est_rel_err: Box<RawValue>,
    flags: &'a [&'static str],
}

#[derive(Serialize)]
struct RowsDoc<'a> {
    schema: &'static str,
    command: &'a str,
    rows: Vec<JsonRow<'a>>,
}

pub fn rows_json(command: &str, rows: &[Row]) -> String {
    let rows = rows
        .iter()
        .map(|r| JsonRow {
            family: r.family,
            n: r.n,
            params: &r.params,
            lambda: json_real(r.lambda),
            method: r.method,
            re: json_real(r.re),
            im: json_real(r.im),
            est_rel_err: json_real(r.est_rel_err),
            flags: &r.flags,
        })
        .collect();
    pretty(&RowsDoc {
        schema: SCHEMA,
        command,
        rows,
    })
}

pub fn rows_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.params.clone(),
            real(r.lambda),
            r.method.to_string(),
            real(r.re),
            real(r.im),
            real(r.est_rel_err),
            r.flags.join(";"),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

pub fn rows_text(rows: &[Row]) -> String {
    let mut table = vec![CSV_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    for r in rows {
        table.push(vec![
            r.family.to_string(),
            r.n.to_string(),
            if r.params.is_empty() {
                "-".into()
            } else {
                r.params.clone()
            },
            real(r.lambda),
            r.method.to_string(),
            real(r.re),
            real(r.im),
            real(r.est_rel_err),
            if r.flags.is_empty() {
                "-".into()
            } else {
                r.flags.join(",")
            },
        ]);
    }
    align(&table)
}

/// Left-aligned columns separated by two spaces.
pub fn align(table: &[Vec<String>]) -> String {
    let cols = table.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|c| {
            table
                .iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in table {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = width[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
