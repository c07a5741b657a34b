use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// A report with a JSON body and an optional tabular view.
/// Without explicit rows, the table shows the top-level fields.
pub struct Report {
    pub value: Value,
    pub ok: bool,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(value: Value, ok: bool) -> Self {
        Report {
            value,
            ok,
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn with_table(mut self, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = rows;
        self
    }

    fn table(&self) -> (Vec<String>, Vec<Vec<String>>) {
        if !self.columns.is_empty() {
            return (self.columns.clone(), self.rows.clone());
        }
        let rows = match &self.value {
            Value::Object(m) => m
                .iter()
                .map(|(k, v)| {
                    let s = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    vec![k.clone(), s]
                })
                .collect(),
            other => vec![vec!["value".into(), other.to_string()]],
        };
        (vec!["field".into(), "value".into()], rows)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => macmahon::json::render(&self.value),
            Format::Csv => {
                let (columns, rows) = self.table();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&columns).expect("in-memory write");
                for r in &rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
            }
            Format::Table => {
                let (columns, rows) = self.table();
                let widths: Vec<usize> = (0..columns.len())
                    .map(|k| {
                        rows.iter()
                            .map(|r| r[k].chars().count())
                            .chain([columns[k].chars().count()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| -> String {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect();
                    format!("{}\n", padded.join("  ").trim_end())
                };
                let mut out = line(&columns);
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                out.push_str(&line(&rule));
                for r in &rows {
                    out.push_str(&line(r));
                }
                out
            }
        }
    }
}
