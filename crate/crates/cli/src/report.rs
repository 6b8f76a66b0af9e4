use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Ordered `key = value` entries plus an optional table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// File stem for emitted files.
    pub stem: String,
    pub entries: Vec<(String, String)>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(stem: impl Into<String>) -> Self {
        Report { stem: stem.into(), ..Default::default() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        if let Some(t) = &self.table {
            for (i, row) in t.rows.iter().enumerate() {
                for (h, cell) in t.header.iter().zip(row) {
                    let _ = writeln!(out, "row.{i}.{h} = {cell}");
                }
            }
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(t) = &self.table {
            w.write_record(&t.header).expect("in-memory write");
            for r in &t.rows {
                w.write_record(r).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected text or csv)")),
        }
    }
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "report.txt",
            Format::Csv => "csv",
        }
    }
}

/// Writes one file per format into `dir` and returns their paths.
pub fn emit_report(report: &Report, formats: &[Format], dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for &f in formats {
        let path = dir.join(format!("{}.{}", report.stem, f.extension()));
        let body = match f {
            Format::Text => report.render_text(),
            Format::Csv => report.render_csv(),
        };
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}
