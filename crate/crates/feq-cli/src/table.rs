//! CSV emission with a `#`-prefixed provenance header.
//!
//! Every file starts with the tool version, the command, a timestamp and the
//! fully resolved configuration, so any table can be regenerated from its
//! own header. Timestamps honor `SOURCE_DATE_EPOCH` for byte-identical
//! reproducible runs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use chrono::{DateTime, Utc};

pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(columns: &[&str]) -> Self {
        ResultTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.columns.len(), "ragged table row");
        self.rows.push(cells);
    }

    pub fn write_csv(
        &self,
        path: &Path,
        command: &str,
        config_echo: &str,
    ) -> std::io::Result<()> {
        let file = File::create(path)?;
        let mut w = BufWriter::new(file);
        writeln!(w, "# feq {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# command: {command}")?;
        writeln!(w, "# timestamp: {}", timestamp())?;
        writeln!(w, "# config: {config_echo}")?;
        for (key, value) in &self.notes {
            writeln!(w, "# {key}: {value}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()
    }
}

/// Shortest round-trip representation; deterministic across runs.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// RFC 3339 UTC timestamp; `SOURCE_DATE_EPOCH` overrides the clock so
/// archival runs can be byte-identical.
pub fn timestamp() -> String {
    let now: DateTime<Utc> = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(epoch) => epoch
            .parse::<i64>()
            .ok()
            .and_then(|secs| DateTime::from_timestamp(secs, 0))
            .unwrap_or_else(Utc::now),
        Err(_) => Utc::now(),
    };
    now.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}
