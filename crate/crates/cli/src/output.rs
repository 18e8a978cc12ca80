//! One record per invocation, rendered as text, JSON or CSV. Every number is
//! a decimal string.

use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::ValueEnum;
use hypersurf::tables::DimReport;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub quantity: String,
    pub value: Option<String>,
    pub status: String,
    pub provenance: Vec<String>,
    pub flags: Vec<String>,
}

impl ResultRow {
    pub fn new(quantity: impl Into<String>, value: impl ToString, status: &str) -> Self {
        ResultRow {
            quantity: quantity.into(),
            value: Some(value.to_string()),
            status: status.to_string(),
            provenance: Vec::new(),
            flags: Vec::new(),
        }
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance.push(p.into());
        self
    }

    pub fn flag(mut self, f: impl Into<String>) -> Self {
        self.flags.push(f.into());
        self
    }
}

impl From<DimReport> for ResultRow {
    fn from(r: DimReport) -> Self {
        ResultRow {
            quantity: r.quantity,
            value: r.value.number().map(ToString::to_string),
            status: r.value.status().to_string(),
            provenance: r.provenance,
            flags: r.flags,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_us: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<ResultRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord { command: command.into(), parameters: BTreeMap::new(), results: Vec::new(), timing: None }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn row(mut self, row: ResultRow) -> Self {
        self.results.push(row);
        self
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.render_csv(out),
            Format::Text => self.render_text(out),
        }
    }

    fn render_text(&self, out: &mut impl Write) -> io::Result<()> {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{} {}", self.command, params.join(" "))?;
        let width = self.results.iter().map(|r| r.quantity.len()).max().unwrap_or(0);
        for r in &self.results {
            let value = r.value.as_deref().unwrap_or("-");
            writeln!(out, "  {:width$}  {value}  [{}]", r.quantity, r.status)?;
            for p in &r.provenance {
                writeln!(out, "  {:width$}    from: {p}", "")?;
            }
            for f in &r.flags {
                writeln!(out, "  {:width$}    flag: {f}", "")?;
            }
        }
        if let Some(t) = &self.timing {
            writeln!(out, "  elapsed: {} us", t.elapsed_us)?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["command", "quantity", "value", "status", "provenance", "flags"])?;
        for r in &self.results {
            w.write_record([
                self.command.as_str(),
                &r.quantity,
                r.value.as_deref().unwrap_or(""),
                &r.status,
                &r.provenance.join("; "),
                &r.flags.join("; "),
            ])?;
        }
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        OutputRecord::new("chi")
            .param("n", 4)
            .param("d", 2)
            .row(ResultRow::new("chi_t_omega", -9, "proved").with_provenance("HRR").flag("integral, exact"))
    }

    #[test]
    fn json_uses_strings() {
        let mut buf = Vec::new();
        sample().render(Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["results"][0]["value"], "-9");
        assert_eq!(v["parameters"]["n"], "4");
        assert!(v.get("timing").is_none());
    }

    #[test]
    fn csv_quotes_commas() {
        let mut buf = Vec::new();
        sample().render(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("command,quantity,value"));
        assert!(text.contains("\"integral, exact\""));
    }

    #[test]
    fn text_lists_flags() {
        let mut buf = Vec::new();
        sample().render(Format::Text, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("chi d=2 n=4"));
        assert!(text.contains("flag: integral, exact"));
    }
}
