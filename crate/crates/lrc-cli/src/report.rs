//! Ordered key/value report documents.
//!
//! Every subcommand assembles one [`Doc`]: an ordered list of key/value
//! pairs. Rendering is deterministic in both formats, so identical
//! invocations produce byte-identical output. The structured format is one
//! `key=value` line per pair and parses back losslessly; the text format
//! aligns values into a column for reading.

use std::fmt::Display;

use anyhow::{bail, Result};

/// Output format selected by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// Aligned key/value lines for reading.
    Text,
    /// One `key=value` line per pair; parses back losslessly.
    Structured,
}

/// An ordered key/value report document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Doc {
    pairs: Vec<(String, String)>,
}

impl Doc {
    pub fn new() -> Self {
        Doc::default()
    }

    /// Append a pair. Keys must not contain `=` or newlines; values must be
    /// single-line (both hold for everything the tool emits).
    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        let key = key.into();
        let value = value.to_string();
        debug_assert!(!key.contains('=') && !key.contains('\n'), "bad key {key:?}");
        debug_assert!(!value.contains('\n'), "multi-line value for {key:?}");
        self.pairs.push((key, value));
    }

    /// Append the value, or the literal `none` when absent.
    pub fn push_opt<T: Display>(&mut self, key: impl Into<String>, value: Option<T>) {
        match value {
            Some(v) => self.push(key, v),
            None => self.push(key, "none"),
        }
    }

    /// Append a float with fixed six-decimal formatting.
    pub fn push_f64(&mut self, key: impl Into<String>, value: f64) {
        self.push(key, format!("{value:.6}"));
    }

    /// First value stored under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Structured => self.render_structured(),
        }
    }

    /// One `key=value` line per pair.
    pub fn render_structured(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.pairs {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    /// Keys padded to a common width, two spaces, then the value.
    pub fn render_text(&self) -> String {
        let width = self.pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.pairs {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }

    /// Parse the structured rendering back into a document. Values may
    /// contain `=`; the split is on the first one.
    pub fn parse_structured(text: &str) -> Result<Doc> {
        let mut doc = Doc::new();
        for line in text.lines() {
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {line:?} is not key=value");
            };
            doc.pairs.push((k.to_string(), v.to_string()));
        }
        Ok(doc)
    }
}
