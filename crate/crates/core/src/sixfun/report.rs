use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Tables and verdicts of one verification run. Verdicts are only ever set from
/// computed comparisons.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub verdicts: BTreeMap<String, bool>,
    pub warnings: Vec<String>,
}

impl FunctorReport {
    pub fn new(title: &str, columns: &[&str]) -> FunctorReport {
        FunctorReport { title: title.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Records a verdict; a repeated name keeps the conjunction.
    pub fn verdict(&mut self, name: &str, ok: bool) {
        let e = self.verdicts.entry(name.to_string()).or_insert(true);
        *e &= ok;
    }

    pub fn ok(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn failures(&self) -> Vec<String> {
        self.verdicts.iter().filter(|(_, &v)| !v).map(|(k, _)| k.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Aligned columns followed by the verdicts.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (k, cell) in r.iter().enumerate() {
                widths[k] = widths[k].max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        writeln!(out, "# {}", self.title).unwrap();
        if !self.columns.is_empty() {
            writeln!(out, "{}", line(&self.columns)).unwrap();
            for r in &self.rows {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        for (k, v) in &self.verdicts {
            writeln!(out, "{k}: {}", if *v { "ok" } else { "FAILED" }).unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }

    /// Header and rows tab-separated; verdicts and warnings as `#`-prefixed lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.columns.join("\t")).unwrap();
        for r in &self.rows {
            writeln!(out, "{}", r.join("\t")).unwrap();
        }
        for (k, v) in &self.verdicts {
            writeln!(out, "#verdict\t{k}\t{v}").unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "#warning\t{w}").unwrap();
        }
        out
    }
}
