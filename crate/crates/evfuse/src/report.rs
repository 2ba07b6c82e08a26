//! Text and JSON rendering of decision snapshots.
//!
//! Rows are keyed by canonical DNF text and sorted by it; masses print with
//! six decimals. Output is byte-for-byte reproducible.

use std::collections::BTreeMap;
use std::fmt::Write;

use evfuse_core::{format_prop, Frame, MassFunction, RuleId};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

/// A snapshot of the fusion state under one rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    #[serde(skip)]
    pub sources: usize,
    /// Conjunctive mass on propositions empty under the model, before transfer.
    pub conflict: f64,
    pub masses: BTreeMap<String, f64>,
}

impl Snapshot {
    pub fn new(frame: &Frame, sources: usize, conflict: f64, mass: &MassFunction) -> Snapshot {
        Snapshot {
            sources,
            conflict,
            masses: mass
                .iter()
                .map(|(p, v)| (format_prop(frame, p), v))
                .collect(),
        }
    }

    fn write_rows(&self, out: &mut String) {
        let width = self
            .masses
            .keys()
            .map(|k| k.chars().count())
            .max()
            .unwrap_or(0);
        for (expr, mass) in &self.masses {
            let pad = width - expr.chars().count();
            let _ = writeln!(out, "{expr}{:pad$}  {mass:.6}", "");
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub source: String,
    #[serde(flatten)]
    pub snapshot: Snapshot,
}

#[derive(Debug, Serialize)]
struct FuseJson<'a> {
    rule: &'a str,
    conflict: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<&'a [StepReport]>,
    masses: &'a BTreeMap<String, f64>,
}

pub fn render_fuse(rule: RuleId, snap: &Snapshot, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = format!(
                "rule: {rule}\nsources: {}\nconflict: {:.6}\n",
                snap.sources, snap.conflict
            );
            snap.write_rows(&mut out);
            out
        }
        OutputFormat::Json => json(&FuseJson {
            rule: rule.name(),
            conflict: snap.conflict,
            steps: None,
            masses: &snap.masses,
        }),
    }
}

/// Every step's snapshot followed by the final report, which is exactly the
/// `fuse` output for the same scenario.
pub fn render_stream(rule: RuleId, steps: &[StepReport], format: OutputFormat) -> String {
    let last = &steps.last().expect("at least one step").snapshot;
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            for s in steps {
                let _ = writeln!(
                    out,
                    "step {}: {} (conflict {:.6})",
                    s.step, s.source, s.snapshot.conflict
                );
                s.snapshot.write_rows(&mut out);
                out.push('\n');
            }
            out.push_str(&render_fuse(rule, last, OutputFormat::Table));
            out
        }
        OutputFormat::Json => json(&FuseJson {
            rule: rule.name(),
            conflict: last.conflict,
            steps: Some(steps),
            masses: &last.masses,
        }),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
