//! Scenario files: a frame, a model, an ordered list of sources and a rule.
//!
//! ```json
//! {
//!   "frame": ["A", "B", "C"],
//!   "model": "exclusive",
//!   "rule": "dsm_hybrid",
//!   "sources": [
//!     { "name": "m1", "masses": { "A": 0.4, "B": 0.5, "A|C": 0.1 } }
//!   ]
//! }
//! ```
//!
//! `model` is `"free"`, `"exclusive"`, or `{"exclusive_pairs": [["A", "B"]]}`.

use std::collections::BTreeMap;
use std::path::Path;

use evfuse_core::{format_prop, parse_prop, Frame, MassFunction, Model, ModelKind, RuleId};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Named(String),
    Pairs { exclusive_pairs: Vec<[String; 2]> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub name: String,
    pub masses: BTreeMap<String, f64>,
}

/// The scenario document as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub frame: Vec<String>,
    pub model: ModelSpec,
    pub sources: Vec<SourceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: Model,
    pub sources: Vec<(String, MassFunction)>,
    pub rule: Option<RuleId>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Scenario::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        let file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| CliError::input("scenario", e))?;
        Scenario::from_file(&file)
    }

    pub fn from_file(file: &ScenarioFile) -> Result<Scenario, CliError> {
        let frame = Frame::new(&file.frame).map_err(|e| CliError::input("frame", e))?;
        let model = match &file.model {
            ModelSpec::Named(name) if name == "free" => Model::free(&frame),
            ModelSpec::Named(name) if name == "exclusive" => Model::exclusive(&frame),
            ModelSpec::Named(name) => {
                return Err(CliError::input(
                    "model",
                    format!(
                    "expected \"free\", \"exclusive\" or {{\"exclusive_pairs\": …}}, got {name:?}"
                ),
                ))
            }
            ModelSpec::Pairs { exclusive_pairs } => {
                let pairs: Vec<(&str, &str)> = exclusive_pairs
                    .iter()
                    .map(|[a, b]| (a.as_str(), b.as_str()))
                    .collect();
                Model::exclusive_pairs(&frame, &pairs)
                    .map_err(|e| CliError::input("model.exclusive_pairs", e))?
            }
        };

        if file.sources.is_empty() {
            return Err(CliError::input(
                "sources",
                "at least one source is required",
            ));
        }
        let mut sources = Vec::with_capacity(file.sources.len());
        for (i, src) in file.sources.iter().enumerate() {
            let field = format!("sources[{i}] ({})", src.name);
            let mut assignments = Vec::with_capacity(src.masses.len());
            for (expr, &mass) in &src.masses {
                let p = parse_prop(&frame, expr)
                    .map_err(|e| CliError::input(format!("{field}.masses[{expr:?}]"), e))?;
                assignments.push((p, mass));
            }
            let m = MassFunction::new(&model, assignments)
                .map_err(|e| CliError::input(format!("{field}.masses"), e))?;
            sources.push((src.name.clone(), m));
        }

        let rule = file
            .rule
            .as_deref()
            .map(str::parse::<RuleId>)
            .transpose()
            .map_err(|e| CliError::input("rule", e))?;
        Ok(Scenario {
            model,
            sources,
            rule,
        })
    }

    pub fn frame(&self) -> &Frame {
        self.model.frame()
    }

    pub fn masses(&self) -> Vec<MassFunction> {
        self.sources.iter().map(|(_, m)| m.clone()).collect()
    }

    /// The on-disk form, with canonical proposition text.
    pub fn to_file(&self) -> ScenarioFile {
        let frame = self.frame();
        let model = match self.model.kind() {
            ModelKind::Free => ModelSpec::Named("free".into()),
            ModelKind::Exclusive => ModelSpec::Named("exclusive".into()),
            ModelKind::Custom(pairs) => ModelSpec::Pairs {
                exclusive_pairs: pairs
                    .iter()
                    .map(|&(i, j)| [frame.atoms()[i].clone(), frame.atoms()[j].clone()])
                    .collect(),
            },
        };
        ScenarioFile {
            frame: frame.atoms().to_vec(),
            model,
            sources: self
                .sources
                .iter()
                .map(|(name, m)| SourceSpec {
                    name: name.clone(),
                    masses: m.iter().map(|(p, v)| (format_prop(frame, p), v)).collect(),
                })
                .collect(),
            rule: self.rule.map(|r| r.name().to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes")
    }
}
