//! Property checks run against a scenario's own sources.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use evfuse_core::{oracle_conjunctive, sdli2, FusionState, MassFunction, Proposition, RuleId};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CliError, Scenario};

pub const PERMUTATION_TOLERANCE: f64 = 1e-9;
pub const MARKOV_TOLERANCE: f64 = 1e-12;
pub const VBF_TOLERANCE: f64 = 1e-12;
pub const EQ7_TOLERANCE: f64 = 1e-12;

/// Above this many orderings, permutations are sampled instead of enumerated.
const MAX_ENUMERATED: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Permutation,
    Markov,
    Vbf,
    Eq7,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Permutation, Check::Markov, Check::Vbf, Check::Eq7];

    fn name(self) -> &'static str {
        match self {
            Check::Permutation => "permutation",
            Check::Markov => "markov",
            Check::Vbf => "vbf",
            Check::Eq7 => "eq7",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Check, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?} (expected permutation, markov, vbf, eq7)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub check: Check,
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub note: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        };
        write!(f, "{:<12} {verdict}", self.check.name())?;
        if self.verdict != Verdict::Skip {
            write!(
                f,
                "  max deviation {:.3e} (tolerance {:.0e})",
                self.max_deviation, self.tolerance
            )?;
        }
        write!(f, "  {}", self.note)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub rule: RuleId,
    pub checks: Vec<Check>,
    pub trials: usize,
    pub seed: u64,
    pub prune: Option<f64>,
}

pub fn deviation(a: &BTreeMap<Proposition, f64>, b: &BTreeMap<Proposition, f64>) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max)
}

struct Runner<'a> {
    scenario: &'a Scenario,
    opts: &'a VerifyOptions,
    rng: ChaCha8Rng,
}

impl Runner<'_> {
    fn state(&self, masses: &[&MassFunction]) -> Result<FusionState, CliError> {
        let mut state = FusionState::new(&self.scenario.model);
        if let Some(eps) = self.opts.prune {
            state = state.with_pruning(eps);
        }
        for m in masses {
            state.fuse(m, "")?;
        }
        Ok(state)
    }

    fn snapshot(&self, masses: &[&MassFunction]) -> Result<MassFunction, CliError> {
        Ok(self.state(masses)?.snapshot(self.opts.rule)?)
    }

    fn result(&self, check: Check, dev: f64, tolerance: f64, note: String) -> CheckResult {
        CheckResult {
            check,
            verdict: if dev <= tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            max_deviation: dev,
            tolerance,
            note,
        }
    }

    fn permutation(&mut self) -> Result<CheckResult, CliError> {
        let masses: Vec<&MassFunction> = self.scenario.sources.iter().map(|(_, m)| m).collect();
        let reference = self.snapshot(&masses)?;
        let k = masses.len();
        let total: Option<usize> = (1..=k).try_fold(1usize, |acc, i| acc.checked_mul(i));

        let orderings: Vec<Vec<&MassFunction>> = match total {
            Some(t) if t <= MAX_ENUMERATED => masses.iter().copied().permutations(k).collect(),
            _ => (0..self.opts.trials)
                .map(|_| {
                    let mut order = masses.clone();
                    order.shuffle(&mut self.rng);
                    order
                })
                .collect(),
        };
        let mut dev = 0.0f64;
        for order in &orderings {
            dev = dev.max(deviation(
                self.snapshot(order)?.as_map(),
                reference.as_map(),
            ));
        }
        let note = format!("{} orderings, rule {}", orderings.len(), self.opts.rule);
        Ok(self.result(Check::Permutation, dev, PERMUTATION_TOLERANCE, note))
    }

    fn markov(&mut self) -> Result<CheckResult, CliError> {
        let masses = self.scenario.masses();
        let mut state = self.state(&[])?;
        let mut dev = 0.0f64;
        for (k, m) in masses.iter().enumerate() {
            state.fuse(m, "")?;
            let oracle = oracle_conjunctive(&masses[..=k])?;
            let acc: BTreeMap<Proposition, f64> = state
                .accumulator()
                .iter()
                .map(|(p, v)| (p.clone(), v))
                .collect();
            let direct: BTreeMap<Proposition, f64> =
                oracle.iter().map(|(p, v)| (p.clone(), v)).collect();
            dev = dev.max(deviation(&acc, &direct));
        }
        let note = format!("{} prefixes against the direct product", masses.len());
        Ok(self.result(Check::Markov, dev, MARKOV_TOLERANCE, note))
    }

    fn vbf(&mut self) -> Result<CheckResult, CliError> {
        let masses: Vec<&MassFunction> = self.scenario.sources.iter().map(|(_, m)| m).collect();
        let reference = self.snapshot(&masses)?;
        let vacuous = MassFunction::vacuous(&self.scenario.model);
        let mut dev = 0.0f64;
        for _ in 0..self.opts.trials {
            let mut padded = masses.clone();
            for _ in 0..self.rng.gen_range(1..=3) {
                let at = self.rng.gen_range(0..=padded.len());
                padded.insert(at, &vacuous);
            }
            dev = dev.max(deviation(
                self.snapshot(&padded)?.as_map(),
                reference.as_map(),
            ));
        }
        let note = format!("{} trials, rule {}", self.opts.trials, self.opts.rule);
        Ok(self.result(Check::Vbf, dev, VBF_TOLERANCE, note))
    }

    fn eq7(&mut self) -> Result<CheckResult, CliError> {
        let masses: Vec<&MassFunction> = self.scenario.sources.iter().map(|(_, m)| m).collect();
        if masses.len() != 2 {
            return Ok(CheckResult {
                check: Check::Eq7,
                verdict: Verdict::Skip,
                max_deviation: 0.0,
                tolerance: EQ7_TOLERANCE,
                note: format!("needs exactly two sources, scenario has {}", masses.len()),
            });
        }
        let direct = sdli2(masses[0], masses[1])?;
        let engine = self.state(&masses)?.snapshot(RuleId::Sdli)?;
        let dev = deviation(direct.as_map(), engine.as_map());
        Ok(self.result(
            Check::Eq7,
            dev,
            EQ7_TOLERANCE,
            "two-source formula vs engine".into(),
        ))
    }
}

/// Runs the requested checks in order.
pub fn run_checks(scenario: &Scenario, opts: &VerifyOptions) -> Result<Vec<CheckResult>, CliError> {
    let mut runner = Runner {
        scenario,
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
    };
    opts.checks
        .iter()
        .map(|check| match check {
            Check::Permutation => runner.permutation(),
            Check::Markov => runner.markov(),
            Check::Vbf => runner.vbf(),
            Check::Eq7 => runner.eq7(),
        })
        .collect()
}
