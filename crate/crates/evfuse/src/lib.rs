//! Command-line front end for `evfuse-core`: scenario files in, fused
//! masses and verification reports out.

mod error;
pub mod report;
pub mod scenario;
pub mod verify;

use evfuse_core::{FusionState, RuleId};

pub use error::CliError;
pub use report::{OutputFormat, Snapshot, StepReport};
pub use scenario::Scenario;
pub use verify::{Check, CheckResult, Verdict, VerifyOptions};

/// Settings shared by `fuse` and `stream`.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub rule: Option<RuleId>,
    pub format: OutputFormat,
    pub prune: Option<f64>,
}

/// `--rule` wins over the scenario's own rule.
pub fn resolve_rule(scenario: &Scenario, rule: Option<RuleId>) -> Result<RuleId, CliError> {
    rule.or(scenario.rule)
        .ok_or_else(|| CliError::input("rule", "missing (set it in the scenario or pass --rule)"))
}

fn new_state(scenario: &Scenario, prune: Option<f64>) -> FusionState {
    let state = FusionState::new(&scenario.model);
    match prune {
        Some(eps) => state.with_pruning(eps),
        None => state,
    }
}

/// Fuses every source, one step at a time, and snapshots after each.
pub fn stream_steps(
    scenario: &Scenario,
    rule: RuleId,
    prune: Option<f64>,
) -> Result<Vec<StepReport>, CliError> {
    let mut state = new_state(scenario, prune);
    let mut steps = Vec::with_capacity(scenario.sources.len());
    for (i, (name, m)) in scenario.sources.iter().enumerate() {
        state.fuse(m, name.as_str())?;
        let snap = state.snapshot(rule)?;
        steps.push(StepReport {
            step: i + 1,
            source: name.clone(),
            snapshot: Snapshot::new(
                scenario.frame(),
                state.source_count(),
                state.conflict(),
                &snap,
            ),
        });
    }
    Ok(steps)
}

/// Fuses all sources, then transfers once.
pub fn fuse(scenario: &Scenario, rule: RuleId, prune: Option<f64>) -> Result<Snapshot, CliError> {
    let mut state = new_state(scenario, prune);
    for (name, m) in &scenario.sources {
        state.fuse(m, name.as_str())?;
    }
    let snap = state.snapshot(rule)?;
    Ok(Snapshot::new(
        scenario.frame(),
        state.source_count(),
        state.conflict(),
        &snap,
    ))
}

pub fn cmd_fuse(scenario: &Scenario, opts: &RunOptions) -> Result<String, CliError> {
    let rule = resolve_rule(scenario, opts.rule)?;
    let snap = fuse(scenario, rule, opts.prune)?;
    Ok(report::render_fuse(rule, &snap, opts.format))
}

pub fn cmd_stream(scenario: &Scenario, opts: &RunOptions) -> Result<String, CliError> {
    let rule = resolve_rule(scenario, opts.rule)?;
    let steps = stream_steps(scenario, rule, opts.prune)?;
    Ok(report::render_stream(rule, &steps, opts.format))
}

/// Returns the report and whether every check passed.
pub fn cmd_verify(scenario: &Scenario, opts: &VerifyOptions) -> Result<(String, bool), CliError> {
    let results = verify::run_checks(scenario, opts)?;
    let ok = results.iter().all(|r| r.verdict != Verdict::Fail);
    let mut out: String = results.iter().map(|r| format!("{r}\n")).collect();
    out.push_str(if ok {
        "all checks passed\n"
    } else {
        "some checks FAILED\n"
    });
    Ok((out, ok))
}
