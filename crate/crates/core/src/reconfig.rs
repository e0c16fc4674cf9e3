//! Adjacency rules, reconfiguration sequences, and problem instances.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::subset::Subset;

/// Slack applied to threshold comparisons in [`ThresholdMode::Slack`].
pub const THRESHOLD_SLACK: f64 = 1e-9;

/// The reconfiguration step type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdjacencyRule {
    /// Token jumping: swap one member for one non-member.
    Tj,
    /// Token addition or removal.
    Tar,
    /// Either of the above.
    Tjar,
}

impl AdjacencyRule {
    pub const ALL: [AdjacencyRule; 3] =
        [AdjacencyRule::Tj, AdjacencyRule::Tar, AdjacencyRule::Tjar];

    pub fn allows_jump(self) -> bool {
        matches!(self, AdjacencyRule::Tj | AdjacencyRule::Tjar)
    }

    pub fn allows_add_remove(self) -> bool {
        matches!(self, AdjacencyRule::Tar | AdjacencyRule::Tjar)
    }
}

impl fmt::Display for AdjacencyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjacencyRule::Tj => "tj",
            AdjacencyRule::Tar => "tar",
            AdjacencyRule::Tjar => "tjar",
        })
    }
}

impl FromStr for AdjacencyRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tj" => Ok(AdjacencyRule::Tj),
            "tar" => Ok(AdjacencyRule::Tar),
            "tjar" => Ok(AdjacencyRule::Tjar),
            other => Err(Error::invalid(format!("unknown adjacency rule `{other}`"))),
        }
    }
}

/// Whether `t` is reachable from `s` in one step of `rule`. Symmetric.
pub fn is_adjacent(rule: AdjacencyRule, s: &Subset, t: &Subset) -> bool {
    if s.universe_size() != t.universe_size() {
        return false;
    }
    let diff = s.symmetric_difference_len(t);
    let jump = diff == 2 && s.len() == t.len();
    let add_remove = diff == 1;
    match rule {
        AdjacencyRule::Tj => jump,
        AdjacencyRule::Tar => add_remove,
        AdjacencyRule::Tjar => jump || add_remove,
    }
}

/// All sets adjacent to `s` under `rule`.
///
/// Order: removals by ascending removed id, then additions by ascending added
/// id, then jumps in lexicographic `(removed, added)` order.
pub fn neighbors(rule: AdjacencyRule, s: &Subset) -> Vec<Subset> {
    let n = s.universe_size();
    let members = s.to_vec();
    let outside: Vec<usize> = (0..n).filter(|&e| !s.contains(e)).collect();
    let mut out = Vec::new();
    if rule.allows_add_remove() {
        out.extend(members.iter().map(|&e| s.without(e)));
        out.extend(outside.iter().map(|&e| s.with(e)));
    }
    if rule.allows_jump() {
        for &r in &members {
            let base = s.without(r);
            out.extend(outside.iter().map(|&a| base.with(a)));
        }
    }
    out
}

/// A nonempty sequence of subsets `S(0), .., S(ℓ)` over a common universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigSequence {
    steps: Vec<Subset>,
}

impl ReconfigSequence {
    pub fn new(steps: Vec<Subset>) -> Result<Self> {
        let first = steps
            .first()
            .ok_or_else(|| Error::domain("a reconfiguration sequence needs at least one set"))?;
        let n = first.universe_size();
        for s in &steps {
            s.check_universe(n)?;
        }
        Ok(ReconfigSequence { steps })
    }

    pub fn singleton(s: Subset) -> Self {
        ReconfigSequence { steps: vec![s] }
    }

    pub fn steps(&self) -> &[Subset] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Subset> {
        self.steps
    }

    /// Number of sets minus one.
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn first(&self) -> &Subset {
        &self.steps[0]
    }

    pub fn last(&self) -> &Subset {
        &self.steps[self.steps.len() - 1]
    }

    pub fn universe_size(&self) -> usize {
        self.steps[0].universe_size()
    }
}

/// Evaluates every set in the sequence. One oracle call per step.
pub fn step_values(oracle: &Oracle, seq: &ReconfigSequence) -> Result<Vec<f64>> {
    seq.steps().iter().map(|s| oracle.evaluate(s)).collect()
}

/// `f(𝒮) = min_i f(S(i))`, duplicates included.
pub fn sequence_value(oracle: &Oracle, seq: &ReconfigSequence) -> Result<f64> {
    Ok(step_values(oracle, seq)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// How values are compared against the threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdMode {
    /// `value >= θ - 1e-9`.
    #[default]
    Slack,
    /// `value >= θ`, for rational-valued oracles.
    Exact,
}

impl ThresholdMode {
    pub fn admits(self, value: f64, theta: f64) -> bool {
        match self {
            ThresholdMode::Slack => value >= theta - THRESHOLD_SLACK,
            ThresholdMode::Exact => value >= theta,
        }
    }
}

/// `(f, X, Y, rule, θ?, k?)`: the reachability problems when `θ` is set, the
/// maximization variants otherwise. Setting `k` selects the fixed-cardinality
/// (token jumping) problem.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub oracle: Oracle,
    pub source: Subset,
    pub target: Subset,
    pub rule: AdjacencyRule,
    pub threshold: Option<f64>,
    pub cardinality: Option<usize>,
    pub threshold_mode: ThresholdMode,
}

impl ProblemInstance {
    pub fn new(
        oracle: Oracle,
        source: Subset,
        target: Subset,
        rule: AdjacencyRule,
    ) -> Result<Self> {
        let n = oracle.universe_size();
        source.check_universe(n)?;
        target.check_universe(n)?;
        Ok(ProblemInstance {
            oracle,
            source,
            target,
            rule,
            threshold: None,
            cardinality: None,
            threshold_mode: ThresholdMode::default(),
        })
    }

    /// Fixes the set size to `k`; requires `|X| = |Y| = k` and rule TJ.
    pub fn with_cardinality(mut self, k: usize) -> Result<Self> {
        if self.rule != AdjacencyRule::Tj {
            return Err(Error::invalid(format!(
                "fixed-cardinality instances use tj adjacency, not {}",
                self.rule
            )));
        }
        if self.source.len() != k || self.target.len() != k {
            return Err(Error::invalid(format!(
                "endpoints have sizes {} and {}, expected {k}",
                self.source.len(),
                self.target.len()
            )));
        }
        self.cardinality = Some(k);
        Ok(self)
    }

    /// Sets `θ`, checking `θ <= min{f(X), f(Y)}` (two oracle calls).
    pub fn with_threshold(mut self, theta: f64) -> Result<Self> {
        let v = self.endpoint_min()?;
        if !self.threshold_mode.admits(v, theta) {
            return Err(Error::invalid(format!(
                "threshold {theta} exceeds min{{f(X), f(Y)}} = {v}"
            )));
        }
        self.threshold = Some(theta);
        Ok(self)
    }

    /// Sets `θ` without evaluating the endpoints.
    pub fn with_threshold_unchecked(mut self, theta: f64) -> Self {
        self.threshold = Some(theta);
        self
    }

    pub fn with_threshold_mode(mut self, mode: ThresholdMode) -> Self {
        self.threshold_mode = mode;
        self
    }

    /// `v = min{f(X), f(Y)}`.
    pub fn endpoint_min(&self) -> Result<f64> {
        let fx = self.oracle.evaluate(&self.source)?;
        let fy = self.oracle.evaluate(&self.target)?;
        Ok(fx.min(fy))
    }

    pub fn universe_size(&self) -> usize {
        self.oracle.universe_size()
    }
}

/// Why a sequence fails to solve an instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    WrongSource,
    WrongTarget,
    UniverseMismatch { index: usize },
    NotAdjacent { index: usize },
    Cardinality { index: usize, size: usize },
    BelowThreshold { index: usize, value: f64 },
}

impl Violation {
    /// Index of the first offending step.
    pub fn index(&self, length: usize) -> usize {
        match *self {
            Violation::WrongSource => 0,
            Violation::WrongTarget => length,
            Violation::UniverseMismatch { index }
            | Violation::NotAdjacent { index }
            | Violation::Cardinality { index, .. }
            | Violation::BelowThreshold { index, .. } => index,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongSource => write!(f, "step 0 is not the source set"),
            Violation::WrongTarget => write!(f, "last step is not the target set"),
            Violation::UniverseMismatch { index } => {
                write!(f, "step {index} has the wrong universe")
            }
            Violation::NotAdjacent { index } => {
                write!(f, "step {index} is not adjacent to step {}", index - 1)
            }
            Violation::Cardinality { index, size } => {
                write!(
                    f,
                    "step {index} has size {size}, violating the fixed cardinality"
                )
            }
            Violation::BelowThreshold { index, value } => {
                write!(f, "step {index} has value {value} below the threshold")
            }
        }
    }
}

/// Result of [`validate_sequence`].
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Ok,
    Fail(Violation),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

/// Checks endpoints, adjacency, cardinality and threshold, reporting the
/// first violated step. Evaluates the oracle only when `θ` is set.
pub fn validate_sequence(instance: &ProblemInstance, seq: &ReconfigSequence) -> Result<Verdict> {
    let n = instance.universe_size();
    let steps = seq.steps();
    if steps.iter().any(|s| s.universe_size() != n) {
        let index = steps
            .iter()
            .position(|s| s.universe_size() != n)
            .unwrap_or(0);
        return Ok(Verdict::Fail(Violation::UniverseMismatch { index }));
    }
    if steps[0] != instance.source {
        return Ok(Verdict::Fail(Violation::WrongSource));
    }
    for (index, s) in steps.iter().enumerate() {
        if let Some(k) = instance.cardinality {
            if s.len() != k {
                return Ok(Verdict::Fail(Violation::Cardinality {
                    index,
                    size: s.len(),
                }));
            }
        }
        if index > 0 && !is_adjacent(instance.rule, &steps[index - 1], s) {
            return Ok(Verdict::Fail(Violation::NotAdjacent { index }));
        }
        if let Some(theta) = instance.threshold {
            let value = instance.oracle.evaluate(s)?;
            if !instance.threshold_mode.admits(value, theta) {
                return Ok(Verdict::Fail(Violation::BelowThreshold { index, value }));
            }
        }
    }
    if *seq.last() != instance.target {
        return Ok(Verdict::Fail(Violation::WrongTarget));
    }
    Ok(Verdict::Ok)
}
