//! Experiment orchestration: endpoint selection, running one algorithm on an
//! instance, and the CSV/summary report.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::algorithms::{
    astar, swap_reconfigure_traced, tjar_reconfigure, AstarConfig, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::exact::{optimal_sequence, shortest_feasible, ExactOptions};
use crate::instance::{BuildOptions, InstanceSpec, ThetaSpec};
use crate::oracle::Oracle;
use crate::reconfig::{step_values, validate_sequence, AdjacencyRule, ReconfigSequence, Verdict};
use crate::subset::Subset;

/// Alternating greedy: `X` and `Y` each take, in turn, the element that
/// maximizes their own value among elements neither set holds yet.
/// Ties go to the smallest id. Needs `2k <= n`.
pub fn interchangeable_greedy(f: &Oracle, k: usize) -> Result<(Subset, Subset)> {
    let n = f.universe_size();
    if 2 * k > n {
        return Err(Error::invalid(format!(
            "cannot pick two disjoint sets of size {k} from {n} elements"
        )));
    }
    let mut x = Subset::empty(n);
    let mut y = Subset::empty(n);
    let pick = |grow: &Subset, other: &Subset| -> Result<usize> {
        let mut best: Option<(usize, f64)> = None;
        for e in (0..n).filter(|&e| !grow.contains(e) && !other.contains(e)) {
            let v = f.evaluate(&grow.with(e))?;
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((e, v));
            }
        }
        Ok(best.expect("2k <= n leaves a candidate").0)
    };
    for _ in 0..k {
        let e = pick(&x, &y)?;
        x.insert(e);
        let e = pick(&y, &x)?;
        y.insert(e);
    }
    Ok((x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Swap,
    Tjar,
    Astar,
    Exact,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Swap => "swap",
            Algorithm::Tjar => "tjar",
            Algorithm::Astar => "astar",
            Algorithm::Exact => "exact",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "swap" => Ok(Algorithm::Swap),
            "tjar" => Ok(Algorithm::Tjar),
            "astar" => Ok(Algorithm::Astar),
            "exact" => Ok(Algorithm::Exact),
            other => Err(Error::invalid(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// One run: an instance plus command-line style overrides.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub build: BuildOptions,
    pub algorithm: Algorithm,
    pub rule: Option<AdjacencyRule>,
    pub theta: Option<ThetaSpec>,
    /// Size of interchangeable endpoints if the instance uses them,
    /// otherwise a fixed cardinality.
    pub k: Option<usize>,
    /// A* expansion budget.
    pub budget: Option<u64>,
}

impl ExperimentConfig {
    pub fn new(instance: InstanceSpec, algorithm: Algorithm) -> Self {
        ExperimentConfig {
            instance,
            build: BuildOptions::default(),
            algorithm,
            rule: None,
            theta: None,
            k: None,
            budget: None,
        }
    }

    /// The instance with overrides applied.
    pub fn effective_spec(&self) -> InstanceSpec {
        let mut spec = self.instance.clone();
        if let Some(rule) = self.rule {
            spec.rule.kind = rule;
            if rule != AdjacencyRule::Tj {
                spec.rule.cardinality = None;
            }
        }
        if let Some(theta) = self.theta {
            spec.theta = Some(theta);
        }
        if let Some(k) = self.k {
            if spec.endpoints.interchangeable.is_some() {
                spec.endpoints.interchangeable = Some(k);
                if spec.rule.cardinality.is_some() {
                    spec.rule.cardinality = Some(k);
                }
            } else {
                spec.rule.cardinality = Some(k);
            }
        }
        spec
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// A sequence that meets the threshold, or any sequence when no
    /// threshold is set.
    Feasible,
    /// A sequence was produced but drops below the threshold, or none exists.
    Infeasible,
    /// The search budget ran out.
    Inconclusive,
}

impl Outcome {
    /// Process exit status for the outcome.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Feasible => 0,
            Outcome::Infeasible => 1,
            Outcome::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub algorithm: Algorithm,
    pub rule: AdjacencyRule,
    pub fx: f64,
    pub fy: f64,
    pub theta: Option<f64>,
    pub outcome: Outcome,
    pub sequence: Option<ReconfigSequence>,
    pub values: Vec<f64>,
    /// Calls made by the algorithm plus one per reported step value.
    pub oracle_calls: u64,
    /// Calls spent in swap's two greedy runs.
    pub greedy_calls: Option<u64>,
    pub expansions: Option<u64>,
    pub verdict: Option<Verdict>,
}

impl Report {
    /// `v = min{f(X), f(Y)}`.
    pub fn v(&self) -> f64 {
        self.fx.min(self.fy)
    }

    pub fn value(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::min)
    }

    pub fn length(&self) -> Option<usize> {
        self.sequence.as_ref().map(ReconfigSequence::length)
    }

    /// `index,set,value` with one-indexed sets.
    pub fn csv(&self) -> String {
        let mut out = String::from("index,set,value\n");
        if let Some(seq) = &self.sequence {
            for (i, (s, v)) in seq.steps().iter().zip(&self.values).enumerate() {
                writeln!(out, "{i},\"{}\",{v}", s.display_with_offset(1))
                    .expect("writing to a string");
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut line = format!(
            "algorithm={} rule={} f(X)={} f(Y)={} v={}",
            self.algorithm,
            self.rule,
            self.fx,
            self.fy,
            self.v()
        );
        if let Some(theta) = self.theta {
            write!(line, " theta={theta}").expect("writing to a string");
        }
        let status = match self.outcome {
            Outcome::Feasible => "feasible",
            Outcome::Infeasible => "infeasible",
            Outcome::Inconclusive => "inconclusive",
        };
        write!(line, " status={status}").expect("writing to a string");
        if let (Some(value), Some(len)) = (self.value(), self.length()) {
            write!(line, " value={value} length={len}").expect("writing to a string");
        }
        write!(line, " oracle_calls={}", self.oracle_calls).expect("writing to a string");
        if let Some(g) = self.greedy_calls {
            write!(line, " greedy_calls={g}").expect("writing to a string");
        }
        if let Some(e) = self.expansions {
            write!(line, " expansions={e}").expect("writing to a string");
        }
        if let Some(Verdict::Fail(v)) = &self.verdict {
            write!(line, " invalid=\"{v}\"").expect("writing to a string");
        }
        line
    }
}

/// Builds the instance, runs the algorithm, evaluates and validates the
/// output.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let inst = cfg.effective_spec().build(&cfg.build)?;
    let f = &inst.oracle;
    let fx = f.evaluate(&inst.source)?;
    let fy = f.evaluate(&inst.target)?;
    let start = f.calls();
    let mut greedy_calls = None;
    let mut expansions = None;
    let sequence = match cfg.algorithm {
        Algorithm::Swap => {
            let r = swap_reconfigure_traced(f, &inst.source, &inst.target)?;
            greedy_calls = Some(r.greedy_calls);
            Some(r.sequence)
        }
        Algorithm::Tjar => Some(tjar_reconfigure(f, &inst.source, &inst.target)?),
        Algorithm::Astar => {
            let astar_cfg = AstarConfig {
                budget: cfg.budget,
                ..AstarConfig::default()
            };
            let r = astar(&inst, &astar_cfg)?;
            expansions = Some(r.expansions);
            match r.outcome {
                SearchOutcome::Found(seq) => Some(seq),
                SearchOutcome::NoPath => None,
                SearchOutcome::Inconclusive => {
                    return Ok(Report {
                        algorithm: cfg.algorithm,
                        rule: inst.rule,
                        fx,
                        fy,
                        theta: inst.threshold,
                        outcome: Outcome::Inconclusive,
                        sequence: None,
                        values: Vec::new(),
                        oracle_calls: f.calls() - start,
                        greedy_calls,
                        expansions,
                        verdict: None,
                    })
                }
            }
        }
        Algorithm::Exact => {
            let opts = ExactOptions {
                cardinality: inst.cardinality,
                restriction: None,
            };
            if inst.threshold.is_some() {
                shortest_feasible(&inst, &opts)?
            } else {
                Some(optimal_sequence(f, &inst.source, &inst.target, inst.rule, &opts)?.1)
            }
        }
    };
    let values = match &sequence {
        Some(seq) => step_values(f, seq)?,
        None => Vec::new(),
    };
    let oracle_calls = f.calls() - start;
    let verdict = match &sequence {
        Some(seq) => Some(validate_sequence(&inst, seq)?),
        None => None,
    };
    let outcome = match &verdict {
        Some(Verdict::Ok) => Outcome::Feasible,
        _ => Outcome::Infeasible,
    };
    Ok(Report {
        algorithm: cfg.algorithm,
        rule: inst.rule,
        fx,
        fy,
        theta: inst.threshold,
        outcome,
        sequence,
        values,
        oracle_calls,
        greedy_calls,
        expansions,
        verdict,
    })
}
