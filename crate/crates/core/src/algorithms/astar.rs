//! A* search for a shortest θ-feasible reconfiguration sequence.
//!
//! Follows the textbook open/close discipline: a node already in the open
//! list is reinserted when a shorter route to it is found, and a closed node
//! is reopened. Among nodes with equal score the most recently pushed is
//! expanded first.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::reconfig::{neighbors, AdjacencyRule, ProblemInstance, ReconfigSequence};
use crate::subset::Subset;

/// Remaining-distance estimate used to order the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Heuristic {
    /// The admissible, consistent estimate for the instance's rule.
    #[default]
    RuleDefault,
    /// `h ≡ 0`, i.e. breadth-first order.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AstarConfig {
    pub heuristic: Heuristic,
    /// Maximum number of expansions; `None` means `2^min(n, 24)`.
    pub budget: Option<u64>,
}

impl Default for AstarConfig {
    fn default() -> Self {
        AstarConfig {
            heuristic: Heuristic::RuleDefault,
            budget: None,
        }
    }
}

impl AstarConfig {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_heuristic(mut self, heuristic: Heuristic) -> Self {
        self.heuristic = heuristic;
        self
    }
}

pub fn default_budget(n: usize) -> u64 {
    1u64 << n.min(24)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    /// A shortest feasible sequence.
    Found(ReconfigSequence),
    /// The feasible component of `X` does not contain `Y`.
    NoPath,
    /// The expansion budget ran out first.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AstarResult {
    pub outcome: SearchOutcome,
    pub expansions: u64,
    /// Oracle calls made by the search; one per distinct subset tested.
    pub calls: u64,
}

/// Twice the default heuristic, so scores stay integral.
fn doubled_heuristic(rule: AdjacencyRule, s: &Subset, y: &Subset) -> u64 {
    let out = s.difference_len(y) as u64;
    let missing = y.difference_len(s) as u64;
    match rule {
        AdjacencyRule::Tj => out + missing,
        AdjacencyRule::Tjar => 2 * out.max(missing),
        AdjacencyRule::Tar => 2 * (out + missing),
    }
}

/// The rule's default heuristic towards `y`:
/// tj `(|S\Y| + |Y\S|)/2`, tjar `max(|S\Y|, |Y\S|)`, tar `|S△Y|`.
pub fn default_heuristic(rule: AdjacencyRule, y: &Subset) -> impl Fn(&Subset) -> f64 {
    let y = y.clone();
    move |s| doubled_heuristic(rule, s, &y) as f64 / 2.0
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Open(u64, u64),
    Closed,
}

/// Runs A* on `instance`, which must carry a threshold.
pub fn astar(instance: &ProblemInstance, cfg: &AstarConfig) -> Result<AstarResult> {
    let theta = instance
        .threshold
        .ok_or_else(|| Error::invalid("A* needs a threshold"))?;
    let f = &instance.oracle;
    let start_calls = f.calls();
    let rule = instance.rule;
    let y = &instance.target;
    let budget = cfg
        .budget
        .unwrap_or_else(|| default_budget(instance.universe_size()));
    if budget == 0 {
        return Err(Error::invalid("the expansion budget must be positive"));
    }
    let h = |s: &Subset| match cfg.heuristic {
        Heuristic::RuleDefault => doubled_heuristic(rule, s, y),
        Heuristic::Zero => 0,
    };

    let mut ids: HashMap<Subset, usize> = HashMap::new();
    let mut sets: Vec<Subset> = Vec::new();
    let mut g: Vec<u64> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut status: Vec<Option<Status>> = Vec::new();
    let mut feasible: HashMap<Subset, bool> = HashMap::new();
    // keyed by (doubled score, reversed push order, id): the first entry is
    // the lowest score, most recent push
    let mut open: BTreeSet<(u64, Reverse<u64>, usize)> = BTreeSet::new();
    let mut pushes = 0u64;

    let mut intern = |s: Subset,
                      sets: &mut Vec<Subset>,
                      g: &mut Vec<u64>,
                      parent: &mut Vec<Option<usize>>,
                      status: &mut Vec<Option<Status>>| {
        *ids.entry(s.clone()).or_insert_with(|| {
            sets.push(s);
            g.push(u64::MAX);
            parent.push(None);
            status.push(None);
            sets.len() - 1
        })
    };

    let x = intern(
        instance.source.clone(),
        &mut sets,
        &mut g,
        &mut parent,
        &mut status,
    );
    g[x] = 0;
    let score = h(&sets[x]);
    open.insert((score, Reverse(pushes), x));
    status[x] = Some(Status::Open(score, pushes));
    pushes += 1;

    let mut expansions = 0u64;
    while let Some(entry) = open.pop_first() {
        let s = entry.2;
        status[s] = Some(Status::Closed);
        if &sets[s] == y {
            let mut path = vec![sets[s].clone()];
            let mut cur = s;
            while let Some(p) = parent[cur] {
                path.push(sets[p].clone());
                cur = p;
            }
            path.reverse();
            return Ok(AstarResult {
                outcome: SearchOutcome::Found(ReconfigSequence::new(path)?),
                expansions,
                calls: f.calls() - start_calls,
            });
        }
        if expansions == budget {
            return Ok(AstarResult {
                outcome: SearchOutcome::Inconclusive,
                expansions,
                calls: f.calls() - start_calls,
            });
        }
        expansions += 1;
        let current = sets[s].clone();
        for t_set in neighbors(rule, &current) {
            let ok = match feasible.get(&t_set) {
                Some(&ok) => ok,
                None => {
                    let ok = instance.threshold_mode.admits(f.evaluate(&t_set)?, theta);
                    feasible.insert(t_set.clone(), ok);
                    ok
                }
            };
            if !ok {
                continue;
            }
            let t = intern(t_set, &mut sets, &mut g, &mut parent, &mut status);
            let candidate = g[s] + 1;
            match status[t] {
                Some(Status::Open(old_score, order)) if candidate < g[t] => {
                    open.remove(&(old_score, Reverse(order), t));
                }
                Some(Status::Closed) if candidate < g[t] => {}
                None => {}
                _ => continue,
            }
            g[t] = candidate;
            parent[t] = Some(s);
            let score = 2 * candidate + h(&sets[t]);
            open.insert((score, Reverse(pushes), t));
            status[t] = Some(Status::Open(score, pushes));
            pushes += 1;
        }
    }
    Ok(AstarResult {
        outcome: SearchOutcome::NoPath,
        expansions,
        calls: f.calls() - start_calls,
    })
}
