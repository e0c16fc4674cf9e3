//! Brute-force solvers over the whole state graph of a small instance.
//!
//! The state graph has one node per subset (or per size-`k` subset when the
//! cardinality is fixed) and one edge per adjacent pair. Every state is
//! evaluated exactly once; reachability is breadth-first search over the
//! states admitted by the threshold, and the best achievable sequence value
//! comes from adding states in decreasing value order into a union-find
//! structure until the endpoints connect.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::reconfig::{AdjacencyRule, ProblemInstance, ReconfigSequence, ThresholdMode};
use crate::subset::Subset;

/// Largest ground set whose full lattice is enumerated.
pub const LATTICE_LIMIT: usize = 20;
/// Largest number of states in a fixed-cardinality slice.
pub const SLICE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactOptions {
    /// Enumerate only size-`k` sets (tj adjacency).
    pub cardinality: Option<usize>,
    /// Only sets inside this subset are allowed.
    pub restriction: Option<Subset>,
}

impl ExactOptions {
    pub fn with_cardinality(mut self, k: usize) -> Self {
        self.cardinality = Some(k);
        self
    }

    pub fn with_restriction(mut self, r: Subset) -> Self {
        self.restriction = Some(r);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateGraphSummary {
    pub restriction: Subset,
    pub rule: AdjacencyRule,
    pub states: usize,
    /// SHA-256 over the value table.
    pub digest: String,
}

enum Index {
    Full,
    Slice(HashMap<u64, u32>),
}

/// The evaluated state graph of an instance.
pub struct StateSpace {
    n: usize,
    rule: AdjacencyRule,
    restriction: Subset,
    positions: Vec<usize>,
    states: Vec<u64>,
    values: Vec<f64>,
    index: Index,
    slice: bool,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All `r`-bit masks with exactly `k` bits, ascending.
fn combinations(r: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut m: u64 = (1u64 << k) - 1;
    let limit = 1u64 << r;
    while m < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let next = m + c;
        m = (((next ^ m) >> 2) / c) | next;
    }
    out
}

impl StateSpace {
    /// Enumerates and evaluates every state (one oracle call each).
    pub fn build(f: &Oracle, rule: AdjacencyRule, opts: &ExactOptions) -> Result<Self> {
        let n = f.universe_size();
        let restriction = match &opts.restriction {
            Some(r) => {
                r.check_universe(n)?;
                r.clone()
            }
            None => Subset::full(n),
        };
        let positions = restriction.to_vec();
        let r = positions.len();
        let (states, index, slice) = match opts.cardinality {
            Some(k) => {
                if rule != AdjacencyRule::Tj {
                    return Err(Error::invalid(format!(
                        "fixed-cardinality search uses tj adjacency, not {rule}"
                    )));
                }
                let count = binomial(r, k);
                if r > 63 || count > SLICE_LIMIT {
                    return Err(Error::BudgetExceeded(format!(
                        "C({r}, {k}) states exceed the slice limit of {SLICE_LIMIT}"
                    )));
                }
                let states = combinations(r, k);
                let map = states
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| (m, i as u32))
                    .collect();
                (states, Index::Slice(map), true)
            }
            None => {
                if r > LATTICE_LIMIT {
                    return Err(Error::BudgetExceeded(format!(
                        "lattice over {r} elements exceeds the limit of {LATTICE_LIMIT}"
                    )));
                }
                ((0..1u64 << r).collect(), Index::Full, false)
            }
        };
        let mut space = StateSpace {
            n,
            rule,
            restriction,
            positions,
            states,
            values: Vec::new(),
            index,
            slice,
        };
        space.values = space
            .states
            .par_iter()
            .map(|&m| f.evaluate(&space.to_subset(m)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(space)
    }

    fn to_subset(&self, local: u64) -> Subset {
        let mut s = Subset::empty(self.n);
        let mut m = local;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.insert(self.positions[i]);
            m &= m - 1;
        }
        s
    }

    fn lookup(&self, local: u64) -> Option<usize> {
        match &self.index {
            Index::Full => Some(local as usize),
            Index::Slice(map) => map.get(&local).map(|&i| i as usize),
        }
    }

    /// The state index of `s`, or an error if `s` is not a state.
    pub fn state_of(&self, s: &Subset) -> Result<usize> {
        s.check_universe(self.n)?;
        if !s.is_subset(&self.restriction) {
            return Err(Error::invalid(format!(
                "{s} is outside the ground restriction {}",
                self.restriction
            )));
        }
        let mut local = 0u64;
        for (i, &p) in self.positions.iter().enumerate() {
            if s.contains(p) {
                local |= 1 << i;
            }
        }
        self.lookup(local)
            .ok_or_else(|| Error::invalid(format!("{s} does not have the fixed cardinality")))
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn subset(&self, state: usize) -> Subset {
        self.to_subset(self.states[state])
    }

    pub fn value(&self, state: usize) -> f64 {
        self.values[state]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Adjacent states of `state`.
    pub fn neighbors(&self, state: usize) -> Vec<usize> {
        let m = self.states[state];
        let r = self.positions.len();
        let mut out = Vec::new();
        if self.rule.allows_add_remove() && !self.slice {
            for i in 0..r {
                out.extend(self.lookup(m ^ 1 << i));
            }
        }
        if self.rule.allows_jump() {
            for i in (0..r).filter(|&i| m >> i & 1 == 1) {
                for j in (0..r).filter(|&j| m >> j & 1 == 0) {
                    out.extend(self.lookup(m ^ 1 << i ^ 1 << j));
                }
            }
        }
        out
    }

    pub fn summary(&self) -> StateGraphSummary {
        let mut h = Sha256::new();
        for v in &self.values {
            h.update(v.to_bits().to_le_bytes());
        }
        StateGraphSummary {
            restriction: self.restriction.clone(),
            rule: self.rule,
            states: self.states.len(),
            digest: hex::encode(h.finalize()),
        }
    }

    /// Largest `θ` such that some path from `x` to `y` stays at or above it.
    pub fn bottleneck(&self, x: usize, y: usize) -> Result<f64> {
        if x == y {
            return Ok(self.values[x]);
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        // states are stored in ascending subset order, so a stable sort
        // breaks value ties by subset id
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]));
        let mut uf = UnionFind::new(self.len());
        let mut present = vec![false; self.len()];
        for s in order {
            present[s] = true;
            for t in self.neighbors(s) {
                if present[t] {
                    uf.union(s, t);
                }
            }
            if present[x] && present[y] && uf.find(x) == uf.find(y) {
                return Ok(self.values[s]);
            }
        }
        Err(Error::domain(
            "the endpoints lie in different components of the state graph",
        ))
    }

    /// Shortest path from `x` to `y` through states whose value passes `admit`.
    pub fn shortest_path(
        &self,
        x: usize,
        y: usize,
        admit: impl Fn(f64) -> bool,
    ) -> Option<Vec<usize>> {
        if !admit(self.values[x]) || !admit(self.values[y]) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.len()];
        parent[x] = x;
        let mut queue = VecDeque::from([x]);
        while let Some(s) = queue.pop_front() {
            if s == y {
                let mut path = vec![y];
                let mut cur = y;
                while cur != x {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for t in self.neighbors(s) {
                if parent[t] == usize::MAX && admit(self.values[t]) {
                    parent[t] = s;
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn sequence(&self, path: &[usize]) -> Result<ReconfigSequence> {
        ReconfigSequence::new(path.iter().map(|&s| self.subset(s)).collect())
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

/// The reconfiguration index: the best value of any sequence from `x` to `y`.
pub fn optimal_value(
    f: &Oracle,
    x: &Subset,
    y: &Subset,
    rule: AdjacencyRule,
    opts: &ExactOptions,
) -> Result<f64> {
    let space = StateSpace::build(f, rule, opts)?;
    space.bottleneck(space.state_of(x)?, space.state_of(y)?)
}

/// A shortest sequence among those achieving [`optimal_value`], with its value.
pub fn optimal_sequence(
    f: &Oracle,
    x: &Subset,
    y: &Subset,
    rule: AdjacencyRule,
    opts: &ExactOptions,
) -> Result<(f64, ReconfigSequence)> {
    let space = StateSpace::build(f, rule, opts)?;
    let (sx, sy) = (space.state_of(x)?, space.state_of(y)?);
    let best = space.bottleneck(sx, sy)?;
    let path = space
        .shortest_path(sx, sy, |v| v >= best)
        .expect("the bottleneck value admits a path");
    Ok((best, space.sequence(&path)?))
}

fn options_for(instance: &ProblemInstance) -> ExactOptions {
    ExactOptions {
        cardinality: instance.cardinality,
        restriction: None,
    }
}

/// Whether a θ-feasible sequence exists for `instance`.
pub fn reachable(instance: &ProblemInstance) -> Result<bool> {
    Ok(shortest_feasible(instance, &options_for(instance))?.is_some())
}

/// A shortest θ-feasible sequence, if any.
pub fn shortest_feasible(
    instance: &ProblemInstance,
    opts: &ExactOptions,
) -> Result<Option<ReconfigSequence>> {
    let theta = instance
        .threshold
        .ok_or_else(|| Error::invalid("reachability needs a threshold"))?;
    let space = StateSpace::build(&instance.oracle, instance.rule, opts)?;
    let (sx, sy) = (
        space.state_of(&instance.source)?,
        space.state_of(&instance.target)?,
    );
    let mode: ThresholdMode = instance.threshold_mode;
    match space.shortest_path(sx, sy, |v| mode.admits(v, theta)) {
        Some(path) => Ok(Some(space.sequence(&path)?)),
        None => Ok(None),
    }
}
