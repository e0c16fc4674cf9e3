//! Independent-cascade influence via reverse reachable (RR) sets.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Properties, SetFunction};
use crate::oracles::graph::WeightedGraph;
use crate::subset::Subset;

/// Largest edge count accepted by [`exact_influence`].
pub const EXACT_EDGE_LIMIT: usize = 20;

/// A frozen sample of RR sets together with how it was produced.
#[derive(Clone, Debug, PartialEq)]
pub struct RrSetCollection {
    n: usize,
    sets: Vec<Subset>,
    seed: u64,
    digest: String,
}

impl RrSetCollection {
    pub fn from_parts(n: usize, sets: Vec<Subset>, seed: u64, digest: String) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::invalid("an RR collection needs at least one set"));
        }
        for (i, s) in sets.iter().enumerate() {
            s.check_universe(n)?;
            if s.is_empty() {
                return Err(Error::invalid(format!("RR set {} is empty", i + 1)));
            }
        }
        Ok(RrSetCollection {
            n,
            sets,
            seed,
            digest,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Digest of the graph the sets were sampled from.
    pub fn digest(&self) -> &str {
        &self.digest
    }
}

fn incoming_arcs(g: &WeightedGraph) -> Result<Vec<Vec<(usize, f64)>>> {
    if !g.is_directed() {
        return Err(Error::invalid(
            "influence needs a directed graph; split undirected edges into arcs first",
        ));
    }
    let mut incoming = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        let p = e.probability.ok_or_else(|| {
            Error::invalid(format!(
                "arc ({}, {}) has no activation probability",
                e.u, e.v
            ))
        })?;
        incoming[e.v].push((e.u, p));
    }
    Ok(incoming)
}

fn sample_one(incoming: &[Vec<(usize, f64)>], seed: u64, index: u64) -> Subset {
    let n = incoming.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let root = rng.gen_range(0..n);
    let mut found = Subset::empty(n);
    found.insert(root);
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        for &(u, p) in &incoming[w] {
            if found.contains(u) {
                continue;
            }
            if rng.gen::<f64>() < p {
                found.insert(u);
                queue.push_back(u);
            }
        }
    }
    found
}

/// Samples `count` RR sets. Sample `i` uses its own generator seeded from
/// `(seed, i)`, so the output does not depend on thread scheduling.
pub fn sample_rr_sets(g: &WeightedGraph, count: usize, seed: u64) -> Result<RrSetCollection> {
    if count == 0 {
        return Err(Error::invalid("RR set count must be positive"));
    }
    if g.vertex_count() == 0 {
        return Err(Error::invalid("cannot sample RR sets on an empty graph"));
    }
    let incoming = incoming_arcs(g)?;
    let sets: Vec<Subset> = (0..count as u64)
        .into_par_iter()
        .map(|i| sample_one(&incoming, seed, i))
        .collect();
    RrSetCollection::from_parts(g.vertex_count(), sets, seed, g.digest())
}

struct Influence {
    n: usize,
    count: usize,
    /// `index[v]` lists the RR sets containing `v`.
    index: Vec<Vec<u32>>,
}

impl SetFunction for Influence {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        let mut hit = vec![false; self.count];
        let mut covered = 0usize;
        for v in s {
            for &r in &self.index[v] {
                let slot = &mut hit[r as usize];
                if !*slot {
                    *slot = true;
                    covered += 1;
                }
            }
        }
        Ok(self.n as f64 * covered as f64 / self.count as f64)
    }

    fn properties(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn name(&self) -> &str {
        "influence"
    }
}

/// `f(S) = n · |{R : R ∩ S ≠ ∅}| / count`.
pub fn influence_oracle(rr: &RrSetCollection) -> Oracle {
    let mut index = vec![Vec::new(); rr.n];
    for (r, set) in rr.sets.iter().enumerate() {
        for v in set {
            index[v].push(r as u32);
        }
    }
    Oracle::new(Influence {
        n: rr.n,
        count: rr.sets.len(),
        index,
    })
}

/// Expected number of vertices activated from `s`, by enumerating all
/// `2^|E|` live-edge outcomes.
pub fn exact_influence(g: &WeightedGraph, s: &Subset) -> Result<f64> {
    s.check_universe(g.vertex_count())?;
    incoming_arcs(g)?;
    let m = g.edge_count();
    if m > EXACT_EDGE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "exact influence enumerates 2^|E| outcomes; |E| = {m} exceeds {EXACT_EDGE_LIMIT}"
        )));
    }
    let edges = g.edges();
    let n = g.vertex_count();
    let mut total = 0.0;
    for live in 0..1u32 << m {
        let mut prob = 1.0;
        let mut out = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            let p = e.probability.unwrap_or(1.0);
            if live >> i & 1 == 1 {
                prob *= p;
                out[e.u].push(e.v);
            } else {
                prob *= 1.0 - p;
            }
        }
        if prob == 0.0 {
            continue;
        }
        let mut reached = s.clone();
        let mut queue: VecDeque<usize> = s.iter().collect();
        while let Some(u) = queue.pop_front() {
            for &v in &out[u] {
                if !reached.contains(v) {
                    reached.insert(v);
                    queue.push_back(v);
                }
            }
        }
        total += prob * reached.len() as f64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, ids: &[usize]) -> Subset {
        Subset::from_ids(n, ids.iter().copied()).unwrap()
    }

    #[test]
    fn no_edges_gives_singletons() {
        let g = WeightedGraph::influence(4, &[]).unwrap();
        let rr = sample_rr_sets(&g, 200, 9).unwrap();
        assert!(rr.sets().iter().all(|s| s.len() == 1));
        let f = influence_oracle(&rr);
        assert_eq!(f.evaluate(&Subset::full(4)).unwrap(), 4.0);
        assert_eq!(f.evaluate(&Subset::empty(4)).unwrap(), 0.0);
    }

    #[test]
    fn deterministic_arc() {
        let g = WeightedGraph::influence(2, &[(0, 1, 1.0)]).unwrap();
        let rr = sample_rr_sets(&g, 100, 1).unwrap();
        for s in rr.sets() {
            if s.contains(1) {
                assert_eq!(s.len(), 2);
            } else {
                assert_eq!(s, &set(2, &[0]));
            }
        }
    }

    #[test]
    fn reproducible_and_seed_sensitive() {
        let g = WeightedGraph::influence(3, &[(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        let a = sample_rr_sets(&g, 500, 42).unwrap();
        let b = sample_rr_sets(&g, 500, 42).unwrap();
        let c = sample_rr_sets(&g, 500, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.sets(), c.sets());
        assert_eq!(a.digest(), g.digest());
    }

    #[test]
    fn single_arc_estimate() {
        let g = WeightedGraph::influence(2, &[(0, 1, 0.3)]).unwrap();
        let rr = sample_rr_sets(&g, 100_000, 7).unwrap();
        let est = influence_oracle(&rr).evaluate(&set(2, &[0])).unwrap();
        assert!((est - 1.3).abs() < 0.05, "{est}");
    }

    #[test]
    fn exact_examples() {
        let g = WeightedGraph::influence(2, &[(0, 1, 0.3)]).unwrap();
        assert!((exact_influence(&g, &set(2, &[0])).unwrap() - 1.3).abs() < 1e-12);
        assert_eq!(exact_influence(&g, &Subset::empty(2)).unwrap(), 0.0);
        let path = WeightedGraph::influence(3, &[(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        assert!((exact_influence(&path, &set(3, &[0])).unwrap() - 1.75).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = WeightedGraph::influence(2, &[(0, 1, 0.3)]).unwrap();
        assert!(sample_rr_sets(&g, 0, 1).is_err());
        let und = WeightedGraph::undirected(2, &[(0, 1)]).unwrap();
        assert!(sample_rr_sets(&und, 10, 1).is_err());
        let arcs: Vec<_> = (0..21).map(|i| (i, i + 1, 0.5)).collect();
        let long = WeightedGraph::influence(22, &arcs).unwrap();
        assert!(matches!(
            exact_influence(&long, &Subset::empty(22)),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
