//! Random instance factories and small independent reference solvers shared
//! by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subreco::oracles::{
    coverage_oracle, cut_oracle, CnfFormula, CoverageSpec, SatAssignment, WeightedGraph,
};
use subreco::{AdjacencyRule, Oracle, Properties, Subset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive combination of one to three random coverage functions.
pub fn coverage_mixture(rng: &mut ChaCha8Rng, n: usize) -> Oracle {
    let parts: Vec<(f64, Oracle)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let items = rng.gen_range(2..=16);
            let covers = (0..n)
                .map(|_| (0..items).filter(|_| rng.gen_bool(0.25)).collect())
                .collect();
            let spec = CoverageSpec::new(items, covers).unwrap();
            (rng.gen_range(0.5..2.0), coverage_oracle(&spec).unwrap())
        })
        .collect();
    Oracle::from_fn(n, Properties::MONOTONE_SUBMODULAR, move |s| {
        parts.iter().map(|(w, f)| w * f.evaluate(s).unwrap()).sum()
    })
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, weighted: bool) -> WeightedGraph {
    let mut g = WeightedGraph::new(n, false);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let w = if weighted {
                    rng.gen_range(0.1..1.0)
                } else {
                    1.0
                };
                g.add_edge(u, v, w).unwrap();
            }
        }
    }
    g
}

pub fn random_cut(rng: &mut ChaCha8Rng, n: usize) -> Oracle {
    cut_oracle(&random_graph(rng, n, 0.4, true)).unwrap()
}

/// Nonnegative submodular: a cut, a coverage mixture, or their sum.
pub fn random_submodular(rng: &mut ChaCha8Rng, n: usize) -> Oracle {
    match rng.gen_range(0..3) {
        0 => random_cut(rng, n),
        1 => coverage_mixture(rng, n),
        _ => {
            let a = random_cut(rng, n);
            let b = coverage_mixture(rng, n);
            Oracle::from_fn(n, Properties::SUBMODULAR, move |s| {
                a.evaluate(s).unwrap() + b.evaluate(s).unwrap()
            })
        }
    }
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Subset {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    Subset::from_ids(n, ids[..k].iter().copied()).unwrap()
}

pub fn value_table(f: &Oracle) -> Vec<f64> {
    let n = f.universe_size();
    (0..1u64 << n)
        .map(|m| f.evaluate(&Subset::from_mask(n, m)).unwrap())
        .collect()
}

/// Adjacency written directly from the definitions on bit masks.
pub fn masks_adjacent(rule: AdjacencyRule, a: u64, b: u64) -> bool {
    let diff = (a ^ b).count_ones();
    let tj = diff == 2 && a.count_ones() == b.count_ones();
    let tar = diff == 1;
    match rule {
        AdjacencyRule::Tj => tj,
        AdjacencyRule::Tar => tar,
        AdjacencyRule::Tjar => tj || tar,
    }
}

/// Breadth-first distances over the masks admitted by `ok`, by scanning all
/// pairs. `None` if `y` is unreachable from `x`.
pub fn bfs_distance(
    n: usize,
    rule: AdjacencyRule,
    ok: &dyn Fn(u64) -> bool,
    x: u64,
    y: u64,
) -> Option<usize> {
    if !ok(x) || !ok(y) {
        return None;
    }
    let states = 1usize << n;
    let mut dist = vec![usize::MAX; states];
    dist[x as usize] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(s) = queue.pop_front() {
        if s == y {
            return Some(dist[s as usize]);
        }
        for t in 0..states as u64 {
            if dist[t as usize] == usize::MAX && masks_adjacent(rule, s, t) && ok(t) {
                dist[t as usize] = dist[s as usize] + 1;
                queue.push_back(t);
            }
        }
    }
    None
}

/// Widest-path value by repeated relaxation: `best[t] = max(best[t],
/// min(best[s], f(t)))` until nothing changes.
pub fn maxmin_dp(
    n: usize,
    rule: AdjacencyRule,
    table: &[f64],
    x: u64,
    y: u64,
    allowed: &dyn Fn(u64) -> bool,
) -> f64 {
    let states = 1usize << n;
    let mut best = vec![f64::NEG_INFINITY; states];
    best[x as usize] = table[x as usize];
    loop {
        let mut changed = false;
        for s in 0..states as u64 {
            if best[s as usize] == f64::NEG_INFINITY || !allowed(s) {
                continue;
            }
            for t in 0..states as u64 {
                if allowed(t) && masks_adjacent(rule, s, t) {
                    let cand = best[s as usize].min(table[t as usize]);
                    if cand > best[t as usize] {
                        best[t as usize] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return best[y as usize];
        }
    }
}

/// Random formula with clauses of one to three literals on distinct
/// variables.
pub fn random_cnf(
    rng: &mut ChaCha8Rng,
    vars: usize,
    clauses: usize,
    monotone3: bool,
) -> CnfFormula {
    let cs: Vec<Vec<i64>> = (0..clauses)
        .map(|_| {
            let width = if monotone3 {
                3
            } else {
                rng.gen_range(1..=3.min(vars))
            };
            let mut ids: Vec<i64> = (1..=vars as i64).collect();
            ids.shuffle(rng);
            ids[..width]
                .iter()
                .map(|&v| {
                    if monotone3 || rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::from_dimacs(vars, &cs).unwrap()
}

pub fn all_assignments(vars: usize) -> impl Iterator<Item = SatAssignment> {
    (0..1u64 << vars).map(move |m| SatAssignment((0..vars).map(|i| m >> i & 1 == 1).collect()))
}

/// Minimum vertex cover size by brute force.
pub fn min_cover_size(g: &WeightedGraph) -> usize {
    let n = g.vertex_count();
    (0..1u64 << n)
        .map(|m| Subset::from_mask(n, m))
        .filter(|s| g.is_vertex_cover(s))
        .map(|s| s.len())
        .min()
        .unwrap()
}

pub fn min_covers(g: &WeightedGraph) -> Vec<Subset> {
    let n = g.vertex_count();
    let k = min_cover_size(g);
    (0..1u64 << n)
        .map(|m| Subset::from_mask(n, m))
        .filter(|s| s.len() == k && g.is_vertex_cover(s))
        .collect()
}

/// Random subset whose size is uniform in `min..=n`.
pub fn sized_subset(rng: &mut ChaCha8Rng, n: usize, min: usize) -> Subset {
    let k = rng.gen_range(min..=n);
    random_subset(rng, n, k)
}

/// `f` viewed as a function on the elements of `keep`, re-indexed `0..|keep|`.
pub fn restricted(f: &Oracle, keep: &Subset) -> Oracle {
    let ids = keep.to_vec();
    let n = f.universe_size();
    let f = f.clone();
    Oracle::from_fn(ids.len(), f.properties(), move |s| {
        f.evaluate(&Subset::from_ids(n, s.iter().map(|i| ids[i])).unwrap())
            .unwrap()
    })
}
