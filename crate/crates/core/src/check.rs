//! Verifiers for the declared properties of a set function.
//!
//! Exhaustive mode evaluates the whole lattice once (`2^n` calls) and tests
//! the local form of each property, which is equivalent to the global one:
//! submodularity as `f(S+a) + f(S+b) >= f(S+a+b) + f(S)` and monotonicity as
//! `f(S) <= f(S+e)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::subset::Subset;

/// Largest ground set accepted by [`CheckMode::Exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 16;

const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Counterexample {
    /// `f(base + element) - f(base) < f(larger + element) - f(larger)` with
    /// `base ⊆ larger`.
    Submodularity {
        base: Subset,
        larger: Subset,
        element: usize,
        base_gain: f64,
        larger_gain: f64,
    },
    /// `f(set + element) < f(set)`.
    Monotonicity {
        set: Subset,
        element: usize,
        before: f64,
        after: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum CheckVerdict {
    Ok,
    Violated(Counterexample),
}

impl CheckVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckVerdict::Ok)
    }
}

fn at_least(lhs: f64, rhs: f64, scale: &[f64]) -> bool {
    let magnitude = scale
        .iter()
        .filter(|v| v.is_finite())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    lhs >= rhs - TOLERANCE * magnitude
}

fn value_table(oracle: &Oracle) -> Result<Vec<f64>> {
    let n = oracle.universe_size();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive check needs n <= {EXHAUSTIVE_LIMIT}, got {n}"
        )));
    }
    (0..1u64 << n)
        .map(|mask| oracle.evaluate(&Subset::from_mask(n, mask)))
        .collect()
}

/// Values are `f(S)`, `f(S+a)`, `f(S+b)`, `f(S+a+b)`.
fn submodular_triple(
    n: usize,
    s: u64,
    a: usize,
    b: usize,
    values: [f64; 4],
) -> Option<Counterexample> {
    let [fs, fsa, fsb, fsab] = values;
    if at_least(fsa + fsb, fsab + fs, &[fs, fsa, fsb, fsab]) {
        return None;
    }
    Some(Counterexample::Submodularity {
        base: Subset::from_mask(n, s),
        larger: Subset::from_mask(n, s | 1 << b),
        element: a,
        base_gain: fsa - fs,
        larger_gain: fsab - fsb,
    })
}

/// Checks submodularity of `oracle`.
pub fn check_submodular(oracle: &Oracle, mode: CheckMode) -> Result<CheckVerdict> {
    let n = oracle.universe_size();
    match mode {
        CheckMode::Exhaustive => {
            let table = value_table(oracle)?;
            for s in 0..1u64 << n {
                for a in (0..n).filter(|&a| s >> a & 1 == 0) {
                    for b in (a + 1..n).filter(|&b| s >> b & 1 == 0) {
                        let (sa, sb) = (s | 1 << a, s | 1 << b);
                        let values = [
                            table[s as usize],
                            table[sa as usize],
                            table[sb as usize],
                            table[(sa | sb) as usize],
                        ];
                        let found = submodular_triple(n, s, a, b, values);
                        if let Some(cx) = found {
                            return Ok(CheckVerdict::Violated(cx));
                        }
                    }
                }
            }
            Ok(CheckVerdict::Ok)
        }
        CheckMode::Sampled { samples, seed } => {
            if n < 2 {
                return Ok(CheckVerdict::Ok);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let mut s = random_subset(&mut rng, n);
                let mut outside: Vec<usize> = (0..n).filter(|&e| !s.contains(e)).collect();
                while outside.len() < 2 {
                    let drop = s.iter().next().expect("n >= 2");
                    s.remove(drop);
                    outside.push(drop);
                }
                let picks: Vec<usize> = outside.choose_multiple(&mut rng, 2).copied().collect();
                let (a, b) = (picks[0].min(picks[1]), picks[0].max(picks[1]));
                let fs = oracle.evaluate(&s)?;
                let fsa = oracle.evaluate(&s.with(a))?;
                let fsb = oracle.evaluate(&s.with(b))?;
                let fsab = oracle.evaluate(&s.with(a).with(b))?;
                if !at_least(fsa + fsb, fsab + fs, &[fs, fsa, fsb, fsab]) {
                    return Ok(CheckVerdict::Violated(Counterexample::Submodularity {
                        larger: s.with(b),
                        base: s,
                        element: a,
                        base_gain: fsa - fs,
                        larger_gain: fsab - fsb,
                    }));
                }
            }
            Ok(CheckVerdict::Ok)
        }
    }
}

/// Checks monotonicity of `oracle`.
pub fn check_monotone(oracle: &Oracle, mode: CheckMode) -> Result<CheckVerdict> {
    let n = oracle.universe_size();
    match mode {
        CheckMode::Exhaustive => {
            let table = value_table(oracle)?;
            for s in 0..1u64 << n {
                for e in (0..n).filter(|&e| s >> e & 1 == 0) {
                    let (before, after) = (table[s as usize], table[(s | 1 << e) as usize]);
                    if !at_least(after, before, &[before, after]) {
                        return Ok(CheckVerdict::Violated(Counterexample::Monotonicity {
                            set: Subset::from_mask(n, s),
                            element: e,
                            before,
                            after,
                        }));
                    }
                }
            }
            Ok(CheckVerdict::Ok)
        }
        CheckMode::Sampled { samples, seed } => {
            if n == 0 {
                return Ok(CheckVerdict::Ok);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let mut s = random_subset(&mut rng, n);
                let e = rng.gen_range(0..n);
                s.remove(e);
                let before = oracle.evaluate(&s)?;
                let after = oracle.evaluate(&s.with(e))?;
                if !at_least(after, before, &[before, after]) {
                    return Ok(CheckVerdict::Violated(Counterexample::Monotonicity {
                        set: s,
                        element: e,
                        before,
                        after,
                    }));
                }
            }
            Ok(CheckVerdict::Ok)
        }
    }
}

fn random_subset(rng: &mut impl Rng, n: usize) -> Subset {
    let mut s = Subset::empty(n);
    for e in 0..n {
        if rng.gen_bool(0.5) {
            s.insert(e);
        }
    }
    s
}
