//! Value-oracle access to set functions.
//!
//! A [`SetFunction`] is any deterministic map from subsets of `{0, .., n-1}`
//! to reals. An [`Oracle`] wraps one behind a shared handle and counts every
//! evaluation, which is the cost measure the algorithms report.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Declared structural properties of a set function. These are claims made by
/// the constructor; [`crate::check`] can verify them on small ground sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Properties {
    pub monotone: bool,
    pub submodular: bool,
    pub nonnegative: bool,
}

impl Properties {
    pub const MONOTONE_SUBMODULAR: Properties = Properties {
        monotone: true,
        submodular: true,
        nonnegative: true,
    };

    pub const SUBMODULAR: Properties = Properties {
        monotone: false,
        submodular: true,
        nonnegative: true,
    };

    pub const NONE: Properties = Properties {
        monotone: false,
        submodular: false,
        nonnegative: false,
    };
}

/// A deterministic set function on the ground set `{0, .., ground_size()-1}`.
///
/// Implementations must be immutable after construction: evaluating the same
/// subset twice returns the identical value.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    /// Evaluates the function. The caller guarantees `s` has the right
    /// universe size.
    fn eval(&self, s: &Subset) -> Result<f64>;

    fn properties(&self) -> Properties;

    fn name(&self) -> &str {
        "set-function"
    }
}

/// Shared, call-counting handle to a set function.
///
/// Clones share both the function and the counter.
#[derive(Clone)]
pub struct Oracle {
    func: Arc<dyn SetFunction>,
    calls: Arc<AtomicU64>,
}

impl Oracle {
    pub fn new<F: SetFunction + 'static>(func: F) -> Self {
        Oracle {
            func: Arc::new(func),
            calls: Arc::new(AtomicU64::new(0)),
        }
    }

    /// Returns `f(s)` and bumps the call counter by one.
    pub fn evaluate(&self, s: &Subset) -> Result<f64> {
        s.check_universe(self.universe_size())?;
        self.calls.fetch_add(1, Ordering::Relaxed);
        let value = self.func.eval(s)?;
        debug_assert!(
            !self.func.properties().nonnegative || value >= -1e-9,
            "{} claims nonnegativity but f({s}) = {value}",
            self.func.name()
        );
        // empty float sums are -0.0; report them as 0
        Ok(value + 0.0)
    }

    /// Number of evaluations made so far through this oracle (or any clone).
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn universe_size(&self) -> usize {
        self.func.ground_size()
    }

    pub fn properties(&self) -> Properties {
        self.func.properties()
    }

    pub fn name(&self) -> &str {
        self.func.name()
    }

    /// `f(S) = Σ_{e∈S} w_e`.
    pub fn modular(weights: Vec<f64>) -> Self {
        let n = weights.len();
        Oracle::new(Modular {
            weights,
            masked: Subset::empty(n),
        })
    }

    /// Wraps a closure. The closure must be deterministic.
    pub fn from_fn<F>(n: usize, properties: Properties, f: F) -> Self
    where
        F: Fn(&Subset) -> f64 + Send + Sync + 'static,
    {
        Oracle::new(FnFunction {
            n,
            properties,
            f: Box::new(f),
        })
    }

    /// Explicit value table indexed by bit mask (element `i` is bit `i`).
    pub fn table(n: usize, values: Vec<f64>, properties: Properties) -> Result<Self> {
        if n > 24 {
            return Err(Error::invalid("table oracles support at most 24 elements"));
        }
        if values.len() != 1 << n {
            return Err(Error::invalid(format!(
                "table over {n} elements needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(Oracle::new(Table {
            n,
            values,
            properties,
        }))
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("name", &self.name())
            .field("n", &self.universe_size())
            .field("calls", &self.calls())
            .finish()
    }
}

/// Modular function, optionally undefined on a masked set of elements.
struct Modular {
    weights: Vec<f64>,
    masked: Subset,
}

impl SetFunction for Modular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        if !s.is_disjoint(&self.masked) {
            return Err(Error::domain(format!(
                "{s} intersects the excluded set {}",
                self.masked
            )));
        }
        Ok(s.iter().map(|e| self.weights[e]).sum())
    }

    fn properties(&self) -> Properties {
        let nonneg = self
            .weights
            .iter()
            .enumerate()
            .all(|(e, &w)| w >= 0.0 || self.masked.contains(e));
        Properties {
            monotone: nonneg,
            submodular: true,
            nonnegative: nonneg,
        }
    }

    fn name(&self) -> &str {
        "modular"
    }
}

type BoxedFn = Box<dyn Fn(&Subset) -> f64 + Send + Sync>;

struct FnFunction {
    n: usize,
    properties: Properties,
    f: BoxedFn,
}

impl SetFunction for FnFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        Ok((self.f)(s))
    }

    fn properties(&self) -> Properties {
        self.properties
    }

    fn name(&self) -> &str {
        "closure"
    }
}

struct Table {
    n: usize,
    values: Vec<f64>,
    properties: Properties,
}

impl SetFunction for Table {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        Ok(self.values[s.to_mask() as usize])
    }

    fn properties(&self) -> Properties {
        self.properties
    }

    fn name(&self) -> &str {
        "table"
    }
}

/// The residual `f_R(S) = f(S ⊎ R) - f(R)`.
///
/// The residual keeps the original index space; querying it with a set that
/// meets `R` is a domain error.
struct Residual {
    base: Oracle,
    removed: Subset,
    base_value: f64,
}

impl SetFunction for Residual {
    fn ground_size(&self) -> usize {
        self.base.universe_size()
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        if !s.is_disjoint(&self.removed) {
            return Err(Error::domain(format!(
                "residual query {s} intersects the removed set {}",
                self.removed
            )));
        }
        Ok(self.base.evaluate(&s.union(&self.removed))? - self.base_value)
    }

    fn properties(&self) -> Properties {
        let p = self.base.properties();
        Properties {
            monotone: p.monotone,
            submodular: p.submodular,
            nonnegative: p.monotone,
        }
    }

    fn name(&self) -> &str {
        "residual"
    }
}

/// Builds the residual `f_R` of `oracle` with respect to `removed`.
///
/// Costs one evaluation of `f(R)` up front; every residual query costs one
/// evaluation of the base oracle.
pub fn residual(oracle: &Oracle, removed: &Subset) -> Result<Oracle> {
    let base_value = oracle.evaluate(removed)?;
    Ok(Oracle::new(Residual {
        base: oracle.clone(),
        removed: removed.clone(),
        base_value,
    }))
}

/// The modular upper bound `S ↦ Σ_{e∈S} f_R({e})` on `[n] \ R`.
///
/// For monotone submodular `f` with total curvature `κ` it sandwiches the
/// residual: `(1-κ)·bound(S) <= f_R(S) <= bound(S)`.
pub fn modular_upper_bound(oracle: &Oracle, removed: &Subset) -> Result<Oracle> {
    let n = oracle.universe_size();
    let res = residual(oracle, removed)?;
    let mut weights = vec![0.0; n];
    for e in (0..n).filter(|&e| !removed.contains(e)) {
        weights[e] = res.evaluate(&Subset::from_ids(n, [e])?)?;
    }
    Ok(Oracle::new(Modular {
        weights,
        masked: removed.clone(),
    }))
}

/// Total curvature `κ = 1 - min_e (f([n]) - f([n] \ {e})) / f({e})`.
///
/// Elements with `f({e}) = 0` contribute ratio 1. Uses exactly `2n + 1`
/// evaluations. The result is clamped into `[0, 1]`.
pub fn total_curvature(oracle: &Oracle) -> Result<f64> {
    let n = oracle.universe_size();
    let full = Subset::full(n);
    let full_value = oracle.evaluate(&full)?;
    let mut min_ratio: f64 = 1.0;
    for e in 0..n {
        let without = oracle.evaluate(&full.without(e))?;
        let single = oracle.evaluate(&Subset::from_ids(n, [e])?)?;
        if single > 0.0 {
            min_ratio = min_ratio.min((full_value - without) / single);
        }
    }
    Ok((1.0 - min_ratio).clamp(0.0, 1.0))
}
