use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Properties, SetFunction};
use crate::subset::Subset;

/// Ground element `i` covers the items `covers[i] ⊆ {0, .., items-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageSpec {
    pub items: usize,
    pub covers: Vec<Vec<usize>>,
    #[serde(default = "one")]
    pub divisor: f64,
}

fn one() -> f64 {
    1.0
}

impl CoverageSpec {
    pub fn new(items: usize, covers: Vec<Vec<usize>>) -> Result<Self> {
        let spec = CoverageSpec {
            items,
            covers,
            divisor: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_divisor(mut self, divisor: f64) -> Result<Self> {
        self.divisor = divisor;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.divisor > 0.0 && self.divisor.is_finite()) {
            return Err(Error::invalid(format!(
                "coverage divisor must be positive, got {}",
                self.divisor
            )));
        }
        for (i, cover) in self.covers.iter().enumerate() {
            if let Some(&bad) = cover.iter().find(|&&item| item >= self.items) {
                return Err(Error::invalid(format!(
                    "element {i} covers item {bad}, but there are only {} items",
                    self.items
                )));
            }
        }
        Ok(())
    }
}

struct Coverage {
    covers: Vec<Subset>,
    items: usize,
    divisor: f64,
}

impl SetFunction for Coverage {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        let covered = s.iter().fold(Subset::empty(self.items), |acc, e| {
            acc.union(&self.covers[e])
        });
        Ok(covered.len() as f64 / self.divisor)
    }

    fn properties(&self) -> Properties {
        Properties::MONOTONE_SUBMODULAR
    }

    fn name(&self) -> &str {
        "coverage"
    }
}

/// `f(S) = |⋃_{i∈S} covers[i]| / divisor`.
pub fn coverage_oracle(spec: &CoverageSpec) -> Result<Oracle> {
    spec.validate()?;
    let covers = spec
        .covers
        .iter()
        .map(|c| Subset::from_ids(spec.items, c.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Oracle::new(Coverage {
        covers,
        items: spec.items,
        divisor: spec.divisor,
    }))
}

/// The five-element coverage function over items `{a,b,c,d}` normalized by 4:
/// `{a,b}, {c,d}, {a,c}, {b,d}, {a,b,c,d}`.
pub fn obs52_spec() -> CoverageSpec {
    CoverageSpec::new(
        4,
        vec![
            vec![0, 1],
            vec![2, 3],
            vec![0, 2],
            vec![1, 3],
            vec![0, 1, 2, 3],
        ],
    )
    .and_then(|s| s.with_divisor(4.0))
    .expect("static spec is valid")
}

pub fn obs52_coverage() -> Oracle {
    coverage_oracle(&obs52_spec()).expect("static spec is valid")
}
