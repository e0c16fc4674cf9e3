use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::subset::Subset;

/// Output of [`greedy`]: the chosen elements in order, the value of each
/// prefix, and the oracle calls spent.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyTrace {
    pub elements: Vec<usize>,
    /// `values[i] = f({e_1, .., e_{i+1}})`.
    pub values: Vec<f64>,
    pub calls: u64,
}

impl GreedyTrace {
    /// The set `{e_1, .., e_i}` over a universe of size `n`.
    pub fn prefix(&self, n: usize, i: usize) -> Subset {
        let mut s = Subset::empty(n);
        for &e in &self.elements[..i] {
            s.insert(e);
        }
        s
    }

    /// Marginal gains `f(S_i) - f(S_{i-1})`, given `f(∅)`.
    pub fn gains(&self, empty_value: f64) -> Vec<f64> {
        let mut prev = empty_value;
        self.values
            .iter()
            .map(|&v| {
                let g = v - prev;
                prev = v;
                g
            })
            .collect()
    }
}

/// Picks `k` elements of `ground` one at a time, each maximizing the value
/// of the grown set. Ties go to the smallest id.
///
/// Makes exactly `Σ_{i=1..k} (|ground| - i + 1)` oracle calls.
pub fn greedy(f: &Oracle, ground: &Subset, k: usize) -> Result<GreedyTrace> {
    ground.check_universe(f.universe_size())?;
    if k > ground.len() {
        return Err(Error::invalid(format!(
            "cannot pick {k} elements from a set of {}",
            ground.len()
        )));
    }
    let start = f.calls();
    let mut chosen = Subset::empty(ground.universe_size());
    let mut elements = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for e in ground.iter().filter(|&e| !chosen.contains(e)) {
            let v = f.evaluate(&chosen.with(e))?;
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((e, v));
            }
        }
        let (e, v) = best.expect("k <= |ground| leaves a candidate");
        chosen.insert(e);
        elements.push(e);
        values.push(v);
    }
    Ok(GreedyTrace {
        elements,
        values,
        calls: f.calls() - start,
    })
}
