use crate::algorithms::greedy::greedy;
use crate::error::{Error, Result};
use crate::oracle::{residual, Oracle};
use crate::reconfig::ReconfigSequence;
use crate::subset::Subset;

/// Output of [`swap_reconfigure_traced`].
#[derive(Clone, Debug)]
pub struct SwapResult {
    pub sequence: ReconfigSequence,
    /// `X ∩ Y`, kept in every step.
    pub common: Subset,
    /// Greedy order `x_1, .., x_k'` of `X \ R` under the residual.
    pub x_order: Vec<usize>,
    pub y_order: Vec<usize>,
    /// Calls made by the two greedy runs, `k'(k'+1)` in total.
    pub greedy_calls: u64,
    /// All calls made, including the one evaluation of `f(R)`.
    pub calls: u64,
}

/// Token-jumping sequence from `X` to `Y` that removes the weakest remaining
/// element of `X` and adds the strongest missing element of `Y` at each step.
///
/// With `R = X ∩ Y`, step `i` is `{x_1..x_{k'-i}} ⊎ {y_1..y_i} ⊎ R`, where the
/// orders come from greedy runs on `f_R`. For monotone submodular `f` the
/// value is at least `max{1/2, (1-κ)²} · min{f(X), f(Y)}`.
pub fn swap_reconfigure(f: &Oracle, x: &Subset, y: &Subset) -> Result<ReconfigSequence> {
    Ok(swap_reconfigure_traced(f, x, y)?.sequence)
}

pub fn swap_reconfigure_traced(f: &Oracle, x: &Subset, y: &Subset) -> Result<SwapResult> {
    let n = f.universe_size();
    x.check_universe(n)?;
    y.check_universe(n)?;
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "endpoints must have equal size, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let start = f.calls();
    let common = x.intersection(y);
    let xs = x.difference(&common);
    let ys = y.difference(&common);
    let k = xs.len();
    let fr = residual(f, &common)?;
    let tx = greedy(&fr, &xs, k)?;
    let ty = greedy(&fr, &ys, k)?;

    let mut steps = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut s = common.clone();
        for &e in &tx.elements[..k - i] {
            s.insert(e);
        }
        for &e in &ty.elements[..i] {
            s.insert(e);
        }
        steps.push(s);
    }
    Ok(SwapResult {
        sequence: ReconfigSequence::new(steps)?,
        common,
        x_order: tx.elements,
        y_order: ty.elements,
        greedy_calls: tx.calls + ty.calls,
        calls: f.calls() - start,
    })
}
