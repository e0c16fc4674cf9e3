use crate::algorithms::greedy::greedy;
use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::reconfig::ReconfigSequence;
use crate::subset::Subset;

/// Shrinks `X` down its greedy prefixes to a single element, jumps to the
/// first greedy element of `Y`, then grows back up `Y`'s prefixes.
///
/// Consecutive duplicates are collapsed, so the output is valid under tjar
/// adjacency. For nonnegative submodular `f` the value is at least
/// `min{f(X), f(Y)} / n`.
pub fn tjar_reconfigure(f: &Oracle, x: &Subset, y: &Subset) -> Result<ReconfigSequence> {
    let n = f.universe_size();
    x.check_universe(n)?;
    y.check_universe(n)?;
    if x.is_empty() || y.is_empty() {
        return Err(Error::invalid(
            "tjar reconfiguration needs nonempty endpoints",
        ));
    }
    let tx = greedy(f, x, x.len())?;
    let ty = greedy(f, y, y.len())?;
    let mut steps: Vec<Subset> = Vec::with_capacity(x.len() + y.len());
    let prefixes = (1..=x.len())
        .rev()
        .map(|i| tx.prefix(n, i))
        .chain((1..=y.len()).map(|i| ty.prefix(n, i)));
    for s in prefixes {
        if steps.last() != Some(&s) {
            steps.push(s);
        }
    }
    ReconfigSequence::new(steps)
}
