//! Submodular reconfiguration: moving between two feasible sets of a
//! submodular function one small step at a time while keeping every
//! intermediate value above a threshold.

pub mod algorithms;
pub mod check;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod oracles;
pub mod reconfig;
pub mod reductions;
pub mod subset;

pub use algorithms::{astar, swap_reconfigure, tjar_reconfigure, AstarConfig, SearchOutcome};
pub use error::{Error, Result};
pub use exact::{optimal_sequence, optimal_value, reachable, ExactOptions};
pub use experiment::{interchangeable_greedy, run_experiment, Algorithm, ExperimentConfig, Report};
pub use instance::{load_instance, save_instance, BuildOptions, InstanceSpec};
pub use oracle::{modular_upper_bound, residual, total_curvature, Oracle, Properties, SetFunction};
pub use reconfig::{
    is_adjacent, neighbors, sequence_value, step_values, validate_sequence, AdjacencyRule,
    ProblemInstance, ReconfigSequence, ThresholdMode, Verdict, Violation,
};
pub use subset::Subset;
