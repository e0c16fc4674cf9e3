//! Constructive algorithms: greedy, the swap and tjar approximations, and A*.

pub mod astar;
pub mod greedy;
pub mod swap;
pub mod tjar;

pub use astar::{astar, default_heuristic, AstarConfig, AstarResult, Heuristic, SearchOutcome};
pub use greedy::{greedy, GreedyTrace};
pub use swap::{swap_reconfigure, swap_reconfigure_traced, SwapResult};
pub use tjar::tjar_reconfigure;
