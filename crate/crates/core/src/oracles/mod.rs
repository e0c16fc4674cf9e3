//! Concrete set functions.

pub mod cnf;
pub mod coverage;
pub mod graph;
pub mod influence;
pub mod logdet;

pub use cnf::{nae_clause_oracle, CnfFormula, Literal, SatAssignment};
pub use coverage::{coverage_oracle, CoverageSpec};
pub use graph::{cut_oracle, incidence_oracle, shifted_incidence_oracle, Edge, WeightedGraph};
pub use influence::{exact_influence, influence_oracle, sample_rr_sets, RrSetCollection};
pub use logdet::{logdet_oracle, GramMatrix};
