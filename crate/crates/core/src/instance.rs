//! The instance file format.
//!
//! An instance file is TOML with four sections:
//!
//! ```toml
//! [oracle]
//! kind = "coverage"
//! items = 4
//! covers = [[1, 2], [3, 4], [1, 3], [2, 4], [1, 2, 3, 4]]
//! divisor = 4.0
//!
//! [endpoints]
//! x = [1, 2]
//! y = [3, 4]
//!
//! [rule]
//! kind = "tj"
//! cardinality = 2
//!
//! [theta]
//! fraction = 1.0
//! ```
//!
//! All ids are one-indexed. Data files named by `file` keys are resolved
//! relative to the instance file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::interchangeable_greedy;
use crate::io::{self, ProbabilityMode};
use crate::oracle::{Oracle, Properties};
use crate::oracles::cnf::{nae_clause_oracle, CnfFormula};
use crate::oracles::coverage::{coverage_oracle, CoverageSpec};
use crate::oracles::graph::{
    cut_oracle, incidence_oracle, shifted_incidence_oracle, WeightedGraph,
};
use crate::oracles::influence::{influence_oracle, sample_rr_sets};
use crate::oracles::logdet::{logdet_oracle, GramMatrix};
use crate::reconfig::{AdjacencyRule, ProblemInstance};
use crate::reductions::inapprox_gadget;
use crate::subset::Subset;

/// RR sets sampled when neither the file nor the caller says otherwise.
pub const DEFAULT_RR_COUNT: usize = 100_000;

fn one() -> f64 {
    1.0
}

/// A graph given inline or as an edge-list file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    /// Third column per edge: weight or probability depending on the mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

impl GraphSource {
    /// Inline form of an undirected unit-weight graph.
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let weighted = g.edges().iter().any(|e| e.weight != 1.0);
        GraphSource {
            vertices: Some(g.vertex_count()),
            edges: g.edges().iter().map(|e| [e.u + 1, e.v + 1]).collect(),
            values: weighted.then(|| g.edges().iter().map(|e| e.weight).collect()),
            file: None,
        }
    }

    pub fn load(
        &self,
        base: Option<&Path>,
        directed: bool,
        mode: ProbabilityMode,
    ) -> Result<WeightedGraph> {
        if let Some(file) = &self.file {
            let g = io::load_edge_list(&io::resolve_relative(base, file), directed, mode)?;
            if let Some(n) = self.vertices {
                if n != g.vertex_count() {
                    return Err(Error::invalid(format!(
                        "graph file has {} vertices, instance declares {n}",
                        g.vertex_count()
                    )));
                }
            }
            return Ok(g);
        }
        if let Some(values) = &self.values {
            if values.len() != self.edges.len() {
                return Err(Error::invalid(format!(
                    "{} edges but {} edge values",
                    self.edges.len(),
                    values.len()
                )));
            }
        }
        let n = self
            .vertices
            .ok_or_else(|| Error::invalid("inline graphs need `vertices`"))?;
        let mut text = format!("% 0 {n} {n}\n");
        for (i, [u, v]) in self.edges.iter().enumerate() {
            match &self.values {
                Some(vals) => writeln!(text, "{u} {v} {:e}", vals[i]),
                None => writeln!(text, "{u} {v}"),
            }
            .expect("writing to a string");
        }
        io::parse_edge_list(&text, Path::new("<inline graph>"), directed, mode)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CnfSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clauses: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

impl CnfSource {
    pub fn from_formula(phi: &CnfFormula) -> Self {
        CnfSource {
            variables: Some(phi.num_vars()),
            clauses: phi
                .clauses()
                .iter()
                .map(|c| c.iter().map(|l| l.to_dimacs()).collect())
                .collect(),
            file: None,
        }
    }

    pub fn load(&self, base: Option<&Path>) -> Result<CnfFormula> {
        if let Some(file) = &self.file {
            return io::load_cnf(&io::resolve_relative(base, file));
        }
        let n = self
            .variables
            .ok_or_else(|| Error::invalid("inline formulas need `variables`"))?;
        CnfFormula::from_dimacs(n, &self.clauses)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MatrixSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

impl MatrixSource {
    pub fn load(&self, base: Option<&Path>) -> Result<GramMatrix> {
        match (&self.matrix, &self.file) {
            (_, Some(file)) => io::load_gram(&io::resolve_relative(base, file)),
            (Some(rows), None) => GramMatrix::new(rows.clone()),
            (None, None) => Err(Error::invalid("logdet oracle needs `matrix` or `file`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfluenceSource {
    pub graph: GraphSource,
    #[serde(default)]
    pub directed: bool,
    #[serde(default = "inverse_in_degree")]
    pub probability: ProbabilityMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rr_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Previously sampled RR sets; sampling is skipped when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rr_file: Option<PathBuf>,
}

fn inverse_in_degree() -> ProbabilityMode {
    ProbabilityMode::InverseInDegree
}

/// The `[oracle]` section.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OracleSpec {
    Modular {
        weights: Vec<f64>,
    },
    Coverage {
        items: usize,
        /// One-indexed items covered by each ground element.
        covers: Vec<Vec<usize>>,
        #[serde(default = "one")]
        divisor: f64,
    },
    Cut(GraphSource),
    Incidence(GraphSource),
    ShiftedIncidence(GraphSource),
    Nae(CnfSource),
    Logdet(MatrixSource),
    Influence(InfluenceSource),
    /// Values indexed by bit mask.
    Table {
        values: Vec<f64>,
        #[serde(default)]
        submodular: bool,
        #[serde(default)]
        monotone: bool,
    },
    Gadget {
        upsilon: f64,
        base: Box<OracleSpec>,
    },
}

/// Caller-side settings that apply while building.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Directory that relative `file` keys are resolved against.
    pub base_dir: Option<PathBuf>,
    /// Overrides the file's RR sampling seed.
    pub seed: Option<u64>,
    /// Overrides the file's RR set count.
    pub rr_count: Option<usize>,
}

impl OracleSpec {
    pub fn from_coverage(spec: &CoverageSpec) -> Self {
        OracleSpec::Coverage {
            items: spec.items,
            covers: spec
                .covers
                .iter()
                .map(|c| c.iter().map(|i| i + 1).collect())
                .collect(),
            divisor: spec.divisor,
        }
    }

    pub fn build(&self, opts: &BuildOptions) -> Result<Oracle> {
        let base = opts.base_dir.as_deref();
        match self {
            OracleSpec::Modular { weights } => Ok(Oracle::modular(weights.clone())),
            OracleSpec::Coverage {
                items,
                covers,
                divisor,
            } => {
                let covers = covers
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|&i| {
                                i.checked_sub(1)
                                    .ok_or_else(|| Error::invalid("coverage items are one-indexed"))
                            })
                            .collect::<Result<Vec<usize>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                coverage_oracle(&CoverageSpec::new(*items, covers)?.with_divisor(*divisor)?)
            }
            OracleSpec::Cut(g) => cut_oracle(&g.load(base, false, ProbabilityMode::Weight)?),
            OracleSpec::Incidence(g) => {
                incidence_oracle(&g.load(base, false, ProbabilityMode::Weight)?)
            }
            OracleSpec::ShiftedIncidence(g) => {
                shifted_incidence_oracle(&g.load(base, false, ProbabilityMode::Weight)?)
            }
            OracleSpec::Nae(c) => nae_clause_oracle(&c.load(base)?),
            OracleSpec::Logdet(m) => Ok(logdet_oracle(&m.load(base)?)),
            OracleSpec::Influence(src) => {
                let g = src.graph.load(base, src.directed, src.probability)?;
                let rr = match &src.rr_file {
                    Some(file) => {
                        let rr = io::load_rr_sets(&io::resolve_relative(base, file))?;
                        if !rr.digest().is_empty() && rr.digest() != g.digest() {
                            return Err(Error::invalid(
                                "RR file was sampled from a different graph",
                            ));
                        }
                        rr
                    }
                    None => {
                        let seed = opts.seed.or(src.seed).ok_or_else(|| {
                            Error::invalid("sampling RR sets needs an explicit seed (--seed)")
                        })?;
                        let count = opts.rr_count.or(src.rr_count).unwrap_or(DEFAULT_RR_COUNT);
                        sample_rr_sets(&g, count, seed)?
                    }
                };
                Ok(influence_oracle(&rr))
            }
            OracleSpec::Table {
                values,
                submodular,
                monotone,
            } => {
                let n = values.len().trailing_zeros() as usize;
                if values.len() != 1 << n {
                    return Err(Error::invalid("table length must be a power of two"));
                }
                let props = Properties {
                    monotone: *monotone,
                    submodular: *submodular,
                    nonnegative: values.iter().all(|&v| v >= 0.0),
                };
                Oracle::table(n, values.clone(), props)
            }
            OracleSpec::Gadget {
                upsilon,
                base: inner,
            } => Ok(inapprox_gadget(&inner.build(opts)?, *upsilon)?.oracle),
        }
    }
}

/// The `[endpoints]` section: explicit sets, or `interchangeable = k` to
/// pick both with the alternating greedy.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EndpointSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interchangeable: Option<usize>,
}

impl EndpointSpec {
    pub fn explicit(x: &Subset, y: &Subset) -> Self {
        EndpointSpec {
            x: Some(x.iter().map(|e| e + 1).collect()),
            y: Some(y.iter().map(|e| e + 1).collect()),
            interchangeable: None,
        }
    }

    pub fn resolve(&self, f: &Oracle) -> Result<(Subset, Subset)> {
        let n = f.universe_size();
        let set = |ids: &[usize]| {
            let mut s = Subset::empty(n);
            for &id in ids {
                let e = id
                    .checked_sub(1)
                    .ok_or_else(|| Error::invalid("endpoint ids are one-indexed"))?;
                s.try_insert(e)?;
            }
            Ok::<Subset, Error>(s)
        };
        match (&self.x, &self.y, self.interchangeable) {
            (Some(x), Some(y), None) => Ok((set(x)?, set(y)?)),
            (None, None, Some(k)) => interchangeable_greedy(f, k),
            _ => Err(Error::invalid(
                "endpoints need either both `x` and `y` or `interchangeable`",
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub kind: AdjacencyRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cardinality: Option<usize>,
}

/// The `[theta]` section: an absolute value or a fraction of
/// `v = min{f(X), f(Y)}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ThetaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
}

impl ThetaSpec {
    pub fn value(v: f64) -> Self {
        ThetaSpec {
            value: Some(v),
            fraction: None,
        }
    }

    pub fn fraction(r: f64) -> Self {
        ThetaSpec {
            value: None,
            fraction: Some(r),
        }
    }

    /// The absolute threshold, given `v = min{f(X), f(Y)}`.
    pub fn resolve(&self, v: f64) -> Result<f64> {
        match (self.value, self.fraction) {
            (Some(t), None) => Ok(t),
            (None, Some(r)) if (0.0..=1.0).contains(&r) => Ok(r * v),
            (None, Some(r)) => Err(Error::invalid(format!("theta fraction {r} outside [0, 1]"))),
            _ => Err(Error::invalid(
                "theta needs exactly one of `value` and `fraction`",
            )),
        }
    }
}

/// A whole instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub oracle: OracleSpec,
    pub endpoints: EndpointSpec,
    pub rule: RuleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaSpec>,
}

impl InstanceSpec {
    pub fn new(oracle: OracleSpec, x: &Subset, y: &Subset, rule: AdjacencyRule) -> Self {
        InstanceSpec {
            oracle,
            endpoints: EndpointSpec::explicit(x, y),
            rule: RuleSpec {
                kind: rule,
                cardinality: None,
            },
            theta: None,
        }
    }

    pub fn with_cardinality(mut self, k: usize) -> Self {
        self.rule.cardinality = Some(k);
        self
    }

    pub fn with_theta(mut self, theta: ThetaSpec) -> Self {
        self.theta = Some(theta);
        self
    }

    /// Builds the oracle, resolves endpoints and threshold. A threshold
    /// costs two oracle calls (the endpoint values).
    pub fn build(&self, opts: &BuildOptions) -> Result<ProblemInstance> {
        let oracle = self.oracle.build(opts)?;
        let (x, y) = self.endpoints.resolve(&oracle)?;
        let mut inst = ProblemInstance::new(oracle, x, y, self.rule.kind)?;
        if let Some(k) = self.rule.cardinality {
            inst = inst.with_cardinality(k)?;
        }
        if let Some(theta) = &self.theta {
            let v = inst.endpoint_min()?;
            inst = inst.with_threshold(theta.resolve(v)?)?;
        }
        Ok(inst)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::invalid(format!("cannot render instance: {e}")))
    }

    pub fn from_toml(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() + 1)
                .unwrap_or(0);
            Error::Parse {
                path: path.to_path_buf(),
                line,
                message: e.message().to_string(),
            }
        })
    }
}

/// Reads an instance file.
pub fn load_instance(path: &Path) -> Result<InstanceSpec> {
    InstanceSpec::from_toml(&io::read_text(path)?, path)
}

pub fn save_instance(path: &Path, spec: &InstanceSpec) -> Result<()> {
    io::write_text(path, &spec.to_toml()?)
}

/// Build options whose base directory is the file's directory.
pub fn options_for_file(path: &Path) -> BuildOptions {
    BuildOptions {
        base_dir: path.parent().map(Path::to_path_buf),
        ..BuildOptions::default()
    }
}
