//! Instance generators: the hardness reductions and the small
//! counterexamples that separate the algorithms.
//!
//! Each generator has a `*_spec` form that produces an instance file and a
//! convenience form that builds the [`ProblemInstance`] from it, so fixtures
//! written to disk and instances used in tests cannot drift apart.

use crate::error::{Error, Result};
use crate::instance::{BuildOptions, CnfSource, GraphSource, InstanceSpec, OracleSpec, ThetaSpec};
use crate::oracle::{Oracle, Properties, SetFunction};
use crate::oracles::cnf::{CnfFormula, Literal};
use crate::oracles::coverage::obs52_spec as obs52_coverage_spec;
use crate::oracles::graph::WeightedGraph;
use crate::reconfig::{AdjacencyRule, ProblemInstance};
use crate::subset::Subset;

pub use crate::oracles::cnf::SatAssignment;

fn build(spec: &InstanceSpec) -> Result<ProblemInstance> {
    spec.build(&BuildOptions::default())
}

/// A vertex cover reconfiguration instance: two covers of equal size.
#[derive(Clone, Debug, PartialEq)]
pub struct VcReconfigInstance {
    pub graph: WeightedGraph,
    pub cx: Subset,
    pub cy: Subset,
}

impl VcReconfigInstance {
    pub fn new(graph: WeightedGraph, cx: Subset, cy: Subset) -> Result<Self> {
        if graph.is_directed() {
            return Err(Error::invalid(
                "vertex cover instances need an undirected graph",
            ));
        }
        let n = graph.vertex_count();
        cx.check_universe(n)?;
        cy.check_universe(n)?;
        for (name, c) in [("C^x", &cx), ("C^y", &cy)] {
            if !graph.is_vertex_cover(c) {
                return Err(Error::invalid(format!(
                    "{name} = {c} is not a vertex cover"
                )));
            }
        }
        if cx.len() != cy.len() {
            return Err(Error::invalid(format!(
                "covers have sizes {} and {}",
                cx.len(),
                cy.len()
            )));
        }
        Ok(VcReconfigInstance { graph, cx, cy })
    }

    pub fn k(&self) -> usize {
        self.cx.len()
    }
}

pub fn vc_to_msreco_spec(vc: &VcReconfigInstance) -> InstanceSpec {
    InstanceSpec::new(
        OracleSpec::Incidence(GraphSource::from_graph(&vc.graph)),
        &vc.cx,
        &vc.cy,
        AdjacencyRule::Tj,
    )
    .with_cardinality(vc.k())
    .with_theta(ThetaSpec::value(vc.graph.edge_count() as f64))
}

/// Vertex cover reconfiguration as fixed-size maximization of the number of
/// covered edges: `θ = |E|`, tj steps between size-`k` sets.
pub fn vc_to_msreco(vc: &VcReconfigInstance) -> Result<ProblemInstance> {
    build(&vc_to_msreco_spec(vc))
}

/// `θ = |E| - k/2 + n/2`.
pub fn minvc_threshold(vc: &VcReconfigInstance) -> f64 {
    vc.graph.edge_count() as f64 - vc.k() as f64 / 2.0 + vc.graph.vertex_count() as f64 / 2.0
}

pub fn minvc_to_usreco_tjar_spec(vc: &VcReconfigInstance) -> InstanceSpec {
    InstanceSpec::new(
        OracleSpec::ShiftedIncidence(GraphSource::from_graph(&vc.graph)),
        &vc.cx,
        &vc.cy,
        AdjacencyRule::Tjar,
    )
    .with_theta(ThetaSpec::value(minvc_threshold(vc)))
}

/// Minimum vertex cover reconfiguration as unconstrained maximization under
/// tjar. The covers must be minimum; only their cover property is checked.
pub fn minvc_to_usreco_tjar(vc: &VcReconfigInstance) -> Result<ProblemInstance> {
    build(&minvc_to_usreco_tjar_spec(vc))
}

pub fn nae3sat_to_usreco_tar_spec(
    phi: &CnfFormula,
    sx: &SatAssignment,
    sy: &SatAssignment,
) -> Result<InstanceSpec> {
    if !phi.is_monotone() {
        return Err(Error::invalid(
            "NAE reduction needs a monotone formula with three literals per clause",
        ));
    }
    for (name, s) in [("σx", sx), ("σy", sy)] {
        if !phi.nae_satisfied_by(s)? {
            return Err(Error::invalid(format!(
                "{name} = {s} does not NAE-satisfy the formula"
            )));
        }
    }
    Ok(InstanceSpec::new(
        OracleSpec::Nae(CnfSource::from_formula(phi)),
        &sx.true_set(),
        &sy.true_set(),
        AdjacencyRule::Tar,
    )
    .with_theta(ThetaSpec::value(phi.num_clauses() as f64)))
}

/// NAE-3SAT reconfiguration as tar reconfiguration of the count of
/// NAE-satisfied clauses, `θ = m`. Sets are the true variables.
pub fn nae3sat_to_usreco_tar(
    phi: &CnfFormula,
    sx: &SatAssignment,
    sy: &SatAssignment,
) -> Result<ProblemInstance> {
    build(&nae3sat_to_usreco_tar_spec(phi, sx, sy)?)
}

/// Vertex layout of the formula graph `G_φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaGraphLayout {
    pub num_vars: usize,
    /// First vertex of each clause's clique.
    pub clause_start: Vec<usize>,
    pub vertices: usize,
}

impl FormulaGraphLayout {
    pub fn new(phi: &CnfFormula) -> Self {
        let mut next = 2 * phi.num_vars();
        let clause_start = phi
            .clauses()
            .iter()
            .map(|c| {
                let start = next;
                next += c.len();
                start
            })
            .collect();
        FormulaGraphLayout {
            num_vars: phi.num_vars(),
            clause_start,
            vertices: next,
        }
    }

    /// Vertex of the variable endpoint `x_i` (positive) or `¬x_i`.
    pub fn variable_vertex(&self, var: usize, positive: bool) -> usize {
        2 * var + usize::from(!positive)
    }

    pub fn literal_vertex(&self, clause: usize, position: usize) -> usize {
        self.clause_start[clause] + position
    }
}

/// Builds `G_φ`: an edge per variable, a clique per clause, and an edge from
/// each clause literal to the opposite endpoint of its variable.
pub fn formula_graph(phi: &CnfFormula) -> Result<(WeightedGraph, FormulaGraphLayout)> {
    let layout = FormulaGraphLayout::new(phi);
    let mut g = WeightedGraph::new(layout.vertices, false);
    for i in 0..phi.num_vars() {
        g.add_edge(
            layout.variable_vertex(i, true),
            layout.variable_vertex(i, false),
            1.0,
        )?;
    }
    for (j, clause) in phi.clauses().iter().enumerate() {
        for a in 0..clause.len() {
            for b in a + 1..clause.len() {
                g.add_edge(
                    layout.literal_vertex(j, a),
                    layout.literal_vertex(j, b),
                    1.0,
                )?;
            }
        }
        for (a, lit) in clause.iter().enumerate() {
            g.add_edge(
                layout.literal_vertex(j, a),
                layout.variable_vertex(lit.var, !lit.positive),
                1.0,
            )?;
        }
    }
    Ok((g, layout))
}

/// The maximum independent set of `G_φ` encoding a satisfying assignment:
/// the matching endpoint of every variable and the lowest-index satisfied
/// literal of every clause.
pub fn independent_set_for(
    phi: &CnfFormula,
    layout: &FormulaGraphLayout,
    a: &SatAssignment,
) -> Result<Subset> {
    if !phi.satisfied_by(a)? {
        return Err(Error::invalid(format!("{a} does not satisfy the formula")));
    }
    let mut s = Subset::empty(layout.vertices);
    for i in 0..phi.num_vars() {
        s.insert(layout.variable_vertex(i, a.value(i)));
    }
    for (j, clause) in phi.clauses().iter().enumerate() {
        let pos = clause
            .iter()
            .position(|lit: &Literal| lit.holds(a))
            .expect("a satisfied clause has a true literal");
        s.insert(layout.literal_vertex(j, pos));
    }
    Ok(s)
}

/// Recovers the assignment encoded by a cover of `G_φ`: `x_i` is true iff
/// its positive endpoint is outside the cover.
pub fn assignment_from_cover(layout: &FormulaGraphLayout, cover: &Subset) -> SatAssignment {
    SatAssignment(
        (0..layout.num_vars)
            .map(|i| !cover.contains(layout.variable_vertex(i, true)))
            .collect(),
    )
}

/// 3-SAT reconfiguration to vertex cover reconfiguration on `G_φ`. The covers
/// are complements of the independent sets from [`independent_set_for`] and
/// have size `|V| - m - n`.
pub fn sat_reconfig_to_vc_reconfig(
    phi: &CnfFormula,
    sx: &SatAssignment,
    sy: &SatAssignment,
) -> Result<VcReconfigInstance> {
    let (g, layout) = formula_graph(phi)?;
    let cx = independent_set_for(phi, &layout, sx)?.complement();
    let cy = independent_set_for(phi, &layout, sy)?.complement();
    VcReconfigInstance::new(g, cx, cy)
}

/// First ground id of the four gadget vertices `x1, x2, y1, y2`.
pub fn gadget_offset(g: &Oracle) -> usize {
    g.universe_size() - 4
}

/// Cut value of `T ∩ {x1, x2, y1, y2}` in the complete bipartite graph
/// between `{x1, x2}` and `{y1, y2}`.
pub fn k22_cut(t: &Subset, offset: usize) -> usize {
    let inside = |i: usize| t.contains(offset + i);
    let mut cut = 0;
    for a in [0, 1] {
        for b in [2, 3] {
            if inside(a) != inside(b) {
                cut += 1;
            }
        }
    }
    cut
}

struct Gadget {
    base: Oracle,
    upsilon: f64,
}

impl SetFunction for Gadget {
    fn ground_size(&self) -> usize {
        self.base.universe_size() + 4
    }

    fn eval(&self, t: &Subset) -> Result<f64> {
        let n = self.base.universe_size();
        let cut = k22_cut(t, n) as f64;
        Ok(self.upsilon / 2.0 * cut + self.base.evaluate(&t.resized(n))?)
    }

    fn properties(&self) -> Properties {
        let p = self.base.properties();
        Properties {
            monotone: false,
            submodular: p.submodular,
            nonnegative: p.nonnegative,
        }
    }

    fn name(&self) -> &str {
        "gadget"
    }
}

/// Hardness gadget around `f` on `[n]`: ground set `[n] ⊎ {x1, x2, y1, y2}`
/// and `g(T) = Υ/2 · cut(T ∩ V) + f(T ∩ [n])`, with endpoints `{x1, x2}` and
/// `{y1, y2}` under tjar.
///
/// The reduction is meaningful when `(1+ε)·OPT <= Υ <= (2+2ε)·OPT` for
/// `OPT = max_S f(S)`; choosing such a `Υ` is left to the caller.
pub fn inapprox_gadget(f: &Oracle, upsilon: f64) -> Result<ProblemInstance> {
    if !(upsilon > 0.0 && upsilon.is_finite()) {
        return Err(Error::domain(format!(
            "upsilon must be positive, got {upsilon}"
        )));
    }
    let n = f.universe_size();
    let g = Oracle::new(Gadget {
        base: f.clone(),
        upsilon,
    });
    let x = Subset::from_ids(n + 4, [n, n + 1])?;
    let y = Subset::from_ids(n + 4, [n + 2, n + 3])?;
    ProblemInstance::new(g, x, y, AdjacencyRule::Tjar)
}

/// Instance file for the gadget; the base oracle is built once to learn `n`.
pub fn inapprox_gadget_spec(
    base: OracleSpec,
    upsilon: f64,
    opts: &BuildOptions,
) -> Result<InstanceSpec> {
    let n = base.build(opts)?.universe_size();
    if !(upsilon > 0.0 && upsilon.is_finite()) {
        return Err(Error::domain(format!(
            "upsilon must be positive, got {upsilon}"
        )));
    }
    Ok(InstanceSpec::new(
        OracleSpec::Gadget {
            upsilon,
            base: Box::new(base),
        },
        &Subset::from_ids(n + 4, [n, n + 1])?,
        &Subset::from_ids(n + 4, [n + 2, n + 3])?,
        AdjacencyRule::Tjar,
    ))
}

/// Coverage counterexample on five elements, `X = {0, 1}`, `Y = {2, 3}`,
/// tj with `k = 2`. The best sequence has value 1 and must leave `X ∪ Y`;
/// swap reaches only 3/4.
pub fn obs52_instance_spec() -> InstanceSpec {
    InstanceSpec::new(
        OracleSpec::from_coverage(&obs52_coverage_spec()),
        &Subset::from_ids(5, [0, 1]).expect("static ids"),
        &Subset::from_ids(5, [2, 3]).expect("static ids"),
        AdjacencyRule::Tj,
    )
    .with_cardinality(2)
}

pub fn obs52_instance() -> ProblemInstance {
    build(&obs52_instance_spec()).expect("static instance is valid")
}

/// Cut counterexample on a perfect matching `(i, n/2 + i)` with weights
/// `1/(i+1)`, `X = {0..n/2-1}`, `Y` the rest, under tjar. Swap passes through
/// a set with cut value 0 while tjar keeps value 1.
pub fn obs54_instance_spec(n: usize) -> Result<InstanceSpec> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(Error::domain(format!(
            "n must be a positive multiple of 4, got {n}"
        )));
    }
    let half = n / 2;
    let source = GraphSource {
        vertices: Some(n),
        edges: (0..half).map(|i| [i + 1, half + i + 1]).collect(),
        values: Some((0..half).map(|i| 1.0 / (i + 1) as f64).collect()),
        file: None,
    };
    Ok(InstanceSpec::new(
        OracleSpec::Cut(source),
        &Subset::from_ids(n, 0..half)?,
        &Subset::from_ids(n, half..n)?,
        AdjacencyRule::Tjar,
    ))
}

pub fn obs54_instance(n: usize) -> Result<ProblemInstance> {
    build(&obs54_instance_spec(n)?)
}

/// Two-element function with `f(∅) = f({0,1}) = 0` and `f({0}) = f({1}) = 1`,
/// `X = {0}`, `Y = {1}` under tar: every sequence passes through value 0.
pub fn obs55_instance_spec() -> InstanceSpec {
    InstanceSpec::new(
        OracleSpec::Table {
            values: vec![0.0, 1.0, 1.0, 0.0],
            submodular: true,
            monotone: false,
        },
        &Subset::from_ids(2, [0]).expect("static ids"),
        &Subset::from_ids(2, [1]).expect("static ids"),
        AdjacencyRule::Tar,
    )
}

pub fn obs55_instance() -> ProblemInstance {
    build(&obs55_instance_spec()).expect("static instance is valid")
}
