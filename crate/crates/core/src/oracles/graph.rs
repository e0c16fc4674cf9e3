use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Properties, SetFunction};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub probability: Option<f64>,
}

/// Simple edge-list graph. Undirected edges are stored once.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(n: usize, directed: bool) -> Self {
        WeightedGraph {
            n,
            directed,
            edges: Vec::new(),
        }
    }

    /// Undirected graph with unit weights.
    pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n, false);
        for &(u, v) in edges {
            g.add_edge(u, v, 1.0)?;
        }
        Ok(g)
    }

    /// Directed graph with per-arc activation probabilities.
    pub fn influence(n: usize, arcs: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n, true);
        for &(u, v, p) in arcs {
            g.add_arc(u, v, p)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<()> {
        self.push(Edge {
            u,
            v,
            weight,
            probability: None,
        })
    }

    /// Adds an edge with unit weight and activation probability `p`.
    pub fn add_arc(&mut self, u: usize, v: usize, p: f64) -> Result<()> {
        self.push(Edge {
            u,
            v,
            weight: 1.0,
            probability: Some(p),
        })
    }

    fn push(&mut self, e: Edge) -> Result<()> {
        if e.u >= self.n || e.v >= self.n {
            return Err(Error::invalid(format!(
                "edge ({}, {}) has an endpoint outside 0..{}",
                e.u, e.v, self.n
            )));
        }
        if e.u == e.v {
            return Err(Error::invalid(format!("self-loop on vertex {}", e.u)));
        }
        if !(e.weight >= 0.0 && e.weight.is_finite()) {
            return Err(Error::invalid(format!(
                "edge weight {} must be nonnegative",
                e.weight
            )));
        }
        if let Some(p) = e.probability {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Whether every edge has an endpoint in `s`.
    pub fn is_vertex_cover(&self, s: &Subset) -> bool {
        self.edges
            .iter()
            .all(|e| s.contains(e.u) || s.contains(e.v))
    }

    /// Replaces each undirected edge by two opposite arcs.
    pub fn directionalized(&self) -> WeightedGraph {
        if self.directed {
            return self.clone();
        }
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            edges.push(*e);
            edges.push(Edge {
                u: e.v,
                v: e.u,
                ..*e
            });
        }
        WeightedGraph {
            n: self.n,
            directed: true,
            edges,
        }
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.v] += 1;
            if !self.directed {
                deg[e.u] += 1;
            }
        }
        deg
    }

    /// Directed copy with `p(u, v) = 1 / indeg(v)`.
    pub fn with_inverse_in_degree(&self) -> WeightedGraph {
        let mut g = self.directionalized();
        let deg = g.in_degrees();
        for e in &mut g.edges {
            e.probability = Some(1.0 / deg[e.v] as f64);
        }
        g
    }

    /// SHA-256 over a canonical text rendering of the graph.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{} {}\n", self.n, self.directed));
        for e in &self.edges {
            h.update(format!(
                "{} {} {:016x} {}\n",
                e.u,
                e.v,
                e.weight.to_bits(),
                e.probability
                    .map_or(String::from("-"), |p| format!("{:016x}", p.to_bits()))
            ));
        }
        hex::encode(h.finalize())
    }

    fn require_undirected(&self, what: &str) -> Result<()> {
        if self.directed {
            Err(Error::invalid(format!(
                "{what} requires an undirected graph"
            )))
        } else {
            Ok(())
        }
    }
}

struct Cut {
    graph: WeightedGraph,
}

impl SetFunction for Cut {
    fn ground_size(&self) -> usize {
        self.graph.n
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        Ok(self
            .graph
            .edges
            .iter()
            .filter(|e| s.contains(e.u) != s.contains(e.v))
            .map(|e| e.weight)
            .sum())
    }

    fn properties(&self) -> Properties {
        Properties::SUBMODULAR
    }

    fn name(&self) -> &str {
        "cut"
    }
}

/// Weighted cut: total weight of edges with exactly one endpoint in `S`.
pub fn cut_oracle(graph: &WeightedGraph) -> Result<Oracle> {
    graph.require_undirected("the cut oracle")?;
    Ok(Oracle::new(Cut {
        graph: graph.clone(),
    }))
}

struct Incidence {
    graph: WeightedGraph,
    shifted: bool,
}

impl SetFunction for Incidence {
    fn ground_size(&self) -> usize {
        self.graph.n
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        let touched = self
            .graph
            .edges
            .iter()
            .filter(|e| s.contains(e.u) || s.contains(e.v))
            .count() as f64;
        if self.shifted {
            Ok(touched + 0.5 * (self.graph.n - s.len()) as f64)
        } else {
            Ok(touched)
        }
    }

    fn properties(&self) -> Properties {
        if self.shifted {
            Properties::SUBMODULAR
        } else {
            Properties::MONOTONE_SUBMODULAR
        }
    }

    fn name(&self) -> &str {
        if self.shifted {
            "shifted-incidence"
        } else {
            "incidence"
        }
    }
}

/// Number of edges with at least one endpoint in `S` (weights ignored).
pub fn incidence_oracle(graph: &WeightedGraph) -> Result<Oracle> {
    graph.require_undirected("the incidence oracle")?;
    Ok(Oracle::new(Incidence {
        graph: graph.clone(),
        shifted: false,
    }))
}

/// `incidence(S) + (n - |S|) / 2`.
///
/// With this sign, for a graph whose minimum vertex cover has size `k` and
/// `θ = |E| - k/2 + n/2`, exactly the size-`k` covers reach `θ`.
pub fn shifted_incidence_oracle(graph: &WeightedGraph) -> Result<Oracle> {
    graph.require_undirected("the shifted incidence oracle")?;
    Ok(Oracle::new(Incidence {
        graph: graph.clone(),
        shifted: true,
    }))
}
