use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Properties, SetFunction};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// Zero-indexed variable.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// From a signed, one-indexed DIMACS literal.
    pub fn from_dimacs(lit: i64) -> Result<Self> {
        if lit == 0 {
            return Err(Error::invalid("0 is not a literal"));
        }
        Ok(Literal {
            var: lit.unsigned_abs() as usize - 1,
            positive: lit > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn holds(self, assignment: &SatAssignment) -> bool {
        assignment.value(self.var) == self.positive
    }
}

/// Truth values for variables `x_1..x_n` (stored zero-indexed).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SatAssignment(pub Vec<bool>);

impl SatAssignment {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: usize) -> bool {
        self.0[var]
    }

    /// The assignment making exactly the members of `s` true.
    pub fn from_true_set(s: &Subset) -> Self {
        SatAssignment((0..s.universe_size()).map(|i| s.contains(i)).collect())
    }

    /// `{i : x_i = true}`.
    pub fn true_set(&self) -> Subset {
        let mut s = Subset::empty(self.0.len());
        for (i, &b) in self.0.iter().enumerate() {
            if b {
                s.insert(i);
            }
        }
        s
    }

    pub fn complemented(&self) -> Self {
        SatAssignment(self.0.iter().map(|b| !b).collect())
    }
}

impl fmt::Display for SatAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "T" } else { "F" })?;
        }
        Ok(())
    }
}

/// CNF formula with clauses of one to three literals; no clause mentions a
/// variable twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::invalid(format!(
                    "clause {} has {} literals; expected 1 to 3",
                    j + 1,
                    clause.len()
                )));
            }
            for (a, lit) in clause.iter().enumerate() {
                if lit.var >= num_vars {
                    return Err(Error::invalid(format!(
                        "clause {} mentions variable {} of {num_vars}",
                        j + 1,
                        lit.var + 1
                    )));
                }
                if clause[..a].iter().any(|other| other.var == lit.var) {
                    return Err(Error::invalid(format!(
                        "clause {} mentions variable {} twice",
                        j + 1,
                        lit.var + 1
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// From signed one-indexed DIMACS clauses.
    pub fn from_dimacs(num_vars: usize, clauses: &[Vec<i64>]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&l| Literal::from_dimacs(l)).collect())
            .collect::<Result<Vec<Vec<Literal>>>>()?;
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// No negative literals and exactly three literals per clause.
    pub fn is_monotone(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.len() == 3 && c.iter().all(|l| l.positive))
    }

    fn check_len(&self, a: &SatAssignment) -> Result<()> {
        if a.len() != self.num_vars {
            return Err(Error::invalid(format!(
                "assignment has {} values for {} variables",
                a.len(),
                self.num_vars
            )));
        }
        Ok(())
    }

    pub fn satisfied_by(&self, a: &SatAssignment) -> Result<bool> {
        self.check_len(a)?;
        Ok(self.clauses.iter().all(|c| c.iter().any(|l| l.holds(a))))
    }

    /// Every clause has a true and a false literal.
    pub fn nae_satisfied_by(&self, a: &SatAssignment) -> Result<bool> {
        self.check_len(a)?;
        Ok(self.clauses.iter().all(|c| nae_clause(c, a)))
    }
}

fn nae_clause(clause: &[Literal], a: &SatAssignment) -> bool {
    let t = clause.iter().filter(|l| l.holds(a)).count();
    t > 0 && t < clause.len()
}

struct NaeClauses {
    formula: CnfFormula,
}

impl SetFunction for NaeClauses {
    fn ground_size(&self) -> usize {
        self.formula.num_vars
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        let count = self
            .formula
            .clauses
            .iter()
            .filter(|c| {
                let inside = c.iter().filter(|l| s.contains(l.var)).count();
                inside > 0 && inside < c.len()
            })
            .count();
        Ok(count as f64)
    }

    fn properties(&self) -> Properties {
        Properties::SUBMODULAR
    }

    fn name(&self) -> &str {
        "nae-clauses"
    }
}

/// Number of clauses whose three variables are neither all in `S` nor all
/// outside it. Requires a monotone formula with three literals per clause.
pub fn nae_clause_oracle(formula: &CnfFormula) -> Result<Oracle> {
    if !formula.is_monotone() {
        return Err(Error::invalid(
            "the not-all-equal oracle needs a monotone formula with exactly three literals per clause",
        ));
    }
    Ok(Oracle::new(NaeClauses {
        formula: formula.clone(),
    }))
}
