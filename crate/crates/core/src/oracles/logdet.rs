use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Properties, SetFunction};
use crate::subset::Subset;

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const PIVOT_TOLERANCE: f64 = 1e-12;
/// Eigenvalues down to `-EIGEN_TOLERANCE * max(1, |λ|max)` count as zero.
const EIGEN_TOLERANCE: f64 = 1e-10;
/// Pivots below `-NEGATIVE_PIVOT * scale` mean the submatrix is not PSD;
/// smaller negatives are round-off on a singular submatrix.
const NEGATIVE_PIVOT: f64 = 1e-8;

/// Dense symmetric positive semidefinite matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    n: usize,
    data: Vec<f64>,
}

impl GramMatrix {
    /// Validates symmetry and positive semidefiniteness.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            data.extend(row);
        }
        GramMatrix::from_row_major(n, data)
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::invalid(format!(
                "{n}x{n} matrix needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("matrix entry {bad} is not finite")));
        }
        let g = GramMatrix { n, data };
        for i in 0..n {
            for j in i + 1..n {
                if (g.get(i, j) - g.get(j, i)).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::invalid(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let min = g.min_eigenvalue();
        let scale = g.spectral_radius().max(1.0);
        if min < -EIGEN_TOLERANCE * scale {
            return Err(Error::invalid(format!(
                "matrix is not positive semidefinite (eigenvalue {min:e})"
            )));
        }
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        GramMatrix { n, data }
    }

    /// `A = Φ Φᵀ` for feature rows `Φ`.
    pub fn from_features(features: &[Vec<f64>]) -> Result<Self> {
        let n = features.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if features[i].len() != features[j].len() {
                    return Err(Error::invalid("feature vectors differ in length"));
                }
                data[i * n + j] = features[i]
                    .iter()
                    .zip(&features[j])
                    .map(|(a, b)| a * b)
                    .sum();
            }
        }
        GramMatrix::from_row_major(n, data)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1))
    }

    /// The principal submatrix on `indices`, in the given order.
    pub fn principal(&self, indices: &[usize]) -> GramMatrix {
        let k = indices.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                data.push(self.get(i, j));
            }
        }
        GramMatrix { n: k, data }
    }

    fn eigenvalues(&self) -> Vec<f64> {
        if self.n == 0 {
            return Vec::new();
        }
        let m = DMatrix::from_row_slice(self.n, self.n, &self.data);
        SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    fn spectral_radius(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `log det(A_S)` by Cholesky factorization.
    ///
    /// Returns `-∞` when `A_S` is singular, which sorts below every real.
    pub fn log_det(&self, s: &Subset) -> Result<f64> {
        let idx = s.to_vec();
        let k = idx.len();
        let scale = idx.iter().fold(1.0f64, |m, &i| m.max(self.get(i, i).abs()));
        let tol = PIVOT_TOLERANCE * scale;
        let mut l = vec![0.0; k * k];
        let mut total = 0.0;
        for j in 0..k {
            let mut d = self.get(idx[j], idx[j]);
            for p in 0..j {
                d -= l[j * k + p] * l[j * k + p];
            }
            if d <= tol {
                if d < -NEGATIVE_PIVOT * scale {
                    return Err(Error::NotPsd { subset: s.clone() });
                }
                return Ok(f64::NEG_INFINITY);
            }
            let root = d.sqrt();
            l[j * k + j] = root;
            total += d.ln();
            for i in j + 1..k {
                let mut v = self.get(idx[i], idx[j]);
                for p in 0..j {
                    v -= l[i * k + p] * l[j * k + p];
                }
                l[i * k + j] = v / root;
            }
        }
        Ok(total)
    }
}

struct LogDet {
    matrix: GramMatrix,
}

impl SetFunction for LogDet {
    fn ground_size(&self) -> usize {
        self.matrix.n
    }

    fn eval(&self, s: &Subset) -> Result<f64> {
        self.matrix.log_det(s)
    }

    fn properties(&self) -> Properties {
        Properties {
            monotone: false,
            submodular: true,
            nonnegative: false,
        }
    }

    fn name(&self) -> &str {
        "logdet"
    }
}

/// `f(S) = log det(A_S)`, with `f(∅) = 0`.
pub fn logdet_oracle(matrix: &GramMatrix) -> Oracle {
    Oracle::new(LogDet {
        matrix: matrix.clone(),
    })
}
