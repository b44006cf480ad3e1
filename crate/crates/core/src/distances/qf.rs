use std::fmt;

use crate::error::{Error, Result};

/// Smallest Cholesky pivot accepted as positive.
pub const PD_PIVOT_THRESHOLD: f64 = 1e-12;

/// Symmetric positive-definite weight matrix of a quadratic form distance.
#[derive(Clone, PartialEq)]
pub struct QfMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl fmt::Debug for QfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QfMatrix({}x{})", self.dim, self.dim)
    }
}

impl QfMatrix {
    /// Validates finiteness, exact symmetry and positive-definiteness of the
    /// row-major `dim x dim` matrix.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::param(format!(
                "{} entries do not form a non-empty {dim}x{dim} matrix",
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|e| !e.is_finite()) {
            return Err(Error::param(format!(
                "non-finite matrix entry at ({}, {})",
                i / dim,
                i % dim
            )));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        cholesky_check(dim, &entries)?;
        Ok(QfMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        QfMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// `z' A z`. Caller guarantees `z.len() == dim`.
    pub fn quadratic_form(&self, z: &[f64]) -> f64 {
        debug_assert_eq!(z.len(), self.dim);
        self.entries
            .chunks_exact(self.dim)
            .zip(z)
            .map(|(row, zi)| zi * row.iter().zip(z).map(|(a, zj)| a * zj).sum::<f64>())
            .sum()
    }
}

/// In-place Cholesky factorisation; fails on the first pivot that is not
/// above [`PD_PIVOT_THRESHOLD`].
fn cholesky_check(dim: usize, entries: &[f64]) -> Result<()> {
    let mut l = vec![0.0; dim * dim];
    for j in 0..dim {
        let mut diag = entries[j * dim + j];
        for k in 0..j {
            diag -= l[j * dim + k] * l[j * dim + k];
        }
        if !(diag > PD_PIVOT_THRESHOLD) {
            return Err(Error::NotPositiveDefinite {
                row: j,
                pivot: j,
                value: diag,
                matrix: entries.to_vec(),
            });
        }
        let ljj = diag.sqrt();
        l[j * dim + j] = ljj;
        for i in (j + 1)..dim {
            let mut s = entries[i * dim + j];
            for k in 0..j {
                s -= l[i * dim + k] * l[j * dim + k];
            }
            l[i * dim + j] = s / ljj;
        }
    }
    Ok(())
}

/// Builds `a_ij = 1 - d_ij / d_max` from a matrix of distances between
/// histogram bins, and checks the result is positive-definite.
pub fn qf_matrix_from_bin_distances(dim: usize, bin_dist: &[f64]) -> Result<QfMatrix> {
    if dim == 0 || bin_dist.len() != dim * dim {
        return Err(Error::param(format!(
            "{} bin distances do not form a non-empty {dim}x{dim} matrix",
            bin_dist.len()
        )));
    }
    if bin_dist.iter().any(|d| !d.is_finite() || *d < 0.0) {
        return Err(Error::param("bin distances must be finite and nonnegative"));
    }
    for i in 0..dim {
        if bin_dist[i * dim + i] != 0.0 {
            return Err(Error::param(format!(
                "nonzero diagonal bin distance at {i}"
            )));
        }
        for j in (i + 1)..dim {
            if bin_dist[i * dim + j] != bin_dist[j * dim + i] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let d_max = bin_dist.iter().copied().fold(0.0, f64::max);
    if d_max <= 0.0 {
        return Err(Error::param("all bin distances are zero"));
    }
    let entries = bin_dist.iter().map(|d| 1.0 - d / d_max).collect();
    QfMatrix::new(dim, entries)
}
