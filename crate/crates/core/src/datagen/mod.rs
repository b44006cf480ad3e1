//! Seeded synthetic data sets and text corpus loading.

mod io;

use std::fmt;
use std::path::Path;

use rand::Rng as _;
use rand_distr::{Distribution, Exp1, Normal};

use crate::distances::{qf_matrix_from_bin_distances, QfMatrix};
use crate::error::{Error, Result};
use crate::objects::{DataSet, SetObj, StringObj, VectorObj};
use crate::rng;

pub use io::{
    read_dataset, read_qf_matrix, read_sets, read_strings, read_vectors, write_qf_matrix,
    write_sets, write_strings, write_vectors, AnyDataSet, Header,
};

/// Default number of clusters.
pub const DEFAULT_CLUSTERS: usize = 10;
/// Default per-coordinate cluster variance.
pub const DEFAULT_VARIANCE: f64 = 0.1;
/// Lines shorter than this are dropped from line corpora.
pub const DEFAULT_MIN_LINE_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenKind {
    Uniform,
    Clustered { clusters: usize, variance: f64 },
    Sets,
    Histograms,
}

impl GenKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenKind::Uniform => "uniform",
            GenKind::Clustered { .. } => "clustered",
            GenKind::Sets => "sets",
            GenKind::Histograms => "histograms",
        }
    }
}

/// A complete, seeded description of a synthetic data set.
///
/// `dim` is the vector dimension, the set universe size, or the histogram
/// bin count, depending on `kind`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn uniform(n: usize, dim: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Uniform,
            n,
            dim,
            seed,
        }
    }

    pub fn clustered(n: usize, dim: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Clustered {
                clusters: DEFAULT_CLUSTERS,
                variance: DEFAULT_VARIANCE,
            },
            n,
            dim,
            seed,
        }
    }

    pub fn sets(n: usize, universe: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Sets,
            n,
            dim: universe,
            seed,
        }
    }

    pub fn histograms(n: usize, bins: usize, seed: u64) -> Self {
        GenSpec {
            kind: GenKind::Histograms,
            n,
            dim: bins,
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }

    /// Short label such as `uniform-r10` or `sets-z20`.
    pub fn label(&self) -> String {
        match self.kind {
            GenKind::Sets => format!("sets-z{}", self.dim),
            GenKind::Histograms => format!("histograms-{}", self.dim),
            kind => format!("{}-r{}", kind.as_str(), self.dim),
        }
    }

    /// Vector data for the vector kinds (histogram matrices are dropped).
    pub fn vectors(&self) -> Result<DataSet<VectorObj>> {
        match self.kind {
            GenKind::Uniform => uniform_vectors(self.n, self.dim, self.seed),
            GenKind::Clustered { clusters, variance } => {
                clustered_vectors(self.n, self.dim, clusters, variance, self.seed)
            }
            GenKind::Histograms => Ok(synthetic_histograms(self.n, self.dim, self.seed)?.0),
            GenKind::Sets => Err(Error::param("set generator does not produce vectors")),
        }
    }

    pub fn generate(&self) -> Result<AnyDataSet> {
        match self.kind {
            GenKind::Sets => Ok(AnyDataSet::Sets(random_sets(self.n, self.dim, self.seed)?)),
            _ => Ok(AnyDataSet::Vectors(self.vectors()?)),
        }
    }
}

/// Where an experiment's objects come from on each run.
pub enum DataSource<'a, T> {
    /// A fresh data set per run, built from a per-run seed.
    Generated(Box<dyn Fn(u64) -> Result<DataSet<T>> + Sync + 'a>),
    /// The same data every run.
    Static(&'a DataSet<T>),
}

impl<'a, T> DataSource<'a, T> {
    pub fn generated(f: impl Fn(u64) -> Result<DataSet<T>> + Sync + 'a) -> Self {
        DataSource::Generated(Box::new(f))
    }

    /// Runs `f` on this run's data.
    pub fn with_data<R>(&self, seed: u64, f: impl FnOnce(&DataSet<T>) -> Result<R>) -> Result<R> {
        match self {
            DataSource::Generated(make) => f(&make(seed)?),
            DataSource::Static(data) => f(data),
        }
    }
}

impl<T> fmt::Debug for DataSource<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSource::Generated(_) => f.write_str("DataSource::Generated"),
            DataSource::Static(d) => write!(f, "DataSource::Static({} objects)", d.len()),
        }
    }
}

fn check_sizes(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::param(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `n` i.i.d. points uniform in `[0, 1]^k`.
pub fn uniform_vectors(n: usize, k: usize, seed: u64) -> Result<DataSet<VectorObj>> {
    check_sizes(n, k)?;
    let mut rng = rng::seeded(seed);
    let objects = (0..n)
        .map(|_| VectorObj::new((0..k).map(|_| rng.random::<f64>()).collect()))
        .collect::<Result<_>>()?;
    DataSet::new(objects)
}

/// Gaussian clusters: `c` centers uniform in the unit cube, object `i` drawn
/// around center `i mod c` with the given per-coordinate variance. Points are
/// not clipped to the cube.
pub fn clustered_vectors(
    n: usize,
    k: usize,
    c: usize,
    variance: f64,
    seed: u64,
) -> Result<DataSet<VectorObj>> {
    Ok(clustered_vectors_with_centers(n, k, c, variance, seed)?.0)
}

/// [`clustered_vectors`] that also returns the cluster centers.
pub fn clustered_vectors_with_centers(
    n: usize,
    k: usize,
    c: usize,
    variance: f64,
    seed: u64,
) -> Result<(DataSet<VectorObj>, Vec<Vec<f64>>)> {
    check_sizes(n, k)?;
    if c == 0 || c > n {
        return Err(Error::param(format!(
            "need 1 <= clusters <= n, got {c} clusters for n={n}"
        )));
    }
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(Error::param(format!(
            "variance must be nonnegative, got {variance}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let centers: Vec<Vec<f64>> = (0..c)
        .map(|_| (0..k).map(|_| rng.random::<f64>()).collect())
        .collect();
    let noise = Normal::new(0.0, variance.sqrt()).map_err(|e| Error::param(e.to_string()))?;
    let objects = (0..n)
        .map(|i| {
            let center = &centers[i % c];
            VectorObj::new(center.iter().map(|x| x + noise.sample(&mut rng)).collect())
        })
        .collect::<Result<_>>()?;
    Ok((DataSet::new(objects)?, centers))
}

/// Subsets of `{0, .., k-1}`, each element present independently with probability 1/2.
pub fn random_sets(n: usize, k: usize, seed: u64) -> Result<DataSet<SetObj>> {
    check_sizes(n, k)?;
    let universe = u32::try_from(k).map_err(|_| Error::param("set universe too large"))?;
    let mut rng = rng::seeded(seed);
    let objects = (0..n)
        .map(|_| {
            SetObj::with_universe(
                (0..universe).filter(|_| rng.random::<bool>()).collect(),
                universe,
            )
        })
        .collect::<Result<_>>()?;
    DataSet::new(objects)
}

/// One string per line, keeping lines of at least `min_len` characters.
/// Trailing `\r` is stripped. Use [`DEFAULT_MIN_LINE_LEN`] for line corpora
/// and 1 for word lists.
pub fn load_strings(path: impl AsRef<Path>, min_len: usize) -> Result<DataSet<StringObj>> {
    let path = path.as_ref();
    let data = read_strings(path, min_len)?;
    if data.is_empty() {
        return Err(Error::Degenerate(format!(
            "{}: no lines of at least {min_len} characters",
            path.display()
        )));
    }
    Ok(data)
}

/// Splits `bins` into three grid extents, as even as possible, largest first.
fn color_grid(bins: usize) -> [usize; 3] {
    let mut best = [bins, 1, 1];
    for a in 1..=bins {
        if !bins.is_multiple_of(a) {
            continue;
        }
        for b in 1..=(bins / a) {
            if !(bins / a).is_multiple_of(b) {
                continue;
            }
            let mut g = [a, b, bins / a / b];
            g.sort_unstable_by(|x, y| y.cmp(x));
            if g[0] < best[0] || (g[0] == best[0] && g[1] < best[1]) {
                best = g;
            }
        }
    }
    best
}

/// Centers of `bins` histogram bins laid out on a grid in the RGB unit cube.
pub fn rgb_bin_centers(bins: usize) -> Vec<[f64; 3]> {
    let [gr, gg, gb] = color_grid(bins);
    let mut centers = Vec::with_capacity(bins);
    for r in 0..gr {
        for g in 0..gg {
            for b in 0..gb {
                centers.push([
                    (r as f64 + 0.5) / gr as f64,
                    (g as f64 + 0.5) / gg as f64,
                    (b as f64 + 0.5) / gb as f64,
                ]);
            }
        }
    }
    centers
}

fn rgb_dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Weight matrix for `bins` color bins from Euclidean distances between
/// their RGB centers.
pub fn rgb_qf_matrix(bins: usize) -> Result<QfMatrix> {
    if bins == 0 {
        return Err(Error::param("need at least one histogram bin"));
    }
    let centers = rgb_bin_centers(bins);
    let mut dist = vec![0.0; bins * bins];
    for i in 0..bins {
        for j in 0..bins {
            dist[i * bins + j] = rgb_dist(&centers[i], &centers[j]);
        }
    }
    qf_matrix_from_bin_distances(bins, &dist)
}

/// Random symmetric positive-definite `k × k` matrix `B Bᵀ / k + I / 10`,
/// with `B` uniform in `[-1, 1]`.
pub fn random_spd_matrix(k: usize, seed: u64) -> Result<QfMatrix> {
    if k == 0 {
        return Err(Error::param("matrix dimension must be positive"));
    }
    let mut rng = rng::seeded(seed);
    let b: Vec<f64> = (0..k * k).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mut a = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let dot: f64 = (0..k).map(|t| b[i * k + t] * b[j * k + t]).sum();
            let v = dot / k as f64 + if i == j { 0.1 } else { 0.0 };
            a[i * k + j] = v;
            a[j * k + i] = v;
        }
    }
    QfMatrix::new(k, a)
}

/// Synthetic color histograms plus their quadratic form weight matrix.
///
/// Each histogram mixes 1 to 5 Gaussian blobs placed at random RGB colors,
/// with exponentially distributed weights and random widths, and is then
/// normalized to sum to 1.
pub fn synthetic_histograms(
    n: usize,
    bins: usize,
    seed: u64,
) -> Result<(DataSet<VectorObj>, QfMatrix)> {
    check_sizes(n, bins)?;
    let matrix = rgb_qf_matrix(bins)?;
    let centers = rgb_bin_centers(bins);
    let mut rng = rng::seeded(seed);
    let mut objects = Vec::with_capacity(n);
    for _ in 0..n {
        let peaks = rng.random_range(1..=5);
        let mut h = vec![0.0; bins];
        for _ in 0..peaks {
            let color = [
                rng.random::<f64>(),
                rng.random::<f64>(),
                rng.random::<f64>(),
            ];
            let weight: f64 = Exp1.sample(&mut rng);
            let width = rng.random_range(0.05..0.25);
            for (mass, c) in h.iter_mut().zip(&centers) {
                let d = rgb_dist(c, &color);
                *mass += weight * (-d * d / (2.0 * width * width)).exp();
            }
        }
        let total: f64 = h.iter().sum();
        if total > 0.0 {
            h.iter_mut().for_each(|x| *x /= total);
        } else {
            h[rng.random_range(0..bins)] = 1.0;
        }
        objects.push(VectorObj::new(h)?);
    }
    Ok((DataSet::new(objects)?, matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::quadratic_form_distance;

    #[test]
    fn uniform_support_mean_and_determinism() {
        let n = 20_000;
        let data = uniform_vectors(n, 1, 11).unwrap();
        let xs: Vec<f64> = data.iter().map(|v| v.coords()[0]).collect();
        assert!(xs.iter().all(|x| (0.0..=1.0).contains(x)));
        let mean = xs.iter().sum::<f64>() / n as f64;
        let sigma = (1.0 / 12.0 / n as f64).sqrt();
        assert!((mean - 0.5).abs() <= 5.0 * sigma, "mean {mean}");
        assert_eq!(data, uniform_vectors(n, 1, 11).unwrap());
        assert_ne!(data, uniform_vectors(n, 1, 12).unwrap());
        assert!(uniform_vectors(0, 3, 1).is_err());
    }

    #[test]
    fn clustered_zero_variance_hits_centers() {
        let (data, centers) = clustered_vectors_with_centers(25, 3, 10, 0.0, 4).unwrap();
        for (i, v) in data.iter().enumerate() {
            assert_eq!(v.coords(), &centers[i % 10][..]);
        }
    }

    #[test]
    fn clustered_single_cluster_moments() {
        let n = 20_000;
        let (data, centers) = clustered_vectors_with_centers(n, 2, 1, 0.1, 8).unwrap();
        let sigma = (0.1 / n as f64).sqrt();
        for axis in 0..2 {
            let mean = data.iter().map(|v| v.coords()[axis]).sum::<f64>() / n as f64;
            assert!((mean - centers[0][axis]).abs() <= 5.0 * sigma);
            let var = data
                .iter()
                .map(|v| (v.coords()[axis] - mean).powi(2))
                .sum::<f64>()
                / (n - 1) as f64;
            assert!((var - 0.1).abs() < 0.01, "variance {var}");
        }
    }

    #[test]
    fn clustered_sizes_balanced() {
        let (data, centers) = clustered_vectors_with_centers(103, 2, 10, 0.0, 1).unwrap();
        let mut sizes = [0; 10];
        for v in &data {
            let c = centers.iter().position(|c| c[..] == *v.coords()).unwrap();
            sizes[c] += 1;
        }
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        assert!(clustered_vectors(5, 2, 10, 0.1, 0).is_err());
        assert!(clustered_vectors(50, 2, 10, -0.1, 0).is_err());
    }

    #[test]
    fn random_sets_cardinality_and_invariants() {
        let (n, k) = (5_000, 20);
        let data = random_sets(n, k, 2).unwrap();
        let total: usize = data.iter().map(SetObj::len).sum();
        let mean = total as f64 / n as f64;
        let sigma = (k as f64 * 0.25 / n as f64).sqrt();
        assert!((mean - k as f64 / 2.0).abs() <= 5.0 * sigma, "mean {mean}");
        for s in &data {
            assert!(s.elements().windows(2).all(|w| w[0] < w[1]));
            assert!(s.elements().iter().all(|&e| (e as usize) < k));
        }
        assert_eq!(data, random_sets(n, k, 2).unwrap());
    }

    #[test]
    fn color_grid_shapes() {
        assert_eq!(color_grid(64), [4, 4, 4]);
        assert_eq!(color_grid(8), [2, 2, 2]);
        assert_eq!(color_grid(32), [4, 4, 2]);
        assert_eq!(color_grid(7), [7, 1, 1]);
        assert_eq!(rgb_bin_centers(64).len(), 64);
    }

    #[test]
    fn histograms_normalized_and_self_distance_zero() {
        let (data, a) = synthetic_histograms(200, 64, 3).unwrap();
        assert_eq!(a.dim(), 64);
        for h in &data {
            assert!((h.coords().iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(h.coords().iter().all(|&x| x >= 0.0));
            assert_eq!(quadratic_form_distance(h, h, &a).unwrap(), 0.0);
        }
        assert_eq!(data, synthetic_histograms(200, 64, 3).unwrap().0);
    }

    #[test]
    fn random_spd_is_deterministic_and_valid() {
        let a = random_spd_matrix(10, 4).unwrap();
        assert_eq!(a, random_spd_matrix(10, 4).unwrap());
        assert_ne!(a, random_spd_matrix(10, 5).unwrap());
        assert!(random_spd_matrix(0, 1).is_err());
    }

    #[test]
    fn rgb_matrices_are_pd_from_two_bins() {
        assert!(rgb_qf_matrix(1).is_err());
        for bins in 2..=64 {
            assert!(rgb_qf_matrix(bins).is_ok(), "{bins} bins");
        }
    }
}
