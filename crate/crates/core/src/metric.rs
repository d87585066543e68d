//! Immutable metric instances.
//!
//! An instance is either a set of coordinate rows evaluated under a named
//! metric, or an explicit symmetric distance matrix. Both are read-only after
//! construction, so a `&MetricInstance` can be shared freely across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when checking matrix symmetry at load time.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Relative magnitude of the optional tie-breaking jitter.
pub const PERTURBATION_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Euclidean,
    Manhattan,
}

impl std::str::FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(MetricKind::Euclidean),
            "manhattan" => Ok(MetricKind::Manhattan),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Backing {
    Coords {
        coords: Vec<f64>,
        dim: usize,
        metric: MetricKind,
    },
    Matrix {
        entries: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricInstance {
    n: usize,
    backing: Backing,
}

impl MetricInstance {
    /// Builds a coordinate instance from one row per point.
    pub fn from_points(rows: &[Vec<f64>], metric: MetricKind) -> Result<Self> {
        let dim = rows.first().ok_or(Error::EmptyInstance)?.len();
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != dim {
                return Err(Error::RaggedRow {
                    row,
                    expected: dim,
                    got: values.len(),
                });
            }
            coords.extend_from_slice(values);
        }
        Self::from_flat(coords, dim, metric)
    }

    /// Builds a coordinate instance from a row-major buffer of `n * dim` values.
    pub fn from_flat(coords: Vec<f64>, dim: usize, metric: MetricKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::RaggedRow {
                row: coords.len() / dim,
                expected: dim,
                got: coords.len() % dim,
            });
        }
        if let Some(pos) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / dim,
                col: pos % dim,
                value: coords[pos],
            });
        }
        Ok(Self {
            n: coords.len() / dim,
            backing: Backing::Coords {
                coords,
                dim,
                metric,
            },
        })
    }

    /// Builds a matrix instance. Rejects non-square, non-finite, negative,
    /// nonzero-diagonal and asymmetric (beyond [`SYMMETRY_TOLERANCE`]) input.
    /// The triangle inequality is trusted; see [`MetricInstance::check_triangle`].
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::RaggedRow {
                    row,
                    expected: n,
                    got: values.len(),
                });
            }
            for (col, &value) in values.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFinite { row, col, value });
                }
                if value < 0.0 {
                    return Err(Error::NegativeDistance { row, col, value });
                }
            }
            entries.extend_from_slice(values);
        }
        for i in 0..n {
            let diag = entries[i * n + i];
            if diag != 0.0 {
                return Err(Error::NonzeroDiagonal {
                    index: i,
                    value: diag,
                });
            }
            for j in (i + 1)..n {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                if (a - b).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
                // the upper triangle is authoritative
                entries[j * n + i] = a;
            }
        }
        Ok(Self {
            n,
            backing: Backing::Matrix { entries },
        })
    }

    /// Like [`MetricInstance::from_matrix`], additionally validating the
    /// triangle inequality when `check_triangle` is set. O(n^3).
    pub fn from_matrix_checked(rows: &[Vec<f64>], check_triangle: bool) -> Result<Self> {
        let inst = Self::from_matrix(rows)?;
        if check_triangle {
            inst.check_triangle()?;
        }
        Ok(inst)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; instances hold at least one point.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> Option<usize> {
        match &self.backing {
            Backing::Coords { dim, .. } => Some(*dim),
            Backing::Matrix { .. } => None,
        }
    }

    pub fn metric(&self) -> Option<MetricKind> {
        match &self.backing {
            Backing::Coords { metric, .. } => Some(*metric),
            Backing::Matrix { .. } => None,
        }
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self.backing, Backing::Matrix { .. })
    }

    /// Coordinates of point `i`, for coordinate-backed instances.
    pub fn point(&self, i: usize) -> Option<&[f64]> {
        match &self.backing {
            Backing::Coords { coords, dim, .. } => coords.get(i * dim..(i + 1) * dim),
            Backing::Matrix { .. } => None,
        }
    }

    /// Row `i` of the stored matrix, for matrix-backed instances.
    pub fn matrix_row(&self, i: usize) -> Option<&[f64]> {
        match &self.backing {
            Backing::Matrix { entries } => entries.get(i * self.n..(i + 1) * self.n),
            Backing::Coords { .. } => None,
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    /// Checked distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.dist(i, j))
    }

    /// Unchecked-by-contract distance used on hot paths. Panics on an
    /// out-of-range index.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.backing {
            Backing::Matrix { entries } => entries[i * self.n + j],
            Backing::Coords {
                coords,
                dim,
                metric,
            } => {
                if i == j {
                    return 0.0;
                }
                let a = &coords[i * dim..(i + 1) * dim];
                let b = &coords[j * dim..(j + 1) * dim];
                match metric {
                    MetricKind::Euclidean => a
                        .iter()
                        .zip(b)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt(),
                    MetricKind::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
                }
            }
        }
    }

    /// `d(p, set)`, +inf for the empty set.
    #[inline]
    pub fn dist_to_set(&self, p: usize, set: &[usize]) -> f64 {
        set.iter()
            .map(|&c| self.dist(p, c))
            .fold(f64::INFINITY, f64::min)
    }

    /// Fills `out` with the distance row of `p`.
    pub fn distance_row_into(&self, p: usize, out: &mut Vec<f64>) {
        out.clear();
        match &self.backing {
            Backing::Matrix { entries } => {
                out.extend_from_slice(&entries[p * self.n..(p + 1) * self.n])
            }
            Backing::Coords { .. } => out.extend((0..self.n).map(|q| self.dist(p, q))),
        }
    }

    /// Number of points `q` with `d(p, q) <= r`, counting `p` itself.
    pub fn ball_count(&self, p: usize, r: f64) -> Result<usize> {
        self.check_index(p)?;
        if !(r >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                domain: "r >= 0",
            });
        }
        Ok((0..self.n).filter(|&q| self.dist(p, q) <= r).count())
    }

    /// Largest pairwise distance. O(n^2).
    pub fn max_distance(&self) -> f64 {
        (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.dist(i, j))
            .fold(0.0, f64::max)
    }

    /// All `n(n-1)/2` pairwise distances, in row-major upper-triangle order.
    pub fn pairwise_distances(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out.push(self.dist(i, j));
            }
        }
        out
    }

    /// Materializes the instance as an explicit distance matrix.
    pub fn to_matrix(&self) -> MetricInstance {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.dist(i, j);
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        MetricInstance {
            n,
            backing: Backing::Matrix { entries },
        }
    }

    /// Matrix copy with symmetric per-pair jitter in
    /// `[0, PERTURBATION_SCALE * max_distance)`, for experiments that want
    /// pairwise-distinct distances. The result is no longer guaranteed to be
    /// an exact metric on degenerate inputs.
    pub fn perturbed(&self, seed: u64) -> MetricInstance {
        let mut out = self.to_matrix();
        let scale = PERTURBATION_SCALE * self.max_distance().max(f64::MIN_POSITIVE);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n;
        if let Backing::Matrix { entries } = &mut out.backing {
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = entries[i * n + j] + scale * rng.random::<f64>();
                    entries[i * n + j] = d;
                    entries[j * n + i] = d;
                }
            }
        }
        out
    }

    /// Verifies the triangle inequality over all triples, with a small
    /// relative slack for rounding. O(n^3).
    pub fn check_triangle(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let dij = self.dist(i, j);
                for l in 0..n {
                    let lhs = self.dist(i, l);
                    let rhs = dij + self.dist(j, l);
                    if lhs > rhs + 1e-12 * rhs.max(1.0) {
                        return Err(Error::TriangleViolation { i, j, l });
                    }
                }
            }
        }
        Ok(())
    }
}
