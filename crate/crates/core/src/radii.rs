//! Fairness radii: exact computation, the uniform-sampling estimator, and the
//! 5-approximate procedure built on top of it.
//!
//! The k-fair radius of `p` is the distance from `p` to its `ceil(n/k)`-th
//! nearest neighbour, counting `p` itself.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::select::select_in_place;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusKind {
    Exact,
    Sampled,
    Approx,
    Injected,
}

/// One non-negative finite value per point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusAssignment {
    values: Vec<f64>,
    kind: RadiusKind,
}

impl RadiusAssignment {
    pub fn new(values: Vec<f64>, kind: RadiusKind) -> Result<Self> {
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::InvalidRadius { index, value });
        }
        Ok(Self { values, kind })
    }

    /// Radii supplied from outside the algorithms, e.g. to drive a trace.
    pub fn injected(values: Vec<f64>) -> Result<Self> {
        Self::new(values, RadiusKind::Injected)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> RadiusKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, p: usize) -> f64 {
        self.values[p]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(Error::RadiiLengthMismatch {
                expected: n,
                got: self.values.len(),
            })
        }
    }
}

/// `ceil(n / k)`: the neighbour rank that defines `r_k`.
#[inline]
pub fn fair_rank(n: usize, k: usize) -> usize {
    n.div_ceil(k).max(1)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroK)
    } else {
        Ok(())
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            domain: "0 < delta < 1",
        })
    }
}

/// Whether `k <= n/6`, the precondition of the sampling procedures.
#[inline]
pub fn sampling_applicable(n: usize, k: usize) -> bool {
    6 * k <= n
}

fn radius_with_buffer(inst: &MetricInstance, p: usize, rank: usize, buf: &mut Vec<f64>) -> f64 {
    inst.distance_row_into(p, buf);
    select_in_place(buf, rank - 1)
}

/// Exact `r_k(p)` in expected O(n).
pub fn exact_fair_radius(inst: &MetricInstance, p: usize, k: usize) -> Result<f64> {
    check_k(k)?;
    inst.check_index(p)?;
    let mut buf = Vec::with_capacity(inst.len());
    Ok(radius_with_buffer(inst, p, fair_rank(inst.len(), k), &mut buf))
}

/// Exact `r_k` for every point. Expected O(n^2), data-parallel over points.
pub fn exact_fair_radii(inst: &MetricInstance, k: usize) -> Result<RadiusAssignment> {
    check_k(k)?;
    let rank = fair_rank(inst.len(), k);
    let values = (0..inst.len())
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(inst.len()),
            |buf, p| radius_with_buffer(inst, p, rank, buf),
        )
        .collect();
    Ok(RadiusAssignment {
        values,
        kind: RadiusKind::Exact,
    })
}

/// Sample size and in-sample rank for the fair-sampling estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingParams {
    /// Number of indices drawn with replacement.
    pub sample_size: usize,
    /// 1-based rank, within the sample, of the distance reported for each point.
    pub rank: usize,
    pub seed: u64,
}

impl SamplingParams {
    /// `s = 36 k ceil(ln(2n/delta))`, `t = 27 ceil(ln(2n/delta))`.
    pub fn new(n: usize, k: usize, delta: f64, seed: u64) -> Result<Self> {
        check_k(k)?;
        check_delta(delta)?;
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let log_factor = (2.0 * n as f64 / delta).ln().ceil() as usize;
        Ok(Self {
            sample_size: 36 * k * log_factor,
            rank: 27 * log_factor,
            seed,
        })
    }

    /// Draws the sample: `sample_size` indices uniform in `0..n`, with replacement.
    pub fn draw_sample(&self, n: usize) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.sample_size)
            .map(|_| rng.random_range(0..n))
            .collect()
    }
}

/// Estimates `r'(p)` for every point from a uniform sample. Requires
/// `k <= n/6`.
///
/// With probability at least `1 - delta`, every returned value lies in
/// `(r_{3k}(p), r_k(p)]`.
pub fn fair_sampling(
    inst: &MetricInstance,
    k: usize,
    delta: f64,
    seed: u64,
) -> Result<RadiusAssignment> {
    check_k(k)?;
    if !sampling_applicable(inst.len(), k) {
        return Err(Error::KTooLargeForSampling { k, n: inst.len() });
    }
    let params = SamplingParams::new(inst.len(), k, delta, seed)?;
    fair_sampling_with(inst, &params)
}

/// Runs the estimator with explicit parameters and no `k <= n/6` check.
/// Intended for exercising the mechanics on small inputs.
pub fn fair_sampling_with(
    inst: &MetricInstance,
    params: &SamplingParams,
) -> Result<RadiusAssignment> {
    let sample = params.draw_sample(inst.len());
    let mut radii = sampled_radii(inst, &sample, params.rank)?;
    radii.kind = RadiusKind::Sampled;
    Ok(radii)
}

/// `r'(p)` = distance from `p` to its `rank`-th nearest element of `sample`,
/// duplicates counted with multiplicity.
pub fn sampled_radii(
    inst: &MetricInstance,
    sample: &[usize],
    rank: usize,
) -> Result<RadiusAssignment> {
    if rank == 0 || rank > sample.len() {
        return Err(Error::RankOutOfRange {
            rank,
            len: sample.len(),
        });
    }
    for &q in sample {
        inst.check_index(q)?;
    }
    let values = (0..inst.len())
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(sample.len()),
            |buf, p| {
                buf.clear();
                buf.extend(sample.iter().map(|&q| inst.dist(p, q)));
                select_in_place(buf, rank - 1)
            },
        )
        .collect();
    Ok(RadiusAssignment {
        values,
        kind: RadiusKind::Injected,
    })
}

/// True when `lower[p] < sampled[p] <= upper[p]` for every point.
pub fn within_window(sampled: &[f64], lower: &[f64], upper: &[f64]) -> bool {
    sampled
        .iter()
        .zip(lower)
        .zip(upper)
        .all(|((&s, &lo), &hi)| lo < s && s <= hi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRadiiResult {
    /// `None` when the procedure detected a sampling failure (`|C| > 3k`).
    pub radii: Option<RadiusAssignment>,
    /// The `r'` values the run was driven by.
    pub sampled: RadiusAssignment,
    /// Points whose radius was computed exactly, in insertion order.
    pub exact_set: Vec<usize>,
    pub exact_computations: usize,
}

impl ApproxRadiiResult {
    pub fn is_fail(&self) -> bool {
        self.radii.is_none()
    }

    pub fn exact_set_size(&self) -> usize {
        self.exact_set.len()
    }
}

/// 5-approximate fairness radii: `r_k(p) <= r~(p) <= 5 r_k(p)` for all `p`
/// with probability at least `1 - delta`. Requires `k <= n/6`.
pub fn approx_fair_radii(
    inst: &MetricInstance,
    k: usize,
    delta: f64,
    seed: u64,
) -> Result<ApproxRadiiResult> {
    let sampled = fair_sampling(inst, k, delta, seed)?;
    approx_fair_radii_from(inst, k, sampled)
}

/// The approximation pass given precomputed (or injected) `r'` values.
///
/// Points are scanned by `(r'(p), index)`. A point whose `r'`-ball meets the
/// ball of some already-exact point `q` inherits `d(p,q) + r~(q)`, using the
/// first such `q` in insertion order; otherwise its radius is computed
/// exactly and it joins the exact set. More than `3k` exact points is a
/// detected failure.
pub fn approx_fair_radii_from(
    inst: &MetricInstance,
    k: usize,
    sampled: RadiusAssignment,
) -> Result<ApproxRadiiResult> {
    check_k(k)?;
    sampled.check_len(inst.len())?;
    let n = inst.len();
    let r = sampled.values();
    let rank = fair_rank(n, k);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| r[a].total_cmp(&r[b]));

    let mut approx = vec![0.0; n];
    let mut exact_set: Vec<usize> = Vec::with_capacity(3 * k + 1);
    let mut buf = Vec::with_capacity(n);
    let mut failed = false;

    for p in order {
        let witness = exact_set
            .iter()
            .copied()
            .find(|&q| r[p] + r[q] >= inst.dist(p, q));
        match witness {
            Some(q) => approx[p] = inst.dist(p, q) + approx[q],
            None => {
                approx[p] = radius_with_buffer(inst, p, rank, &mut buf);
                exact_set.push(p);
                if exact_set.len() > 3 * k {
                    failed = true;
                    break;
                }
            }
        }
    }

    let exact_computations = exact_set.len();
    let radii = if failed {
        None
    } else {
        Some(RadiusAssignment::new(approx, RadiusKind::Approx)?)
    };
    Ok(ApproxRadiiResult {
        radii,
        sampled,
        exact_set,
        exact_computations,
    })
}
