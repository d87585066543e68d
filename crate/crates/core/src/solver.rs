//! Center selection: the greedy fair-center rule, farthest-first traversal,
//! cost-candidate generation, the cost search, and the two end-to-end
//! drivers.
//!
//! Every scan over points that the greedy rules depend on is ordered by
//! `(radius, index)`, so all deterministic paths are bit-stable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::radii::{
    approx_fair_radii, exact_fair_radii, sampling_applicable, RadiusAssignment,
};
use crate::select::lower_median_in_place;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Exact22,
    Fast10,
    Gonzalez,
    FairCenter,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Exact22 => "exact22",
            Algorithm::Fast10 => "fast10",
            Algorithm::Gonzalez => "gonzalez",
            Algorithm::FairCenter => "faircenter",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact22" => Ok(Algorithm::Exact22),
            "fast10" => Ok(Algorithm::Fast10),
            "gonzalez" => Ok(Algorithm::Gonzalez),
            "faircenter" => Ok(Algorithm::FairCenter),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiiMode {
    Exact,
    Approx,
}

/// Provenance and diagnostics of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub algorithm: Algorithm,
    pub k: usize,
    pub alpha: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    /// The cost value passed to the final fair-center call.
    pub cost_threshold: Option<f64>,
    pub radii_mode: Option<RadiiMode>,
    /// Set when the fast pipeline fell back to the deterministic one.
    pub delegated: bool,
    pub exact_radius_computations: usize,
}

impl RunInfo {
    fn new(algorithm: Algorithm, k: usize) -> Self {
        Self {
            algorithm,
            k,
            alpha: None,
            epsilon: None,
            delta: None,
            seed: None,
            cost_threshold: None,
            radii_mode: None,
            delegated: false,
            exact_radius_computations: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Center indices in insertion order.
    pub centers: Vec<usize>,
    /// `max_p d(p, centers)`.
    pub cost: f64,
    /// `d(p, centers) / r_k(p)` per point, when exact radii were available.
    pub fairness_ratios: Option<Vec<f64>>,
    pub meta: RunInfo,
}

/// `d / r` with `0/0 = 0` and `x/0 = +inf`.
#[inline]
pub fn fairness_ratio(dist: f64, radius: f64) -> f64 {
    if radius == 0.0 {
        if dist == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        dist / radius
    }
}

/// `d(p, centers)` for every point.
pub fn assignment_distances(inst: &MetricInstance, centers: &[usize]) -> Vec<f64> {
    (0..inst.len())
        .map(|p| inst.dist_to_set(p, centers))
        .collect()
}

impl Solution {
    fn from_centers(inst: &MetricInstance, centers: Vec<usize>, meta: RunInfo) -> Self {
        let cost = assignment_distances(inst, &centers)
            .into_iter()
            .fold(0.0, f64::max);
        Self {
            centers,
            cost,
            fairness_ratios: None,
            meta,
        }
    }

    /// Computes per-point fairness ratios against `radii` (normally exact `r_k`).
    pub fn with_fairness(mut self, inst: &MetricInstance, radii: &RadiusAssignment) -> Result<Self> {
        radii.check_len(inst.len())?;
        let ratios = assignment_distances(inst, &self.centers)
            .into_iter()
            .zip(radii.values())
            .map(|(d, &r)| fairness_ratio(d, r))
            .collect();
        self.fairness_ratios = Some(ratios);
        Ok(self)
    }

    pub fn max_fairness_ratio(&self) -> Option<f64> {
        self.fairness_ratios
            .as_ref()
            .map(|r| r.iter().copied().fold(0.0, f64::max))
    }

    /// Appends lowest-index non-centers until there are `k` centers.
    /// Cost is recomputed; fairness ratios are dropped, since adding centers
    /// can only lower them and the radii are not at hand.
    pub fn padded(mut self, inst: &MetricInstance, k: usize) -> Self {
        let target = k.min(inst.len());
        if self.centers.len() >= target {
            return self;
        }
        let mut is_center = vec![false; inst.len()];
        for &c in &self.centers {
            is_center[c] = true;
        }
        let extra: Vec<usize> = (0..inst.len())
            .filter(|&p| !is_center[p])
            .take(target - self.centers.len())
            .collect();
        self.centers.extend(extra);
        let meta = self.meta;
        Solution::from_centers(inst, self.centers, meta)
    }
}

/// Result of a solver run. `NoFeasible` and `Fail` are ordinary outcomes,
/// not errors.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Solved(Solution),
    /// The cost search exhausted its candidates.
    NoFeasible(RunInfo),
    /// The radius sampling detected its own failure; retry with another seed.
    Fail(RunInfo),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_solution(self) -> Option<Solution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn info(&self) -> &RunInfo {
        match self {
            SolveOutcome::Solved(s) => &s.meta,
            SolveOutcome::NoFeasible(i) | SolveOutcome::Fail(i) => i,
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, SolveOutcome::Fail(_))
    }

    pub fn is_no_feasible(&self) -> bool {
        matches!(self, SolveOutcome::NoFeasible(_))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            domain: "0 < alpha < inf",
        })
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            domain: "0 < epsilon < inf",
        })
    }
}

fn check_cost(cost: f64) -> Result<()> {
    if cost >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "cost",
            value: cost,
            domain: "cost >= 0 (+inf allowed)",
        })
    }
}

fn check_k_range(k: usize, n: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroK)
    } else if k > n {
        Err(Error::KExceedsN { k, n })
    } else {
        Ok(())
    }
}

/// Inputs of one fair-center call.
#[derive(Debug, Clone, Copy)]
pub struct FairCenterParams<'a> {
    pub k: usize,
    pub alpha: f64,
    /// The cost guess; `f64::INFINITY` disables the cost clamp.
    pub cost: f64,
    pub radii: &'a RadiusAssignment,
}

/// Points pre-sorted by `(r(p), index)`, reused across cost values.
struct FairCenterScan<'a> {
    inst: &'a MetricInstance,
    radii: &'a [f64],
    alpha: f64,
    order: Vec<usize>,
}

impl<'a> FairCenterScan<'a> {
    fn new(inst: &'a MetricInstance, radii: &'a RadiusAssignment, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        radii.check_len(inst.len())?;
        let r = radii.values();
        let mut order: Vec<usize> = (0..inst.len()).collect();
        order.sort_by(|&a, &b| r[a].total_cmp(&r[b]));
        Ok(Self {
            inst,
            radii: r,
            alpha,
            order,
        })
    }

    /// Adds `p` iff `d(p, C) > 2 min{alpha r(p), cost}`. Stops early once the
    /// set grows past `limit`; the second value reports whether it did.
    fn run(&self, cost: f64, limit: usize) -> (Vec<usize>, bool) {
        let mut centers: Vec<usize> = Vec::new();
        for &p in &self.order {
            let threshold = 2.0 * (self.alpha * self.radii[p]).min(cost);
            let far = centers.iter().all(|&c| self.inst.dist(p, c) > threshold);
            if far {
                centers.push(p);
                if centers.len() > limit {
                    return (centers, true);
                }
            }
        }
        (centers, false)
    }
}

/// Greedy fair-center selection.
///
/// Every point ends within `2 min{alpha r(p), cost}` of the returned set.
/// When `r >= r_k` pointwise and some `(alpha, k)`-fair solution of cost at
/// most `cost` exists, at most `k` centers are returned.
pub fn fair_center(inst: &MetricInstance, params: &FairCenterParams<'_>) -> Result<Solution> {
    check_cost(params.cost)?;
    let scan = FairCenterScan::new(inst, params.radii, params.alpha)?;
    let (centers, _) = scan.run(params.cost, usize::MAX);
    let mut meta = RunInfo::new(Algorithm::FairCenter, params.k);
    meta.alpha = Some(params.alpha);
    meta.cost_threshold = Some(params.cost);
    Ok(Solution::from_centers(inst, centers, meta))
}

/// Farthest-first traversal from point 0, ties to the lowest index.
/// A 2-approximation for unconstrained k-center.
pub fn gonzalez(inst: &MetricInstance, k: usize) -> Result<Solution> {
    check_k_range(k, inst.len())?;
    let n = inst.len();
    let mut centers = Vec::with_capacity(k);
    let mut nearest = vec![f64::INFINITY; n];
    let mut is_center = vec![false; n];
    let mut next = 0usize;
    for _ in 0..k {
        centers.push(next);
        is_center[next] = true;
        let mut best = (f64::NEG_INFINITY, 0usize);
        for (p, slot) in nearest.iter_mut().enumerate() {
            let d = inst.dist(p, next);
            if d < *slot {
                *slot = d;
            }
            // duplicates of a center sit at distance 0 but are still eligible
            if !is_center[p] && *slot > best.0 {
                best = (*slot, p);
            }
        }
        next = best.1;
    }
    let cost = nearest.iter().copied().fold(0.0, f64::max);
    Ok(Solution {
        centers,
        cost,
        fairness_ratios: None,
        meta: RunInfo::new(Algorithm::Gonzalez, k),
    })
}

/// Smallest `j >= 0` with `base^j >= x`, for `base > 1`, `x >= 1`.
pub fn ceil_log(base: f64, x: f64) -> u32 {
    let mut j = (x.ln() / base.ln()).ceil().max(0.0) as u32;
    while j > 0 && base.powi(j as i32 - 1) >= x {
        j -= 1;
    }
    while base.powi(j as i32) < x {
        j += 1;
    }
    j
}

/// Sorted, deduplicated candidate values for the optimal fair cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostCandidateList {
    pub values: Vec<f64>,
    pub epsilon: f64,
}

impl CostCandidateList {
    /// `ceil(log_{1+eps} 16) + k(k-1)/2 * ceil(log_{1+eps} 4)`.
    pub fn size_bound(k: usize, epsilon: f64) -> usize {
        let base = 1.0 + epsilon;
        ceil_log(base, 16.0) as usize + k * k.saturating_sub(1) / 2 * ceil_log(base, 4.0) as usize
    }
}

/// Candidate cost values built from a farthest-first solution: a geometric
/// grid around its cost, plus a short grid around every pairwise distance
/// between its centers. If a feasible fair solution exists, some value lies
/// within `[opt, (1+eps) opt]`.
pub fn cost_candidates(inst: &MetricInstance, k: usize, epsilon: f64) -> Result<CostCandidateList> {
    check_epsilon(epsilon)?;
    let g = gonzalez(inst, k)?;
    let base = 1.0 + epsilon;
    let mut values = Vec::new();
    let grid = |scale: f64, steps: u32, out: &mut Vec<f64>| {
        out.extend((1..=steps).map(|j| 0.5 * base.powi(j as i32) * scale));
    };
    grid(g.cost, ceil_log(base, 16.0), &mut values);
    let pair_steps = ceil_log(base, 4.0);
    for (i, &a) in g.centers.iter().enumerate() {
        for &b in &g.centers[i + 1..] {
            grid(inst.dist(a, b), pair_steps, &mut values);
        }
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(CostCandidateList { values, epsilon })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Halve the candidate multiset around its lower median, found by selection.
    Selection,
    /// Pre-sort and halve index ranges.
    Sort,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostSearchResult {
    pub cost_threshold: f64,
    pub solution: Solution,
    /// Number of fair-center evaluations performed.
    pub probes: usize,
}

/// Halving search for the smallest candidate `cost` at which fair-center
/// returns at most `k` centers.
///
/// Each probe evaluates the lower median of the remaining candidates; on
/// success the search records it and keeps the strictly smaller values,
/// otherwise the strictly larger ones. Both modes visit the same sequence of
/// values. Returns `None` when no probed value succeeds.
pub fn binary_search_cost(
    inst: &MetricInstance,
    k: usize,
    alpha: f64,
    radii: &RadiusAssignment,
    candidates: &[f64],
    mode: SearchMode,
) -> Result<Option<CostSearchResult>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    for &c in candidates {
        check_cost(c)?;
    }
    let scan = FairCenterScan::new(inst, radii, alpha)?;
    // `+ 0.0` folds -0.0 into 0.0 so both modes see identical bits
    let mut work: Vec<f64> = candidates.iter().map(|&c| c + 0.0).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut probes = 0usize;

    let mut probe = |cost: f64, best: &mut Option<(f64, Vec<usize>)>| {
        probes += 1;
        let (centers, exceeded) = scan.run(cost, k);
        if !exceeded {
            *best = Some((cost, centers));
        }
        !exceeded
    };

    match mode {
        SearchMode::Selection => {
            while !work.is_empty() {
                let m = lower_median_in_place(&mut work);
                if probe(m, &mut best) {
                    work.retain(|&x| x < m);
                } else {
                    work.retain(|&x| x > m);
                }
            }
        }
        SearchMode::Sort => {
            work.sort_by(f64::total_cmp);
            let (mut lo, mut hi) = (0usize, work.len());
            while lo < hi {
                let m = work[lo + (hi - lo - 1) / 2];
                if probe(m, &mut best) {
                    hi = lo + work[lo..hi].partition_point(|&x| x < m);
                } else {
                    lo += work[lo..hi].partition_point(|&x| x <= m);
                }
            }
        }
    }

    Ok(best.map(|(cost_threshold, centers)| {
        let mut meta = RunInfo::new(Algorithm::FairCenter, k);
        meta.alpha = Some(alpha);
        meta.cost_threshold = Some(cost_threshold);
        CostSearchResult {
            cost_threshold,
            solution: Solution::from_centers(inst, centers, meta),
            probes,
        }
    }))
}

/// Optional post-processing shared by both drivers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Top the center set up to exactly `k` with lowest-index non-centers.
    pub pad_to_k: bool,
}

/// Deterministic (2,2)-approximation with default options.
pub fn solve_exact22(inst: &MetricInstance, k: usize, alpha: f64) -> Result<SolveOutcome> {
    solve_exact22_with(inst, k, alpha, SolveOptions::default())
}

/// Deterministic (2,2)-approximation: exact radii, then a cost search over
/// every pairwise distance (and 0).
///
/// If a feasible `alpha`-fair solution exists, the result has at most `k`
/// centers, cost at most twice the optimum, and every point within
/// `2 alpha r_k(p)` of a center. `NoFeasible` certifies that no feasible
/// solution exists.
pub fn solve_exact22_with(
    inst: &MetricInstance,
    k: usize,
    alpha: f64,
    options: SolveOptions,
) -> Result<SolveOutcome> {
    check_k_range(k, inst.len())?;
    check_alpha(alpha)?;
    let radii = exact_fair_radii(inst, k)?;
    let mut candidates = inst.pairwise_distances();
    candidates.push(0.0);

    let mut info = RunInfo::new(Algorithm::Exact22, k);
    info.alpha = Some(alpha);
    info.radii_mode = Some(RadiiMode::Exact);
    info.exact_radius_computations = inst.len();

    let Some(found) =
        binary_search_cost(inst, k, alpha, &radii, &candidates, SearchMode::Selection)?
    else {
        return Ok(SolveOutcome::NoFeasible(info));
    };
    info.cost_threshold = Some(found.cost_threshold);
    let mut solution = found.solution;
    solution.meta = info;
    let solution = if options.pad_to_k {
        solution.padded(inst, k)
    } else {
        solution
    };
    Ok(SolveOutcome::Solved(solution.with_fairness(inst, &radii)?))
}

/// Whether the fast pipeline hands over to the deterministic one:
/// `k > n/6` or `k^2/eps > n^2 ln n`.
pub fn fast10_delegates(n: usize, k: usize, epsilon: f64) -> bool {
    let nf = n as f64;
    !sampling_applicable(n, k) || (k as f64).powi(2) / epsilon > nf * nf * nf.ln()
}

/// Randomized pipeline with default options.
pub fn solve_fast10(
    inst: &MetricInstance,
    k: usize,
    alpha: f64,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<SolveOutcome> {
    solve_fast10_with(inst, k, alpha, epsilon, delta, seed, SolveOptions::default())
}

/// Randomized subquadratic pipeline: approximate radii by sampling, cost
/// candidates from farthest-first traversal, then the cost search.
///
/// With probability at least `1 - delta`, when a feasible solution exists:
/// at most `k` centers, cost at most `(2 + eps)` times the optimum, and every
/// point within `10 alpha r_k(p)` of a center. Falls back to
/// [`solve_exact22_with`] when [`fast10_delegates`] holds.
pub fn solve_fast10_with(
    inst: &MetricInstance,
    k: usize,
    alpha: f64,
    epsilon: f64,
    delta: f64,
    seed: u64,
    options: SolveOptions,
) -> Result<SolveOutcome> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    check_alpha(alpha)?;
    check_epsilon(epsilon)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            domain: "0 < delta < 1",
        });
    }

    let tag = |mut info: RunInfo| {
        info.algorithm = Algorithm::Fast10;
        info.epsilon = Some(epsilon);
        info.delta = Some(delta);
        info.seed = Some(seed);
        info
    };

    if fast10_delegates(inst.len(), k, epsilon) {
        let outcome = match solve_exact22_with(inst, k, alpha, options)? {
            SolveOutcome::Solved(mut s) => {
                s.meta = tag(s.meta);
                s.meta.delegated = true;
                SolveOutcome::Solved(s)
            }
            SolveOutcome::NoFeasible(info) => {
                let mut info = tag(info);
                info.delegated = true;
                SolveOutcome::NoFeasible(info)
            }
            SolveOutcome::Fail(info) => SolveOutcome::Fail(tag(info)),
        };
        return Ok(outcome);
    }

    let mut info = tag(RunInfo::new(Algorithm::Fast10, k));
    info.alpha = Some(alpha);
    info.radii_mode = Some(RadiiMode::Approx);

    let approx = approx_fair_radii(inst, k, delta, seed)?;
    info.exact_radius_computations = approx.exact_computations;
    let Some(radii) = approx.radii else {
        return Ok(SolveOutcome::Fail(info));
    };

    let candidates = cost_candidates(inst, k, epsilon / 2.0)?;
    let Some(found) = binary_search_cost(
        inst,
        k,
        alpha,
        &radii,
        &candidates.values,
        SearchMode::Sort,
    )?
    else {
        return Ok(SolveOutcome::NoFeasible(info));
    };
    info.cost_threshold = Some(found.cost_threshold);
    let mut solution = found.solution;
    solution.meta = info;
    if options.pad_to_k {
        solution = solution.padded(inst, k);
    }
    Ok(SolveOutcome::Solved(solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radii::RadiusKind;
    use crate::testutil::{line, random_instance};
    use proptest::prelude::*;

    fn running_example() -> MetricInstance {
        line(&[0.0, 1.0, 2.0, 10.0])
    }

    fn radii(v: &[f64]) -> RadiusAssignment {
        RadiusAssignment::injected(v.to_vec()).unwrap()
    }

    #[test]
    fn fair_center_zero_radii_takes_every_point() {
        let inst = running_example();
        let r = radii(&[0.0; 4]);
        for cost in [0.5, 3.0, f64::INFINITY] {
            let params = FairCenterParams {
                k: 2,
                alpha: 1.7,
                cost,
                radii: &r,
            };
            assert_eq!(fair_center(&inst, &params).unwrap().centers, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn fair_center_running_example() {
        let inst = running_example();
        let r = radii(&[1.0, 1.0, 1.0, 8.0]);
        let s = fair_center(
            &inst,
            &FairCenterParams {
                k: 2,
                alpha: 1.0,
                cost: 1.0,
                radii: &r,
            },
        )
        .unwrap();
        assert_eq!(s.centers, vec![0, 3]);
        assert_eq!(s.cost, 2.0);

        let s = fair_center(
            &inst,
            &FairCenterParams {
                k: 2,
                alpha: 1.0,
                cost: f64::INFINITY,
                radii: &r,
            },
        )
        .unwrap();
        // 10 <= 2 * 8, so point 3 is already close enough to 0
        assert_eq!(s.centers, vec![0]);
        assert_eq!(s.cost, 10.0);
    }

    #[test]
    fn fair_center_rejects_bad_params() {
        let inst = running_example();
        let r = radii(&[1.0; 3]);
        let params = FairCenterParams {
            k: 2,
            alpha: 1.0,
            cost: 1.0,
            radii: &r,
        };
        assert!(matches!(
            fair_center(&inst, &params),
            Err(Error::RadiiLengthMismatch { .. })
        ));
        let r = radii(&[1.0; 4]);
        for (alpha, cost) in [(0.0, 1.0), (1.0, -1.0), (f64::NAN, 1.0), (1.0, f64::NAN)] {
            let params = FairCenterParams {
                k: 2,
                alpha,
                cost,
                radii: &r,
            };
            assert!(fair_center(&inst, &params).is_err());
        }
    }

    #[test]
    fn gonzalez_examples() {
        let inst = running_example();
        let g = gonzalez(&inst, 2).unwrap();
        assert_eq!(g.centers, vec![0, 3]);
        assert_eq!(g.cost, 2.0);
        let g = gonzalez(&inst, 1).unwrap();
        assert_eq!((g.centers, g.cost), (vec![0], 10.0));
        let g = gonzalez(&inst, 4).unwrap();
        assert_eq!(g.cost, 0.0);
        let mut c = g.centers.clone();
        c.sort();
        assert_eq!(c, vec![0, 1, 2, 3]);
        assert!(matches!(gonzalez(&inst, 0), Err(Error::ZeroK)));
        assert!(matches!(gonzalez(&inst, 5), Err(Error::KExceedsN { .. })));
    }

    #[test]
    fn gonzalez_breaks_ties_by_index() {
        let inst = line(&[0.0, -5.0, 5.0]);
        assert_eq!(gonzalez(&inst, 2).unwrap().centers, vec![0, 1]);
    }

    #[test]
    fn gonzalez_never_repeats_a_center() {
        let inst = line(&[1.0; 5]);
        let g = gonzalez(&inst, 5).unwrap();
        assert_eq!(g.centers, vec![0, 1, 2, 3, 4]);
        assert_eq!(g.cost, 0.0);
    }

    #[test]
    fn ceil_log_is_exact_at_powers() {
        assert_eq!(ceil_log(2.0, 16.0), 4);
        assert_eq!(ceil_log(2.0, 4.0), 2);
        assert_eq!(ceil_log(1.5, 16.0), 7);
        assert_eq!(ceil_log(1.5, 4.0), 4);
        assert_eq!(ceil_log(1.25, 16.0), 13);
        assert_eq!(ceil_log(1.25, 4.0), 7);
        assert_eq!(ceil_log(4.0, 16.0), 2);
    }

    #[test]
    fn cost_candidates_running_example() {
        let inst = running_example();
        let l = cost_candidates(&inst, 2, 1.0).unwrap();
        assert_eq!(l.values, vec![2.0, 4.0, 8.0, 10.0, 16.0, 20.0]);
        let l = cost_candidates(&inst, 1, 1.0).unwrap();
        assert_eq!(l.values.len(), 4);
        assert!(cost_candidates(&inst, 2, 0.0).is_err());
        assert!(cost_candidates(&inst, 2, -1.0).is_err());
    }

    #[test]
    fn cost_candidates_size_bound() {
        assert_eq!(CostCandidateList::size_bound(5, 0.5), 7 + 10 * 4);
        for seed in 0..10 {
            let inst = random_instance(100, 2, seed);
            let l = cost_candidates(&inst, 5, 0.5).unwrap();
            assert!(l.values.len() <= CostCandidateList::size_bound(5, 0.5));
            assert!(l.values.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn binary_search_running_example() {
        let inst = running_example();
        let r = exact_fair_radii(&inst, 2).unwrap();
        let cands = [1.0, 1.0, 2.0, 8.0, 9.0, 10.0];
        for mode in [SearchMode::Selection, SearchMode::Sort] {
            let found = binary_search_cost(&inst, 2, 1.0, &r, &cands, mode)
                .unwrap()
                .unwrap();
            assert_eq!(found.cost_threshold, 1.0);
            assert_eq!(found.solution.centers, vec![0, 3]);
        }
    }

    #[test]
    fn binary_search_zero_cost() {
        let inst = running_example();
        let r = exact_fair_radii(&inst, 4).unwrap();
        assert!(r.values().iter().all(|&v| v == 0.0));
        let found = binary_search_cost(&inst, 4, 1.0, &r, &[0.0, 3.0, 7.0], SearchMode::Selection)
            .unwrap()
            .unwrap();
        assert_eq!(found.cost_threshold, 0.0);
        assert_eq!(found.solution.centers, vec![0, 1, 2, 3]);
    }

    #[test]
    fn binary_search_not_found() {
        // two points 10 apart, k = 1, tiny alpha: one center can never serve both
        let inst = line(&[0.0, 10.0]);
        let r = exact_fair_radii(&inst, 1).unwrap();
        let out = binary_search_cost(&inst, 1, 0.1, &r, &[1.0], SearchMode::Selection).unwrap();
        assert!(out.is_none());
        assert!(matches!(
            binary_search_cost(&inst, 1, 0.1, &r, &[], SearchMode::Sort),
            Err(Error::EmptyCandidates)
        ));
    }

    #[test]
    fn exact22_examples() {
        let inst = running_example();
        let s = solve_exact22(&inst, 2, 1.0).unwrap().into_solution().unwrap();
        assert_eq!(s.centers, vec![0, 3]);
        assert_eq!(s.cost, 2.0);
        assert!(s.max_fairness_ratio().unwrap() <= 2.0);
        assert_eq!(s.meta.radii_mode, Some(RadiiMode::Exact));

        let one = line(&[4.0]);
        let s = solve_exact22(&one, 1, 0.3).unwrap().into_solution().unwrap();
        assert_eq!((s.centers, s.cost), (vec![0], 0.0));
    }

    #[test]
    fn exact22_infeasible() {
        let inst = line(&[0.0, 10.0]);
        assert!(solve_exact22(&inst, 1, 0.1).unwrap().is_no_feasible());
    }

    #[test]
    fn exact22_pad_to_k() {
        let inst = running_example();
        let s = solve_exact22_with(&inst, 3, 2.0, SolveOptions { pad_to_k: true })
            .unwrap()
            .into_solution()
            .unwrap();
        assert_eq!(s.centers.len(), 3);
        let mut c = s.centers.clone();
        c.dedup();
        assert_eq!(c.len(), 3);
        assert_eq!(
            s.cost,
            assignment_distances(&inst, &s.centers).into_iter().fold(0.0, f64::max)
        );
    }

    #[test]
    fn exact22_alpha_two_always_feasible() {
        for seed in 0..30 {
            let inst = random_instance(15, 2, seed);
            for k in 1..=5 {
                assert!(solve_exact22(&inst, k, 2.0).unwrap().solution().is_some());
            }
        }
    }

    #[test]
    fn fast10_delegates_for_large_k() {
        let inst = random_instance(10, 2, 9);
        assert!(fast10_delegates(10, 3, 0.5));
        let fast = solve_fast10(&inst, 3, 1.0, 0.5, 0.1, 5).unwrap();
        let exact = solve_exact22(&inst, 3, 1.0).unwrap();
        let (f, e) = (fast.solution().unwrap(), exact.solution().unwrap());
        assert_eq!(f.centers, e.centers);
        assert_eq!(f.cost, e.cost);
        assert!(f.meta.delegated);
        assert_eq!(f.meta.algorithm, Algorithm::Fast10);
        assert_eq!(f.meta.radii_mode, Some(RadiiMode::Exact));
    }

    #[test]
    fn fast10_runs_sampling_path() {
        let inst = random_instance(300, 2, 1);
        let out = solve_fast10(&inst, 4, 2.0, 0.5, 0.1, 11).unwrap();
        let info = out.info();
        assert!(!info.delegated);
        assert_eq!(info.radii_mode, Some(RadiiMode::Approx));
        assert!(info.exact_radius_computations <= 12);
        let s = out.solution().expect("sampling failure is improbable here");
        assert!(s.centers.len() <= 4);
        assert_eq!(out, solve_fast10(&inst, 4, 2.0, 0.5, 0.1, 11).unwrap());
    }

    #[test]
    fn fast10_parameter_errors() {
        let inst = random_instance(60, 2, 1);
        assert!(solve_fast10(&inst, 0, 1.0, 0.5, 0.1, 0).is_err());
        assert!(solve_fast10(&inst, 2, 0.0, 0.5, 0.1, 0).is_err());
        assert!(solve_fast10(&inst, 2, 1.0, 0.0, 0.1, 0).is_err());
        assert!(solve_fast10(&inst, 2, 1.0, 0.5, 1.0, 0).is_err());
    }

    #[test]
    fn fairness_ratio_conventions() {
        assert_eq!(fairness_ratio(0.0, 0.0), 0.0);
        assert_eq!(fairness_ratio(1.0, 0.0), f64::INFINITY);
        assert_eq!(fairness_ratio(3.0, 2.0), 1.5);
    }

    proptest! {
        #[test]
        fn fair_center_thresholds_and_separation(
            seed in 0u64..10_000,
            n in 2usize..40,
            k in 1usize..6,
            alpha in 0.2f64..3.0,
            cost in 0.0f64..80.0,
        ) {
            let inst = random_instance(n, 2, seed);
            let r = exact_fair_radii(&inst, k).unwrap();
            let s = fair_center(&inst, &FairCenterParams { k, alpha, cost, radii: &r }).unwrap();
            let bound = |p: usize| 2.0 * (alpha * r.get(p)).min(cost);
            for p in 0..n {
                prop_assert!(inst.dist_to_set(p, &s.centers) <= bound(p));
            }
            for (i, &a) in s.centers.iter().enumerate() {
                for &b in &s.centers[i + 1..] {
                    prop_assert!(inst.dist(a, b) > bound(b));
                }
            }
            prop_assert_eq!(r.kind(), RadiusKind::Exact);
        }

        #[test]
        fn search_modes_agree(
            seed in 0u64..10_000,
            n in 2usize..30,
            k in 1usize..5,
            alpha in 0.2f64..3.0,
            picks in proptest::collection::vec(0usize..1000, 1..60),
        ) {
            let inst = random_instance(n, 2, seed);
            let r = exact_fair_radii(&inst, k).unwrap();
            let d = inst.pairwise_distances();
            let cands: Vec<f64> = picks.iter().map(|&i| d[i % d.len()]).collect();
            let a = binary_search_cost(&inst, k, alpha, &r, &cands, SearchMode::Selection).unwrap();
            let b = binary_search_cost(&inst, k, alpha, &r, &cands, SearchMode::Sort).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn exact22_ratios_are_consistent(seed in 0u64..10_000, n in 1usize..25, k in 1usize..5, alpha in 0.5f64..3.0) {
            let inst = random_instance(n, 2, seed);
            let k = k.min(n);
            if let SolveOutcome::Solved(s) = solve_exact22(&inst, k, alpha).unwrap() {
                let r = exact_fair_radii(&inst, k).unwrap();
                let ratios = s.fairness_ratios.as_ref().unwrap();
                for p in 0..n {
                    let expect = fairness_ratio(inst.dist_to_set(p, &s.centers), r.get(p));
                    prop_assert!((ratios[p] - expect).abs() <= 1e-12 * expect.abs().max(1.0));
                }
                let recomputed = assignment_distances(&inst, &s.centers).into_iter().fold(0.0, f64::max);
                prop_assert!((s.cost - recomputed).abs() <= 1e-12 * recomputed.max(1.0));
                let mut c = s.centers.clone();
                c.sort();
                c.dedup();
                prop_assert_eq!(c.len(), s.centers.len());
                prop_assert_eq!(solve_exact22(&inst, k, alpha).unwrap(), SolveOutcome::Solved(s));
            }
        }
    }
}
