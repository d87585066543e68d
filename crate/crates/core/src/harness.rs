//! Repeated-trial statistics and wall-time scaling for the randomized
//! pipeline.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::io::{generate, GeneratorKind, GeneratorSpec};
use crate::metric::MetricInstance;
use crate::radii::exact_fair_radii;
use crate::solver::{solve_fast10, SolveOutcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub max: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Self {
            count: v.len(),
            min: v[0],
            median: v[(v.len() - 1) / 2],
            mean: v.iter().sum::<f64>() / v.len() as f64,
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: usize,
    pub solved: usize,
    pub fail: usize,
    pub no_feasible: usize,
    pub success_rate: f64,
    pub cost: Option<Summary>,
    #[serde(with = "crate::io::json_f64::option")]
    pub worst_fairness_ratio: Option<f64>,
    pub max_fairness_ratio: Option<Summary>,
    pub wall_ms: Option<Summary>,
}

/// Runs the randomized pipeline once per seed in `seeds`, in parallel.
/// Fairness ratios are measured against exact radii, computed once up front.
pub fn fast10_trials(
    inst: &MetricInstance,
    k: usize,
    alpha: f64,
    epsilon: f64,
    delta: f64,
    seeds: std::ops::Range<u64>,
) -> Result<TrialStats> {
    let exact = exact_fair_radii(inst, k)?;
    let runs = seeds
        .into_par_iter()
        .map(|seed| {
            let start = Instant::now();
            let out = solve_fast10(inst, k, alpha, epsilon, delta, seed)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let ratio = match out.solution() {
                Some(s) => s.clone().with_fairness(inst, &exact)?.max_fairness_ratio(),
                None => None,
            };
            Ok((out, ms, ratio))
        })
        .collect::<Result<Vec<(SolveOutcome, f64, Option<f64>)>>>()?;

    let trials = runs.len();
    let solved: Vec<_> = runs.iter().filter(|r| r.0.solution().is_some()).collect();
    let costs: Vec<f64> = solved.iter().map(|r| r.0.solution().unwrap().cost).collect();
    let ratios: Vec<f64> = solved.iter().filter_map(|r| r.2).collect();
    let times: Vec<f64> = runs.iter().map(|r| r.1).collect();
    Ok(TrialStats {
        trials,
        solved: solved.len(),
        fail: runs.iter().filter(|r| r.0.is_fail()).count(),
        no_feasible: runs.iter().filter(|r| r.0.is_no_feasible()).count(),
        success_rate: if trials == 0 {
            0.0
        } else {
            solved.len() as f64 / trials as f64
        },
        cost: Summary::of(&costs),
        worst_fairness_ratio: ratios.iter().copied().reduce(f64::max),
        // infinite ratios would poison the mean; they show up in `worst_fairness_ratio`
        max_fairness_ratio: Summary::of(
            &ratios.iter().copied().filter(|r| r.is_finite()).collect::<Vec<_>>(),
        ),
        wall_ms: Summary::of(&times),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    /// Fastest of the repetitions.
    pub wall_ms: f64,
    /// `wall_ms` divided by the previous row's.
    pub ratio_to_previous: Option<f64>,
}

/// Times the randomized pipeline on uniform 2-D instances of each size,
/// keeping the fastest of `reps` seeded runs per size. Repetitions are
/// interleaved across sizes so transient load skews all sizes alike.
pub fn fast10_scaling(
    sizes: &[usize],
    k: usize,
    alpha: f64,
    epsilon: f64,
    delta: f64,
    seed: u64,
    reps: usize,
) -> Result<Vec<ScalingRow>> {
    let instances = sizes
        .iter()
        .map(|&n| generate(&GeneratorSpec::new(GeneratorKind::UniformBox, n, 2, seed)))
        .collect::<Result<Vec<_>>>()?;
    let mut best = vec![f64::INFINITY; sizes.len()];
    for rep in 0..reps.max(1) as u64 {
        for (inst, slot) in instances.iter().zip(best.iter_mut()) {
            let start = Instant::now();
            let out = solve_fast10(inst, k, alpha, epsilon, delta, seed.wrapping_add(rep))?;
            *slot = slot.min(start.elapsed().as_secs_f64() * 1e3);
            std::hint::black_box(out);
        }
    }
    Ok(sizes
        .iter()
        .zip(&best)
        .enumerate()
        .map(|(i, (&n, &wall_ms))| ScalingRow {
            n,
            wall_ms,
            ratio_to_previous: i.checked_sub(1).map(|j| wall_ms / best[j]),
        })
        .collect())
}
