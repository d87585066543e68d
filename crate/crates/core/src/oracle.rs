//! Exponential-time ground truth for tiny instances.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::radii::{RadiusAssignment, RadiusKind};

/// Largest instance the enumerating oracles accept.
pub const MAX_ORACLE_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub feasible: bool,
    /// `+inf` when infeasible.
    #[serde(with = "crate::io::json_f64")]
    pub optimal_cost: f64,
    /// Every optimal center set, each sorted, in lexicographic order.
    pub optimal_centers: Vec<Vec<usize>>,
}

impl OracleResult {
    fn infeasible() -> Self {
        Self {
            feasible: false,
            optimal_cost: f64::INFINITY,
            optimal_centers: Vec::new(),
        }
    }
}

/// Fair radii by fully sorting every distance row.
pub fn brute_fair_radii(inst: &MetricInstance, k: usize) -> Result<RadiusAssignment> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let n = inst.len();
    let rank = n.div_ceil(k);
    let values = (0..n)
        .map(|p| {
            let mut row: Vec<f64> = (0..n).map(|q| inst.dist(p, q)).collect();
            row.sort_by(f64::total_cmp);
            row[rank - 1]
        })
        .collect();
    RadiusAssignment::new(values, RadiusKind::Exact)
}

fn check_oracle_size(inst: &MetricInstance) -> Result<()> {
    if inst.len() > MAX_ORACLE_N {
        Err(Error::InstanceTooLarge {
            n: inst.len(),
            max: MAX_ORACLE_N,
        })
    } else {
        Ok(())
    }
}

/// Enumerates all center sets of size `1..=k`. `bound(p)` is the largest
/// admissible `d(p, C)`; a set is abandoned at the first point exceeding it.
fn enumerate(inst: &MetricInstance, k: usize, bound: impl Fn(usize) -> f64) -> OracleResult {
    let n = inst.len();
    let mut best = OracleResult::infeasible();
    for size in 1..=k.min(n) {
        'sets: for set in (0..n).combinations(size) {
            let mut cost = 0.0f64;
            for p in 0..n {
                let d = inst.dist_to_set(p, &set);
                if d > bound(p) {
                    continue 'sets;
                }
                cost = cost.max(d);
            }
            if cost < best.optimal_cost {
                best.optimal_cost = cost;
                best.optimal_centers.clear();
            }
            if cost == best.optimal_cost {
                best.optimal_centers.push(set);
            }
        }
    }
    best.feasible = best.optimal_cost.is_finite();
    best.optimal_centers.sort();
    best
}

/// Optimal `alpha`-fair k-center by exhaustive enumeration (n <= 20).
pub fn brute_fair_kcenter(inst: &MetricInstance, k: usize, alpha: f64) -> Result<OracleResult> {
    check_oracle_size(inst)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            domain: "alpha > 0",
        });
    }
    let radii = brute_fair_radii(inst, k)?;
    Ok(enumerate(inst, k, |p| alpha * radii.get(p)))
}

/// Optimal unconstrained k-center by exhaustive enumeration (n <= 20).
pub fn brute_kcenter(inst: &MetricInstance, k: usize) -> Result<OracleResult> {
    check_oracle_size(inst)?;
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if k > inst.len() {
        return Err(Error::KExceedsN { k, n: inst.len() });
    }
    Ok(enumerate(inst, k, |_| f64::INFINITY))
}
