//! Bicriteria approximation algorithms for individually fair k-center.
//!
//! A point's fairness radius `r_k(p)` is the distance to its `ceil(n/k)`-th
//! nearest neighbour. Given a fairness factor `alpha`, the goal is at most
//! `k` centers with every `p` within `alpha * r_k(p)` of a center, at
//! minimum k-center cost.
//!
//! - [`solve_exact22`]: deterministic; cost at most 2x optimal, every point
//!   within `2 alpha r_k(p)`.
//! - [`solve_fast10`]: randomized, subquadratic for small `k`; with
//!   probability `1 - delta`, cost at most `(2 + eps)` times optimal and every
//!   point within `10 alpha r_k(p)`.
//! - [`oracle`]: exhaustive ground truth for tiny instances.

pub mod error;
pub mod harness;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod radii;
pub mod select;
pub mod solver;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use io::{generate, GeneratorKind, GeneratorSpec, RunReport};
pub use metric::{MetricInstance, MetricKind};
pub use oracle::{brute_fair_kcenter, brute_fair_radii, brute_kcenter, OracleResult};
pub use radii::{
    approx_fair_radii, exact_fair_radii, exact_fair_radius, fair_sampling, ApproxRadiiResult,
    RadiusAssignment, RadiusKind, SamplingParams,
};
pub use select::kth_smallest;
pub use solver::{
    binary_search_cost, cost_candidates, fair_center, gonzalez, solve_exact22, solve_exact22_with,
    solve_fast10, solve_fast10_with, Algorithm, CostCandidateList, FairCenterParams, RadiiMode,
    RunInfo, SearchMode, Solution, SolveOptions, SolveOutcome,
};
