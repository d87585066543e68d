//! Shared fixtures for the criterion benchmarks.

use fairkc_core::{generate, GeneratorKind, GeneratorSpec, MetricInstance};

/// Uniform 2-D instance of `n` points with a fixed seed.
pub fn uniform(n: usize) -> MetricInstance {
    generate(&GeneratorSpec::new(GeneratorKind::UniformBox, n, 2, 0x5eed))
        .expect("uniform_box spec is valid")
}
