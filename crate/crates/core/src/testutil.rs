use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::{MetricInstance, MetricKind};

pub fn line(xs: &[f64]) -> MetricInstance {
    let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
    MetricInstance::from_points(&rows, MetricKind::Euclidean).unwrap()
}

pub fn random_instance(n: usize, dim: usize, seed: u64) -> MetricInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * dim).map(|_| rng.random::<f64>() * 100.0).collect();
    MetricInstance::from_flat(coords, dim, MetricKind::Euclidean).unwrap()
}
