//! Order-statistic selection.
//!
//! Randomized quickselect with a three-way partition, so heavily duplicated
//! inputs stay linear. Ranges shorter than [`SORT_CUTOFF`] are finished by
//! sorting. The returned value does not depend on pivot choices.

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};

pub const SORT_CUTOFF: usize = 32;

/// Returns the `k`-th smallest element (1-based, counting multiplicities).
pub fn kth_smallest(values: &[f64], k: usize) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyValues);
    }
    if k == 0 || k > values.len() {
        return Err(Error::RankOutOfRange {
            rank: k,
            len: values.len(),
        });
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::NanValue);
    }
    let mut buf = values.to_vec();
    Ok(select_in_place(&mut buf, k - 1))
}

/// Rearranges `buf` and returns the element of 0-based rank `index`.
///
/// `buf` must be non-empty, NaN-free, and `index < buf.len()`.
pub fn select_in_place(buf: &mut [f64], index: usize) -> f64 {
    assert!(index < buf.len(), "rank {index} out of range");
    let mut rng = SmallRng::seed_from_u64(buf.len() as u64);
    let (mut lo, mut hi) = (0usize, buf.len());
    while hi - lo > SORT_CUTOFF {
        let pivot = buf[rng.random_range(lo..hi)];
        let (lt, gt) = partition3(&mut buf[lo..hi], pivot);
        let (lt, gt) = (lo + lt, lo + gt);
        if index < lt {
            hi = lt;
        } else if index >= gt {
            lo = gt;
        } else {
            return pivot;
        }
    }
    let tail = &mut buf[lo..hi];
    tail.sort_unstable_by(f64::total_cmp);
    tail[index - lo]
}

/// Dutch-flag partition around `pivot`. Returns `(lt, gt)` such that
/// `buf[..lt] < pivot`, `buf[lt..gt] == pivot`, `buf[gt..] > pivot`.
fn partition3(buf: &mut [f64], pivot: f64) -> (usize, usize) {
    let (mut lt, mut i, mut gt) = (0, 0, buf.len());
    while i < gt {
        let v = buf[i];
        if v < pivot {
            buf.swap(lt, i);
            lt += 1;
            i += 1;
        } else if v > pivot {
            gt -= 1;
            buf.swap(i, gt);
        } else {
            i += 1;
        }
    }
    (lt, gt)
}

/// Lower median (0-based rank `(len - 1) / 2`) of a non-empty buffer.
pub fn lower_median_in_place(buf: &mut [f64]) -> f64 {
    let idx = (buf.len() - 1) / 2;
    select_in_place(buf, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    fn sorted_oracle(values: &[f64], k: usize) -> f64 {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        v[k - 1]
    }

    #[test]
    fn small_examples() {
        assert_eq!(kth_smallest(&[5.0, 1.0, 3.0], 1).unwrap(), 1.0);
        assert_eq!(kth_smallest(&[5.0, 1.0, 3.0, 3.0], 3).unwrap(), 3.0);
        assert_eq!(kth_smallest(&[0.0, 1.0, 2.0, 10.0], 2).unwrap(), 1.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(kth_smallest(&[], 1), Err(Error::EmptyValues)));
        assert!(matches!(
            kth_smallest(&[1.0], 0),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            kth_smallest(&[1.0], 2),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            kth_smallest(&[1.0, f64::NAN], 1),
            Err(Error::NanValue)
        ));
    }

    #[test]
    fn all_equal_input() {
        let v = vec![4.0; 10_000];
        assert_eq!(kth_smallest(&v, 5_000).unwrap(), 4.0);
    }

    #[test]
    fn agrees_with_sort_on_random_arrays() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e1ec7);
        for trial in 0..1000 {
            let len = if trial % 10 == 0 {
                rng.random_range(1..=10_000)
            } else {
                rng.random_range(1..=500)
            };
            // a coarse value range forces many duplicates on some trials
            let span = if trial % 3 == 0 { 10.0 } else { 1e6 };
            let values: Vec<f64> = (0..len)
                .map(|_| (rng.random::<f64>() * span).floor())
                .collect();
            let k = rng.random_range(1..=len);
            assert_eq!(kth_smallest(&values, k).unwrap(), sorted_oracle(&values, k));
        }
    }

    #[test]
    fn lower_median() {
        let mut v = vec![4.0, 1.0, 3.0, 2.0];
        assert_eq!(lower_median_in_place(&mut v), 2.0);
        let mut v = vec![5.0, 1.0, 3.0];
        assert_eq!(lower_median_in_place(&mut v), 3.0);
    }
}
