use crate::error::{Error, Result};
use crate::rng::{self, tag};

/// Sample count for an `(epsilon, delta)` trace estimate of a PSD matrix
/// of the given rank: `ceil(24 eps^-2 ln(2 rank / delta))`.
pub fn hutchinson_sample_count(epsilon: f64, delta: f64, rank: usize) -> usize {
    (24.0 / (epsilon * epsilon) * (2.0 * rank as f64 / delta).ln()).ceil() as usize
}

/// The individual quadratic forms `x_i^T A x_i`, `i < samples`, for the
/// Rademacher vectors of stream `seed`.
pub fn hutchinson_samples<F>(mut apply: F, n: usize, samples: usize, seed: u64) -> Vec<f64>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    (0..samples as u64)
        .map(|i| {
            let x = rng::rademacher(n, seed, tag::HUTCHINSON, i);
            let ax = apply(&x);
            x.iter().zip(&ax).map(|(a, b)| a * b).sum()
        })
        .collect()
}

/// Hutchinson estimate `(1/M) sum_i x_i^T A x_i` of `tr(A)`, where `apply`
/// computes `A x`. Samples are summed in index order.
pub fn hutchinson_trace<F>(apply: F, n: usize, samples: usize, seed: u64) -> Result<f64>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample is required".into()));
    }
    let values = hutchinson_samples(apply, n, samples, seed);
    Ok(values.iter().sum::<f64>() / samples as f64)
}
