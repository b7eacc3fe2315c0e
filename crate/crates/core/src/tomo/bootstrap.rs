use rayon::prelude::*;
use serde::Serialize;

use super::dataset::{poisson, TomoDataset};
use super::mle::mle_from_counts;
use super::stream_rng;
use crate::error::{Error, Result};
use crate::mixed::mixed_measures;

/// Standard deviations over bootstrap replicas (`n - 1` denominator).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorEstimate {
    pub purity: f64,
    pub two_n: f64,
    pub log_negativity: f64,
    pub eof: f64,
    pub replicas: usize,
    /// Replicas whose reconstruction passed density validation.
    pub physical: usize,
}

fn std_dev(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Poisson bootstrap: replica `k` redraws every count from
/// `Poisson(observed)` using stream `k + 1` of the dataset seed, and is
/// reconstructed independently.
pub fn bootstrap_errors(data: &TomoDataset, replicas: usize) -> Result<ErrorEstimate> {
    if replicas < 2 {
        return Err(Error::Config(format!(
            "need at least 2 replicas, got {replicas}"
        )));
    }
    data.validate()?;
    let observed = data.counts();
    let pairs = data.pairs_per_setting as f64;
    let samples = (0..replicas)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(data.seed, k as u64 + 1);
            let counts: Vec<f64> = observed
                .iter()
                .map(|&n| poisson(&mut rng, n as f64) as f64)
                .collect();
            let fit = mle_from_counts(&counts, pairs)?;
            let m = mixed_measures(&fit.rho)?;
            Ok([m.purity, 2.0 * m.negativity, m.log_negativity, m.eof])
        })
        .collect::<Result<Vec<_>>>()?;
    let column = |i: usize| std_dev(&samples.iter().map(|s| s[i]).collect::<Vec<_>>());
    Ok(ErrorEstimate {
        purity: column(0),
        two_n: column(1),
        log_negativity: column(2),
        eof: column(3),
        replicas,
        physical: samples.len(),
    })
}
