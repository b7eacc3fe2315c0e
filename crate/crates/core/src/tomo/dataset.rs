use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::projectors::{projection_set, Polarization};
use super::source::SourceConfig;
use super::stream_rng;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomoRecord {
    pub setting: (Polarization, Polarization),
    /// `Tr[Pi rho]` of the state that generated the counts, when known.
    pub probability: Option<f64>,
    pub observed: u64,
}

/// Coincidence counts for the 36 analyzer settings.
#[derive(Debug, Clone, PartialEq)]
pub struct TomoDataset {
    pub records: Vec<TomoRecord>,
    pub pairs_per_setting: u64,
    pub seed: u64,
    pub theta_deg: f64,
    pub target_purity: f64,
}

/// Poisson draw; a zero mean yields zero.
pub(crate) fn poisson<R: Rng>(rng: &mut R, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let d = Poisson::new(mean).expect("positive finite mean");
    d.sample(rng) as u64
}

/// Draws `Poisson(pairs_per_setting * Tr[Pi rho])` for every setting using
/// stream 0 of the configured seed.
pub fn simulate_counts(rho: &DensityMatrix, cfg: &SourceConfig) -> Result<TomoDataset> {
    cfg.validate()?;
    if rho.dim() != 4 {
        return Err(Error::Domain("tomography needs a two-qubit state".into()));
    }
    let mut rng = stream_rng(cfg.seed, 0);
    let n = cfg.pairs_per_setting as f64;
    let records = projection_set()
        .into_iter()
        .map(|p| {
            let prob = rho.expectation_rank_one(&p.vector).max(0.0);
            TomoRecord {
                setting: p.setting,
                probability: Some(prob),
                observed: poisson(&mut rng, n * prob),
            }
        })
        .collect();
    Ok(TomoDataset {
        records,
        pairs_per_setting: cfg.pairs_per_setting,
        seed: cfg.seed,
        theta_deg: cfg.hwp_angle_deg,
        target_purity: cfg.target_purity,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct DatasetFile {
    settings: Vec<[String; 2]>,
    counts: Vec<u64>,
    pairs_per_setting: u64,
    seed: u64,
    theta_deg: f64,
    target_purity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probabilities: Option<Vec<f64>>,
}

impl TomoDataset {
    pub fn counts(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.observed).collect()
    }

    /// Expected counts `pairs_per_setting * Tr[Pi rho]`, when the generating
    /// probabilities are known.
    pub fn expected_counts(&self) -> Option<Vec<f64>> {
        let n = self.pairs_per_setting as f64;
        self.records
            .iter()
            .map(|r| r.probability.map(|p| n * p))
            .collect()
    }

    /// Checks the 36-record layout against [`projection_set`].
    pub fn validate(&self) -> Result<()> {
        let expected = projection_set();
        if self.records.len() != expected.len() {
            return Err(Error::Parse(format!(
                "dataset has {} records, expected {}",
                self.records.len(),
                expected.len()
            )));
        }
        for (r, p) in self.records.iter().zip(&expected) {
            if r.setting != p.setting {
                return Err(Error::Parse(format!(
                    "setting {}{} where {}{} was expected",
                    r.setting.0.label(),
                    r.setting.1.label(),
                    p.setting.0.label(),
                    p.setting.1.label()
                )));
            }
        }
        if self.pairs_per_setting < 1 {
            return Err(Error::Parse("pairs_per_setting must be at least 1".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let probabilities: Option<Vec<f64>> = self.records.iter().map(|r| r.probability).collect();
        let file = DatasetFile {
            settings: self
                .records
                .iter()
                .map(|r| {
                    [
                        r.setting.0.label().to_string(),
                        r.setting.1.label().to_string(),
                    ]
                })
                .collect(),
            counts: self.counts(),
            pairs_per_setting: self.pairs_per_setting,
            seed: self.seed,
            theta_deg: self.theta_deg,
            target_purity: self.target_purity,
            probabilities,
        };
        serde_json::to_string_pretty(&file).expect("dataset serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DatasetFile = serde_json::from_str(text)?;
        if file.settings.len() != file.counts.len() {
            return Err(Error::Parse(format!(
                "{} settings but {} counts",
                file.settings.len(),
                file.counts.len()
            )));
        }
        if let Some(p) = &file.probabilities {
            if p.len() != file.counts.len() {
                return Err(Error::Parse("probabilities length mismatch".into()));
            }
        }
        let label = |s: &str| {
            Polarization::from_label(s)
                .ok_or_else(|| Error::Parse(format!("unknown polarization {s:?}")))
        };
        let records = file
            .settings
            .iter()
            .zip(&file.counts)
            .enumerate()
            .map(|(i, ([a, b], &n))| {
                Ok(TomoRecord {
                    setting: (label(a)?, label(b)?),
                    probability: file.probabilities.as_ref().map(|p| p[i]),
                    observed: n,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ds = TomoDataset {
            records,
            pairs_per_setting: file.pairs_per_setting,
            seed: file.seed,
            theta_deg: file.theta_deg,
            target_purity: file.target_purity,
        };
        ds.validate()?;
        Ok(ds)
    }
}
