use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::states::SchmidtQubitPair;

/// Pairs per setting used when none is given. Chosen so that bootstrap
/// errors on purity and the entanglement measures land in the third decimal.
pub const DEFAULT_PAIRS_PER_SETTING: u64 = 10_000;

/// Pump half-wave-plate angle, crystal phase, white-noise level and
/// acquisition size for one simulated source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceConfig {
    pub hwp_angle_deg: f64,
    pub relative_phase: f64,
    pub target_purity: f64,
    pub pairs_per_setting: u64,
    pub seed: u64,
}

impl SourceConfig {
    pub fn new(
        hwp_angle_deg: f64,
        target_purity: f64,
        pairs_per_setting: u64,
        seed: u64,
    ) -> Result<Self> {
        let cfg = Self {
            hwp_angle_deg,
            relative_phase: 0.0,
            target_purity,
            pairs_per_setting,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_phase(mut self, phi: f64) -> Self {
        self.relative_phase = phi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=45.0).contains(&self.hwp_angle_deg) {
            return Err(Error::Config(format!(
                "half-wave-plate angle {} deg outside [0, 45]",
                self.hwp_angle_deg
            )));
        }
        if !self.relative_phase.is_finite() {
            return Err(Error::Config("relative phase must be finite".into()));
        }
        if self.pairs_per_setting < 1 {
            return Err(Error::Config("pairs_per_setting must be at least 1".into()));
        }
        if !(0.25..=1.0).contains(&self.target_purity) {
            return Err(Error::Config(format!(
                "target purity {} not reachable: white-noise mixing spans [0.25, 1]",
                self.target_purity
            )));
        }
        Ok(())
    }

    /// `(alpha, beta) = (sin 2theta, cos 2theta)`.
    pub fn amplitudes(&self) -> (f64, f64) {
        let two_theta = (2.0 * self.hwp_angle_deg).to_radians();
        (two_theta.sin(), two_theta.cos())
    }

    /// Schmidt form of the noiseless source state.
    pub fn ideal_schmidt(&self) -> SchmidtQubitPair {
        let (alpha, beta) = self.amplitudes();
        let (a, b) = (alpha.abs(), beta.abs());
        let norm = (a * a + b * b).sqrt();
        SchmidtQubitPair::new(b / norm, a / norm).expect("normalized amplitudes")
    }

    /// Weight `v` of the pure state in `v |psi><psi| + (1 - v) I/4` that
    /// gives the target purity: `Tr rho^2 = 1/4 + 3 v^2 / 4`.
    pub fn visibility(&self) -> f64 {
        ((4.0 * self.target_purity - 1.0) / 3.0)
            .clamp(0.0, 1.0)
            .sqrt()
    }
}

/// `alpha |VV> + beta e^{i phi} |HH>` in the `|HH>, |HV>, |VH>, |VV>` basis.
pub fn source_pure_state(cfg: &SourceConfig) -> [Complex64; 4] {
    let (alpha, beta) = cfg.amplitudes();
    [
        Complex64::from_polar(beta, cfg.relative_phase),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(alpha, 0.0),
    ]
}

/// Source state with isotropic white noise at the configured purity.
pub fn source_state(cfg: &SourceConfig) -> Result<DensityMatrix> {
    cfg.validate()?;
    let pure = DensityMatrix::from_pure(&source_pure_state(cfg));
    pure.mix(&DensityMatrix::maximally_mixed(4), cfg.visibility())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::mixed_measures;

    #[test]
    fn pure_source_concurrence_matches_table_states() {
        for (theta, want) in [(23.1, 0.999), (13.1, 0.792), (9.1, 0.593)] {
            let cfg = SourceConfig::new(theta, 1.0, 10_000, 0).unwrap();
            let rho = source_state(&cfg).unwrap();
            let m = mixed_measures(&rho).unwrap();
            let (a, b) = cfg.amplitudes();
            assert!((2.0 * m.negativity - 2.0 * a * b).abs() < 1e-12);
            assert!((2.0 * m.negativity - want).abs() < 5e-4, "theta {theta}");
        }
    }

    #[test]
    fn purity_is_hit_exactly() {
        for p in [0.25, 0.5, 0.957, 1.0] {
            let cfg = SourceConfig::new(13.1, p, 10, 1).unwrap();
            let rho = source_state(&cfg).unwrap();
            assert!((rho.purity() - p).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(matches!(
            SourceConfig::new(50.0, 0.9, 10, 0),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SourceConfig::new(10.0, 0.2, 10, 0),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SourceConfig::new(10.0, 0.9, 0, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn forty_five_degrees_is_a_product_state() {
        let cfg = SourceConfig::new(45.0, 1.0, 10, 0).unwrap();
        let (a, b) = cfg.amplitudes();
        assert!((a - 1.0).abs() < 1e-15 && b.abs() < 1e-15);
        let m = mixed_measures(&source_state(&cfg).unwrap()).unwrap();
        assert!(m.negativity < 1e-12);
        assert!(cfg.ideal_schmidt().c0() < 1e-15);
    }

    #[test]
    fn phase_only_moves_coherence() {
        let cfg = SourceConfig::new(20.0, 1.0, 10, 0).unwrap().with_phase(0.8);
        let rho = source_state(&cfg).unwrap();
        let (a, b) = cfg.amplitudes();
        let coh = rho.get(0, 3);
        assert!((coh.norm() - a * b).abs() < 1e-15);
        assert!((coh.arg() - 0.8).abs() < 1e-12);
    }
}
