use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{kron_vec, CMatrix};

/// Single-photon polarization states used as analyzer settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
    D,
    A,
    R,
    L,
}

impl Polarization {
    pub const ALL: [Polarization; 6] = [
        Polarization::H,
        Polarization::V,
        Polarization::D,
        Polarization::A,
        Polarization::R,
        Polarization::L,
    ];

    pub fn vector(self) -> [Complex64; 2] {
        let r = |x: f64| Complex64::new(x, 0.0);
        let s = FRAC_1_SQRT_2;
        match self {
            Polarization::H => [r(1.0), r(0.0)],
            Polarization::V => [r(0.0), r(1.0)],
            Polarization::D => [r(s), r(s)],
            Polarization::A => [r(s), r(-s)],
            Polarization::R => [r(s), Complex64::new(0.0, -s)],
            Polarization::L => [r(s), Complex64::new(0.0, s)],
        }
    }

    /// Bloch vector of the state.
    pub fn bloch(self) -> [f64; 3] {
        match self {
            Polarization::H => [0.0, 0.0, 1.0],
            Polarization::V => [0.0, 0.0, -1.0],
            Polarization::D => [1.0, 0.0, 0.0],
            Polarization::A => [-1.0, 0.0, 0.0],
            Polarization::R => [0.0, -1.0, 0.0],
            Polarization::L => [0.0, 1.0, 0.0],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarization::H => "H",
            Polarization::V => "V",
            Polarization::D => "D",
            Polarization::A => "A",
            Polarization::R => "R",
            Polarization::L => "L",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.label() == s)
    }
}

/// Rank-one two-photon projector `|a b><a b|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projector {
    pub setting: (Polarization, Polarization),
    pub vector: [Complex64; 4],
}

impl Projector {
    pub fn new(a: Polarization, b: Polarization) -> Self {
        let v = kron_vec(&a.vector(), &b.vector());
        Self {
            setting: (a, b),
            vector: [v[0], v[1], v[2], v[3]],
        }
    }

    pub fn matrix(&self) -> CMatrix {
        let v = nalgebra::DVector::from_column_slice(&self.vector);
        &v * v.adjoint()
    }
}

/// All 36 settings, first photon outer: HH, HV, HD, ..., LL.
pub fn projection_set() -> Vec<Projector> {
    Polarization::ALL
        .iter()
        .flat_map(|&a| Polarization::ALL.iter().map(move |&b| Projector::new(a, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityMatrix;
    use crate::linalg::trace;

    #[test]
    fn projectors_are_idempotent_unit_trace() {
        let set = projection_set();
        assert_eq!(set.len(), 36);
        for p in &set {
            let m = p.matrix();
            assert!((&m * &m - &m).norm() < 1e-12);
            assert!((trace(&m).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bloch_vectors_match_states() {
        for p in Polarization::ALL {
            let [a, b] = p.vector();
            let x = 2.0 * (a.conj() * b).re;
            let y = 2.0 * (a.conj() * b).im;
            let z = a.norm_sqr() - b.norm_sqr();
            let want = p.bloch();
            assert!((x - want[0]).abs() < 1e-15);
            assert!((y - want[1]).abs() < 1e-15);
            assert!((z - want[2]).abs() < 1e-15);
        }
    }

    #[test]
    fn probabilities_on_known_states() {
        let hh = DensityMatrix::from_pure(&Projector::new(Polarization::H, Polarization::H).vector);
        let p_hh = Projector::new(Polarization::H, Polarization::H);
        assert!((hh.expectation_rank_one(&p_hh.vector) - 1.0).abs() < 1e-15);

        let s = FRAC_1_SQRT_2;
        let bell = DensityMatrix::from_pure(&[
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        ]);
        let dd = Projector::new(Polarization::D, Polarization::D);
        assert!((bell.expectation_rank_one(&dd.vector) - 0.5).abs() < 1e-15);

        let rho = DensityMatrix::from_pure(&[
            Complex64::new(0.1, 0.2),
            Complex64::new(0.3, -0.1),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        let norm = 0.05 + 0.1 + 0.25;
        let total: f64 = [Polarization::H, Polarization::V]
            .iter()
            .flat_map(|&a| [Polarization::H, Polarization::V].map(|b| Projector::new(a, b)))
            .map(|p| rho.expectation_rank_one(&p.vector) / norm)
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
