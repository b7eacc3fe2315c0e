//! Entanglement of two-qubit density matrices: partial-transpose negativity,
//! Wootters concurrence and the entanglement of formation derived from it.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qubit::entropy2;
use crate::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedQubitMeasures {
    pub purity: f64,
    /// Sum of |negative eigenvalues| of the partial transpose; `c0*c1` on
    /// pure states, so 0.5 at most.
    pub negativity: f64,
    pub log_negativity: f64,
    pub concurrence: f64,
    pub eof: f64,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::Domain(format!(
            "two-qubit measure needs a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// `Tr[rho^2]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Negativity with the partial transpose taken over the second qubit.
pub fn negativity_mixed(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let h = linalg::hermitian_part(rho.matrix());
    let pt = linalg::partial_transpose_second(&h, 2, 2);
    Ok(linalg::hermitian_eigenvalues(&pt)
        .into_iter()
        .filter(|&v| v < 0.0)
        .map(f64::abs)
        .sum())
}

/// `sigma_y (x) sigma_y` in the computational basis.
fn sigma_yy() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1)
    m[(0, 3)] = Complex64::new(-1.0, 0.0);
    m[(1, 2)] = Complex64::new(1.0, 0.0);
    m[(2, 1)] = Complex64::new(1.0, 0.0);
    m[(3, 0)] = Complex64::new(-1.0, 0.0);
    m
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
///
/// The `l_i` are the square roots of the eigenvalues of
/// `rho (sy sy) rho* (sy sy)`. They are obtained here as the singular values
/// of the complex-symmetric matrix `W^T (sy sy) W`, where the columns of `W`
/// are the subnormalized eigenvectors `sqrt(p_k) v_k` of `rho`. Both give the
/// same `l_i`; the singular-value route keeps rank-deficient inputs accurate
/// because no square root of a round-off-sized eigenvalue is taken.
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let (values, vectors) = linalg::hermitian_eigen(rho.matrix());
    let mut w = CMatrix::zeros(4, 4);
    for (k, &p) in values.iter().enumerate() {
        let scale = Complex64::new(p.max(0.0).sqrt(), 0.0);
        w.set_column(k, &(vectors.column(k) * scale));
    }
    let tau = w.transpose() * sigma_yy() * &w;
    let mut lambda: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `h((1 + sqrt(1 - C^2)) / 2)` with `h` the binary entropy.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    let s = (1.0 - c * c).max(0.0).sqrt();
    let x = (1.0 + s) / 2.0;
    entropy2(x, (1.0 - s) / 2.0)
}

pub fn eof_mixed(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence_wootters(rho)?))
}

pub fn mixed_measures(rho: &DensityMatrix) -> Result<MixedQubitMeasures> {
    let negativity = negativity_mixed(rho)?;
    let concurrence = concurrence_wootters(rho)?;
    Ok(MixedQubitMeasures {
        purity: purity(rho),
        negativity,
        log_negativity: (2.0 * negativity + 1.0).ln() / LN_2,
        concurrence,
        eof: eof_from_concurrence(concurrence),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::pure_measures;
    use crate::states::SchmidtQubitPair;

    fn bell() -> DensityMatrix {
        SchmidtQubitPair::maximally_entangled().to_density()
    }

    fn werner(v: f64) -> DensityMatrix {
        bell().mix(&DensityMatrix::maximally_mixed(4), v).unwrap()
    }

    /// Independent route: eigenvalues of the non-Hermitian product via a
    /// complex Schur decomposition.
    fn concurrence_by_schur(rho: &DensityMatrix) -> f64 {
        let m = rho.matrix();
        let yy = sigma_yy();
        let tilde = &yy * m.map(|z| z.conj()) * &yy;
        let prod = m * tilde;
        let schur = prod.schur();
        let (_, t) = schur.unpack();
        let mut lam: Vec<f64> = (0..4).map(|i| t[(i, i)].re.max(0.0).sqrt()).collect();
        lam.sort_by(|a, b| b.total_cmp(a));
        (lam[0] - lam[1] - lam[2] - lam[3]).max(0.0)
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&DensityMatrix::maximally_mixed(4)) - 0.25).abs() < 1e-15);
        assert!((purity(&bell()) - 1.0).abs() < 1e-15);
        let expected = 0.96f64 * 0.96 + 2.0 * 0.96 * 0.04 * 0.25 + 0.04 * 0.04 * 0.25;
        assert!((purity(&werner(0.96)) - expected).abs() < 1e-14);
        assert!((expected - 0.9412).abs() < 1e-12);
    }

    #[test]
    fn negativity_examples() {
        assert!(
            negativity_mixed(&DensityMatrix::maximally_mixed(4))
                .unwrap()
                .abs()
                < 1e-15
        );
        assert!((negativity_mixed(&bell()).unwrap() - 0.5).abs() < 1e-14);
        let s = SchmidtQubitPair::from_c0(0.4).unwrap();
        let n = negativity_mixed(&s.to_density()).unwrap();
        assert!((n - s.c0() * s.c1()).abs() < 1e-10);
        assert!((n - 0.36661).abs() < 1e-5);
    }

    #[test]
    fn concurrence_examples() {
        assert!(concurrence_wootters(&DensityMatrix::maximally_mixed(4)).unwrap() < 1e-15);
        assert!((concurrence_wootters(&bell()).unwrap() - 1.0).abs() < 1e-12);
        let w = werner(0.5);
        let c = concurrence_wootters(&w).unwrap();
        assert!((c - 0.25).abs() < 1e-12);
        assert!((concurrence_by_schur(&w) - 0.25).abs() < 1e-10);
    }

    #[test]
    fn concurrence_routes_agree_on_full_rank_states() {
        for (c0, v) in [(0.3, 0.9), (0.6, 0.7), (0.95, 0.99), (0.5, 0.4)] {
            let pure = SchmidtQubitPair::from_c0(c0).unwrap().to_density();
            let rho = pure.mix(&DensityMatrix::maximally_mixed(4), v).unwrap();
            let a = concurrence_wootters(&rho).unwrap();
            let b = concurrence_by_schur(&rho);
            assert!((a - b).abs() < 1e-9, "c0={c0} v={v}: {a} vs {b}");
        }
    }

    #[test]
    fn eof_examples() {
        assert_eq!(eof_from_concurrence(0.0), 0.0);
        assert!((eof_from_concurrence(1.0) - 1.0).abs() < 1e-15);
        let s = SchmidtQubitPair::from_c0(0.4).unwrap();
        let e = eof_mixed(&s.to_density()).unwrap();
        assert!((e - pure_measures(&s).eof).abs() < 1e-9);
        assert!((e - 0.63430).abs() < 1e-5);
    }

    #[test]
    fn bundle_examples() {
        let m = mixed_measures(&bell()).unwrap();
        assert!((m.purity - 1.0).abs() < 1e-12);
        assert!((2.0 * m.negativity - 1.0).abs() < 1e-12);
        assert!((m.log_negativity - 1.0).abs() < 1e-12);
        assert!((m.eof - 1.0).abs() < 1e-9);

        let m = mixed_measures(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert!((m.purity - 0.25).abs() < 1e-15);
        assert!(m.negativity < 1e-15 && m.concurrence < 1e-15 && m.eof < 1e-12);
        assert!(m.log_negativity.abs() < 1e-12);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(mixed_measures(&rho), Err(Error::Domain(_))));
    }
}
