//! Small dense complex linear algebra used throughout the crate.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// `(m + m^dagger) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Largest entrywise deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigen-decomposition of the Hermitian part of `m`.
///
/// Eigenvalues are real and sorted descending; column `k` of the returned
/// matrix is the eigenvector for eigenvalue `k`.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = hermitian_part(m);
    let eig = h.symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Real eigenvalues of the Hermitian part of `m`, descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = hermitian_part(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// `sum_k values[k] |v_k><v_k|`.
pub fn from_spectrum(values: &[f64], vectors: &CMatrix) -> CMatrix {
    let n = vectors.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &lam) in values.iter().enumerate() {
        let v = vectors.column(k);
        out += v * v.adjoint() * Complex64::new(lam, 0.0);
    }
    out
}

/// Square root of a positive semidefinite Hermitian matrix; negative
/// round-off eigenvalues are treated as zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let roots: Vec<f64> = values.iter().map(|&x| x.max(0.0).sqrt()).collect();
    from_spectrum(&roots, &vectors)
}

/// Partial transpose over the second factor of a `dA*dB` bipartite operator.
pub fn partial_transpose_second(m: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    assert_eq!(m.nrows(), d_a * d_b);
    let mut out = CMatrix::zeros(d_a * d_b, d_a * d_b);
    for a in 0..d_a {
        for b in 0..d_b {
            for a2 in 0..d_a {
                for b2 in 0..d_b {
                    out[(a * d_b + b, a2 * d_b + b2)] = m[(a * d_b + b2, a2 * d_b + b)];
                }
            }
        }
    }
    out
}

/// Partial trace over the second factor.
pub fn partial_trace_second(m: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    let mut out = CMatrix::zeros(d_a, d_a);
    for a in 0..d_a {
        for a2 in 0..d_a {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..d_b {
                acc += m[(a * d_b + b, a2 * d_b + b)];
            }
            out[(a, a2)] = acc;
        }
    }
    out
}

/// Kronecker product of two state vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Frobenius norm `sqrt(Tr[A^dagger A])`.
pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
