//! Maximum-likelihood state reconstruction.
//!
//! The state is parameterized as `rho = L L^dagger / Tr[L L^dagger]` with `L`
//! lower triangular and real on the diagonal (16 real parameters), so every
//! iterate is physical. Counts are modelled as independent Poissons with
//! means `pairs_per_setting * Tr[Pi_i rho]`; the objective is the Poisson
//! deviance halved, `sum_i mu_i - n_i - n_i ln(mu_i / n_i)`, which differs
//! from the negative log-likelihood by a data-only constant and is zero for
//! a perfect fit. It is minimized with L-BFGS from the eigenvalue-clipped
//! linear-inversion estimate.

use num_complex::Complex64;

use super::dataset::TomoDataset;
use super::projectors::projection_set;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

pub const MAX_ITERATIONS: usize = 10_000;
/// Stop once this many consecutive steps improve the objective by less than
/// `IMPROVEMENT_TOL * (1 + objective)`.
const IMPROVEMENT_TOL: f64 = 1e-10;
const STALL_STEPS: usize = 3;
const MEMORY: usize = 10;
/// Weight of `I/4` mixed into the starting point so its Cholesky factor exists.
const START_MIXING: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub rho: DensityMatrix,
    /// Poisson deviance / 2 at the returned state.
    pub nll: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Euclidean norm of the objective gradient in parameter space, divided
    /// by the pairs per setting.
    pub grad_norm: f64,
}

const N_PARAMS: usize = 16;

/// Off-diagonal `(row, col)` slots of `L`, in parameter order.
const OFF_DIAG: [(usize, usize); 6] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

type Lower = [[Complex64; 4]; 4];

fn unpack(x: &[f64]) -> Lower {
    let mut l = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (k, row) in l.iter_mut().enumerate() {
        row[k] = Complex64::new(x[k], 0.0);
    }
    for (j, &(r, c)) in OFF_DIAG.iter().enumerate() {
        l[r][c] = Complex64::new(x[4 + 2 * j], x[5 + 2 * j]);
    }
    l
}

fn pack(l: &CMatrix) -> Vec<f64> {
    let mut x = vec![0.0; N_PARAMS];
    for (k, xk) in x.iter_mut().enumerate().take(4) {
        *xk = l[(k, k)].re;
    }
    for (j, &(r, c)) in OFF_DIAG.iter().enumerate() {
        x[4 + 2 * j] = l[(r, c)].re;
        x[5 + 2 * j] = l[(r, c)].im;
    }
    x
}

fn lower_to_density(l: &Lower) -> CMatrix {
    let m = CMatrix::from_fn(4, 4, |i, j| l[i][j]);
    let a = &m * m.adjoint();
    let s = linalg::trace(&a).re;
    linalg::hermitian_part(&(a / Complex64::new(s, 0.0)))
}

struct Problem {
    vectors: Vec<[Complex64; 4]>,
    counts: Vec<f64>,
    pairs: f64,
}

impl Problem {
    /// Objective and its gradient with respect to the 16 real parameters.
    fn eval(&self, x: &[f64], want_grad: bool) -> (f64, Vec<f64>) {
        let l = unpack(x);
        let s: f64 = l.iter().flatten().map(|z| z.norm_sqr()).sum();
        if s <= 0.0 || !s.is_finite() {
            return (f64::INFINITY, vec![0.0; N_PARAMS]);
        }
        let mut f = 0.0;
        // d f / d conj(L_kl), accumulated as complex
        let mut g = [[Complex64::new(0.0, 0.0); 4]; 4];
        let mut radial = 0.0;
        for (v, &n) in self.vectors.iter().zip(&self.counts) {
            // u = L^dagger v
            let mut u = [Complex64::new(0.0, 0.0); 4];
            for (col, ucol) in u.iter_mut().enumerate() {
                for (row, vrow) in v.iter().enumerate() {
                    *ucol += l[row][col].conj() * vrow;
                }
            }
            let a: f64 = u.iter().map(|z| z.norm_sqr()).sum();
            let mu = self.pairs * a / s;
            if n > 0.0 {
                if mu <= 0.0 {
                    return (f64::INFINITY, vec![0.0; N_PARAMS]);
                }
                f += mu - n - n * (mu / n).ln();
            } else {
                f += mu;
            }
            if want_grad {
                let w = (1.0 - if n > 0.0 { n / mu } else { 0.0 }) * self.pairs / s;
                for (k, vk) in v.iter().enumerate() {
                    for (c, uc) in u.iter().enumerate().take(k + 1) {
                        g[k][c] += vk * uc.conj() * w;
                    }
                }
                radial += w * a / s;
            }
        }
        if !want_grad {
            return (f, Vec::new());
        }
        let mut grad = vec![0.0; N_PARAMS];
        for k in 0..4 {
            let gk = g[k][k] - l[k][k] * radial;
            grad[k] = 2.0 * gk.re;
        }
        for (j, &(r, c)) in OFF_DIAG.iter().enumerate() {
            let gz = g[r][c] - l[r][c] * radial;
            grad[4 + 2 * j] = 2.0 * gz.re;
            grad[5 + 2 * j] = 2.0 * gz.im;
        }
        (f, grad)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

struct Minimum {
    x: Vec<f64>,
    f: f64,
    grad: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn lbfgs(problem: &Problem, x0: Vec<f64>) -> Minimum {
    let mut x = x0;
    let (mut f, mut g) = problem.eval(&x, true);
    let mut s_hist: Vec<Vec<f64>> = Vec::new();
    let mut y_hist: Vec<Vec<f64>> = Vec::new();
    let mut stall = 0;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        if norm(&g) == 0.0 {
            converged = true;
            break;
        }
        // two-loop recursion
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(s_hist.len());
        for (s, y) in s_hist.iter().zip(&y_hist).rev() {
            let rho = 1.0 / dot(y, s);
            let a = rho * dot(s, &q);
            q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push((a, rho));
        }
        let gamma = match (s_hist.last(), y_hist.last()) {
            (Some(s), Some(y)) => dot(s, y) / dot(y, y),
            _ => 1.0 / norm(&g).max(1e-300) * norm(&x).max(1e-3) * 1e-2,
        };
        q.iter_mut().for_each(|qi| *qi *= gamma);
        for ((s, y), (a, rho)) in s_hist.iter().zip(&y_hist).zip(alphas.into_iter().rev()) {
            let b = rho * dot(y, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        let mut d: Vec<f64> = q.iter().map(|v| -v).collect();
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            // not a descent direction: restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            let scale = norm(&x).max(1e-3) * 1e-2 / norm(&g);
            d = g.iter().map(|v| -v * scale).collect();
            slope = dot(&g, &d);
        }

        // backtracking Armijo search
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + t * di).collect();
            let (fnew, _) = problem.eval(&xn, false);
            if fnew.is_finite() && fnew <= f + 1e-4 * t * slope {
                accepted = Some((xn, fnew));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, fnew)) = accepted else {
            if s_hist.is_empty() {
                // steepest descent made no progress either
                converged = true;
                break;
            }
            s_hist.clear();
            y_hist.clear();
            continue;
        };
        let (_, gn) = problem.eval(&xn, true);
        let sv: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        if dot(&sv, &yv) > 1e-16 * norm(&sv) * norm(&yv) {
            s_hist.push(sv);
            y_hist.push(yv);
            if s_hist.len() > MEMORY {
                s_hist.remove(0);
                y_hist.remove(0);
            }
        }
        let improvement = f - fnew;
        x = xn;
        f = fnew;
        g = gn;
        if improvement < IMPROVEMENT_TOL * (1.0 + f.abs()) {
            stall += 1;
            if stall >= STALL_STEPS {
                converged = true;
                break;
            }
        } else {
            stall = 0;
        }
    }
    Minimum {
        x,
        f,
        grad: g,
        iterations,
        converged,
    }
}

fn dual(p: super::projectors::Polarization) -> CMatrix {
    let [x, y, z] = p.bloch();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // I/6 + (x sx + y sy + z sz)/2
    CMatrix::from_row_slice(
        2,
        2,
        &[
            c(1.0 / 6.0 + z / 2.0, 0.0),
            c(x / 2.0, -y / 2.0),
            c(x / 2.0, y / 2.0),
            c(1.0 / 6.0 - z / 2.0, 0.0),
        ],
    )
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Linear-inversion estimate from counts in [`projection_set`] order,
/// projected onto the physical states by clipping negative eigenvalues.
///
/// Frequencies are normalized by the mean number of detected pairs per
/// measurement basis (total counts / 9).
pub fn linear_inversion(counts: &[f64]) -> Result<DensityMatrix> {
    let set = projection_set();
    if counts.len() != set.len() {
        return Err(Error::Parse(format!(
            "expected {} counts, got {}",
            set.len(),
            counts.len()
        )));
    }
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return Ok(DensityMatrix::maximally_mixed(4));
    }
    let per_basis = total / 9.0;
    let mut m = CMatrix::zeros(4, 4);
    for (p, &n) in set.iter().zip(counts) {
        let (a, b) = p.setting;
        m += kron(&dual(a), &dual(b)) * Complex64::new(n / per_basis, 0.0);
    }
    let h = linalg::hermitian_part(&m);
    let (values, vectors) = linalg::hermitian_eigen(&h);
    let clipped: Vec<f64> = values.iter().map(|v| v.max(0.0)).collect();
    let sum: f64 = clipped.iter().sum();
    if sum <= 0.0 {
        return Ok(DensityMatrix::maximally_mixed(4));
    }
    let scaled: Vec<f64> = clipped.iter().map(|v| v / sum).collect();
    DensityMatrix::validate(linalg::from_spectrum(&scaled, &vectors))
}

/// Objective value of `rho` for counts in [`projection_set`] order.
pub fn negative_log_likelihood(rho: &DensityMatrix, counts: &[f64], pairs_per_setting: f64) -> f64 {
    projection_set()
        .iter()
        .zip(counts)
        .map(|(p, &n)| {
            let mu = pairs_per_setting * rho.expectation_rank_one(&p.vector);
            if n > 0.0 {
                mu - n - n * (mu / n).ln()
            } else {
                mu
            }
        })
        .sum()
}

/// Reconstruction from (possibly non-integer) counts in
/// [`projection_set`] order.
pub fn mle_from_counts(counts: &[f64], pairs_per_setting: f64) -> Result<ReconstructionResult> {
    if counts.iter().any(|&n| !n.is_finite() || n < 0.0) {
        return Err(Error::Parse("counts must be finite and nonnegative".into()));
    }
    if !pairs_per_setting.is_finite() || pairs_per_setting <= 0.0 {
        return Err(Error::Parse("pairs_per_setting must be positive".into()));
    }
    let start = linear_inversion(counts)?;
    let start = start.mix(&DensityMatrix::maximally_mixed(4), 1.0 - START_MIXING)?;
    let chol = start
        .matrix()
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Internal("starting point not positive definite".into()))?;
    let x0 = pack(&chol.l());

    let problem = Problem {
        vectors: projection_set().into_iter().map(|p| p.vector).collect(),
        counts: counts.to_vec(),
        pairs: pairs_per_setting,
    };
    let min = lbfgs(&problem, x0);
    let rho = DensityMatrix::validate(lower_to_density(&unpack(&min.x)))?;
    Ok(ReconstructionResult {
        rho,
        nll: min.f,
        iterations: min.iterations,
        converged: min.converged,
        grad_norm: norm(&min.grad) / pairs_per_setting,
    })
}

/// Maximum-likelihood density matrix for a tomography dataset.
pub fn mle_reconstruct(data: &TomoDataset) -> Result<ReconstructionResult> {
    data.validate()?;
    let counts: Vec<f64> = data.records.iter().map(|r| r.observed as f64).collect();
    mle_from_counts(&counts, data.pairs_per_setting as f64)
}

impl ReconstructionResult {
    /// `rho_hat` in the density-matrix JSON format, plus the objective and
    /// solver status.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct Out {
            dim: usize,
            re: Vec<Vec<crate::density::Sig>>,
            im: Vec<Vec<crate::density::Sig>>,
            nll: f64,
            iterations: usize,
            converged: bool,
        }
        let rec = self.rho.to_record();
        serde_json::to_string_pretty(&Out {
            dim: rec.dim,
            re: rec.re,
            im: rec.im,
            nll: self.nll,
            iterations: self.iterations,
            converged: self.converged,
        })
        .expect("reconstruction serializes")
    }
}
