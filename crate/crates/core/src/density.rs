//! Validated density matrices and their JSON form.
//!
//! On disk a density matrix is `{"dim": n, "re": [[..]], "im": [[..]]}`,
//! row-major, with every entry written to 17 significant digits.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const EIGEN_TOL: f64 = 1e-9;
/// Eigenvalue excursions below this are rounding noise and are not clipped.
const ROUNDING: f64 = 1e-14;

/// A Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Checks the density-matrix invariants and returns the cleaned matrix.
    ///
    /// The accepted matrix is replaced by its Hermitian part. Eigenvalues
    /// within [`EIGEN_TOL`] outside `[0, 1]` are clipped back into range;
    /// excursions at rounding level leave the matrix untouched.
    pub fn validate(raw: CMatrix) -> Result<Self> {
        let n = raw.nrows();
        if n == 0 || raw.ncols() != n {
            return Err(Error::Validation {
                invariant: "square",
                detail: format!("shape {}x{}", raw.nrows(), raw.ncols()),
            });
        }
        if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation {
                invariant: "finite",
                detail: "matrix contains NaN or infinite entries".into(),
            });
        }
        let defect = linalg::hermiticity_defect(&raw);
        if defect > HERMITIAN_TOL {
            return Err(Error::Validation {
                invariant: "hermitian",
                detail: format!("max |m_ij - conj(m_ji)| = {defect:e}"),
            });
        }
        let tr = linalg::trace(&raw).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::Validation {
                invariant: "unit trace",
                detail: format!("trace = {tr}"),
            });
        }
        let h = linalg::hermitian_part(&raw);
        let (values, vectors) = linalg::hermitian_eigen(&h);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -EIGEN_TOL {
            return Err(Error::Validation {
                invariant: "positive semidefinite",
                detail: format!("minimum eigenvalue {min:e}"),
            });
        }
        if values
            .iter()
            .any(|&v| !(-ROUNDING..=1.0 + ROUNDING).contains(&v))
        {
            let clipped: Vec<f64> = values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
            let total: f64 = clipped.iter().sum();
            let scaled: Vec<f64> = clipped.iter().map(|v| v / total).collect();
            return Ok(Self {
                m: linalg::hermitian_part(&linalg::from_spectrum(&scaled, &vectors)),
            });
        }
        Ok(Self { m: h })
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn from_pure(psi: &[Complex64]) -> Self {
        let v = DVector::from_column_slice(psi);
        Self {
            m: &v * v.adjoint(),
        }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0),
        }
    }

    /// `weight * self + (1 - weight) * other`, for `weight` in `[0, 1]`.
    pub fn mix(&self, other: &DensityMatrix, weight: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Domain(format!(
                "cannot mix dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::Domain(format!(
                "mixing weight {weight} outside [0, 1]"
            )));
        }
        Ok(Self {
            m: &self.m * Complex64::new(weight, 0.0) + &other.m * Complex64::new(1.0 - weight, 0.0),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn purity(&self) -> f64 {
        // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho
        self.m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues, descending, clamped into `[0, 1]` to absorb rounding.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.m)
            .into_iter()
            .map(|v| v.clamp(0.0, 1.0))
            .collect()
    }

    /// `<psi|rho|psi>`.
    pub fn fidelity_with_pure(&self, psi: &[Complex64]) -> f64 {
        let v = DVector::from_column_slice(psi);
        (v.adjoint() * &self.m * &v)[(0, 0)].re
    }

    /// Expectation `Tr[rho |v><v|]` for a (not necessarily normalized) vector.
    pub fn expectation_rank_one(&self, v: &[Complex64]) -> f64 {
        self.fidelity_with_pure(v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("density record serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("density record serializes")
    }

    pub(crate) fn to_record(&self) -> DensityRecord {
        let n = self.dim();
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<Sig>> {
            (0..n)
                .map(|i| (0..n).map(|j| Sig(f(&self.m[(i, j)]))).collect())
                .collect()
        };
        DensityRecord {
            dim: n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    /// Parses and validates a density matrix in the JSON file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let rec: ParsedDensity = serde_json::from_str(text)?;
        rec.into_density()
    }
}

/// Float serialized with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sig(pub f64);

impl Serialize for Sig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = format!("{:.16e}", self.0);
        let raw = RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Debug, Serialize)]
pub(crate) struct DensityRecord {
    pub dim: usize,
    pub re: Vec<Vec<Sig>>,
    pub im: Vec<Vec<Sig>>,
}

#[derive(Debug, Deserialize)]
pub(crate) struct ParsedDensity {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl ParsedDensity {
    pub(crate) fn into_density(self) -> Result<DensityMatrix> {
        let n = self.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Parse(format!("\"re\"/\"im\" must both be {n}x{n}")));
        }
        let m = CMatrix::from_fn(n, n, |i, j| Complex64::new(self.re[i][j], self.im[i][j]));
        DensityMatrix::validate(m)
    }
}

/// `validate_density`: free-function form of [`DensityMatrix::validate`].
pub fn validate_density(m: CMatrix) -> Result<DensityMatrix> {
    DensityMatrix::validate(m)
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(a) b sqrt(a)))^2`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let ra = linalg::psd_sqrt(a.matrix());
    let inner = linalg::hermitian_part(&(&ra * b.matrix() * &ra));
    let t: f64 = linalg::hermitian_eigenvalues(&inner)
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .sum();
    t * t
}
