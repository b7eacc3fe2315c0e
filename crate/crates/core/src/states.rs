//! Pure-state families parameterized by real, nonnegative Schmidt-type
//! coefficients.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};

/// Allowed deviation from unit norm when constructing a state.
pub const NORM_TOL: f64 = 1e-12;

fn check_unit(name: &str, coeffs: &[f64]) -> Result<()> {
    for (i, &c) in coeffs.iter().enumerate() {
        if !(0.0..=1.0 + NORM_TOL).contains(&c) {
            return Err(Error::Domain(format!(
                "{name}: coefficient c{i} = {c} outside [0, 1]"
            )));
        }
    }
    let norm: f64 = coeffs.iter().map(|c| c * c).sum();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Domain(format!(
            "{name}: squared coefficients sum to {norm}, expected 1"
        )));
    }
    Ok(())
}

/// Residual amplitude `sqrt(1 - sum of squares)`, or an error when the
/// given coefficients already exceed unit norm by more than [`NORM_TOL`].
fn residual(name: &str, coeffs: &[f64]) -> Result<f64> {
    for (i, &c) in coeffs.iter().enumerate() {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::Domain(format!(
                "{name}: coefficient c{i} = {c} must be nonnegative"
            )));
        }
    }
    let sq: f64 = coeffs.iter().map(|c| c * c).sum();
    if sq > 1.0 + NORM_TOL {
        return Err(Error::Domain(format!(
            "{name}: squared coefficients sum to {sq} > 1"
        )));
    }
    Ok((1.0 - sq).max(0.0).sqrt())
}

/// `c0|00> + c1|11>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtQubitPair {
    c0: f64,
    c1: f64,
}

impl SchmidtQubitPair {
    pub fn new(c0: f64, c1: f64) -> Result<Self> {
        check_unit("qubit pair", &[c0, c1])?;
        Ok(Self { c0, c1 })
    }

    /// Builds the state from `c0` alone, with `c1 = sqrt(1 - c0^2)`.
    pub fn from_c0(c0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c0) {
            return Err(Error::Domain(format!("c0 = {c0} outside [0, 1]")));
        }
        let c1 = residual("qubit pair", &[c0])?;
        Ok(Self { c0, c1 })
    }

    /// The Bell state `(|00> + |11>)/sqrt(2)`.
    pub fn maximally_entangled() -> Self {
        Self {
            c0: std::f64::consts::FRAC_1_SQRT_2,
            c1: std::f64::consts::FRAC_1_SQRT_2,
        }
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    /// The same state with the Schmidt coefficients exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            c0: self.c1,
            c1: self.c0,
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.c0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(self.c1, 0.0),
        ]
    }

    /// Rank-one projector onto the state.
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.amplitudes())
    }
}

/// `c0|00> + c1|11> + c2|22>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtQutritPair {
    c: [f64; 3],
}

impl SchmidtQutritPair {
    pub fn new(c0: f64, c1: f64, c2: f64) -> Result<Self> {
        check_unit("qutrit pair", &[c0, c1, c2])?;
        Ok(Self { c: [c0, c1, c2] })
    }

    /// Builds the state from `(c0, c1)`; `c2` fills the remaining norm.
    pub fn from_c0_c1(c0: f64, c1: f64) -> Result<Self> {
        let c2 = residual("qutrit pair", &[c0, c1])?;
        Ok(Self { c: [c0, c1, c2] })
    }

    pub fn maximally_entangled() -> Self {
        let c = 1.0 / 3f64.sqrt();
        Self { c: [c, c, c] }
    }

    pub fn c0(&self) -> f64 {
        self.c[0]
    }

    pub fn c1(&self) -> f64 {
        self.c[1]
    }

    pub fn c2(&self) -> f64 {
        self.c[2]
    }

    pub fn coefficients(&self) -> [f64; 3] {
        self.c
    }
}

/// `c0|000> + c1|111>`; the GHZ state at `c0 = c1 = 1/sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripartiteGHZFamily {
    c0: f64,
    c1: f64,
}

impl TripartiteGHZFamily {
    pub fn new(c0: f64, c1: f64) -> Result<Self> {
        check_unit("GHZ family", &[c0, c1])?;
        Ok(Self { c0, c1 })
    }

    pub fn from_c0(c0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c0) {
            return Err(Error::Domain(format!("c0 = {c0} outside [0, 1]")));
        }
        let c1 = residual("GHZ family", &[c0])?;
        Ok(Self { c0, c1 })
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    /// Amplitudes over `|000>..|111>`, first qubit most significant.
    pub fn amplitudes(&self) -> [f64; 8] {
        let mut a = [0.0; 8];
        a[0] = self.c0;
        a[7] = self.c1;
        a
    }
}

/// `c0|001> + c1|010> + c2|100>`; the W state at equal weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripartiteWFamily {
    c: [f64; 3],
}

impl TripartiteWFamily {
    pub fn new(c0: f64, c1: f64, c2: f64) -> Result<Self> {
        check_unit("W family", &[c0, c1, c2])?;
        Ok(Self { c: [c0, c1, c2] })
    }

    pub fn from_c0_c1(c0: f64, c1: f64) -> Result<Self> {
        let c2 = residual("W family", &[c0, c1])?;
        Ok(Self { c: [c0, c1, c2] })
    }

    pub fn coefficients(&self) -> [f64; 3] {
        self.c
    }

    /// Amplitudes over `|000>..|111>`, first qubit most significant.
    pub fn amplitudes(&self) -> [f64; 8] {
        let mut a = [0.0; 8];
        a[0b001] = self.c[0];
        a[0b010] = self.c[1];
        a[0b100] = self.c[2];
        a
    }
}

/// `make_qubit_state`: validated pair from `c0`.
pub fn make_qubit_state(c0: f64) -> Result<SchmidtQubitPair> {
    SchmidtQubitPair::from_c0(c0)
}

/// `make_qutrit_state`: validated triple from `(c0, c1)`.
pub fn make_qutrit_state(c0: f64, c1: f64) -> Result<SchmidtQutritPair> {
    SchmidtQutritPair::from_c0_c1(c0, c1)
}

/// Outer product `|psi><psi|` of the Schmidt form.
pub fn schmidt_to_density(state: &SchmidtQubitPair) -> DensityMatrix {
    state.to_density()
}
