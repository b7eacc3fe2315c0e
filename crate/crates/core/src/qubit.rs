//! Closed-form measures for two-qubit pure states `c0|00> + c1|11>`.

use crate::error::{Error, Result};
use crate::states::SchmidtQubitPair;
use crate::{xlog2x, LN_2};

/// Maximum of the negativity over two-qubit states.
pub const N_MAX: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubitMeasures {
    pub negativity: f64,
    pub log_negativity: f64,
    pub eof: f64,
    pub concurrence: f64,
    /// von Neumann entropy of either reduced state.
    pub entropy: f64,
}

/// Binary-distribution entropy `-p log2 p - (1-p) log2 (1-p)` given both
/// probabilities explicitly.
pub(crate) fn entropy2(p: f64, q: f64) -> f64 {
    -xlog2x(p) - xlog2x(q)
}

pub fn pure_measures(s: &SchmidtQubitPair) -> PureQubitMeasures {
    let (c0, c1) = (s.c0(), s.c1());
    let n = c0 * c1;
    let entropy = entropy2(c0 * c0, c1 * c1);
    PureQubitMeasures {
        negativity: n,
        log_negativity: (2.0 * n + 1.0).ln() / LN_2,
        eof: entropy,
        concurrence: 2.0 * n,
        entropy,
    }
}

/// Derivatives of N, LN and EOF with respect to `c0`, holding
/// `c1 = sqrt(1 - c0^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureDerivatives {
    pub dn_dc0: f64,
    pub dln_dc0: f64,
    pub deof_dc0: f64,
}

/// Defined on the open interval `0 < c0 < 1` only.
///
/// The EOF derivative is `2 c0 log2((1 - c0^2) / c0^2)`. Dividing that by a
/// further `ln 2` gives a curve with the right zero but the wrong slope, as
/// the finite-difference tests show.
pub fn pure_derivatives(s: &SchmidtQubitPair) -> Result<PureDerivatives> {
    let c0 = s.c0();
    if !(c0 > 0.0 && c0 < 1.0) {
        return Err(Error::Domain(format!(
            "derivatives need 0 < c0 < 1, got c0 = {c0}"
        )));
    }
    let c1 = (1.0 - c0 * c0).sqrt();
    let numer = 1.0 - 2.0 * c0 * c0;
    let dn = numer / c1;
    let dln = 2.0 * numer / (c1 * (2.0 * c0 * c1 + 1.0) * LN_2);
    let deof = 2.0 * c0 * ((1.0 - c0 * c0) / (c0 * c0)).ln() / LN_2;
    Ok(PureDerivatives {
        dn_dc0: dn,
        dln_dc0: dln,
        deof_dc0: deof,
    })
}
