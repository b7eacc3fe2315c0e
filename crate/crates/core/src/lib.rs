//! Quantifying how far entangled pure states sit from the maximally entangled
//! state, measured with several entanglement measures.
//!
//! The crate covers two-qubit pure states in Schmidt form, two-qubit mixed
//! states (partial-transpose negativity and Wootters concurrence), two-qutrit
//! pure states, two tripartite qubit families, the fractional-deviation
//! parameters built on top of those measures, and a simulated polarization
//! tomography pipeline with maximum-likelihood reconstruction.
//!
//! Basis ordering for two qubits is `|00>, |01>, |10>, |11>` with the first
//! tensor factor belonging to Alice.

pub mod curves;
pub mod density;
pub mod deviation;
pub mod error;
pub mod linalg;
pub mod mixed;
pub mod optimize;
pub mod qubit;
pub mod qutrit;
pub mod states;
pub mod tables;
pub mod tomo;
pub mod tripartite;

pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use states::{SchmidtQubitPair, SchmidtQutritPair, TripartiteGHZFamily, TripartiteWFamily};

/// Natural log of 2; every base-2 log in the crate divides by this.
pub const LN_2: f64 = std::f64::consts::LN_2;

/// `x * log2(x)` with the limit value 0 at `x = 0`.
#[inline]
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln() / LN_2
    }
}
