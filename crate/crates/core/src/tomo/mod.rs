//! Simulated polarization tomography of a two-crystal down-conversion
//! source: 36 projective settings, Poisson coincidence counts,
//! maximum-likelihood reconstruction and Poisson-bootstrap error bars.
//!
//! Polarization qubits use `H = |0>` and `V = |1>`.

mod bootstrap;
mod characterize;
mod dataset;
mod mle;
mod projectors;
mod source;

pub use bootstrap::{bootstrap_errors, ErrorEstimate};
pub use characterize::{characterize, simulate_table2, Table2Row, Table2SimRow, TABLE2_STATES};
pub use dataset::{simulate_counts, TomoDataset, TomoRecord};
pub use mle::{
    linear_inversion, mle_from_counts, mle_reconstruct, negative_log_likelihood,
    ReconstructionResult, MAX_ITERATIONS,
};
pub use projectors::{projection_set, Polarization, Projector};
pub use source::{source_pure_state, source_state, SourceConfig, DEFAULT_PAIRS_PER_SETTING};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `stream` of `seed`. Streams are independent, so a
/// replica can be regenerated without replaying earlier ones.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
