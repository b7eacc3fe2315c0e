//! Tangle and global entanglement for the GHZ-type and W-type families.

use crate::states::{TripartiteGHZFamily, TripartiteWFamily};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripartiteMeasures {
    pub tangle: f64,
    pub global: f64,
}

/// Global entanglement of the W state; the maximum over the W family.
pub const W_GLOBAL_MAX: f64 = 8.0 / 9.0;
/// Global entanglement (and tangle) of the GHZ state.
pub const GHZ_MAX: f64 = 1.0;

/// `tau = G = 4 c0^2 c1^2`.
pub fn ghz_measures(s: &TripartiteGHZFamily) -> TripartiteMeasures {
    let v = 4.0 * s.c0() * s.c0() * s.c1() * s.c1();
    TripartiteMeasures {
        tangle: v,
        global: v,
    }
}

/// The tangle vanishes identically on this family; only `G` is computed.
pub fn w_measures(s: &TripartiteWFamily) -> TripartiteMeasures {
    let [a, b, c] = s.coefficients().map(|x| x * x);
    TripartiteMeasures {
        tangle: 0.0,
        global: 8.0 / 3.0 * (a * b + b * c + c * a),
    }
}

/// Fractional deviation of `G` (and, for GHZ, of `tau`) from the family
/// maximum, by analogy with the bipartite Q-parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripartiteDeviation {
    pub q_global: f64,
    pub q_tangle: Option<f64>,
}

pub fn ghz_deviation(s: &TripartiteGHZFamily) -> TripartiteDeviation {
    let m = ghz_measures(s);
    TripartiteDeviation {
        q_global: (GHZ_MAX - m.global) / GHZ_MAX,
        q_tangle: Some(1.0 - m.tangle),
    }
}

pub fn w_deviation(s: &TripartiteWFamily) -> TripartiteDeviation {
    let m = w_measures(s);
    TripartiteDeviation {
        q_global: (W_GLOBAL_MAX - m.global) / W_GLOBAL_MAX,
        q_tangle: None,
    }
}

/// Meyer-Wallach global entanglement `2 (1 - mean_k Tr[rho_k^2])` computed
/// directly from the eight amplitudes of a real three-qubit state. Used to
/// cross-check the closed forms.
pub fn global_entanglement_from_amplitudes(psi: &[f64; 8]) -> f64 {
    let mut purity_sum = 0.0;
    for k in 0..3 {
        let bit = 1usize << (2 - k);
        // reduced 2x2 state of qubit k
        let mut r = [[0.0f64; 2]; 2];
        for i in 0..8 {
            for j in 0..8 {
                if (i & !bit) != (j & !bit) {
                    continue;
                }
                let a = usize::from(i & bit != 0);
                let b = usize::from(j & bit != 0);
                r[a][b] += psi[i] * psi[j];
            }
        }
        purity_sum += r[0][0] * r[0][0] + r[1][1] * r[1][1] + 2.0 * r[0][1] * r[1][0];
    }
    2.0 * (1.0 - purity_sum / 3.0)
}
