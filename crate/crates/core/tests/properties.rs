use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use entdev_core::deviation::{closeness_c, distance_d, qubit_gap_at, QubitGap};
use entdev_core::mixed::{concurrence_wootters, eof_mixed, mixed_measures, negativity_mixed};
use entdev_core::qubit::pure_measures;
use entdev_core::qutrit::qutrit_measures;
use entdev_core::tripartite::{global_entanglement_from_amplitudes, w_measures, W_GLOBAL_MAX};
use entdev_core::{DensityMatrix, SchmidtQubitPair, SchmidtQutritPair, TripartiteWFamily};

type CMatrix = DMatrix<Complex64>;

fn complex_entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
}

fn density_from(entries: &[(f64, f64)], rank: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(4, rank, |i, j| {
        let (re, im) = entries[i * rank + j];
        Complex64::new(re, im)
    });
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::validate(m / tr).unwrap()
}

fn qubit(entries: &[(f64, f64)]) -> [Complex64; 2] {
    let v = [
        Complex64::new(entries[0].0, entries[0].1),
        Complex64::new(entries[1].0, entries[1].1),
    ];
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

proptest! {
    #[test]
    fn density_json_round_trip(entries in complex_entries(16), rank in 1usize..=4) {
        let rho = density_from(&entries, rank);
        let back = DensityMatrix::from_json(&rho.to_json()).unwrap();
        prop_assert!((back.matrix() - rho.matrix()).norm() < 1e-15);
    }

    #[test]
    fn measures_increase_towards_maximal(a in 0.0..FRAC_1_SQRT_2, b in 0.0..FRAC_1_SQRT_2) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let x = pure_measures(&SchmidtQubitPair::from_c0(lo).unwrap());
        let y = pure_measures(&SchmidtQubitPair::from_c0(hi).unwrap());
        prop_assert!(x.negativity <= y.negativity + 1e-15);
        prop_assert!(x.log_negativity <= y.log_negativity + 1e-15);
        prop_assert!(x.eof <= y.eof + 1e-15);
    }

    #[test]
    fn eof_below_twice_negativity_below_log_negativity(c0 in 0.001..0.999f64) {
        prop_assume!((c0 - FRAC_1_SQRT_2).abs() > 1e-3);
        let m = pure_measures(&SchmidtQubitPair::from_c0(c0).unwrap());
        prop_assert!(m.eof < 2.0 * m.negativity);
        prop_assert!(2.0 * m.negativity < m.log_negativity);
    }

    #[test]
    fn measures_symmetric_under_swap(c0 in 0.0..=1.0f64) {
        let s = SchmidtQubitPair::from_c0(c0).unwrap();
        let (a, b) = (pure_measures(&s), pure_measures(&s.swapped()));
        prop_assert!((a.negativity - b.negativity).abs() < 1e-15);
        prop_assert!((a.log_negativity - b.log_negativity).abs() < 1e-15);
        prop_assert!((a.eof - b.eof).abs() < 1e-15);
    }

    #[test]
    fn separable_mixtures_have_no_entanglement(
        parts in prop::collection::vec((complex_entries(2), complex_entries(2), 0.01..1.0f64), 1..5)
    ) {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let mut m = CMatrix::zeros(4, 4);
        for (a, b, w) in &parts {
            let (u, v) = (qubit(a), qubit(b));
            let psi = CMatrix::from_fn(4, 1, |i, _| u[i / 2] * v[i % 2]);
            m += &psi * psi.adjoint() * Complex64::new(w / total, 0.0);
        }
        let rho = DensityMatrix::validate(m).unwrap();
        prop_assert!(negativity_mixed(&rho).unwrap() < 1e-12);
        prop_assert!(concurrence_wootters(&rho).unwrap() < 1e-7);
    }

    #[test]
    fn white_noise_never_adds_entanglement(c0 in 0.0..=1.0f64, v1 in 0.0..=1.0f64, v2 in 0.0..=1.0f64) {
        let (lo, hi) = if v1 < v2 { (v1, v2) } else { (v2, v1) };
        let pure = SchmidtQubitPair::from_c0(c0).unwrap().to_density();
        let noise = DensityMatrix::maximally_mixed(4);
        let a = mixed_measures(&pure.mix(&noise, lo).unwrap()).unwrap();
        let b = mixed_measures(&pure.mix(&noise, hi).unwrap()).unwrap();
        prop_assert!(a.negativity <= b.negativity + 1e-12);
        prop_assert!(a.concurrence <= b.concurrence + 1e-12);
        prop_assert!(a.eof <= b.eof + 1e-12);
        prop_assert!(a.purity <= b.purity + 1e-12);
    }

    #[test]
    fn concurrence_never_below_twice_negativity_bound(entries in complex_entries(16), rank in 1usize..=4) {
        // N <= C/2 holds for every two-qubit state
        let rho = density_from(&entries, rank);
        let n = negativity_mixed(&rho).unwrap();
        let c = concurrence_wootters(&rho).unwrap();
        prop_assert!(2.0 * n <= c + 1e-9);
        prop_assert!((0.0..=1.0).contains(&eof_mixed(&rho).unwrap()));
    }

    #[test]
    fn qutrit_measures_permutation_invariant(c0 in 0.0..1.0f64, t in 0.0..1.0f64) {
        let c1 = t * (1.0 - c0 * c0).sqrt();
        let s = SchmidtQutritPair::from_c0_c1(c0, c1).unwrap();
        let [a, b, c] = s.coefficients();
        let base = qutrit_measures(&s);
        for p in [[b, c, a], [c, a, b], [b, a, c], [a, c, b], [c, b, a]] {
            let m = qutrit_measures(&SchmidtQutritPair::new(p[0], p[1], p[2]).unwrap());
            prop_assert!((m.negativity - base.negativity).abs() < 1e-14);
            prop_assert!((m.eof - base.eof).abs() < 1e-14);
            prop_assert!((m.concurrence - base.concurrence).abs() < 1e-14);
        }
    }

    #[test]
    fn qutrit_linear_entropy_is_concurrence_squared(c0 in 0.0..1.0f64, t in 0.0..1.0f64) {
        let c1 = t * (1.0 - c0 * c0).sqrt();
        let s = SchmidtQutritPair::from_c0_c1(c0, c1).unwrap();
        let m = qutrit_measures(&s);
        // normalized linear entropy of the reduced state, 3/2 (1 - Tr rho_A^2)
        let reduced_purity: f64 = s.coefficients().iter().map(|c| c.powi(4)).sum();
        let linear = 1.5 * (1.0 - reduced_purity);
        prop_assert!((m.linear_entropy - linear).abs() < 1e-14);
        prop_assert!((m.linear_entropy - m.concurrence.powi(2)).abs() < 1e-14);
    }

    #[test]
    fn w_family_global_entanglement_bounded(c0 in 0.0..1.0f64, t in 0.0..1.0f64) {
        let c1 = t * (1.0 - c0 * c0).sqrt();
        let w = TripartiteWFamily::from_c0_c1(c0, c1).unwrap();
        let g = w_measures(&w).global;
        prop_assert!(g <= W_GLOBAL_MAX + 1e-15);
        prop_assert!((g - global_entanglement_from_amplitudes(&w.amplitudes())).abs() < 1e-12);
    }

    #[test]
    fn distance_equals_closeness(c0 in 0.0..=1.0f64) {
        let s = SchmidtQubitPair::from_c0(c0).unwrap();
        prop_assert!((distance_d(&s) - closeness_c(&s)).abs() < 1e-12);
    }
}

#[test]
fn w_grid_maximum_at_equal_weights() {
    let n = 300;
    let mut best = (0.0, 0.0, 0.0);
    for i in 0..=n {
        for j in 0..=n {
            let (c0, c1) = (i as f64 / n as f64, j as f64 / n as f64);
            if c0 * c0 + c1 * c1 > 1.0 {
                continue;
            }
            let g = w_measures(&TripartiteWFamily::from_c0_c1(c0, c1).unwrap()).global;
            if g > best.0 {
                best = (g, c0, c1);
            }
        }
    }
    assert!(best.0 <= W_GLOBAL_MAX);
    assert!(W_GLOBAL_MAX - best.0 < 1e-4);
    let third = (1.0f64 / 3.0).sqrt();
    assert!((best.1 - third).abs() < 0.01 && (best.2 - third).abs() < 0.01);
}

#[test]
fn gaps_are_unimodal_on_each_branch() {
    for gap in QubitGap::ALL {
        for (lo, hi) in [(0.0, FRAC_1_SQRT_2), (FRAC_1_SQRT_2, 1.0)] {
            let values: Vec<f64> = (0..=2000)
                .map(|i| qubit_gap_at(gap, lo + (hi - lo) * i as f64 / 2000.0))
                .collect();
            let peak = values
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            assert!(
                values[..=peak].windows(2).all(|w| w[1] >= w[0] - 1e-15),
                "{} rising",
                gap.name()
            );
            assert!(
                values[peak..].windows(2).all(|w| w[1] <= w[0] + 1e-15),
                "{} falling",
                gap.name()
            );
        }
    }
}
