//! Plot-ready samples of the pure two-qubit curves.

use std::str::FromStr;

use crate::deviation::{bell_violation, distance_d, qubit_deviation};
use crate::error::{Error, Result};
use crate::qubit::{pure_derivatives, pure_measures};
use crate::states::SchmidtQubitPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Concurrence, negativity, log-negativity, EOF and entanglement entropy.
    Fig1,
    /// Measures and their Q-parameters.
    Fig2,
    /// Q-parameter gaps and derivative magnitudes.
    Fig3,
    /// Distance to the nearest Bell state against the Q-parameters.
    Fig8,
    /// CHSH deviation against the Q-parameters.
    Fig9,
}

impl Figure {
    pub const ALL: [Figure; 5] = [
        Figure::Fig1,
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig8,
        Figure::Fig9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig8 => "fig8",
            Figure::Fig9 => "fig9",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Figure::Fig1 => &["c0", "C", "N", "LN", "EOF", "EE"],
            Figure::Fig2 => &["c0", "2N", "LN", "EOF", "Q_N", "Q_L", "Q_E"],
            Figure::Fig3 => &[
                "c0", "dQ_NL", "dQ_EL", "dQ_NE", "abs_d2N", "abs_dLN", "abs_dEOF",
            ],
            Figure::Fig8 => &["c0", "D", "Q_N", "Q_L", "Q_E"],
            Figure::Fig9 => &["c0", "Q_BV", "Q_N", "Q_L", "Q_E"],
        }
    }

    /// One row, in [`Figure::columns`] order.
    pub fn row(self, c0: f64) -> Result<Vec<f64>> {
        let s = SchmidtQubitPair::from_c0(c0)?;
        let m = pure_measures(&s);
        let q = qubit_deviation(&s);
        Ok(match self {
            Figure::Fig1 => vec![
                c0,
                m.concurrence,
                m.negativity,
                m.log_negativity,
                m.eof,
                m.entropy,
            ],
            Figure::Fig2 => vec![
                c0,
                2.0 * m.negativity,
                m.log_negativity,
                m.eof,
                q.q_n,
                q.q_l,
                q.q_e,
            ],
            Figure::Fig3 => {
                let d = pure_derivatives(&s)?;
                vec![
                    c0,
                    q.d_nl,
                    q.d_el,
                    q.d_ne,
                    (2.0 * d.dn_dc0).abs(),
                    d.dln_dc0.abs(),
                    d.deof_dc0.abs(),
                ]
            }
            Figure::Fig8 => vec![c0, distance_d(&s), q.q_n, q.q_l, q.q_e],
            Figure::Fig9 => vec![c0, bell_violation(&s).qbv, q.q_n, q.q_l, q.q_e],
        })
    }

    pub fn rows_at(self, c0s: &[f64]) -> Result<Vec<Vec<f64>>> {
        c0s.iter().map(|&c0| self.row(c0)).collect()
    }

    /// `samples` rows on the open interval (0, 1).
    pub fn rows(self, samples: usize) -> Result<Vec<Vec<f64>>> {
        self.rows_at(&uniform_samples(samples)?)
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown figure {s:?} (expected fig1, fig2, fig3, fig8 or fig9)"
                ))
            })
    }
}

/// `i / (n + 1)` for `i = 1..=n`: uniform and strictly inside (0, 1).
pub fn uniform_samples(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 samples, got {n}")));
    }
    Ok((1..=n).map(|i| i as f64 / (n + 1) as f64).collect())
}
