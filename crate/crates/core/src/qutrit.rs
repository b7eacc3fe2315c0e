//! Two-qutrit pure states `c0|00> + c1|11> + c2|22>`.

use crate::error::{Error, Result};
use crate::states::SchmidtQutritPair;
use crate::xlog2x;

/// `log2(3)`, the entanglement entropy of the maximally entangled qutrit pair.
pub const E_MAX: f64 = 1.584_962_500_721_156_3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQutritMeasures {
    pub negativity: f64,
    /// Entropy of entanglement in bits, in `[0, log2 3]`.
    pub eof: f64,
    /// Generalized concurrence normalized to 1 at the maximum.
    pub concurrence: f64,
    pub linear_entropy: f64,
}

pub fn qutrit_measures(s: &SchmidtQutritPair) -> PureQutritMeasures {
    let [c0, c1, c2] = s.coefficients();
    let (p0, p1, p2) = (c0 * c0, c1 * c1, c2 * c2);
    let pair_sum = p0 * p1 + p1 * p2 + p2 * p0;
    let linear_entropy = 3.0 * pair_sum;
    PureQutritMeasures {
        negativity: c0 * c1 + c1 * c2 + c2 * c0,
        eof: -xlog2x(p0) - xlog2x(p1) - xlog2x(p2),
        concurrence: linear_entropy.sqrt(),
        linear_entropy,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QutritMeasure {
    Negativity,
    Eof,
    Concurrence,
}

impl QutritMeasure {
    pub fn of(self, m: &PureQutritMeasures) -> f64 {
        match self {
            QutritMeasure::Negativity => m.negativity,
            QutritMeasure::Eof => m.eof,
            QutritMeasure::Concurrence => m.concurrence,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            QutritMeasure::Negativity => "N",
            QutritMeasure::Eof => "E",
            QutritMeasure::Concurrence => "C",
        }
    }
}

/// One state of a witness pair, with 4-decimal reference values of the two
/// measures.
#[derive(Debug, Clone, Copy)]
pub struct WitnessState {
    pub label: &'static str,
    pub state: SchmidtQutritPair,
    pub measures: PureQutritMeasures,
    pub reference: [f64; 2],
}

/// Two states ordered oppositely by two measures.
#[derive(Debug, Clone, Copy)]
pub struct MonotonicityWitness {
    pub measures: [QutritMeasure; 2],
    pub first: WitnessState,
    pub second: WitnessState,
}

impl MonotonicityWitness {
    /// True when the two measures rank the pair in opposite order.
    pub fn is_opposite(&self) -> bool {
        let [x, y] = self.measures;
        let dx = x.of(&self.first.measures) - x.of(&self.second.measures);
        let dy = y.of(&self.first.measures) - y.of(&self.second.measures);
        dx * dy < 0.0
    }

    /// Largest gap between a computed value and its reference value.
    pub fn max_reference_error(&self) -> f64 {
        [&self.first, &self.second]
            .iter()
            .flat_map(|w| {
                self.measures
                    .iter()
                    .zip(w.reference)
                    .map(move |(m, q)| (m.of(&w.measures) - q).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Agreement required between computed and reference values.
pub const REFERENCE_TOL: f64 = 5e-4;

/// `(label, c0, c1, reference values)`.
type ReferenceState = (&'static str, f64, f64, [f64; 2]);

const WITNESS_TABLE: [([QutritMeasure; 2], [ReferenceState; 2]); 3] = {
    use QutritMeasure::*;
    [
        (
            [Eof, Negativity],
            [
                ("phi1", 0.9755, 0.0361, [0.2878, 0.2546]),
                ("phi2", 0.1403, 0.1346, [0.2698, 0.2885]),
            ],
        ),
        (
            [Negativity, Concurrence],
            [
                ("phi3", 0.4134, 0.8275, [0.8136, 0.8495]),
                ("phi4", 0.7452, 0.1143, [0.6498, 0.8705]),
            ],
        ),
        (
            [Eof, Concurrence],
            [
                ("phi5", 0.4134, 0.8275, [1.2128, 0.8495]),
                ("phi6", 0.2334, 0.8052, [1.1542, 0.8559]),
            ],
        ),
    ]
};

/// The three state pairs showing that N, E and C are not mutually monotonic
/// for two qutrits. Each pair is certified before being returned.
pub fn nonmonotonicity_witnesses() -> Result<Vec<MonotonicityWitness>> {
    let mut out = Vec::with_capacity(WITNESS_TABLE.len());
    for (measures, [a, b]) in WITNESS_TABLE {
        let build = |(label, c0, c1, reference): ReferenceState| -> Result<WitnessState> {
            let state = SchmidtQutritPair::from_c0_c1(c0, c1)?;
            Ok(WitnessState {
                label,
                state,
                measures: qutrit_measures(&state),
                reference,
            })
        };
        let w = MonotonicityWitness {
            measures,
            first: build(a)?,
            second: build(b)?,
        };
        if !w.is_opposite() {
            return Err(Error::Internal(format!(
                "{}/{} not ordered oppositely by {} and {}",
                w.first.label,
                w.second.label,
                measures[0].symbol(),
                measures[1].symbol()
            )));
        }
        let err = w.max_reference_error();
        if err > REFERENCE_TOL {
            return Err(Error::Internal(format!(
                "{}/{} deviate from reference values by {err:.2e}",
                w.first.label, w.second.label
            )));
        }
        out.push(w);
    }
    Ok(out)
}
