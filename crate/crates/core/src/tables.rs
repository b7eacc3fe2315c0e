//! Rows of the pure-state comparison tables, as fractions.

use serde::Serialize;

use crate::deviation::{qubit_deviation, qutrit_deviation};
use crate::error::Result;
use crate::qubit::pure_measures;
use crate::qutrit::qutrit_measures;
use crate::states::{SchmidtQubitPair, SchmidtQutritPair};

#[allow(clippy::approx_constant)]
pub const TABLE1_C0: [f64; 7] = [0.1, 0.2, 0.4, 0.7, 0.7071, 0.8, 0.9];
pub const TABLE3_COEFFS: [(f64, f64); 5] = [
    (0.1, 0.1),
    (0.3, 0.8),
    (0.5774, 0.5774),
    (0.6, 0.6),
    (0.9, 0.3),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub c0: f64,
    pub n: f64,
    pub ln: f64,
    pub eof: f64,
    pub q_n: f64,
    pub q_l: f64,
    pub q_e: f64,
    pub d_nl: f64,
    pub d_el: f64,
    pub d_ne: f64,
}

impl Table1Row {
    pub const HEADER: [&'static str; 10] = [
        "c0", "N", "LN", "EOF", "Q_N", "Q_L", "Q_E", "dQ_NL", "dQ_EL", "dQ_NE",
    ];

    pub fn at(c0: f64) -> Result<Self> {
        let s = SchmidtQubitPair::from_c0(c0)?;
        let m = pure_measures(&s);
        let q = qubit_deviation(&s);
        Ok(Self {
            c0,
            n: m.negativity,
            ln: m.log_negativity,
            eof: m.eof,
            q_n: q.q_n,
            q_l: q.q_l,
            q_e: q.q_e,
            d_nl: q.d_nl,
            d_el: q.d_el,
            d_ne: q.d_ne,
        })
    }

    pub fn values(&self) -> [f64; 10] {
        [
            self.c0, self.n, self.ln, self.eof, self.q_n, self.q_l, self.q_e, self.d_nl, self.d_el,
            self.d_ne,
        ]
    }
}

pub fn table1() -> Vec<Table1Row> {
    TABLE1_C0
        .iter()
        .map(|&c0| Table1Row::at(c0).expect("table coefficients are valid"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table3Row {
    pub c0: f64,
    pub c1: f64,
    pub e: f64,
    pub n: f64,
    pub c: f64,
    pub q_e: f64,
    pub q_n: f64,
    pub q_c: f64,
    pub d_ne: f64,
    pub d_ec: f64,
    pub d_nc: f64,
}

impl Table3Row {
    pub const HEADER: [&'static str; 11] = [
        "c0", "c1", "E", "N", "C", "Q_E", "Q_N", "Q_C", "dQ_NE", "dQ_EC", "dQ_NC",
    ];

    pub fn at(c0: f64, c1: f64) -> Result<Self> {
        let s = SchmidtQutritPair::from_c0_c1(c0, c1)?;
        let m = qutrit_measures(&s);
        let q = qutrit_deviation(&s);
        Ok(Self {
            c0,
            c1,
            e: m.eof,
            n: m.negativity,
            c: m.concurrence,
            q_e: q.q_e,
            q_n: q.q_n,
            q_c: q.q_c,
            d_ne: q.d_ne,
            d_ec: q.d_ec,
            d_nc: q.d_nc,
        })
    }

    pub fn values(&self) -> [f64; 11] {
        [
            self.c0, self.c1, self.e, self.n, self.c, self.q_e, self.q_n, self.q_c, self.d_ne,
            self.d_ec, self.d_nc,
        ]
    }
}

pub fn table3() -> Vec<Table3Row> {
    TABLE3_COEFFS
        .iter()
        .map(|&(c0, c1)| Table3Row::at(c0, c1).expect("table coefficients are valid"))
        .collect()
}
