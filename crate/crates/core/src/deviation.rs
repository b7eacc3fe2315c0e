//! Fractional deviations from maximal entanglement (Q-parameters), the gaps
//! between them, their maxima, the distance/closeness measures to the
//! nearest Bell state, the CHSH-violation deviation, and audits of the
//! inequalities relating them.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2};

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{frobenius_norm, CMatrix};
use crate::optimize::{self, argmax, coordinate_golden_max, par_eval, scan_then_golden};
use crate::qubit::{pure_measures, N_MAX};
use crate::qutrit::{qutrit_measures, E_MAX};
use crate::states::{SchmidtQubitPair, SchmidtQutritPair};

/// Q-parameters of a two-qubit state and their pairwise gaps, as fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub q_n: f64,
    pub q_l: f64,
    pub q_e: f64,
    pub d_nl: f64,
    pub d_el: f64,
    pub d_ne: f64,
}

impl DeviationReport {
    /// Builds the report from a negativity (max 0.5), a log-negativity and an
    /// entanglement of formation. Mixed-state values may be passed too.
    pub fn from_measures(negativity: f64, log_negativity: f64, eof: f64) -> Self {
        let q_n = (N_MAX - negativity) / N_MAX;
        let q_l = 1.0 - log_negativity;
        let q_e = 1.0 - eof;
        Self {
            q_n,
            q_l,
            q_e,
            d_nl: (q_n - q_l).abs(),
            d_el: (q_e - q_l).abs(),
            d_ne: (q_n - q_e).abs(),
        }
    }

    pub fn gap(&self, which: QubitGap) -> f64 {
        match which {
            QubitGap::NL => self.d_nl,
            QubitGap::EL => self.d_el,
            QubitGap::NE => self.d_ne,
        }
    }
}

pub fn qubit_deviation(s: &SchmidtQubitPair) -> DeviationReport {
    let m = pure_measures(s);
    DeviationReport::from_measures(m.negativity, m.log_negativity, m.eof)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritDeviationReport {
    pub q_e: f64,
    pub q_n: f64,
    pub q_c: f64,
    pub d_ne: f64,
    pub d_ec: f64,
    pub d_nc: f64,
}

impl QutritDeviationReport {
    pub fn gap(&self, which: QutritGap) -> f64 {
        match which {
            QutritGap::NE => self.d_ne,
            QutritGap::EC => self.d_ec,
            QutritGap::NC => self.d_nc,
        }
    }
}

pub fn qutrit_deviation(s: &SchmidtQutritPair) -> QutritDeviationReport {
    let m = qutrit_measures(s);
    let q_e = (E_MAX - m.eof) / E_MAX;
    let q_n = 1.0 - m.negativity;
    let q_c = 1.0 - m.concurrence;
    QutritDeviationReport {
        q_e,
        q_n,
        q_c,
        d_ne: (q_n - q_e).abs(),
        d_ec: (q_e - q_c).abs(),
        d_nc: (q_n - q_c).abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitGap {
    NL,
    EL,
    NE,
}

impl QubitGap {
    pub const ALL: [QubitGap; 3] = [QubitGap::NL, QubitGap::EL, QubitGap::NE];

    pub fn name(self) -> &'static str {
        match self {
            QubitGap::NL => "NL",
            QubitGap::EL => "EL",
            QubitGap::NE => "NE",
        }
    }
}

impl std::str::FromStr for QubitGap {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NL" | "LN" => Ok(QubitGap::NL),
            "EL" | "LE" => Ok(QubitGap::EL),
            "NE" | "EN" => Ok(QubitGap::NE),
            other => Err(crate::Error::Domain(format!("unknown qubit gap {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QutritGap {
    NE,
    EC,
    NC,
}

impl QutritGap {
    pub const ALL: [QutritGap; 3] = [QutritGap::NE, QutritGap::EC, QutritGap::NC];

    pub fn name(self) -> &'static str {
        match self {
            QutritGap::NE => "NE",
            QutritGap::EC => "EC",
            QutritGap::NC => "NC",
        }
    }
}

impl std::str::FromStr for QutritGap {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NE" | "EN" => Ok(QutritGap::NE),
            "EC" | "CE" => Ok(QutritGap::EC),
            "NC" | "CN" => Ok(QutritGap::NC),
            other => Err(crate::Error::Domain(format!(
                "unknown qutrit gap {other:?}"
            ))),
        }
    }
}

/// A located maximum of a gap function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub c0: f64,
    /// Second coordinate for qutrit searches.
    pub c1: Option<f64>,
    pub value: f64,
    /// Final search bracket width along each coordinate.
    pub bracket_width: f64,
}

const SCAN_POINTS: usize = 1000;
const GOLDEN_TOL: f64 = 1e-7;

/// Gap value as a function of `c0` alone; used by the optimizer and tests.
pub fn qubit_gap_at(which: QubitGap, c0: f64) -> f64 {
    let c0 = c0.clamp(0.0, 1.0);
    let s = SchmidtQubitPair::from_c0(c0).expect("clamped c0 is valid");
    qubit_deviation(&s).gap(which)
}

/// Both local maxima of a qubit gap: one on each side of `c0 = 1/sqrt(2)`.
pub fn maximize_delta_qubit(which: QubitGap) -> [Optimum; 2] {
    let f = move |c0: f64| qubit_gap_at(which, c0);
    let branch = |lo: f64, hi: f64| {
        let g = scan_then_golden(f, lo, hi, SCAN_POINTS, GOLDEN_TOL);
        Optimum {
            c0: g.x,
            c1: None,
            value: g.value,
            bracket_width: g.width,
        }
    };
    [branch(0.0, FRAC_1_SQRT_2), branch(FRAC_1_SQRT_2, 1.0)]
}

/// Gap value at `(c0, c1)`, or `-inf` outside the feasible quarter disk.
pub fn qutrit_gap_at(which: QutritGap, c0: f64, c1: f64) -> f64 {
    match SchmidtQutritPair::from_c0_c1(c0, c1) {
        Ok(s) => qutrit_deviation(&s).gap(which),
        Err(_) => f64::NEG_INFINITY,
    }
}

const QUTRIT_GRID: usize = 200;
const QUTRIT_STARTS: usize = 5;

/// Global maximum of a qutrit gap over `{c0, c1 >= 0, c0^2 + c1^2 <= 1}`.
///
/// A 200x200 grid picks the five best cells; each is polished with
/// coordinate-wise golden section in polar coordinates `(r, t)`, where the
/// feasible region is the rectangle `[0,1] x [0, pi/2]`. Every measure is
/// symmetric under permuting `(c0, c1, c2)`, so the reported argmax is the
/// representative with `c2 <= c0 <= c1`.
pub fn maximize_delta_qutrit(which: QutritGap) -> Optimum {
    let axis = optimize::linspace(0.0, 1.0, QUTRIT_GRID);
    let cells: Vec<(f64, f64)> = axis
        .iter()
        .flat_map(|&a| axis.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a * a + b * b <= 1.0)
        .collect();
    let values = par_eval(&cells, |&(a, b)| qutrit_gap_at(which, a, b));

    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));

    let polar = |r: f64, t: f64| qutrit_gap_at(which, r * t.cos(), r * t.sin());
    let step = 1.0 / (QUTRIT_GRID - 1) as f64;
    let starts: Vec<(f64, f64)> = order[..QUTRIT_STARTS.min(order.len())]
        .iter()
        .map(|&i| {
            let (a, b) = cells[i];
            ((a * a + b * b).sqrt().min(1.0), b.atan2(a))
        })
        .collect();
    let polished: Vec<((f64, f64), f64)> = starts
        .iter()
        .map(|&start| {
            coordinate_golden_max(
                polar,
                start,
                [(0.0, 1.0), (0.0, FRAC_PI_2)],
                4.0 * step,
                GOLDEN_TOL,
            )
        })
        .collect();
    let vals: Vec<f64> = polished.iter().map(|p| p.1).collect();
    let best = argmax(&vals).expect("at least one start");
    let ((r, t), value) = polished[best];

    let (c0, c1) = (r * t.cos(), r * t.sin());
    let c2 = (1.0 - c0 * c0 - c1 * c1).max(0.0).sqrt();
    let mut c = [c0, c1, c2];
    c.sort_by(|a, b| a.total_cmp(b));
    // ascending: c[0] smallest -> becomes c2; then c0 <= c1
    Optimum {
        c0: c[1],
        c1: Some(c[2]),
        value,
        bracket_width: GOLDEN_TOL,
    }
}

/// The Bell-family state closest to a given state, with the overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearestMaxEntangled {
    pub state: [Complex64; 4],
    pub overlap: f64,
    /// `1 - overlap^2`, evaluated without cancellation for normalized input.
    pub infidelity: f64,
}

/// Maximizes `|<psi|phi>|` over `phi` in
/// `{(|00> + e^{i a}|11>)/sqrt 2, (|01> + e^{i a}|10>)/sqrt 2}`.
///
/// For a fixed pair of basis vectors the best phase aligns the two
/// components, giving overlap `(|x| + |y|)/sqrt 2`.
pub fn nearest_bell_family(psi: &[Complex64; 4]) -> NearestMaxEntangled {
    let candidate = |i: usize, j: usize| {
        let (x, y) = (psi[i], psi[j]);
        let overlap = (x.norm() + y.norm()) / SQRT_2;
        let phase_x = if x.norm() > 0.0 {
            x / x.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let phase_y = if y.norm() > 0.0 {
            y / y.norm()
        } else {
            phase_x
        };
        let mut state = [Complex64::new(0.0, 0.0); 4];
        // global phase fixed so the first component is real
        state[i] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        state[j] = phase_y * phase_x.conj() * FRAC_1_SQRT_2;
        let rest: f64 = (0..4)
            .filter(|&k| k != i && k != j)
            .map(|k| psi[k].norm_sqr())
            .sum();
        let infidelity = (x.norm() - y.norm()).powi(2) / 2.0 + rest;
        NearestMaxEntangled {
            state,
            overlap,
            infidelity,
        }
    };
    let even = candidate(0, 3);
    let odd = candidate(1, 2);
    if odd.overlap > even.overlap {
        odd
    } else {
        even
    }
}

pub fn nearest_max_entangled(s: &SchmidtQubitPair) -> NearestMaxEntangled {
    nearest_bell_family(&s.amplitudes())
}

fn projector(v: &[Complex64; 4]) -> CMatrix {
    let col = nalgebra::DVector::from_column_slice(v);
    &col * col.adjoint()
}

/// Frobenius distance between `|psi><psi|` and the nearest Bell projector.
pub fn distance_d(s: &SchmidtQubitPair) -> f64 {
    let near = nearest_max_entangled(s);
    frobenius_norm(&(projector(&s.amplitudes()) - projector(&near.state)))
}

/// Fidelity-based closeness `sqrt(2 - 2 |<psi|psi_max>|^2)`.
pub fn closeness_c(s: &SchmidtQubitPair) -> f64 {
    (2.0 * nearest_max_entangled(s).infidelity).sqrt()
}

/// Largest CHSH violation `2 sqrt(2) - 2`, reached by Bell states.
pub const BV_MAX: f64 = 2.0 * SQRT_2 - 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellViolation {
    /// Maximal CHSH value minus the local bound 2.
    pub bv: f64,
    /// Fractional deviation of `bv` from [`BV_MAX`].
    pub qbv: f64,
}

pub fn bell_violation(s: &SchmidtQubitPair) -> BellViolation {
    let c = 2.0 * s.c0() * s.c1();
    let bv = 2.0 * (1.0 + c * c).sqrt() - 2.0;
    BellViolation {
        bv,
        qbv: (BV_MAX - bv) / BV_MAX,
    }
}

/// Everything the bound audits look at for one `c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPoint {
    pub c0: f64,
    pub d: f64,
    pub q_n: f64,
    pub q_l: f64,
    pub q_e: f64,
    pub q_bv: f64,
}

impl BoundPoint {
    pub fn at(c0: f64) -> Self {
        let s = SchmidtQubitPair::from_c0(c0.clamp(0.0, 1.0)).expect("clamped c0 is valid");
        let q = qubit_deviation(&s);
        BoundPoint {
            c0: s.c0(),
            d: distance_d(&s),
            q_n: q.q_n,
            q_l: q.q_l,
            q_e: q.q_e,
            q_bv: bell_violation(&s).qbv,
        }
    }
}

/// A claimed inequality `upper(p) >= lower(p)`.
#[derive(Debug, Clone, Copy)]
pub struct Inequality {
    pub name: &'static str,
    pub upper: fn(&BoundPoint) -> f64,
    pub lower: fn(&BoundPoint) -> f64,
}

impl Inequality {
    /// The reversed claim `lower >= upper`.
    pub fn negated(self) -> Self {
        Inequality {
            name: "negated",
            upper: self.lower,
            lower: self.upper,
        }
    }
}

/// `D >= Q_N`, `D >= Q_L`, `Q_BV >= Q_N`, `Q_BV >= Q_L`, `Q_BV >= Q_E`.
pub fn standard_inequalities() -> Vec<Inequality> {
    vec![
        Inequality {
            name: "D >= Q_N",
            upper: |p| p.d,
            lower: |p| p.q_n,
        },
        Inequality {
            name: "D >= Q_L",
            upper: |p| p.d,
            lower: |p| p.q_l,
        },
        Inequality {
            name: "Q_BV >= Q_N",
            upper: |p| p.q_bv,
            lower: |p| p.q_n,
        },
        Inequality {
            name: "Q_BV >= Q_L",
            upper: |p| p.q_bv,
            lower: |p| p.q_l,
        },
        Inequality {
            name: "Q_BV >= Q_E",
            upper: |p| p.q_bv,
            lower: |p| p.q_e,
        },
    ]
}

pub const AUDIT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundAudit {
    pub name: String,
    pub grid_size: usize,
    pub violations: usize,
    /// Largest `lower - upper` among violating points, 0 when none.
    pub max_violation: f64,
    /// Smallest `upper - lower` over the grid.
    pub min_margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub audits: Vec<BoundAudit>,
    /// Number of grid points with `Q_E > D`.
    pub qe_above_d_count: usize,
    /// Grid point with the largest `Q_E - D`, when positive.
    pub qe_above_d_witness: Option<(f64, f64)>,
}

impl AuditReport {
    pub fn total_violations(&self) -> usize {
        self.audits.iter().map(|a| a.violations).sum()
    }
}

/// Checks each inequality on `grid_points` evenly spaced `c0` in `[0, 1]`
/// (endpoints included).
pub fn audit_inequalities(grid_points: usize, inequalities: &[Inequality]) -> Result<AuditReport> {
    if grid_points < 2 {
        return Err(crate::Error::Domain(format!(
            "audit grid needs at least 2 points, got {grid_points}"
        )));
    }
    let xs = optimize::linspace(0.0, 1.0, grid_points);
    let points: Vec<BoundPoint> = {
        use rayon::prelude::*;
        xs.par_iter().map(|&c0| BoundPoint::at(c0)).collect()
    };
    let audits = inequalities
        .iter()
        .map(|ineq| {
            let mut violations = 0;
            let mut max_violation = 0.0f64;
            let mut min_margin = f64::INFINITY;
            for p in &points {
                let margin = (ineq.upper)(p) - (ineq.lower)(p);
                min_margin = min_margin.min(margin);
                if margin < -AUDIT_SLACK {
                    violations += 1;
                    max_violation = max_violation.max(-margin);
                }
            }
            BoundAudit {
                name: ineq.name.to_string(),
                grid_size: grid_points,
                violations,
                max_violation,
                min_margin,
            }
        })
        .collect();
    let mut qe_above_d_count = 0;
    let mut witness: Option<(f64, f64)> = None;
    for p in &points {
        let gap = p.q_e - p.d;
        if gap > AUDIT_SLACK {
            qe_above_d_count += 1;
            if witness.is_none_or(|(_, g)| gap > g) {
                witness = Some((p.c0, gap));
            }
        }
    }
    Ok(AuditReport {
        audits,
        qe_above_d_count,
        qe_above_d_witness: witness,
    })
}

pub fn audit_bounds(grid_points: usize) -> Result<AuditReport> {
    audit_inequalities(grid_points, &standard_inequalities())
}
