mod manifest;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use entdev_core::curves::Figure;
use entdev_core::deviation::{
    audit_bounds, audit_inequalities, bell_violation, closeness_c, distance_d,
    maximize_delta_qubit, maximize_delta_qutrit, qubit_deviation, qutrit_deviation,
    standard_inequalities, AuditReport, QubitGap, QutritGap,
};
use entdev_core::qubit::pure_measures;
use entdev_core::qutrit::qutrit_measures;
use entdev_core::tables::{table1, table3};
use entdev_core::tomo::{
    bootstrap_errors, characterize, mle_reconstruct, simulate_counts, simulate_table2,
    source_state, ErrorEstimate, SourceConfig, Table2Row, DEFAULT_PAIRS_PER_SETTING,
};
use entdev_core::{SchmidtQubitPair, SchmidtQutritPair};

use manifest::{sidecar, RunManifest};

#[derive(Parser)]
#[command(
    name = "entdev",
    version,
    about = "Deviation of entangled states from maximal entanglement"
)]
struct Cli {
    /// Emit JSON with raw fractions instead of formatted text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measures and Q-parameters of one pure state.
    Measures {
        #[arg(long)]
        c0: f64,
        #[arg(long)]
        c1: Option<f64>,
        /// Treat (c0, c1) as the leading Schmidt coefficients of two qutrits.
        #[arg(long)]
        qutrit: bool,
    },
    /// Write one of the comparison tables as CSV.
    Table {
        which: TableKind,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "ENTDEV_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PAIRS_PER_SETTING)]
        pairs: u64,
        /// Bootstrap replicas per state (2sim only); 0 skips error bars.
        #[arg(long, default_value_t = 100)]
        replicas: usize,
    },
    /// Maximize a Q-parameter gap.
    Optimize { family: Family, which: String },
    /// Plot-ready CSV of a figure's curves.
    Curves {
        figure: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the distance and Bell-violation bounds on a c0 grid.
    Audit {
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Simulate, reconstruct and characterize one tomography run.
    Tomo {
        /// Pump half-wave-plate angle in degrees.
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        purity: f64,
        #[arg(long, default_value_t = DEFAULT_PAIRS_PER_SETTING)]
        pairs: u64,
        #[arg(long, env = "ENTDEV_SEED", default_value_t = 0)]
        seed: u64,
        /// Relative phase in radians.
        #[arg(long, default_value_t = 0.0)]
        phase: f64,
        #[arg(long, default_value_t = 0)]
        replicas: usize,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    #[value(name = "1")]
    One,
    #[value(name = "2sim")]
    TwoSim,
    #[value(name = "3")]
    Three,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Qubit,
    Qutrit,
}

enum Failure {
    /// Bad arguments, configuration or I/O.
    Usage(String),
    /// The audit found violations.
    Violation,
}

impl From<entdev_core::Error> for Failure {
    fn from(e: entdev_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Measures { c0, c1, qutrit } => measures(c0, c1, qutrit, cli.json),
        Command::Table {
            which,
            out,
            seed,
            pairs,
            replicas,
        } => table(which, out.as_deref(), seed, pairs, replicas, cli.json),
        Command::Optimize { family, which } => optimize(family, &which, cli.json),
        Command::Curves {
            figure,
            samples,
            out,
        } => curves(&figure, samples, out.as_deref()),
        Command::Audit { grid, inject_fault } => audit(grid, inject_fault, cli.json),
        Command::Tomo {
            theta,
            purity,
            pairs,
            seed,
            phase,
            replicas,
            out,
        } => tomo(theta, purity, pairs, seed, phase, replicas, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("entdev: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Percentage with two decimals, never printing `-0.00`.
fn pct(x: f64) -> String {
    let s = format!("{:.2}", 100.0 * x);
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn print_fields(fields: &[(&str, String)]) {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in fields {
        println!("{k:>width$} {v}");
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json serializes")
    );
}

fn measures(c0: f64, c1: Option<f64>, qutrit: bool, as_json: bool) -> Outcome {
    if qutrit {
        let c1 = c1.ok_or_else(|| Failure::Usage("--qutrit needs --c1".into()))?;
        let s = SchmidtQutritPair::from_c0_c1(c0, c1)?;
        let m = qutrit_measures(&s);
        let q = qutrit_deviation(&s);
        if as_json {
            print_json(&json!({
                "c0": s.c0(), "c1": s.c1(), "c2": s.c2(),
                "E": m.eof, "N": m.negativity, "C": m.concurrence, "I": m.linear_entropy,
                "Q_E": q.q_e, "Q_N": q.q_n, "Q_C": q.q_c,
                "dQ_NE": q.d_ne, "dQ_EC": q.d_ec, "dQ_NC": q.d_nc,
            }));
        } else {
            print_fields(&[
                ("c0", format!("{:.4}", s.c0())),
                ("c1", format!("{:.4}", s.c1())),
                ("c2", format!("{:.4}", s.c2())),
                ("E", format!("{:.4}", m.eof)),
                ("N", format!("{:.4}", m.negativity)),
                ("C", format!("{:.4}", m.concurrence)),
                ("Q_E", pct(q.q_e) + "%"),
                ("Q_N", pct(q.q_n) + "%"),
                ("Q_C", pct(q.q_c) + "%"),
                ("dQ_NE", pct(q.d_ne) + "%"),
                ("dQ_EC", pct(q.d_ec) + "%"),
                ("dQ_NC", pct(q.d_nc) + "%"),
            ]);
        }
        return Ok(());
    }
    let s = match c1 {
        Some(c1) => SchmidtQubitPair::new(c0, c1)?,
        None => SchmidtQubitPair::from_c0(c0)?,
    };
    let m = pure_measures(&s);
    let q = qubit_deviation(&s);
    let bv = bell_violation(&s);
    let (d, c) = (distance_d(&s), closeness_c(&s));
    if as_json {
        print_json(&json!({
            "c0": s.c0(), "c1": s.c1(),
            "N": m.negativity, "LN": m.log_negativity, "EOF": m.eof, "C": m.concurrence, "EE": m.entropy,
            "Q_N": q.q_n, "Q_L": q.q_l, "Q_E": q.q_e,
            "dQ_NL": q.d_nl, "dQ_EL": q.d_el, "dQ_NE": q.d_ne,
            "D": d, "closeness": c, "BV": bv.bv, "Q_BV": bv.qbv,
        }));
    } else {
        print_fields(&[
            ("c0", format!("{:.4}", s.c0())),
            ("c1", format!("{:.4}", s.c1())),
            ("N", format!("{:.4}", m.negativity)),
            ("LN", format!("{:.4}", m.log_negativity)),
            ("EOF", format!("{:.4}", m.eof)),
            ("C", format!("{:.4}", m.concurrence)),
            ("EE", format!("{:.4}", m.entropy)),
            ("Q_N", pct(q.q_n) + "%"),
            ("Q_L", pct(q.q_l) + "%"),
            ("Q_E", pct(q.q_e) + "%"),
            ("dQ_NL", pct(q.d_nl) + "%"),
            ("dQ_EL", pct(q.d_el) + "%"),
            ("dQ_NE", pct(q.d_ne) + "%"),
            ("D", format!("{d:.4}")),
            ("Q_BV", pct(bv.qbv) + "%"),
        ]);
    }
    Ok(())
}

/// CSV destination: a file (with a sidecar manifest) or stdout.
fn csv_writer(out: Option<&Path>) -> io::Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            Box::new(fs::File::create(path)?)
        }
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn finish_csv(
    mut w: csv::Writer<Box<dyn Write>>,
    out: Option<&Path>,
    mut manifest: RunManifest,
) -> Outcome {
    w.flush()?;
    if let Some(path) = out {
        manifest.output(path);
        manifest.write(&sidecar(path))?;
    }
    Ok(())
}

fn f4(x: f64) -> String {
    format!("{x:.4}")
}

const TABLE2_HEADER: [&str; 20] = [
    "state",
    "theta_deg",
    "target_purity",
    "seed",
    "2N_ideal",
    "P",
    "2N",
    "LN",
    "EOF",
    "Q_L_pct",
    "Q_N_pct",
    "Q_E_pct",
    "dQ_NL_pct",
    "dQ_NE_pct",
    "dQ_EL_pct",
    "fidelity",
    "sd_P",
    "sd_2N",
    "sd_LN",
    "sd_EOF",
];

fn table2_record(
    label: &str,
    theta: f64,
    purity: f64,
    seed: u64,
    r: &Table2Row,
    fid: f64,
    e: Option<&ErrorEstimate>,
) -> Vec<String> {
    let mut rec = vec![
        label.to_string(),
        theta.to_string(),
        purity.to_string(),
        seed.to_string(),
        f4(r.two_n_ideal),
        f4(r.purity),
        f4(r.two_n),
        f4(r.log_negativity),
        f4(r.eof),
        pct(r.q_l),
        pct(r.q_n),
        pct(r.q_e),
        pct(r.d_nl),
        pct(r.d_ne),
        pct(r.d_el),
        format!("{fid:.6}"),
    ];
    match e {
        Some(e) => {
            rec.extend([e.purity, e.two_n, e.log_negativity, e.eof].map(|v| format!("{v:.4}")))
        }
        None => rec.extend(std::iter::repeat_n(String::new(), 4)),
    }
    rec
}

fn table(
    which: TableKind,
    out: Option<&Path>,
    seed: u64,
    pairs: u64,
    replicas: usize,
    as_json: bool,
) -> Outcome {
    match which {
        TableKind::One => {
            let rows = table1();
            if as_json {
                print_json(&serde_json::to_value(&rows).expect("rows serialize"));
                return Ok(());
            }
            let mut w = csv_writer(out)?;
            w.write_record([
                "c0",
                "N",
                "LN",
                "EOF",
                "Q_N_pct",
                "Q_L_pct",
                "Q_E_pct",
                "dQ_NL_pct",
                "dQ_EL_pct",
                "dQ_NE_pct",
            ])?;
            for r in &rows {
                let mut rec = vec![
                    r.c0.to_string(),
                    format!("{:.3}", r.n),
                    format!("{:.3}", r.ln),
                    format!("{:.3}", r.eof),
                ];
                rec.extend([r.q_n, r.q_l, r.q_e, r.d_nl, r.d_el, r.d_ne].map(pct));
                w.write_record(&rec)?;
            }
            finish_csv(w, out, RunManifest::new("table").param("which", "1"))
        }
        TableKind::Three => {
            let rows = table3();
            if as_json {
                print_json(&serde_json::to_value(&rows).expect("rows serialize"));
                return Ok(());
            }
            let mut w = csv_writer(out)?;
            w.write_record([
                "c0",
                "c1",
                "E",
                "N",
                "C",
                "Q_E_pct",
                "Q_N_pct",
                "Q_C_pct",
                "dQ_NE_pct",
                "dQ_EC_pct",
                "dQ_NC_pct",
            ])?;
            for r in &rows {
                let mut rec = vec![
                    r.c0.to_string(),
                    r.c1.to_string(),
                    f4(r.e),
                    f4(r.n),
                    f4(r.c),
                ];
                rec.extend([r.q_e, r.q_n, r.q_c, r.d_ne, r.d_ec, r.d_nc].map(pct));
                w.write_record(&rec)?;
            }
            finish_csv(w, out, RunManifest::new("table").param("which", "3"))
        }
        TableKind::TwoSim => {
            let rows = simulate_table2(seed, pairs, replicas)?;
            if as_json {
                print_json(&serde_json::to_value(&rows).expect("rows serialize"));
                return Ok(());
            }
            let mut w = csv_writer(out)?;
            w.write_record(TABLE2_HEADER)?;
            let mut manifest = RunManifest::new("table")
                .param("which", "2sim")
                .param("pairs_per_setting", pairs)
                .param("replicas", replicas)
                .param("seed", seed);
            for r in &rows {
                manifest = manifest.seed(r.seed);
                w.write_record(table2_record(
                    r.label,
                    r.theta_deg,
                    r.target_purity,
                    r.seed,
                    &r.row,
                    r.fidelity,
                    r.errors.as_ref(),
                ))?;
            }
            finish_csv(w, out, manifest)
        }
    }
}

fn optimize(family: Family, which: &str, as_json: bool) -> Outcome {
    match family {
        Family::Qubit => {
            let gap: QubitGap = which.parse()?;
            let [a, b] = maximize_delta_qubit(gap);
            if as_json {
                print_json(&json!({
                    "family": "qubit", "gap": gap.name(),
                    "branches": [
                        {"c0": a.c0, "value": a.value, "bracket_width": a.bracket_width},
                        {"c0": b.c0, "value": b.value, "bracket_width": b.bracket_width},
                    ],
                }));
            } else {
                println!(
                    "dQ_{} max {}% at c0={:.3}, {:.3}",
                    gap.name(),
                    pct(a.value.max(b.value)),
                    a.c0,
                    b.c0
                );
                println!("  branch c0 < 1/sqrt2: {}% at c0={:.6}", pct(a.value), a.c0);
                println!("  branch c0 > 1/sqrt2: {}% at c0={:.6}", pct(b.value), b.c0);
            }
        }
        Family::Qutrit => {
            let gap: QutritGap = which.parse()?;
            let o = maximize_delta_qutrit(gap);
            let c1 = o.c1.unwrap_or(f64::NAN);
            let c2 = (1.0 - o.c0 * o.c0 - c1 * c1).max(0.0).sqrt();
            if as_json {
                print_json(&json!({
                    "family": "qutrit", "gap": gap.name(),
                    "c0": o.c0, "c1": c1, "c2": c2, "value": o.value, "bracket_width": o.bracket_width,
                }));
            } else {
                println!(
                    "dQ_{} max {}% at ({:.4}, {:.4})",
                    gap.name(),
                    pct(o.value),
                    o.c0,
                    c1
                );
            }
        }
    }
    Ok(())
}

fn curves(figure: &str, samples: usize, out: Option<&Path>) -> Outcome {
    let fig: Figure = figure.parse()?;
    let rows = fig.rows(samples)?;
    let mut w = csv_writer(out)?;
    w.write_record(fig.columns())?;
    for r in &rows {
        w.write_record(r.iter().map(|v| v.to_string()))?;
    }
    let manifest = RunManifest::new("curves")
        .param("figure", fig.name())
        .param("samples", samples);
    finish_csv(w, out, manifest)
}

fn audit(grid: usize, inject_fault: bool, as_json: bool) -> Outcome {
    let report: AuditReport = if inject_fault {
        let mut ineqs = standard_inequalities();
        ineqs[0] = ineqs[0].negated();
        audit_inequalities(grid, &ineqs)?
    } else {
        audit_bounds(grid)?
    };
    if as_json {
        let audits: Vec<_> = report
            .audits
            .iter()
            .map(|a| {
                json!({
                    "name": a.name, "grid_size": a.grid_size, "violations": a.violations,
                    "max_violation": a.max_violation, "min_margin": a.min_margin,
                })
            })
            .collect();
        print_json(&json!({
            "audits": audits,
            "total_violations": report.total_violations(),
            "qe_above_d_count": report.qe_above_d_count,
            "qe_above_d_witness": report.qe_above_d_witness.map(|(c0, gap)| json!({"c0": c0, "gap": gap})),
        }));
    } else {
        for a in &report.audits {
            println!(
                "{:<12} grid {:>6}  violations {:>5}  min slack {:+.3e}  max violation {:.3e}",
                a.name, a.grid_size, a.violations, a.min_margin, a.max_violation
            );
        }
        match report.qe_above_d_witness {
            Some((c0, gap)) => println!(
                "Q_E > D at {} grid points (largest gap {:.4} at c0={c0:.4})",
                report.qe_above_d_count, gap
            ),
            None => println!("Q_E > D at no grid point"),
        }
        println!("total violations: {}", report.total_violations());
    }
    if report.total_violations() > 0 {
        return Err(Failure::Violation);
    }
    Ok(())
}

fn tomo(
    theta: f64,
    purity: f64,
    pairs: u64,
    seed: u64,
    phase: f64,
    replicas: usize,
    out: &Path,
) -> Outcome {
    let cfg = SourceConfig::new(theta, purity, pairs, seed)?.with_phase(phase);
    cfg.validate()?;
    let truth = source_state(&cfg)?;
    let data = simulate_counts(&truth, &cfg)?;
    let fit = mle_reconstruct(&data)?;
    let row = characterize(&fit.rho, &cfg.ideal_schmidt())?;
    let errors = if replicas > 0 {
        Some(bootstrap_errors(&data, replicas)?)
    } else {
        None
    };
    let fid = entdev_core::density::fidelity(&fit.rho, &truth);

    fs::create_dir_all(out)?;
    let mut manifest = RunManifest::new("tomo")
        .param("theta_deg", theta)
        .param("purity", purity)
        .param("pairs_per_setting", pairs)
        .param("phase", phase)
        .param("replicas", replicas)
        .param("seed", seed)
        .seed(seed);

    let dataset_path = out.join("dataset.json");
    fs::write(&dataset_path, data.to_json() + "\n")?;
    manifest.output(&dataset_path);

    let rho_path = out.join("rho_hat.json");
    fs::write(&rho_path, fit.to_json() + "\n")?;
    manifest.output(&rho_path);

    let row_path = out.join("row.csv");
    let mut w = csv::Writer::from_path(&row_path)?;
    w.write_record(TABLE2_HEADER)?;
    w.write_record(table2_record(
        "sim",
        theta,
        purity,
        seed,
        &row,
        fid,
        errors.as_ref(),
    ))?;
    w.flush()?;
    manifest.output(&row_path);

    manifest.write(&out.join("manifest.json"))?;
    println!(
        "2N {:.4}  P {:.4}  LN {:.4}  EOF {:.4}  fidelity {:.6}  nll {:.4}  iterations {}{}",
        row.two_n,
        row.purity,
        row.log_negativity,
        row.eof,
        fid,
        fit.nll,
        fit.iterations,
        if fit.converged {
            ""
        } else {
            "  (not converged)"
        }
    );
    Ok(())
}
