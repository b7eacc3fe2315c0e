use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn entdev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entdev"))
        .args(args)
        .env_remove("ENTDEV_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = entdev(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn measures_report() {
    let text = stdout(&["measures", "--c0", "0.4"]);
    assert!(text.contains("EOF 0.6343"), "{text}");
    assert!(text.contains("Q_L 20.66%"));
    assert!(text.contains("Q_BV 42.06%"));

    let text = stdout(&["measures", "--c0", "0.7071"]);
    let q_lines: Vec<&str> = text.lines().filter(|l| l.contains("Q_")).collect();
    assert!(!q_lines.is_empty());
    assert!(q_lines.iter().all(|l| l.ends_with(" 0.00%")), "{text}");

    let text = stdout(&["measures", "--qutrit", "--c0", "0.3", "--c1", "0.8"]);
    assert!(text.contains("N 0.8116"), "{text}");
}

#[test]
fn measures_json_has_raw_fractions() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["measures", "--c0", "0.4", "--json"])).unwrap();
    assert!((v["EOF"].as_f64().unwrap() - 0.634_310).abs() < 1e-5);
    assert!((v["Q_N"].as_f64().unwrap() - 0.2668).abs() < 1e-4);
}

#[test]
fn invalid_coefficients_exit_with_usage_code() {
    assert_eq!(entdev(&["measures", "--c0", "1.5"]).status.code(), Some(2));
    assert_eq!(
        entdev(&["measures", "--qutrit", "--c0", "0.9", "--c1", "0.9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(entdev(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(entdev(&["curves", "fig4"]).status.code(), Some(2));
    assert_eq!(
        entdev(&["curves", "fig1", "--samples", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn table_headers_are_stable() {
    let (h1, rows1) = csv_rows(&stdout(&["table", "1"]));
    assert_eq!(
        h1,
        [
            "c0",
            "N",
            "LN",
            "EOF",
            "Q_N_pct",
            "Q_L_pct",
            "Q_E_pct",
            "dQ_NL_pct",
            "dQ_EL_pct",
            "dQ_NE_pct"
        ]
    );
    assert_eq!(rows1.len(), 7);
    assert_eq!(rows1[2][3], "0.634");
    assert_eq!(rows1[2][4], "26.68");

    let (h3, rows3) = csv_rows(&stdout(&["table", "3"]));
    assert_eq!(
        h3,
        [
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
            "dQ_NC_pct"
        ]
    );
    assert_eq!(rows3.len(), 5);
    assert_eq!(rows3[1][3], "0.8116");
}

#[test]
fn table_2sim_rows_keep_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t2.csv");
    let p = path.to_str().unwrap();
    stdout(&[
        "table",
        "2sim",
        "--seed",
        "7",
        "--replicas",
        "2",
        "--out",
        p,
    ]);
    let (header, rows) = csv_rows(&fs::read_to_string(&path).unwrap());
    assert_eq!(
        header,
        [
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
            "sd_EOF"
        ]
    );
    assert_eq!(rows.len(), 3);
    for r in &rows {
        let (nl, ne, el) = (num(&r[12]), num(&r[13]), num(&r[14]));
        assert!(el > ne && ne > nl, "{r:?}");
        assert!(r[16..].iter().all(|s| num(s) >= 0.0));
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("t2.csv.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["outputs"][0], "t2.csv");
    assert_eq!(manifest["seeds"], serde_json::json!([7, 8, 9]));
}

#[test]
fn optimize_reports() {
    let text = stdout(&["optimize", "qubit", "NE"]);
    assert!(text.contains("14.99% at c0=0.210, 0.978"), "{text}");
    let text = stdout(&["optimize", "qubit", "NL"]);
    assert!(text.contains("c0=0.227, 0.974"), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains("branch")).count(), 2);
    let text = stdout(&["optimize", "qutrit", "EC"]);
    assert!(text.contains("23.81% at (0.5000, 0.8660)"), "{text}");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["optimize", "qubit", "EL", "--json"])).unwrap();
    assert_eq!(v["branches"].as_array().unwrap().len(), 2);
    assert_eq!(entdev(&["optimize", "qubit", "XY"]).status.code(), Some(2));
}

#[test]
fn curves_headers_and_shapes() {
    let expected: [(&str, &[&str]); 5] = [
        ("fig1", &["c0", "C", "N", "LN", "EOF", "EE"]),
        ("fig2", &["c0", "2N", "LN", "EOF", "Q_N", "Q_L", "Q_E"]),
        (
            "fig3",
            &[
                "c0", "dQ_NL", "dQ_EL", "dQ_NE", "abs_d2N", "abs_dLN", "abs_dEOF",
            ],
        ),
        ("fig8", &["c0", "D", "Q_N", "Q_L", "Q_E"]),
        ("fig9", &["c0", "Q_BV", "Q_N", "Q_L", "Q_E"]),
    ];
    for (fig, cols) in expected {
        let (header, rows) = csv_rows(&stdout(&["curves", fig, "--samples", "9"]));
        assert_eq!(header, cols);
        assert_eq!(rows.len(), 9);
    }
}

#[test]
fn fig8_and_fig9_claims() {
    let (_, rows) = csv_rows(&stdout(&["curves", "fig8", "--samples", "9"]));
    let first: Vec<f64> = rows[0].iter().map(|s| num(s)).collect();
    assert_eq!(first[0], 0.1);
    assert!(first[4] > first[1]);

    let (_, rows) = csv_rows(&stdout(&["curves", "fig9", "--samples", "500"]));
    for r in rows {
        let v: Vec<f64> = r.iter().map(|s| num(s)).collect();
        assert!(v[2..].iter().all(|&q| v[1] >= q - 1e-12));
    }
}

#[test]
fn audit_exit_codes() {
    assert_eq!(entdev(&["audit", "--grid", "10000"]).status.code(), Some(0));
    assert_eq!(entdev(&["audit", "--grid", "2"]).status.code(), Some(0));
    assert_eq!(
        entdev(&["audit", "--grid", "500", "--inject-fault"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(entdev(&["audit", "--grid", "1"]).status.code(), Some(2));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["audit", "--grid", "1000", "--json"])).unwrap();
    assert_eq!(v["total_violations"], 0);
    assert!(v["qe_above_d_count"].as_u64().unwrap() > 0);
}

fn tomo(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["tomo", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    entdev(&args)
}

#[test]
fn tomo_writes_reproducible_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let flags = [
        "--theta", "23.1", "--purity", "0.966", "--pairs", "10000", "--seed", "5",
    ];
    assert!(tomo(a.path(), &flags).status.success());
    assert!(tomo(b.path(), &flags).status.success());
    for name in ["dataset.json", "rho_hat.json", "row.csv", "manifest.json"] {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
    let (_, rows) = csv_rows(&fs::read_to_string(a.path().join("row.csv")).unwrap());
    assert!((num(&rows[0][6]) - 0.960).abs() < 0.03);

    let rho: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.path().join("rho_hat.json")).unwrap()).unwrap();
    assert_eq!(rho["dim"], 4);
    assert!(rho["nll"].is_number());
    let data: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.path().join("dataset.json")).unwrap()).unwrap();
    assert_eq!(data["counts"].as_array().unwrap().len(), 36);
    assert_eq!(data["seed"], 5);
}

#[test]
fn tomo_product_state_and_env_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_entdev"))
        .args([
            "tomo",
            "--theta",
            "45",
            "--purity",
            "1",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .env("ENTDEV_SEED", "11")
        .output()
        .unwrap();
    assert!(out.status.success());
    let (_, rows) = csv_rows(&fs::read_to_string(dir.path().join("row.csv")).unwrap());
    assert_eq!(rows[0][3], "11");
    assert!(num(&rows[0][4]).abs() < 1e-12);

    assert_eq!(
        tomo(dir.path(), &["--theta", "50", "--purity", "0.9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tomo(dir.path(), &["--theta", "20", "--purity", "0.2"])
            .status
            .code(),
        Some(2)
    );
}
