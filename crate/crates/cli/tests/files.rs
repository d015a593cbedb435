use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs;
use std::path::{Path, PathBuf};

use kaehler::{HermitianMatrix, HilbertPoint, C64};
use kaehler_cli::bloch::bloch_export;
use kaehler_cli::evolve::{csv_header, evolve, parse_point, preset, EvolveConfig, HamiltonianSource};
use kaehler_cli::matrix_io::{load_matrix, save_matrix, MatrixFile};
use kaehler_cli::CliError;
use proptest::prelude::*;
use tempfile::tempdir;

fn rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let data = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, data)
}

fn evolve_config(h: &str, z0: &str, t_max: f64, steps: u64, out: PathBuf) -> EvolveConfig {
    EvolveConfig {
        hamiltonian: HamiltonianSource::parse(h),
        z0: parse_point(z0).unwrap(),
        t_max,
        steps,
        seed: 0,
        tol: 1e-10,
        out,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exported_matrices_load_back_exactly(dim in 1usize..9, seed in any::<u64>()) {
        let dir = tempdir().unwrap();
        let path = dir.path().join("h.json");
        let h = preset("random-gue", dim, seed).unwrap();
        save_matrix(&path, &h).unwrap();
        let back = load_matrix(&path).unwrap();
        prop_assert_eq!(back.matrix(), h.matrix());
    }
}

#[test]
fn matrix_file_is_row_major() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("s2.json");
    save_matrix(&path, &HermitianMatrix::pauli(2)).unwrap();
    let file: MatrixFile = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(file.dim, 2);
    assert_eq!(file.re, [0.0, 0.0, 0.0, 0.0]);
    assert_eq!(file.im, [0.0, -1.0, 1.0, 0.0]);
}

#[test]
fn non_hermitian_files_report_the_residual() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"dim": 2, "re": [1.0, 0.5, 0.0, 1.0], "im": [0.0, 0.0, 0.0, 0.0]}"#,
    )
    .unwrap();
    match load_matrix(&path).unwrap_err() {
        e @ CliError::Input { .. } => {
            let msg = e.to_string();
            assert!(msg.contains("not Hermitian") && msg.contains("5e-1"), "{msg}");
            assert_eq!(e.exit_code(), 2);
        }
        e => panic!("{e}"),
    }
    fs::write(&path, r#"{"dim": 2, "re": [1.0], "im": [0.0, 0.0, 0.0, 0.0]}"#).unwrap();
    assert!(load_matrix(&path)
        .unwrap_err()
        .to_string()
        .contains("`re` has 1 entries"));
    fs::write(&path, "not json").unwrap();
    assert!(matches!(load_matrix(&path).unwrap_err(), CliError::Input { .. }));
    assert!(matches!(
        load_matrix(&dir.path().join("missing.json")).unwrap_err(),
        CliError::Io { .. }
    ));
}

#[test]
fn presets() {
    assert_eq!(preset("pauli3", 2, 0).unwrap(), HermitianMatrix::pauli(3));
    assert_eq!(preset("identity", 3, 0).unwrap(), HermitianMatrix::identity(3));
    assert_eq!(preset("random-gue", 4, 9).unwrap(), preset("random-gue", 4, 9).unwrap());
    assert_ne!(
        preset("random-gue", 4, 9).unwrap(),
        preset("random-gue", 4, 10).unwrap()
    );
    assert!(matches!(preset("pauli1", 3, 0), Err(CliError::Config(_))));
    assert!(matches!(preset("sigma", 2, 0), Err(CliError::Config(_))));
}

#[test]
fn points_are_interleaved_pairs() {
    let z = parse_point("1, 2, -3, 0.5").unwrap();
    assert_eq!(z.to_complex().as_slice(), [C64::new(1.0, 2.0), C64::new(-3.0, 0.5)]);
    assert!(parse_point("1,2,3").is_err());
    assert!(parse_point("1,x").is_err());
    assert!(parse_point("inf,0").is_err());
}

#[test]
fn sigma3_precession_traces_the_equator() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("eq.csv");
    let r = format!("{:?}", FRAC_1_SQRT_2);
    let summary = evolve(&evolve_config(
        "pauli3",
        &format!("{r},0,{r},0"),
        2.0 * PI,
        64,
        out.clone(),
    ))
    .unwrap();
    assert_eq!(summary.rows, 65);
    let (header, data) = rows(&out);
    assert_eq!(header, csv_header(2));
    assert_eq!(header, ["t", "q1", "q2", "p1", "p2", "norm_sq", "y1", "y2", "y3"]);
    assert_eq!(data.len(), 65);
    assert_eq!(data[0][0], 0.0);
    assert_eq!(data[64][0], 2.0 * PI);
    for row in &data {
        let (y1, y2, y3) = (row[6], row[7], row[8]);
        assert!(y3.abs() <= 1e-12, "{row:?}");
        assert!((y1 * y1 + y2 * y2 - 0.25).abs() <= 1e-12, "{row:?}");
        assert!((row[5] - 1.0).abs() <= 1e-10);
    }
    // exp(-iσ_3 t) rotates y by -2t about the third axis
    let quarter = &data[8];
    assert!((quarter[6] - 0.5 * (2.0 * PI / 8.0 * 2.0).cos()).abs() < 1e-12);
}

#[test]
fn zero_hamiltonian_gives_identical_rows() {
    let dir = tempdir().unwrap();
    let h = dir.path().join("zero.json");
    save_matrix(&h, &HermitianMatrix::zeros(3)).unwrap();
    let out = dir.path().join("still.csv");
    evolve(&evolve_config(
        h.to_str().unwrap(),
        "0.3,-1,2,0.25,0,4",
        10.0,
        20,
        out.clone(),
    ))
    .unwrap();
    let (header, data) = rows(&out);
    assert_eq!(header.len(), 1 + 3 + 3 + 1);
    for row in &data {
        assert_eq!(row[1..], data[0][1..]);
    }
}

#[test]
fn random_hamiltonians_keep_the_norm() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("gue.csv");
    let mut c = evolve_config("random-gue", "1,0,0,1,-2,0.5,0.1,0", 10.0, 1000, out.clone());
    c.seed = 5;
    let summary = evolve(&c).unwrap();
    assert!(summary.max_norm_drift <= 1e-10);
    let (_, data) = rows(&out);
    let r0 = data[0][9];
    assert!(data.iter().all(|row| (row[9] - r0).abs() <= 1e-10));
}

#[test]
fn evolve_rejects_bad_input() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let c = evolve_config("pauli1", "0,0,0,0", 1.0, 4, out.clone());
    assert!(matches!(evolve(&c), Err(CliError::Config(_))));
    let c = evolve_config("pauli1", "1,0,0,0,0,0", 1.0, 4, out.clone());
    assert!(matches!(evolve(&c), Err(CliError::Config(_))));
    let c = EvolveConfig {
        steps: 0,
        ..evolve_config("identity", "1,0", 1.0, 4, out.clone())
    };
    assert!(matches!(evolve(&c), Err(CliError::Config(_))));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dim": 1, "re": [1.0], "im": [2.0]}"#).unwrap();
    let c = evolve_config(bad.to_str().unwrap(), "1,0", 1.0, 4, out.clone());
    assert!(matches!(evolve(&c), Err(CliError::Input { .. })));
    assert!(!out.exists());
}

#[test]
fn bloch_export_examples() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("z.txt");
    let out = dir.path().join("y.csv");
    let r = format!("{:?}", FRAC_1_SQRT_2);
    let mut text = format!("# q1,p1,q2,p2\n1,0,0,0\n\n{r},0,{r},0\n0,0,0,0\n");
    // the same ray under several phases
    let z = HilbertPoint::from_slice(&[C64::new(0.3, -0.4), C64::new(1.1, 0.2)]).unwrap();
    for k in 0..5 {
        let w = z.scale(C64::from_polar(1.0, 1.3 * k as f64));
        text.push_str(&format!("{:?},{:?},{:?},{:?}\n", w.q(0), w.p(0), w.q(1), w.p(1)));
    }
    fs::write(&input, text).unwrap();
    let summary = bloch_export(&input, &out).unwrap();
    assert_eq!(summary.written, 7);
    assert_eq!(summary.skipped, [5]);
    let (header, data) = rows(&out);
    assert_eq!(header, ["line", "y1", "y2", "y3"]);
    assert_eq!(data[0], [2.0, 0.0, 0.0, 0.5]);
    assert_eq!(data[1][0], 4.0);
    assert!((data[1][1] - 0.5).abs() < 1e-15 && data[1][2].abs() < 1e-15 && data[1][3].abs() < 1e-15);
    for row in &data {
        assert!((row[1] * row[1] + row[2] * row[2] + row[3] * row[3] - 0.25).abs() <= 1e-12);
    }
    for row in &data[3..] {
        for j in 1..4 {
            assert!((row[j] - data[2][j]).abs() <= 1e-12);
        }
    }
}

#[test]
fn bloch_export_reports_malformed_lines() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("z.txt");
    let out = dir.path().join("y.csv");
    fs::write(&input, "1,0,0,0\n1,0,0\n").unwrap();
    let err = bloch_export(&input, &out).unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    fs::write(&input, "1,0,0,0,0,0\n").unwrap();
    assert!(bloch_export(&input, &out)
        .unwrap_err()
        .to_string()
        .contains("expected 4 coordinates"));
    assert!(!out.exists());
}
