//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line with
//! its measured errors, elapsed time and budget; the test fails if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use kaehler::field::fd;
use kaehler::hilbert::{max_abs, unitary_defects};
use kaehler::reduction::{frame_decomposition, sphere_closedness_defect, sphere_compatibility};
use kaehler::sampling::{
    gaussian, haar_unitary, random_hermitian, random_point, random_real_matrix, trial_rng, unit_point,
};
use kaehler::tol::relative_error;
use kaehler::unfolding::{pushforward_blocks, stabilizer_element, stabilizer_test};
use kaehler::*;
use nalgebra::{DMatrix, Vector3};

const SEED: u64 = 20_240_601;

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn run(id: usize, name: &'static str, budget_s: f64, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = body();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs_f64(budget_s);
    Outcome {
        id,
        name,
        pass: pass && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

/// `|lhs - rhs|` scaled by `max(1, |lhs|, |rhs|)`, maximized entrywise.
fn rel_matrix(lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) -> f64 {
    lhs.iter()
        .zip(rhs.iter())
        .fold(0.0, |acc, (a, b)| acc.max(relative_error(*a, *b)))
}

fn kaehler_compatibility() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for n in [1, 2, 4, 8] {
        let c = canonical_structures(n).unwrap();
        let (g, w, j) = (c.metric.matrix(), c.symplectic.matrix(), c.complex.matrix());
        worst = worst.max((j.transpose() * g - w).amax());
        worst = worst.max((j.transpose() * g * j - g).amax());
        worst = worst.max((j.transpose() * w * j - w).amax());
        worst = worst.max((j * j + DMatrix::identity(2 * n, 2 * n)).amax());
    }
    (worst <= 1e-12, format!("max abs err {worst:.3e} (tol 1e-12)"))
}

fn unitary_characterization() -> (bool, String) {
    let mut exact: f64 = 0.0;
    let mut numeric: f64 = 0.0;
    let mut rejected = 0;
    let mut oracle_agrees = 0;
    for n in [2, 3, 5, 8] {
        let c = canonical_structures(n).unwrap();
        for trial in 0..100 {
            let mut rng = trial_rng(SEED, &format!("c2-herm-{n}"), trial);
            let w = hermitian_field(&random_hermitian(n, &mut rng));
            let (lg, lw, lj) = unitary_defects(&w);
            exact = exact.max(lg).max(lw).max(lj);
            let x = random_point(n, &mut rng);
            for t in [&c.metric, &c.symplectic, &c.complex] {
                numeric = numeric.max(max_abs(&fd::lie_derivative(&w, t, x.real())));
            }
        }
    }
    let c = canonical_structures(3).unwrap();
    for trial in 0..100 {
        let mut rng = trial_rng(SEED, "c2-generic", trial);
        let w = LinearVectorField::new(random_real_matrix(6, 6, &mut rng)).unwrap();
        if check_unitary_conditions(&w).none() && !w.is_hermitian() {
            rejected += 1;
        }
        let x = random_point(3, &mut rng);
        let fd_nonzero = [&c.metric, &c.symplectic, &c.complex]
            .iter()
            .map(|t| max_abs(&fd::lie_derivative(&w, *t, x.real())) > 1e-6)
            .filter(|b| *b)
            .count();
        if fd_nonzero >= 2 {
            oracle_agrees += 1;
        }
    }
    let pass = exact <= 1e-12 && numeric <= 1e-6 && rejected == 100 && oracle_agrees == 100;
    (
        pass,
        format!(
            "exact {exact:.3e} (tol 1e-12), finite-difference {numeric:.3e} (tol 1e-6), non-block rejected {rejected}/100, oracle agrees {oracle_agrees}/100"
        ),
    )
}

fn bracket_identities_check() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for n in [2, 3, 5, 8] {
        for trial in 0..200 {
            let mut rng = trial_rng(SEED, &format!("c3-{n}"), trial);
            let h1 = random_hermitian(n, &mut rng);
            let h2 = random_hermitian(n, &mut rng);
            let z = random_point(n, &mut rng);
            worst = worst.max(bracket_identities(&h1, &h2, &z).unwrap().max_relative_error());
        }
    }
    (worst <= 1e-10, format!("max rel err {worst:.3e} (tol 1e-10)"))
}

fn reduction_pipeline() -> (bool, String) {
    let v = vertical_fields(2).unwrap();
    let c = canonical_structures(2).unwrap();
    let r = rescaled_tensors(2).unwrap();
    let dichotomy = !is_projectable_tensor(&c.inverse_metric, &v).unwrap()
        && !is_projectable_tensor(&c.poisson, &v).unwrap()
        && is_projectable_tensor(&r.metric, &v).unwrap()
        && is_projectable_tensor(&r.poisson, &v).unwrap();

    let frame = pauli_frame(2).unwrap();
    let mut decomposition: f64 = 0.0;
    for trial in 0..100 {
        let mut rng = trial_rng(SEED, "c4-decomp", trial);
        let z = random_point(2, &mut rng);
        let (g, l, _) = r.at(&z).unwrap();
        let d = frame_decomposition(&frame, &z).unwrap();
        let yg = frame.y_gamma(&z).unwrap();
        decomposition = decomposition
            .max(rel_matrix(&d.metric, g.matrix()))
            .max(rel_matrix(&d.scaled_poisson, &(l.matrix() * yg)));
    }

    let mut gauge: f64 = 0.0;
    for trial in 0..50 {
        let mut rng = trial_rng(SEED, "c4-gauge", trial);
        let z = random_point(2, &mut rng);
        let alpha = 2.0 * PI * gaussian(&mut rng);
        let s = gaussian(&mut rng).exp();
        let moved = z.scale(C64::from_polar(s, alpha));
        let a = project_point(&z).unwrap();
        let b = project_point(&moved).unwrap();
        gauge = gauge.max((a.y() - b.y()).amax());
    }

    let mut compat: f64 = 0.0;
    for trial in 0..100 {
        let mut rng = trial_rng(SEED, "c4-tangent", trial);
        let g = |rng: &mut _| Vector3::new(gaussian(rng), gaussian(rng), gaussian(rng));
        let p = SphereChart::from_direction(g(&mut rng)).unwrap();
        let proj = p.tangent_projector();
        let (u, w) = (proj * g(&mut rng), proj * g(&mut rng));
        compat = compat.max(sphere_compatibility(&p, &u, &w).into_iter().fold(0.0, f64::max));
    }

    let mut closed: f64 = 0.0;
    for trial in 0..10 {
        let mut rng = trial_rng(SEED, "c4-closed", trial);
        closed = closed.max(sphere_closedness_defect(&random_point(2, &mut rng)).unwrap());
    }
    let pass = dichotomy && decomposition <= 1e-10 && gauge <= 1e-12 && compat <= 1e-10 && closed <= 1e-6;
    (
        pass,
        format!(
            "dichotomy {dichotomy}, decomposition {decomposition:.3e} (tol 1e-10), gauge {gauge:.3e} (tol 1e-12), compatibility {compat:.3e} (tol 1e-10), d of sphere form {closed:.3e} (tol 1e-6)"
        ),
    )
}

fn unfolding_identities() -> (bool, String) {
    let (mut comm, mut gram, mut duality, mut blocks, mut jsq) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in [2, 3, 5] {
        for trial in 0..50 {
            let mut rng = trial_rng(SEED, &format!("c5-{n}"), trial);
            let z = random_point(n, &mut rng);
            let r2 = z.norm_sq();
            let r4 = r2 * r2;
            let scale = 1f64.max(r4);
            let frame = build_orbit_frame(&z, 0).unwrap();
            let k = n - 1;
            let id = DMatrix::<f64>::identity(k, k);
            comm = comm.max(frame.commutator_residual() / scale);
            gram = gram.max(rel_matrix(&frame.gram(), &(DMatrix::identity(2 * k, 2 * k) * r2)));

            let d = frame.duality_values();
            duality = duality
                .max(rel_matrix(&d.phi_psi, &(&id * (2.0 * r4))))
                .max(rel_matrix(&d.psi_phi, &(&id * (2.0 * r4))))
                .max(rel_matrix(&d.phi_phi, &(&id * 0.0)))
                .max(rel_matrix(&d.psi_psi, &(&id * 0.0)));

            let (g, l) = pushforward_blocks(&frame).unwrap();
            blocks = blocks
                .max(rel_matrix(&g.phi_block(), &(&id * r4)))
                .max(rel_matrix(&g.psi_block(), &(&id * r4)))
                .max(rel_matrix(&g.cross_block(), &(&id * 0.0)))
                .max(rel_matrix(&l.phi_block(), &(&id * 0.0)))
                .max(rel_matrix(&l.psi_block(), &(&id * 0.0)))
                .max(rel_matrix(&l.cross_block(), &(&id * -r4)));

            let orbit = orbit_kaehler(&z).unwrap();
            let j = orbit.complex_matrix();
            jsq = jsq.max(rel_matrix(&(j * j), &(DMatrix::identity(2 * k, 2 * k) * -r4)));
        }
    }
    let pass = comm <= 1e-12 && gram <= 1e-12 && duality <= 1e-10 && blocks <= 1e-10 && jsq <= 1e-10;
    (
        pass,
        format!(
            "commutators {comm:.3e} (tol 1e-12), Gram {gram:.3e} (tol 1e-12), duality vs 2|z|^4 {duality:.3e} (tol 1e-10), pushforward blocks {blocks:.3e} (tol 1e-10), J^2 {jsq:.3e} (tol 1e-10)"
        ),
    )
}

fn n2_crosscheck_values() -> (bool, String) {
    let (mut metric, mut symplectic, mut jt, mut rest) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for trial in 0..100 {
        let mut rng = trial_rng(SEED, "c6", trial);
        let z = unit_point(2, &mut rng);
        let c = n2_crosscheck(&z).unwrap();
        metric = metric.max(c.metric_error());
        symplectic = symplectic.max(c.symplectic_error());
        jt = jt.max(c.j_tilde).max(c.j_tilde_literal);
        rest = rest.max(c.max_residual());
    }
    let pass = metric <= 1e-10 && symplectic <= 1e-10 && jt <= 1e-10 && rest <= 1e-10;
    (
        pass,
        format!(
            "metric values {metric:.3e}, symplectic value {symplectic:.3e}, J(W_phi) + W_psi {jt:.3e}, other identities {rest:.3e} (tol 1e-10)"
        ),
    )
}

fn fubini_study() -> (bool, String) {
    let mut worst = fubini_study_compare(&HilbertPoint::basis(2, 0).unwrap(), 1, SEED)
        .unwrap()
        .metric;
    for trial in 0..100 {
        let mut rng = trial_rng(SEED, "c7", trial);
        let z = unit_point(2, &mut rng);
        worst = worst.max(fubini_study_compare(&z, 1, SEED + trial).unwrap().metric);
    }
    (
        worst <= 1e-8,
        format!("max metric deviation {worst:.3e} over 101 pairs (tol 1e-8)"),
    )
}

fn flow_conservation() -> (bool, String) {
    let mut drift: f64 = 0.0;
    for n in [2, 4] {
        let mut rng = trial_rng(SEED, "c8", n as u64);
        let h = random_hermitian(n, &mut rng);
        let z0 = random_point(n, &mut rng);
        let r0 = z0.norm_sq();
        for k in 0..1000 {
            let t = 10.0 * k as f64 / 999.0;
            let z = schrodinger_flow(&h, &z0, t).unwrap();
            drift = drift.max((z.norm_sq() - r0).abs() / r0);
        }
    }
    let frame = pauli_frame(2).unwrap();
    let mut rng = trial_rng(SEED, "c8-bloch", 0);
    let z0 = random_point(2, &mut rng);
    let y0 = frame.y(&z0).unwrap();
    let rho0 = y0[0].hypot(y0[1]);
    let mut circle: f64 = 0.0;
    for k in 0..1000 {
        let t = 10.0 * k as f64 / 999.0;
        let y = frame
            .y(&schrodinger_flow(&HermitianMatrix::pauli(3), &z0, t).unwrap())
            .unwrap();
        circle = circle.max((y[2] - y0[2]).abs()).max((y[0].hypot(y[1]) - rho0).abs());
    }
    let pass = drift <= 1e-10 && circle <= 1e-10;
    (
        pass,
        format!("norm drift {drift:.3e}, Bloch circle {circle:.3e} (tol 1e-10)"),
    )
}

fn equivariance() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let mut rng = trial_rng(SEED, "c9", trial);
        let n = 2 + (trial as usize % 4);
        let z = random_point(n, &mut rng);
        let u = haar_unitary(n, &mut rng);
        let lhs = momentum_map(&HilbertPoint::from_complex(&(&u * z.to_complex())).unwrap()).unwrap();
        let rhs = momentum_map(&z).unwrap().value().conjugate_by(&u);
        worst = worst.max(lhs.value().max_abs_diff(&rhs) / z.norm_sq().max(1.0));
    }
    let mut both = 0;
    for trial in 0..20 {
        let mut rng = trial_rng(SEED, "c9-stab", trial);
        let z = random_point(3, &mut rng);
        let fixing = stabilizer_test(&stabilizer_element(&z, trial + 1).unwrap(), &z).unwrap();
        let generic = stabilizer_test(&haar_unitary(3, &mut rng), &z).unwrap();
        if fixing == (true, true) && generic == (false, false) {
            both += 1;
        }
    }
    let pass = worst <= 1e-12 && both == 20;
    (
        pass,
        format!("equivariance {worst:.3e} (tol 1e-12), stabilizer biconditional {both}/20"),
    )
}

#[test]
fn acceptance() {
    let outcomes = [
        run(1, "Kähler compatibility", 1.0, kaehler_compatibility),
        run(2, "unitary characterization", 5.0, unitary_characterization),
        run(3, "bracket identities", 5.0, bracket_identities_check),
        run(4, "reduction pipeline", 10.0, reduction_pipeline),
        run(5, "unfolding identities", 10.0, unfolding_identities),
        run(6, "N=2 cross-check", 5.0, n2_crosscheck_values),
        run(7, "Fubini-Study equivalence", 5.0, fubini_study),
        run(8, "flow conservation", 5.0, flow_conservation),
        run(9, "equivariance", 5.0, equivariance),
    ];
    for o in &outcomes {
        println!(
            "criterion {} [{}] {}: {} ({:.3}s of {:.0}s)",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs_f64()
        );
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
