//! The momentum map onto `u*_N`, the orbit frame, and the orbit triple.

use kaehler::field::fd;
use kaehler::sampling::{haar_unitary, random_hermitian, random_point, random_real_vector, trial_rng};
use kaehler::tol::FD_STEP;
use kaehler::unfolding::{
    equivariance_residual, invariant, momentum_differential, orbit_closedness_along, orbit_generator,
    orbit_kaehler_with_frame, pushforward_blocks, scalar_product, stabilizer_element, stabilizer_test,
};
use kaehler::{
    build_orbit_frame, generalized_pauli_basis, hamiltonian_function, momentum_map, orbit_kaehler, pairing_and_bracket,
    AntiHermitianMatrix, HermitianMatrix, HilbertPoint, Result,
};
use nalgebra::DMatrix;
use rand::Rng;

use crate::checks::{Check, Ctx, Measure, Rule, Tol, FD_TOL};

pub const CHECKS: &[Check] = &[
    Check {
        id: "basis_orthonormal",
        identity: "the generalized Pauli basis is orthonormal for ⟨A, B⟩ = Tr(AB)/2",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: basis_orthonormal,
    },
    Check {
        id: "pairing_bracket",
        identity: "A(B̂) = ⟨A, B⟩ with B̂ = -iB, and [Â, B̂] is the hat of [A,B]_{u*} = -i[A,B]",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: pairing_bracket,
    },
    Check {
        id: "momentum_map",
        identity: "⟨μ(z), A⟩ = f_A(z) with μ(z) = |z⟩⟨z|",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: momentum_pairing,
    },
    Check {
        id: "momentum_differential",
        identity: "dμ_z(u) = |u⟩⟨z| + |z⟩⟨u| equals d/ds μ(z + su)",
        rule: Rule::Relative,
        tol: FD_TOL,
        run: momentum_differential_fd,
    },
    Check {
        id: "equivariance",
        identity: "μ(Uz) = U μ(z) U†",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: equivariance,
    },
    Check {
        id: "orbit_generator",
        identity: "μ_* X_H = [H, μ(z)]_{u*}",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: pushed_generator,
    },
    Check {
        id: "stabilizer",
        identity: "U fixes μ(z) iff [U, μ(z)] = 0, on stabilizer and Haar-random unitaries",
        rule: Rule::Count,
        tol: Tol::Config,
        run: stabilizer,
    },
    Check {
        id: "frame_commutators",
        identity: "[φ_a, μ]_{u*} = ‖z‖² ψ_a and [ψ_a, μ]_{u*} = -‖z‖² φ_a",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_commutators,
    },
    Check {
        id: "frame_gram",
        identity: "⟨φ_a, φ_b⟩ = ⟨ψ_a, ψ_b⟩ = ‖z‖² δ_ab, ⟨φ_a, ψ_b⟩ = 0",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_gram,
    },
    Check {
        id: "frame_normal",
        identity: "⟨φ_a, μ⟩ = ⟨ψ_a, μ⟩ = ⟨φ_a, 1⟩ = ⟨ψ_a, 1⟩ = 0",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_normal,
    },
    Check {
        id: "frame_duality",
        identity: "φ̂_a([ψ_b, μ]) = ψ̂_a([φ_b, μ]) = 2‖z‖⁴ δ_ab, φ̂_a([φ_b, μ]) = ψ̂_a([ψ_b, μ]) = 0",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_duality,
    },
    Check {
        id: "frame_duality_trace",
        identity: "under ⟨·,·⟩: φ̂_a([ψ_b, μ]) = -‖z‖⁴ δ_ab, ψ̂_a([φ_b, μ]) = ‖z‖⁴ δ_ab, diagonal pairs 0",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_duality_trace,
    },
    Check {
        id: "frame_completeness",
        identity: "every orbit generator [A, μ]_{u*} lies in span{φ_a, ψ_a}",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_completeness,
    },
    Check {
        id: "pushforward_blocks",
        identity: "μ_*G = ‖z‖⁴ on φ̂φ̂ and ψ̂ψ̂, 0 across; μ_*Λ(φ̂_a, ψ̂_b) = -‖z‖⁴ δ_ab, 0 on φ̂φ̂ and ψ̂ψ̂",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: blocks,
    },
    Check {
        id: "orbit_metric",
        identity: "g̃(X, Y) = Tr(XY)/(2‖z‖²) on the orbit",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: orbit_metric,
    },
    Check {
        id: "orbit_symplectic",
        identity: "ω̃(X, Y) = Im⟨P⊥Xz, P⊥Yz⟩/‖z‖⁴ on the orbit",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: orbit_symplectic,
    },
    Check {
        id: "orbit_complex",
        identity: "J̃(X) = -[X, μ]_{u*} on the orbit",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: orbit_complex,
    },
    Check {
        id: "orbit_j_squared",
        identity: "J̃∘J̃ = -‖z‖⁴ on the orbit",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: orbit_j_squared,
    },
    Check {
        id: "orbit_compatibility",
        identity: "g̃(J̃X, J̃Y) = ‖z‖⁴ g̃(X, Y), ω̃(J̃X, J̃Y) = ‖z‖⁴ ω̃(X, Y), ‖z‖² ω̃(X, Y) = g̃(J̃X, Y)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: orbit_compatibility,
    },
    Check {
        id: "gauge_independence",
        identity: "the orbit triple does not depend on the choice of complement {e_a}",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: gauge_independence,
    },
    Check {
        id: "orbit_closedness",
        identity: "dω̃ = 0, through the pullback by x ↦ μ(x/‖x‖) along random direction triples",
        rule: Rule::Absolute,
        tol: FD_TOL,
        run: orbit_closedness,
    },
];

fn point(ctx: &Ctx, stream: &str, t: u64) -> HilbertPoint {
    random_point(ctx.dim, &mut trial_rng(ctx.seed, stream, t))
}

fn basis_orthonormal(ctx: &Ctx) -> Result<Measure> {
    let basis = generalized_pauli_basis(ctx.dim);
    let k = basis.len();
    if ctx.dim <= 8 {
        let mut m = Measure::over((k * k) as u64);
        let gram = DMatrix::from_fn(k, k, |i, j| scalar_product(&basis[i], &basis[j]));
        m.matrix(&gram, &DMatrix::identity(k, k));
        return Ok(m);
    }
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/basis_orthonormal", t);
        let i = rng.random_range(0..k);
        let j = if t % 2 == 0 { i } else { rng.random_range(0..k) };
        m.scalar(scalar_product(&basis[i], &basis[j]), if i == j { 1.0 } else { 0.0 });
    }
    Ok(m)
}

fn pairing_bracket(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/pairing_bracket", t);
        let a = random_hermitian(ctx.dim, &mut rng);
        let b = random_hermitian(ctx.dim, &mut rng);
        let (ha, hb) = (a.hat(), b.hat());
        let pb = pairing_and_bracket(&a, &b, &hb)?;
        m.scalar(pb.pair, pb.scal);
        let commutator = AntiHermitianMatrix::new(ha.matrix() * hb.matrix() - hb.matrix() * ha.matrix())?;
        m.hermitian(&pb.brak, &commutator.unhat());
    }
    Ok(m)
}

fn momentum_pairing(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/momentum_map", t);
        let z = random_point(ctx.dim, &mut rng);
        let a = random_hermitian(ctx.dim, &mut rng);
        m.scalar(
            scalar_product(momentum_map(&z)?.value(), &a),
            hamiltonian_function(&a, &z)?,
        );
    }
    Ok(m)
}

fn stacked(h: &HermitianMatrix) -> DMatrix<f64> {
    let n = h.dim();
    let mut out = DMatrix::zeros(n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(&h.re());
    out.view_mut((0, n), (n, n)).copy_from(&h.im());
    out
}

fn momentum_differential_fd(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.fd_trials());
    for t in 0..ctx.fd_trials() {
        let mut rng = trial_rng(ctx.seed, "unfolding/momentum_differential", t);
        let z = random_point(ctx.dim, &mut rng);
        let u = random_real_vector(2 * ctx.dim, &mut rng);
        let moved = |s: f64| {
            let p = HilbertPoint::from_real(z.real() + &u * s).expect("even length");
            stacked(momentum_map(&p).expect("nonzero near z").value())
        };
        m.matrix(
            &fd::richardson_derivative(moved, FD_STEP),
            &stacked(&momentum_differential(&z, &u)?),
        );
    }
    Ok(m)
}

fn equivariance(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/equivariance", t);
        let z = random_point(ctx.dim, &mut rng);
        let u = haar_unitary(ctx.dim, &mut rng);
        let moved = momentum_map(&HilbertPoint::from_complex(&(&u * z.to_complex()))?)?;
        m.hermitian(moved.value(), &momentum_map(&z)?.value().conjugate_by(&u));
    }
    Ok(m)
}

fn pushed_generator(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/orbit_generator", t);
        let z = random_point(ctx.dim, &mut rng);
        let h = random_hermitian(ctx.dim, &mut rng);
        let scale = orbit_generator(&h, momentum_map(&z)?.value()).max_abs();
        m.residual(equivariance_residual(&h, &z)?, scale);
    }
    Ok(m)
}

fn stabilizer(ctx: &Ctx) -> Result<Measure> {
    let mut failures = 0;
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/stabilizer", t);
        let z = random_point(ctx.dim, &mut rng);
        let fixing = stabilizer_test(&stabilizer_element(&z, t + 1)?, &z)?;
        failures += u64::from(fixing != (true, true));
        if ctx.dim > 1 {
            let generic = stabilizer_test(&haar_unitary(ctx.dim, &mut rng), &z)?;
            failures += u64::from(generic != (false, false));
        }
    }
    let mut m = Measure::over(ctx.trials);
    m.failures(failures);
    Ok(m)
}

fn frame_commutators(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "unfolding/frame_commutators", t);
        let frame = build_orbit_frame(&z, 0)?;
        m.residual(frame.commutator_residual(), z.norm_sq().powi(2));
    }
    Ok(m)
}

fn frame_gram(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "unfolding/frame_gram", t);
        let frame = build_orbit_frame(&z, 0)?;
        let k = frame.len();
        m.matrix(&frame.gram(), &(DMatrix::identity(k, k) * z.norm_sq()));
    }
    Ok(m)
}

fn frame_normal(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "unfolding/frame_normal", t);
        let (with_mu, with_one) = build_orbit_frame(&z, 0)?.normal_overlap();
        let r2 = z.norm_sq();
        m.residual(with_mu, r2 * r2);
        m.residual(with_one, r2);
    }
    Ok(m)
}

fn duality_against(ctx: &Ctx, stream: &str, targets: [f64; 4]) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, stream, t);
        let frame = build_orbit_frame(&z, 0)?;
        let r4 = z.norm_sq().powi(2);
        let id = DMatrix::<f64>::identity(frame.phis().len(), frame.phis().len());
        let d = frame.duality_values();
        m.matrix(&d.phi_psi, &(&id * (targets[0] * r4)));
        m.matrix(&d.phi_phi, &(&id * (targets[1] * r4)));
        m.matrix(&d.psi_psi, &(&id * (targets[2] * r4)));
        m.matrix(&d.psi_phi, &(&id * (targets[3] * r4)));
    }
    Ok(m)
}

fn frame_duality(ctx: &Ctx) -> Result<Measure> {
    duality_against(ctx, "unfolding/frame_duality", [2.0, 0.0, 0.0, 2.0])
}

fn frame_duality_trace(ctx: &Ctx) -> Result<Measure> {
    duality_against(ctx, "unfolding/frame_duality", [-1.0, 0.0, 0.0, 1.0])
}

fn frame_completeness(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "unfolding/frame_completeness", t);
        let z = random_point(ctx.dim, &mut rng);
        let a = random_hermitian(ctx.dim, &mut rng);
        let frame = build_orbit_frame(&z, 0)?;
        let w = orbit_generator(&a, momentum_map(&z)?.value());
        m.hermitian(&frame.tangent_projection(&w), &w);
    }
    Ok(m)
}

fn blocks(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "unfolding/pushforward_blocks", t);
        let frame = build_orbit_frame(&z, 0)?;
        let r4 = z.norm_sq().powi(2);
        let id = DMatrix::<f64>::identity(frame.phis().len(), frame.phis().len());
        let (g, l) = pushforward_blocks(&frame)?;
        m.matrix(&g.phi_block(), &(&id * r4));
        m.matrix(&g.psi_block(), &(&id * r4));
        m.matrix(&g.cross_block(), &(&id * 0.0));
        m.matrix(&l.phi_block(), &(&id * 0.0));
        m.matrix(&l.psi_block(), &(&id * 0.0));
        m.matrix(&l.cross_block(), &(&id * -r4));
    }
    Ok(m)
}

/// A point with two random tangent vectors of the orbit through `μ(z)`.
fn tangent_pair(ctx: &Ctx, stream: &str, t: u64) -> Result<(HilbertPoint, HermitianMatrix, HermitianMatrix)> {
    let mut rng = trial_rng(ctx.seed, stream, t);
    let z = random_point(ctx.dim, &mut rng);
    let frame = build_orbit_frame(&z, 0)?;
    let x = frame.tangent_projection(&random_hermitian(ctx.dim, &mut rng));
    let y = frame.tangent_projection(&random_hermitian(ctx.dim, &mut rng));
    Ok((z, x, y))
}

fn orbit_metric(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (z, x, y) = tangent_pair(ctx, "unfolding/orbit_metric", t)?;
        m.scalar(orbit_kaehler(&z)?.metric(&x, &y), invariant::metric(&z, &x, &y));
    }
    Ok(m)
}

fn orbit_symplectic(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (z, x, y) = tangent_pair(ctx, "unfolding/orbit_symplectic", t)?;
        m.scalar(orbit_kaehler(&z)?.symplectic(&x, &y), invariant::symplectic(&z, &x, &y));
    }
    Ok(m)
}

fn orbit_complex(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (z, x, _) = tangent_pair(ctx, "unfolding/orbit_complex", t)?;
        m.hermitian(&orbit_kaehler(&z)?.complex(&x), &invariant::complex(&z, &x)?);
    }
    Ok(m)
}

fn orbit_j_squared(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "unfolding/orbit_j_squared", t);
        let k = orbit_kaehler(&z)?;
        let j = k.complex_matrix();
        let d = j.nrows();
        m.matrix(&(j * j), &(DMatrix::identity(d, d) * -z.norm_sq().powi(2)));
    }
    Ok(m)
}

fn orbit_compatibility(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (z, x, y) = tangent_pair(ctx, "unfolding/orbit_compatibility", t)?;
        let k = orbit_kaehler(&z)?;
        let (r2, jx, jy) = (z.norm_sq(), k.complex(&x), k.complex(&y));
        m.scalar(k.metric(&jx, &jy), r2 * r2 * k.metric(&x, &y));
        m.scalar(k.symplectic(&jx, &jy), r2 * r2 * k.symplectic(&x, &y));
        m.scalar(r2 * k.symplectic(&x, &y), k.metric(&jx, &y));
    }
    Ok(m)
}

fn gauge_independence(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (z, x, y) = tangent_pair(ctx, "unfolding/gauge_independence", t)?;
        let a = orbit_kaehler(&z)?;
        let b = orbit_kaehler_with_frame(build_orbit_frame(&z, t + 1)?)?;
        m.scalar(a.metric(&x, &y), b.metric(&x, &y));
        m.scalar(a.symplectic(&x, &y), b.symplectic(&x, &y));
        m.hermitian(&a.complex(&x), &b.complex(&x));
    }
    Ok(m)
}

fn orbit_closedness(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.fd_trials());
    for t in 0..ctx.fd_trials() {
        let mut rng = trial_rng(ctx.seed, "unfolding/orbit_closedness", t);
        let z = random_point(ctx.dim, &mut rng);
        let d = 2 * ctx.dim;
        let (u, v, w) = (
            random_real_vector(d, &mut rng),
            random_real_vector(d, &mut rng),
            random_real_vector(d, &mut rng),
        );
        m.residual(orbit_closedness_along(&z, &u, &v, &w)?, 1.0);
    }
    Ok(m)
}
