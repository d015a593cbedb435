//! Reduction of `R^4_0` to the Bloch sphere along dilations and phases.

use std::f64::consts::PI;

use kaehler::reduction::{
    frame_decomposition, jacobiator_max, projectability_residual, projected_tensors, r3_field,
    sphere_closedness_defect, sphere_compatibility, symplectic_dual, tensor_projectability_defect,
};
use kaehler::sampling::{gaussian, random_hermitian, random_point, random_real_matrix, random_real_vector, trial_rng};
use kaehler::tol::IDENTITY;
use kaehler::{
    canonical_structures, hamiltonian_function, hermitian_field, pauli_frame, project_point, pushforward_fields,
    rescaled_tensors, sphere_kaehler, vertical_fields, Connection1Form, HermitianMatrix, HilbertPoint,
    LinearVectorField, Result, SphereChart, C64,
};
use nalgebra::{DMatrix, DVector, Vector3};

use super::{m3, v3};
use crate::checks::{Check, Ctx, Measure, Rule, Tol, FD_TOL};

pub const CHECKS: &[Check] = &[
    Check {
        id: "vertical_fields",
        identity: "Δ(z) = z, Γ = X_1, [Δ, Γ] = 0",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: vertical,
    },
    Check {
        id: "connection_form",
        identity: "θ_γ(Γ) = ‖z‖², θ_γ(Δ) = 0, 𝔖(Δ) = θ_γ",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: connection_form,
    },
    Check {
        id: "pauli_functions",
        identity: "y_j = f_{σ_j}, |y| = y_γ = f_1",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: pauli_functions,
    },
    Check {
        id: "frame_orthogonality",
        identity: "g(Δ, X_j) = g(X_j, X_k) = 0 for j ≠ k, |Δ|² = |X_j|² = 2y_γ",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: frame_orthogonality,
    },
    Check {
        id: "frame_commutes",
        identity: "[X_j, Δ] = [X_j, Γ] = 0",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: frame_commutes,
    },
    Check {
        id: "projectable_fields",
        identity: "X_j, Δ, Γ and every X_H are projectable: [X, Δ], [X, Γ] ∈ span{Δ, Γ}",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: projectable_fields,
    },
    Check {
        id: "projectability_dichotomy",
        identity: "G, Λ and generic linear fields are not projectable; G̃ = ‖z‖²G and Λ̃ = ‖z‖²Λ are",
        rule: Rule::Count,
        tol: Tol::Config,
        run: projectability_dichotomy,
    },
    Check {
        id: "decompositions",
        identity: "G̃ = Δ⊗Δ + Σ X_j⊗X_j, y_γ Λ̃ = ½ε_abc y_a X_b∧X_c + y_γ Γ∧Δ, J̃ = Δ⊗𝔖(Δ) + Σ X_j⊗𝔖(X_j)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: decompositions,
    },
    Check {
        id: "symplectic_duality",
        identity: "𝔖(X_k) = -dy_k and 𝔖(Γ) = -dy_γ",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: symplectic_duality,
    },
    Check {
        id: "gauge_invariance",
        identity: "π(e^{iα} s z) = π(z) and |π(z)|² = ¼",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: gauge_invariance,
    },
    Check {
        id: "pushforward_fields",
        identity: "dy(X_j) = 2 e_j × y on R^3_0, π_*X_j = R_j = 2 e_j × π(z) on S², π_*Δ = π_*Γ = 0",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: pushforward,
    },
    Check {
        id: "projected_tensors",
        identity: "π_*G̃ = 1 - 4yyᵀ = Σ R_j⊗R_j and π_*Λ̃ = 2E with E_bc = ε_abc y_a",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: projected,
    },
    Check {
        id: "sphere_inverse",
        identity: "g̃ π_*G̃ = P and ω̃ π_*Λ̃ = -P on the tangent plane, P = 1 - 4yyᵀ",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: sphere_inverse,
    },
    Check {
        id: "sphere_compatibility",
        identity: "g̃(J̃u, v) = ω̃(u, v), g̃(J̃u, J̃v) = g̃(u, v), ω̃(J̃u, J̃v) = ω̃(u, v) on S²",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: compatibility,
    },
    Check {
        id: "sphere_j_squared",
        identity: "J̃∘J̃ = -1 on the tangent plane of S²",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: sphere_j_squared,
    },
    Check {
        id: "sphere_closedness",
        identity: "dω̃ = 0, through the pullback to R^4_0",
        rule: Rule::Absolute,
        tol: FD_TOL,
        run: sphere_closedness,
    },
    Check {
        id: "jacobi_failure",
        identity: "Λ̃ = ‖z‖²Λ violates the Jacobi identity on R^4_0 while Λ satisfies it",
        rule: Rule::Count,
        tol: Tol::Config,
        run: jacobi_failure,
    },
];

fn point(ctx: &Ctx, stream: &str, t: u64) -> HilbertPoint {
    random_point(2, &mut trial_rng(ctx.seed, stream, t))
}

fn vertical(ctx: &Ctx) -> Result<Measure> {
    let v = vertical_fields(2)?;
    let mut m = Measure::over(ctx.trials);
    m.residual(v.delta.bracket(&v.gamma).matrix().amax(), 1.0);
    m.residual(
        (v.gamma.matrix() - hermitian_field(&HermitianMatrix::identity(2)).matrix()).amax(),
        1.0,
    );
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/vertical_fields", t);
        m.residual((v.delta.at(&z) - z.real()).amax(), 1.0);
    }
    Ok(m)
}

fn connection_form(ctx: &Ctx) -> Result<Measure> {
    let v = vertical_fields(2)?;
    let theta = Connection1Form::new(2)?;
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/connection_form", t);
        let th = theta.at(&z)?;
        m.scalar(th.dot(&v.gamma.at(&z)), z.norm_sq());
        m.scalar(th.dot(&v.delta.at(&z)), 0.0);
        m.vector(&symplectic_dual(&v.delta.at(&z)), &th);
    }
    Ok(m)
}

fn pauli_functions(ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/pauli_functions", t);
        let y = f.y(&z)?;
        for j in 1..=3 {
            m.scalar(y[j - 1], hamiltonian_function(&HermitianMatrix::pauli(j), &z)?);
        }
        m.scalar(y.norm(), f.y_gamma(&z)?);
        m.scalar(f.y_gamma(&z)?, hamiltonian_function(&HermitianMatrix::identity(2), &z)?);
    }
    Ok(m)
}

fn frame_orthogonality(ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let v = vertical_fields(2)?;
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/frame_orthogonality", t);
        let mut cols = DMatrix::zeros(4, 4);
        cols.column_mut(0).copy_from(&v.delta.at(&z));
        for j in 1..=3 {
            cols.column_mut(j).copy_from(&f.field(j).at(&z));
        }
        let gram = cols.transpose() * &cols;
        m.matrix(&gram, &(DMatrix::identity(4, 4) * (2.0 * f.y_gamma(&z)?)));
    }
    Ok(m)
}

fn frame_commutes(_ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let v = vertical_fields(2)?;
    let mut m = Measure::over(1);
    for j in 1..=3 {
        m.residual(f.field(j).bracket(&v.delta).matrix().amax(), 1.0);
        m.residual(f.field(j).bracket(&v.gamma).matrix().amax(), 1.0);
    }
    Ok(m)
}

fn projectable_fields(ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let v = vertical_fields(2)?;
    let mut m = Measure::over(ctx.trials + 5);
    for x in [f.field(1), f.field(2), f.field(3), &v.delta, &v.gamma] {
        m.residual(projectability_residual(x, &v)?, 1.0);
    }
    for t in 0..ctx.trials {
        let h = random_hermitian(2, &mut trial_rng(ctx.seed, "reduction/projectable_fields", t));
        m.residual(projectability_residual(&hermitian_field(&h), &v)?, 1.0);
    }
    Ok(m)
}

fn projectability_dichotomy(ctx: &Ctx) -> Result<Measure> {
    let v = vertical_fields(2)?;
    let c = canonical_structures(2)?;
    let r = rescaled_tensors(2)?;
    let mut failures = 0;
    let not_projectable = |d: f64| d > IDENTITY;
    failures += u64::from(!not_projectable(tensor_projectability_defect(&c.inverse_metric, &v)?));
    failures += u64::from(!not_projectable(tensor_projectability_defect(&c.poisson, &v)?));
    failures += u64::from(not_projectable(tensor_projectability_defect(&r.metric, &v)?));
    failures += u64::from(not_projectable(tensor_projectability_defect(&r.poisson, &v)?));
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "reduction/projectability_dichotomy", t);
        let w = LinearVectorField::new(random_real_matrix(4, 4, &mut rng))?;
        failures += u64::from(projectability_residual(&w, &v)? <= 1e-3);
    }
    let mut m = Measure::over(ctx.trials + 4);
    m.failures(failures);
    Ok(m)
}

fn decompositions(ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let r = rescaled_tensors(2)?;
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/decompositions", t);
        let (g, l, j) = r.at(&z)?;
        let d = frame_decomposition(&f, &z)?;
        m.matrix(&d.metric, g.matrix());
        m.matrix(&d.scaled_poisson, &(l.matrix() * f.y_gamma(&z)?));
        m.matrix(&d.complex, j.matrix());
    }
    Ok(m)
}

fn symplectic_duality(ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let v = vertical_fields(2)?;
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/symplectic_duality", t);
        let dy = f.dy(&z)?;
        for k in 1..=3 {
            let row: DVector<f64> = -dy.row(k - 1).transpose();
            m.vector(&symplectic_dual(&f.field(k).at(&z)), &row);
        }
        m.vector(&symplectic_dual(&v.gamma.at(&z)), &-z.real());
    }
    Ok(m)
}

fn gauge_invariance(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "reduction/gauge_invariance", t);
        let z = random_point(2, &mut rng);
        let alpha = 2.0 * PI * gaussian(&mut rng);
        let s = gaussian(&mut rng).exp();
        let a = project_point(&z)?;
        let b = project_point(&z.scale(C64::from_polar(s, alpha)))?;
        m.residual((a.y() - b.y()).amax(), 1.0);
        m.residual((a.y().norm_squared() - 0.25).abs(), 1.0);
    }
    Ok(m)
}

fn pushforward(ctx: &Ctx) -> Result<Measure> {
    let f = pauli_frame(2)?;
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/pushforward_fields", t);
        let pushed = pushforward_fields(&f, &z)?;
        let y = f.y(&z)?;
        let p = project_point(&z)?;
        let r2 = z.norm_sq();
        for j in 1..=3 {
            m.residual((pushed.ambient[j - 1] - r3_field(j, &y)).amax(), r2);
            m.residual((pushed.sphere[j - 1] - p.r_field(j)).amax(), 1.0);
        }
        for w in &pushed.vertical {
            m.residual(w.amax(), 1.0);
        }
    }
    Ok(m)
}

fn projected(ctx: &Ctx) -> Result<Measure> {
    let k = sphere_kaehler();
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = point(ctx, "reduction/projected_tensors", t);
        let p = project_point(&z)?;
        let (g, l) = projected_tensors(&z)?;
        let y = p.y();
        m.matrix(&m3(&g), &m3(&(nalgebra::Matrix3::identity() - y * y.transpose() * 4.0)));
        m.matrix(
            &m3(&g),
            &m3(&(1..=3).map(|j| p.r_field(j) * p.r_field(j).transpose()).sum()),
        );
        m.matrix(&m3(&g), &m3(&k.contravariant_metric(&p)));
        m.matrix(&m3(&l), &m3(&(kaehler::reduction::epsilon_matrix(y) * 2.0)));
    }
    Ok(m)
}

fn random_sphere_point(ctx: &Ctx, stream: &str, t: u64) -> Result<(SphereChart, Vector3<f64>, Vector3<f64>)> {
    let mut rng = trial_rng(ctx.seed, stream, t);
    let g = random_real_vector(9, &mut rng);
    let p = SphereChart::from_direction(Vector3::new(g[0], g[1], g[2]))?;
    let proj = p.tangent_projector();
    Ok((
        p,
        proj * Vector3::new(g[3], g[4], g[5]),
        proj * Vector3::new(g[6], g[7], g[8]),
    ))
}

fn sphere_inverse(ctx: &Ctx) -> Result<Measure> {
    let k = sphere_kaehler();
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (p, _, _) = random_sphere_point(ctx, "reduction/sphere_inverse", t)?;
        let proj = m3(&p.tangent_projector());
        m.matrix(&m3(&(k.metric_matrix(&p) * k.contravariant_metric(&p))), &proj);
        m.matrix(&m3(&(k.symplectic_matrix(&p) * k.contravariant_poisson(&p))), &-proj);
    }
    Ok(m)
}

fn compatibility(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (p, u, v) = random_sphere_point(ctx, "reduction/sphere_compatibility", t)?;
        let r = sphere_compatibility(&p, &u, &v);
        m.residual(r[0].max(r[1]).max(r[2]), u.norm() * v.norm());
    }
    Ok(m)
}

fn sphere_j_squared(ctx: &Ctx) -> Result<Measure> {
    let k = sphere_kaehler();
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let (p, u, _) = random_sphere_point(ctx, "reduction/sphere_j_squared", t)?;
        let jju = k.complex(&p, &k.complex(&p, &u));
        m.residual((jju + u).amax(), u.amax());
        m.residual(v3(&k.complex(&p, p.y())).amax(), 1.0);
    }
    Ok(m)
}

fn sphere_closedness(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.fd_trials());
    for t in 0..ctx.fd_trials() {
        let z = point(ctx, "reduction/sphere_closedness", t);
        m.residual(sphere_closedness_defect(&z)?, 1.0);
    }
    Ok(m)
}

fn jacobi_failure(ctx: &Ctx) -> Result<Measure> {
    let r = rescaled_tensors(2)?;
    let c = canonical_structures(2)?;
    let mut failures = 0;
    for t in 0..ctx.trials {
        let x = point(ctx, "reduction/jacobi_failure", t);
        failures += u64::from(jacobiator_max(&r.poisson, x.real())? <= 1e-6);
        failures += u64::from(jacobiator_max(&c.poisson, x.real())? > IDENTITY);
    }
    let mut m = Measure::over(ctx.trials);
    m.failures(failures);
    Ok(m)
}
