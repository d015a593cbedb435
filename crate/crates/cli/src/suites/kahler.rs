//! `(g, ω, J)` on `R^{2N}`, Hermitian fields, and the Schrödinger flow.

use std::collections::HashMap;

use kaehler::field::fd;
use kaehler::hilbert::{matrix_family_rank, unitary_algebra_basis, unitary_defects};
use kaehler::sampling::{random_hermitian, random_point, random_real_matrix, random_real_vector, trial_rng};
use kaehler::tol::FD_STEP;
use kaehler::{
    bracket_identities, canonical_structures, check_unitary_conditions, hamiltonian_function, hermitian_field,
    lie_derivative, schrodinger_flow, LinearVectorField, Result,
};
use nalgebra::DMatrix;
use rand::Rng;

use crate::checks::{Check, Ctx, Measure, Rule, Tol, FD_TOL};

pub const CHECKS: &[Check] = &[
    Check {
        id: "j_squared",
        identity: "J∘J = -1",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: j_squared,
    },
    Check {
        id: "compat_metric",
        identity: "g(Ju, Jv) = g(u, v)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: compat_metric,
    },
    Check {
        id: "compat_symplectic",
        identity: "ω(Ju, Jv) = ω(u, v)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: compat_symplectic,
    },
    Check {
        id: "compat_omega",
        identity: "ω(u, v) = g(Ju, v)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: compat_omega,
    },
    Check {
        id: "inverse_pairs",
        identity: "G = g⁻¹ and Λ = -ω⁻¹",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: inverse_pairs,
    },
    Check {
        id: "hermitian_killing",
        identity: "L_X g = L_X ω = L_X J = 0 for X = X_H",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: hermitian_killing,
    },
    Check {
        id: "lie_fd_oracle",
        identity: "closed-form Lie derivatives of g, ω, J along a linear field equal d/ds of the flow pullback",
        rule: Rule::Relative,
        tol: FD_TOL,
        run: lie_fd_oracle,
    },
    Check {
        id: "non_block_rejected",
        identity: "a generic linear field preserves none of g, ω, J",
        rule: Rule::Count,
        tol: Tol::Config,
        run: non_block_rejected,
    },
    Check {
        id: "bracket_omega",
        identity: "ω(X_A, X_B) = f_{[A,B]_{u*}} with [A,B]_{u*} = -i[A,B]",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: bracket_omega,
    },
    Check {
        id: "bracket_g",
        identity: "g(X_A, X_B) = f_{AB+BA}",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: bracket_g,
    },
    Check {
        id: "lie_bracket",
        identity: "[X_A, X_B] = -X_{[A,B]_{u*}}",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: lie_bracket,
    },
    Check {
        id: "u_n_dimension",
        identity: "the Hermitian fields form a real Lie algebra of dimension N²",
        rule: Rule::Count,
        tol: Tol::Config,
        run: u_n_dimension,
    },
    Check {
        id: "flow_norm",
        identity: "‖exp(-iHt) z‖ = ‖z‖",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: flow_norm,
    },
    Check {
        id: "flow_composition",
        identity: "Φ_{t+s} = Φ_s ∘ Φ_t",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: flow_composition,
    },
    Check {
        id: "flow_generator",
        identity: "d/dt exp(-iHt) z at t = 0 equals X_H(z)",
        rule: Rule::Relative,
        tol: FD_TOL,
        run: flow_generator,
    },
    Check {
        id: "energy_conservation",
        identity: "f_H(exp(-iHt) z) = f_H(z)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: energy_conservation,
    },
];

fn j_squared(ctx: &Ctx) -> Result<Measure> {
    let c = canonical_structures(ctx.dim)?;
    let j = c.complex.matrix();
    let mut m = Measure::over(1);
    m.matrix(&(j * j), &-DMatrix::identity(2 * ctx.dim, 2 * ctx.dim));
    Ok(m)
}

fn pairwise(
    ctx: &Ctx,
    stream: &str,
    f: impl Fn(&nalgebra::DVector<f64>, &nalgebra::DVector<f64>) -> (f64, f64),
) -> Measure {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, stream, t);
        let u = random_real_vector(2 * ctx.dim, &mut rng);
        let v = random_real_vector(2 * ctx.dim, &mut rng);
        let (lhs, rhs) = f(&u, &v);
        m.scalar(lhs, rhs);
    }
    m
}

fn compat_metric(ctx: &Ctx) -> Result<Measure> {
    let c = canonical_structures(ctx.dim)?;
    Ok(pairwise(ctx, "kahler/compat_metric", |u, v| {
        (
            c.metric.eval(&c.complex.apply(u), &c.complex.apply(v)),
            c.metric.eval(u, v),
        )
    }))
}

fn compat_symplectic(ctx: &Ctx) -> Result<Measure> {
    let c = canonical_structures(ctx.dim)?;
    Ok(pairwise(ctx, "kahler/compat_symplectic", |u, v| {
        (
            c.symplectic.eval(&c.complex.apply(u), &c.complex.apply(v)),
            c.symplectic.eval(u, v),
        )
    }))
}

fn compat_omega(ctx: &Ctx) -> Result<Measure> {
    let c = canonical_structures(ctx.dim)?;
    Ok(pairwise(ctx, "kahler/compat_omega", |u, v| {
        (c.symplectic.eval(u, v), c.metric.eval(&c.complex.apply(u), v))
    }))
}

fn inverse_pairs(ctx: &Ctx) -> Result<Measure> {
    let c = canonical_structures(ctx.dim)?;
    let id = DMatrix::identity(2 * ctx.dim, 2 * ctx.dim);
    let mut m = Measure::over(1);
    m.matrix(&(c.inverse_metric.matrix() * c.metric.matrix()), &id);
    m.matrix(&(c.poisson.matrix() * c.symplectic.matrix()), &-id);
    Ok(m)
}

fn hermitian_killing(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "kahler/hermitian_killing", t);
        let (lg, lw, lj) = unitary_defects(&hermitian_field(&random_hermitian(ctx.dim, &mut rng)));
        m.residual(lg.max(lw).max(lj), 1.0);
    }
    Ok(m)
}

fn lie_fd_oracle(ctx: &Ctx) -> Result<Measure> {
    let c = canonical_structures(ctx.dim)?;
    let d = 2 * ctx.dim;
    let mut m = Measure::over(ctx.fd_trials());
    for t in 0..ctx.fd_trials() {
        let mut rng = trial_rng(ctx.seed, "kahler/lie_fd_oracle", t);
        let w = LinearVectorField::new(random_real_matrix(d, d, &mut rng))?;
        let x = random_real_vector(d, &mut rng);
        for tensor in [&c.metric, &c.symplectic, &c.complex] {
            let exact = lie_derivative(&w, tensor)?;
            m.matrix(&fd::lie_derivative(&w, tensor, &x), exact.matrix());
        }
    }
    Ok(m)
}

fn non_block_rejected(ctx: &Ctx) -> Result<Measure> {
    let d = 2 * ctx.dim;
    let mut m = Measure::over(ctx.trials);
    let mut failures = 0;
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "kahler/non_block_rejected", t);
        let w = LinearVectorField::new(random_real_matrix(d, d, &mut rng))?;
        if !check_unitary_conditions(&w).none() || w.is_hermitian() {
            failures += 1;
        }
    }
    m.failures(failures);
    Ok(m)
}

fn bracket_values(
    ctx: &Ctx,
    stream: &str,
    pick: fn(&kaehler::hilbert::BracketValues) -> (f64, f64),
) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, stream, t);
        let a = random_hermitian(ctx.dim, &mut rng);
        let b = random_hermitian(ctx.dim, &mut rng);
        let z = random_point(ctx.dim, &mut rng);
        let (lhs, rhs) = pick(&bracket_identities(&a, &b, &z)?);
        m.scalar(lhs, rhs);
    }
    Ok(m)
}

fn bracket_omega(ctx: &Ctx) -> Result<Measure> {
    bracket_values(ctx, "kahler/bracket", |v| (v.lhs_omega, v.rhs_omega))
}

fn bracket_g(ctx: &Ctx) -> Result<Measure> {
    bracket_values(ctx, "kahler/bracket", |v| (v.lhs_g, v.rhs_g))
}

fn lie_bracket(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "kahler/lie_bracket", t);
        let a = random_hermitian(ctx.dim, &mut rng);
        let b = random_hermitian(ctx.dim, &mut rng);
        let lhs = hermitian_field(&a).bracket(&hermitian_field(&b));
        let rhs = hermitian_field(&a.dual_bracket(&b).scale(-1.0));
        m.matrix(lhs.matrix(), rhs.matrix());
    }
    Ok(m)
}

/// Independence through the Gram matrix of the basis fields, accumulated
/// over their nonzero entries; the dense rank is compared as well for small
/// `N`.
fn u_n_dimension(ctx: &Ctx) -> Result<Measure> {
    let n = ctx.dim;
    let fields = unitary_algebra_basis(n);
    let mut by_entry: HashMap<usize, Vec<(usize, f64)>> = HashMap::new();
    for (k, f) in fields.iter().enumerate() {
        for (idx, v) in f.matrix().iter().enumerate() {
            if *v != 0.0 {
                by_entry.entry(idx).or_default().push((k, *v));
            }
        }
    }
    let mut diag = vec![0.0f64; fields.len()];
    let mut off: f64 = 0.0;
    let mut cross: HashMap<(usize, usize), f64> = HashMap::new();
    for entries in by_entry.values() {
        for &(k, a) in entries {
            for &(l, b) in entries {
                if k == l {
                    diag[k] += a * b;
                } else {
                    *cross.entry((k, l)).or_default() += a * b;
                }
            }
        }
    }
    for v in cross.values() {
        off = off.max(v.abs());
    }
    let smallest = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let gram_dim = if off <= 1e-12 * smallest {
        diag.iter().filter(|d| **d > 0.0).count()
    } else {
        matrix_family_rank(&fields)
    };
    let mut failures = gram_dim.abs_diff(n * n) as u64;
    if n <= 8 {
        failures += matrix_family_rank(&fields).abs_diff(n * n) as u64;
    }
    let mut m = Measure::over(1);
    m.failures(failures);
    Ok(m)
}

fn flow_norm(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "kahler/flow_norm", t);
        let h = random_hermitian(ctx.dim, &mut rng);
        let z = random_point(ctx.dim, &mut rng);
        let time = rng.random_range(-10.0..10.0);
        m.scalar(schrodinger_flow(&h, &z, time)?.norm_sq(), z.norm_sq());
    }
    Ok(m)
}

fn flow_composition(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "kahler/flow_composition", t);
        let h = random_hermitian(ctx.dim, &mut rng);
        let z = random_point(ctx.dim, &mut rng);
        let (t1, t2) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let once = schrodinger_flow(&h, &z, t1 + t2)?;
        let twice = schrodinger_flow(&h, &schrodinger_flow(&h, &z, t1)?, t2)?;
        m.vector(once.real(), twice.real());
    }
    Ok(m)
}

fn flow_generator(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.fd_trials());
    for t in 0..ctx.fd_trials() {
        let mut rng = trial_rng(ctx.seed, "kahler/flow_generator", t);
        let h = random_hermitian(ctx.dim, &mut rng);
        let z = random_point(ctx.dim, &mut rng);
        let column = |s: f64| {
            let zs = schrodinger_flow(&h, &z, s).expect("dimensions match");
            DMatrix::from_column_slice(zs.real().len(), 1, zs.real().as_slice())
        };
        let numeric = fd::richardson_derivative(column, FD_STEP);
        let x = hermitian_field(&h).at(&z);
        m.matrix(&numeric, &DMatrix::from_column_slice(x.len(), 1, x.as_slice()));
    }
    Ok(m)
}

fn energy_conservation(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let mut rng = trial_rng(ctx.seed, "kahler/energy_conservation", t);
        let h = random_hermitian(ctx.dim, &mut rng);
        let z = random_point(ctx.dim, &mut rng);
        let time = rng.random_range(-10.0..10.0);
        let zt = schrodinger_flow(&h, &z, time)?;
        m.scalar(hamiltonian_function(&h, &zt)?, hamiltonian_function(&h, &z)?);
    }
    Ok(m)
}
