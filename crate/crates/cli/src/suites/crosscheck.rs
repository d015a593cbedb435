//! `N = 2`: the unfolded orbit triple against the reduced sphere triple.

use kaehler::sampling::{trial_rng, unit_point};
use kaehler::unfolding::N2Crosscheck;
use kaehler::{fubini_study_compare, n2_crosscheck, pauli_frame, HilbertPoint, Result};

use crate::checks::{Check, Ctx, Measure, Rule, Tol};

pub const CHECKS: &[Check] = &[
    Check {
        id: "unfolding_fields",
        identity: "φ = 2(y_1σ_3 - y_3σ_1), ψ = 2(y_0σ_2 + y_2σ_0), μ_*(-X_2) = W_φ, μ_*(2(y_2Δ - y_3X_1 + y_1X_3)) = W_ψ, JΓ = Δ, μ_*(JX_k) = 2(y_kσ_0 + y_0σ_k)",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: unfolding_fields,
    },
    Check {
        id: "literal_overlap",
        identity: "|⟨z|e⟩| = 2|y_2| for e = (z_2, -z_1)",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: literal_overlap,
    },
    Check {
        id: "metric_values",
        identity: "g(a, a) = g(b, b) = 1, g(b, a) = 0 for a = -X_2, b = 2(y_2Δ - y_3X_1 + y_1X_3), ‖z‖ = 1",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: metric_values,
    },
    Check {
        id: "symplectic_value",
        identity: "ω(b, a) = 1",
        rule: Rule::Relative,
        tol: Tol::Config,
        run: symplectic_value,
    },
    Check {
        id: "complex_structure",
        identity: "J̃(W_φ) = -W_ψ for e = (z̄_2, -z̄_1), and up to the tangent projection for e = (z_2, -z_1)",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: complex_structure,
    },
    Check {
        id: "fubini_study",
        identity: "the orbit triple equals the Bloch-sphere triple under ∂/∂y_k ↔ σ_k",
        rule: Rule::Absolute,
        tol: Tol::Config,
        run: fubini_study,
    },
];

fn each(
    ctx: &Ctx,
    stream: &str,
    mut f: impl FnMut(&mut Measure, &HilbertPoint, &N2Crosscheck) -> Result<()>,
) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = unit_point(2, &mut trial_rng(ctx.seed, stream, t));
        f(&mut m, &z, &n2_crosscheck(&z)?)?;
    }
    Ok(m)
}

fn unfolding_fields(ctx: &Ctx) -> Result<Measure> {
    each(ctx, "crosscheck/unfolding_fields", |m, _, c| {
        for r in [
            c.phi_closed_form,
            c.psi_closed_form,
            c.unfold_phi,
            c.unfold_psi,
            c.j_gamma,
            c.j_pauli,
        ] {
            m.residual(r, 1.0);
        }
        Ok(())
    })
}

fn literal_overlap(ctx: &Ctx) -> Result<Measure> {
    let frame = pauli_frame(2)?;
    each(ctx, "crosscheck/literal_overlap", |m, z, c| {
        m.scalar(c.literal_overlap, 2.0 * frame.y(z)?[1].abs());
        Ok(())
    })
}

fn metric_values(ctx: &Ctx) -> Result<Measure> {
    each(ctx, "crosscheck/metric_values", |m, _, c| {
        for (v, target) in c.metric_values.iter().zip([1.0, 1.0, 0.0]) {
            m.scalar(*v, target);
        }
        Ok(())
    })
}

fn symplectic_value(ctx: &Ctx) -> Result<Measure> {
    each(ctx, "crosscheck/symplectic_value", |m, _, c| {
        m.scalar(c.symplectic_value, 1.0);
        Ok(())
    })
}

fn complex_structure(ctx: &Ctx) -> Result<Measure> {
    each(ctx, "crosscheck/complex_structure", |m, _, c| {
        m.residual(c.j_tilde, 1.0);
        m.residual(c.j_tilde_literal, 1.0);
        Ok(())
    })
}

fn fubini_study(ctx: &Ctx) -> Result<Measure> {
    let mut m = Measure::over(ctx.trials);
    for t in 0..ctx.trials {
        let z = unit_point(2, &mut trial_rng(ctx.seed, "crosscheck/fubini_study", t));
        m.residual(fubini_study_compare(&z, 1, ctx.seed.wrapping_add(t))?.max(), 1.0);
    }
    Ok(m)
}
