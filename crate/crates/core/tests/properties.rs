use kaehler::hilbert::{hermitian_of_field, unitary_defects};
use kaehler::reduction::sphere_compatibility;
use kaehler::unfolding::{equivariance_residual, invariant};
use kaehler::*;
use nalgebra::{DMatrix, DVector, Vector3};
use proptest::prelude::*;

fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix> {
    prop::collection::vec(-3.0..3.0f64, 2 * n * n).prop_map(move |v| {
        let m = DMatrix::from_fn(n, n, |i, j| C64::new(v[i * n + j], v[n * n + i * n + j]));
        HermitianMatrix::symmetrize(&m)
    })
}

fn point(n: usize) -> impl Strategy<Value = HilbertPoint> {
    prop::collection::vec(-2.0..2.0f64, 2 * n)
        .prop_filter("away from the origin", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| HilbertPoint::from_real(DVector::from_vec(v)).unwrap())
}

proptest! {
    #[test]
    fn hermitian_fields_are_unitary(h in hermitian(3)) {
        let w = hermitian_field(&h);
        let (lg, lw, lj) = unitary_defects(&w);
        prop_assert!(lg.max(lw).max(lj) <= 1e-12);
        prop_assert_eq!(hermitian_of_field(&w).unwrap(), h);
    }

    #[test]
    fn hat_round_trip(h in hermitian(4)) {
        prop_assert_eq!(h.hat().unhat(), h);
    }

    #[test]
    fn flow_preserves_norm(h in hermitian(3), z in point(3), t in -20.0..20.0f64) {
        let zt = schrodinger_flow(&h, &z, t).unwrap();
        prop_assert!((zt.norm_sq() - z.norm_sq()).abs() <= 1e-11 * z.norm_sq());
    }

    #[test]
    fn flow_composes(h in hermitian(2), z in point(2), t1 in -5.0..5.0f64, t2 in -5.0..5.0f64) {
        let once = schrodinger_flow(&h, &z, t1 + t2).unwrap();
        let twice = schrodinger_flow(&h, &schrodinger_flow(&h, &z, t1).unwrap(), t2).unwrap();
        prop_assert!((once.real() - twice.real()).amax() <= 1e-10 * z.norm().max(1.0));
    }

    #[test]
    fn bloch_point_is_gauge_invariant(z in point(2), alpha in 0.0..6.3f64, s in 0.05..20.0f64) {
        let a = project_point(&z).unwrap();
        let b = project_point(&z.scale(C64::from_polar(s, alpha))).unwrap();
        prop_assert!((a.y() - b.y()).amax() <= 1e-12);
        prop_assert!((a.y().norm_squared() - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn sphere_triple_is_compatible(d in prop::array::uniform3(-1.0..1.0f64), u in prop::array::uniform3(-1.0..1.0f64), v in prop::array::uniform3(-1.0..1.0f64)) {
        prop_assume!(Vector3::from(d).norm() > 1e-3);
        let p = SphereChart::from_direction(Vector3::from(d)).unwrap();
        let proj = p.tangent_projector();
        let (u, v) = (proj * Vector3::from(u), proj * Vector3::from(v));
        prop_assert!(sphere_compatibility(&p, &u, &v).iter().all(|r| *r <= 1e-12));
    }

    #[test]
    fn momentum_map_is_rank_one(z in point(4)) {
        let mu = momentum_map(&z).unwrap();
        let m = mu.value().matrix();
        let sq = m * m;
        let scaled = m * C64::from(z.norm_sq());
        let resid = (sq - scaled).iter().map(|c| c.norm()).fold(0.0, f64::max);
        prop_assert!(resid <=1e-12 * z.norm_sq().powi(2).max(1.0));
        prop_assert!((mu.value().trace() - z.norm_sq()).abs() <= 1e-12 * z.norm_sq().max(1.0));
    }

    #[test]
    fn pushed_hermitian_field_is_orbit_generator(h in hermitian(3), z in point(3)) {
        let scale = z.norm_sq().max(1.0) * h.max_abs().max(1.0);
        prop_assert!(equivariance_residual(&h, &z).unwrap() <= 1e-12 * scale);
    }

    #[test]
    fn orbit_frame_relations(z in point(4), seed in 0u64..50) {
        let f = build_orbit_frame(&z, seed).unwrap();
        let r2 = z.norm_sq();
        prop_assert!(f.commutator_residual() <= 1e-12 * r2.powi(2).max(1.0));
        prop_assert!((f.gram() - DMatrix::identity(6, 6) * r2).amax() <= 1e-12 * r2.max(1.0));
    }

    #[test]
    fn orbit_triple_matches_frame_free_forms(z in point(3), h1 in hermitian(3), h2 in hermitian(3)) {
        let k = orbit_kaehler(&z).unwrap();
        let (x, y) = (k.frame().tangent_projection(&h1), k.frame().tangent_projection(&h2));
        let s = x.max_abs().max(1.0) * y.max_abs().max(1.0);
        prop_assert!((k.metric(&x, &y) - invariant::metric(&z, &x, &y)).abs() <= 1e-10 * s);
        prop_assert!((k.symplectic(&x, &y) - invariant::symplectic(&z, &x, &y)).abs() <= 1e-10 * s);
        let jx = k.complex(&x);
        prop_assert!(jx.max_abs_diff(&invariant::complex(&z, &x).unwrap()) <= 1e-10 * x.max_abs().max(1.0) * z.norm_sq().max(1.0));
    }
}
