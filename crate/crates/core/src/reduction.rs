//! Reduction of the Kähler structure of `C^N_0` along the vertical fields
//! `Δ` (dilation) and `Γ` (phase), and for `N = 2` the two-stage projection
//! `R^4_0 → R^3_0 → S²` onto the Bloch sphere of radius ½.
//!
//! The sphere stage is written in the ambient `y`-chart of `R^3` with the
//! tangent projector `P = 1 - 4 y yᵀ`. Constants checked entrywise against
//! the pushforward of the rescaled tensors:
//!
//! * `π_* G̃ = P = Σ_a R_a ⊗ R_a`
//! * `π_* Λ̃ = ε_abc y_a ∂_b ∧ ∂_c`
//! * `g̃ = dy_a ⊗ dy_a`, `ω̃ = ε_abc y_a dy_b ∧ dy_c`, `J̃_π(v) = 2 y × v`
//!
//! where `u ∧ v = u ⊗ v - v ⊗ u` and all three are restricted to `T S²`.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::field::{fd, lie_derivative_at, ScaledTensor, TensorField};
use crate::hilbert::{
    canonical_structures, hamiltonian_form, hermitian_field, max_abs, omega_matrix, LinearVectorField, Tensor2,
    Variance,
};
use crate::matrix::HermitianMatrix;
use crate::point::HilbertPoint;
use crate::sampling::trial_rng;
use crate::tol;

/// Radius of the Bloch sphere for unit vectors (`y_γ = ½`).
pub const SPHERE_RADIUS: f64 = 0.5;

/// Dilation `Δ` and phase rotation `Γ = -J(Δ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalPair {
    pub delta: LinearVectorField,
    pub gamma: LinearVectorField,
}

impl VerticalPair {
    pub fn dim(&self) -> usize {
        self.delta.dim()
    }
}

pub fn vertical_fields(n: usize) -> Result<VerticalPair> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(VerticalPair {
        delta: LinearVectorField::new(DMatrix::identity(2 * n, 2 * n))?,
        gamma: LinearVectorField::new(omega_matrix(n))?,
    })
}

/// The connection 1-form `θ_γ = p_a dq_a - q_a dp_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connection1Form {
    n: usize,
}

impl Connection1Form {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { n })
    }

    /// Components `(p, -q)` at `x`.
    pub fn at(&self, z: &HilbertPoint) -> Result<DVector<f64>> {
        z.require_dim(self.n)?;
        Ok(omega_matrix(self.n) * z.real())
    }
}

/// `𝔖(X) = -i_X ω`, the symplectic duality from vectors to covectors.
///
/// With this sign `𝔖(Δ) = θ_γ` and `𝔖(X_H) = -df_H`.
pub fn symplectic_dual(v: &DVector<f64>) -> DVector<f64> {
    let n = v.len() / 2;
    omega_matrix(n) * v
}

/// Pauli fields `X_j = X_{σ_j}` and their Hamiltonian functions on `C^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliFrame {
    fields: [LinearVectorField; 3],
    forms: [DMatrix<f64>; 3],
}

pub fn pauli_frame(n: usize) -> Result<PauliFrame> {
    if n != 2 {
        return Err(Error::UnsupportedDimension { required: 2, found: n });
    }
    let s = |k| HermitianMatrix::pauli(k);
    Ok(PauliFrame {
        fields: [hermitian_field(&s(1)), hermitian_field(&s(2)), hermitian_field(&s(3))],
        forms: [
            hamiltonian_form(&s(1)),
            hamiltonian_form(&s(2)),
            hamiltonian_form(&s(3)),
        ],
    })
}

impl PauliFrame {
    /// `X_j` for `j ∈ {1, 2, 3}`.
    pub fn field(&self, j: usize) -> &LinearVectorField {
        &self.fields[j - 1]
    }

    /// `(y_1, y_2, y_3)` at `z`.
    pub fn y(&self, z: &HilbertPoint) -> Result<Vector3<f64>> {
        z.require_dim(2)?;
        let x = z.real();
        Ok(Vector3::from_fn(|j, _| 0.5 * x.dot(&(&self.forms[j] * x))))
    }

    /// `y_γ = ½ ‖z‖²`.
    pub fn y_gamma(&self, z: &HilbertPoint) -> Result<f64> {
        z.require_dim(2)?;
        Ok(0.5 * z.norm_sq())
    }

    /// Differential of `y` as a `3×4` matrix (rows `dy_j`).
    pub fn dy(&self, z: &HilbertPoint) -> Result<DMatrix<f64>> {
        z.require_dim(2)?;
        let x = z.real();
        let mut d = DMatrix::zeros(3, 4);
        for j in 0..3 {
            d.row_mut(j).copy_from(&(&self.forms[j] * x).transpose());
        }
        Ok(d)
    }

    /// Values `X_j(z)` as the columns of a `4×3` matrix.
    pub fn values(&self, z: &HilbertPoint) -> Result<DMatrix<f64>> {
        z.require_dim(2)?;
        let mut m = DMatrix::zeros(4, 3);
        for j in 0..3 {
            m.column_mut(j).copy_from(&self.fields[j].at(z));
        }
        Ok(m)
    }
}

/// Largest residual of `[X, Δ]` and `[X, Γ]` outside `span{Δ, Γ}`.
///
/// The brackets are linear fields `C x`; membership is tested as
/// `C ∈ span{1, Ω}` by orthogonal projection in the Frobenius inner
/// product, relative to `max(1, ‖C‖)`. For `N = 1` the span is the whole
/// tangent space and the residual is zero.
pub fn projectability_residual(x: &LinearVectorField, v: &VerticalPair) -> Result<f64> {
    if x.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            found: x.dim(),
        });
    }
    if x.dim() == 1 {
        return Ok(0.0);
    }
    let d = 2.0 * x.dim() as f64;
    let id = v.delta.matrix();
    let om = v.gamma.matrix();
    let residual = |c: &DMatrix<f64>| {
        let a = c.trace() / d;
        let b = om.dot(c) / d;
        let rest = c - id * a - om * b;
        rest.norm() / 1f64.max(c.norm())
    };
    let with_delta = x.bracket(&v.delta);
    let with_gamma = x.bracket(&v.gamma);
    Ok(residual(with_delta.matrix()).max(residual(with_gamma.matrix())))
}

pub fn is_projectable_field(x: &LinearVectorField, v: &VerticalPair) -> Result<bool> {
    Ok(projectability_residual(x, v)? <= tol::IDENTITY)
}

/// Number of deterministic sample points used by [`is_projectable_tensor`].
pub const PROJECTABILITY_SAMPLES: u64 = 8;

/// Largest `|L_Δ T|`, `|L_Γ T|` over deterministic sample points, each
/// relative to `max(1, |T(x)|)`.
pub fn tensor_projectability_defect(t: &dyn TensorField, v: &VerticalPair) -> Result<f64> {
    if t.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Contravariant.name(),
            found: t.variance().name(),
        });
    }
    let d = 2 * v.dim();
    let mut worst: f64 = 0.0;
    for trial in 0..PROJECTABILITY_SAMPLES {
        let mut rng = trial_rng(0, "projectable-tensor", trial);
        let x = crate::sampling::random_real_vector(d, &mut rng);
        let scale = 1f64.max(max_abs(&t.components(&x)));
        for field in [&v.delta, &v.gamma] {
            worst = worst.max(max_abs(&lie_derivative_at(field, t, &x)?) / scale);
        }
    }
    Ok(worst)
}

/// True when `L_Δ T = 0` and `L_Γ T = 0` (degree-zero homogeneity and phase
/// invariance) at the sample points.
pub fn is_projectable_tensor(t: &dyn TensorField, v: &VerticalPair) -> Result<bool> {
    Ok(tensor_projectability_defect(t, v)? <= tol::IDENTITY)
}

/// `G̃ = ‖z‖² G`, `Λ̃ = ‖z‖² Λ`, `J̃ = ‖z‖² J`.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaledTensors {
    pub metric: ScaledTensor,
    pub poisson: ScaledTensor,
    pub complex: ScaledTensor,
}

pub fn rescaled_tensors(n: usize) -> Result<RescaledTensors> {
    let c = canonical_structures(n)?;
    Ok(RescaledTensors {
        metric: ScaledTensor::new(c.inverse_metric),
        poisson: ScaledTensor::new(c.poisson),
        complex: ScaledTensor::new(c.complex),
    })
}

impl RescaledTensors {
    /// Values `(G̃, Λ̃, J̃)` at `z ≠ 0`.
    pub fn at(&self, z: &HilbertPoint) -> Result<(Tensor2, Tensor2, Tensor2)> {
        z.require_nonzero()?;
        z.require_dim(self.metric.dim() / 2)?;
        let x = z.real();
        let make = |t: &ScaledTensor| {
            Tensor2::new(t.components(x), t.base().variance(), t.base().symmetry()).expect("scaling keeps symmetry")
        };
        Ok((make(&self.metric), make(&self.poisson), make(&self.complex)))
    }
}

fn wedge(u: &DVector<f64>, v: &DVector<f64>) -> DMatrix<f64> {
    u * v.transpose() - v * u.transpose()
}

/// Frame expressions of the rescaled tensors for `N = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameDecomposition {
    /// `Δ ⊗ Δ + Σ_j X_j ⊗ X_j`, equal to `G̃`.
    pub metric: DMatrix<f64>,
    /// `½ ε_abc y_a X_b ∧ X_c + y_γ Γ ∧ Δ`, equal to `y_γ Λ̃`.
    pub scaled_poisson: DMatrix<f64>,
    /// `Δ ⊗ 𝔖(Δ) + Σ_k X_k ⊗ 𝔖(X_k)`, equal to `J̃`.
    pub complex: DMatrix<f64>,
}

pub fn frame_decomposition(frame: &PauliFrame, z: &HilbertPoint) -> Result<FrameDecomposition> {
    z.require_nonzero()?;
    let v = vertical_fields(2)?;
    let delta = v.delta.at(z);
    let gamma = v.gamma.at(z);
    let y = frame.y(z)?;
    let yg = frame.y_gamma(z)?;
    let xs: Vec<DVector<f64>> = (1..=3).map(|j| frame.field(j).at(z)).collect();

    let mut metric = &delta * delta.transpose();
    let mut complex = &delta * symplectic_dual(&delta).transpose();
    for x in &xs {
        metric += x * x.transpose();
        complex += x * symplectic_dual(x).transpose();
    }
    let mut scaled_poisson = wedge(&gamma, &delta) * yg;
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        scaled_poisson += wedge(&xs[b], &xs[c]) * y[a];
    }
    Ok(FrameDecomposition {
        metric,
        scaled_poisson,
        complex,
    })
}

/// A point of the Bloch sphere `|y| = ½`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereChart {
    y: Vector3<f64>,
}

impl SphereChart {
    /// Accepts `y` with `|y|² = ¼` to `1e-12`.
    pub fn new(y: Vector3<f64>) -> Result<Self> {
        let norm_sq = y.norm_squared();
        if (norm_sq - SPHERE_RADIUS * SPHERE_RADIUS).abs() > 1e-12 {
            return Err(Error::OffSphere { norm_sq });
        }
        Ok(Self { y })
    }

    /// Radial projection of a nonzero `y` onto the sphere.
    pub fn from_direction(y: Vector3<f64>) -> Result<Self> {
        let n = y.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            y: y * (SPHERE_RADIUS / n),
        })
    }

    pub fn y(&self) -> &Vector3<f64> {
        &self.y
    }

    /// Tangent projector `P = 1 - 4 y yᵀ`.
    pub fn tangent_projector(&self) -> Matrix3<f64> {
        Matrix3::identity() - self.y * self.y.transpose() * 4.0
    }

    /// `R_j = 2 e_j × y`, for `j ∈ {1, 2, 3}`.
    pub fn r_field(&self, j: usize) -> Vector3<f64> {
        r3_field(j, &self.y)
    }
}

/// `X̃_j = 2 ε_jab y_a ∂_b = 2 e_j × y` on `R^3_0`.
pub fn r3_field(j: usize, y: &Vector3<f64>) -> Vector3<f64> {
    let mut e = Vector3::zeros();
    e[j - 1] = 1.0;
    e.cross(y) * 2.0
}

/// The Bloch point `y(z) / ‖z‖²` of the ray through `z`.
pub fn project_point(z: &HilbertPoint) -> Result<SphereChart> {
    let r = z.require_nonzero()?;
    let y = pauli_frame(z.dim())?.y(z)?;
    Ok(SphereChart { y: y / (r * r) })
}

/// Differential of `π(x) = y(x) / ‖x‖²` as a `3×4` matrix.
pub fn projection_differential(z: &HilbertPoint) -> Result<DMatrix<f64>> {
    let r = z.require_nonzero()?;
    let frame = pauli_frame(z.dim())?;
    let r2 = r * r;
    let y = frame.y(z)?;
    let dy = frame.dy(z)?;
    let y_col = DVector::from_column_slice(y.as_slice());
    Ok(dy / r2 - y_col * z.real().transpose() * (2.0 / (r2 * r2)))
}

/// Images of the Pauli fields under both projection stages.
#[derive(Debug, Clone, PartialEq)]
pub struct PushedFields {
    /// `dy(X_j)` on `R^3_0`.
    pub ambient: [Vector3<f64>; 3],
    /// `dπ(X_j)` on `S²`.
    pub sphere: [Vector3<f64>; 3],
    /// `dπ(Δ)` and `dπ(Γ)`, both zero.
    pub vertical: [Vector3<f64>; 2],
}

pub fn pushforward_fields(frame: &PauliFrame, z: &HilbertPoint) -> Result<PushedFields> {
    z.require_nonzero()?;
    let dy = frame.dy(z)?;
    let dpi = projection_differential(z)?;
    let to3 = |v: DVector<f64>| Vector3::new(v[0], v[1], v[2]);
    let push = |m: &DMatrix<f64>, j: usize| to3(m * frame.field(j).at(z));
    let v = vertical_fields(2)?;
    Ok(PushedFields {
        ambient: [push(&dy, 1), push(&dy, 2), push(&dy, 3)],
        sphere: [push(&dpi, 1), push(&dpi, 2), push(&dpi, 3)],
        vertical: [to3(&dpi * v.delta.at(z)), to3(&dpi * v.gamma.at(z))],
    })
}

/// `π_* G̃` and `π_* Λ̃` at `z`, computed as `dπ T dπᵀ`.
pub fn projected_tensors(z: &HilbertPoint) -> Result<(Matrix3<f64>, Matrix3<f64>)> {
    let dpi = projection_differential(z)?;
    let (g, l, _) = rescaled_tensors(2)?.at(z)?;
    let to3 = |m: DMatrix<f64>| Matrix3::from_fn(|i, j| m[(i, j)]);
    Ok((
        to3(&dpi * g.matrix() * dpi.transpose()),
        to3(&dpi * l.matrix() * dpi.transpose()),
    ))
}

/// `E_bc = ε_abc y_a`, so that `E v = v × y`.
pub fn epsilon_matrix(y: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, y[2], -y[1], -y[2], 0.0, y[0], y[1], -y[0], 0.0)
}

/// The Kähler triple of the Bloch sphere in the ambient chart.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SphereKaehler;

pub fn sphere_kaehler() -> SphereKaehler {
    SphereKaehler
}

impl SphereKaehler {
    /// `π_* G̃ = P`.
    pub fn contravariant_metric(&self, p: &SphereChart) -> Matrix3<f64> {
        p.tangent_projector()
    }

    /// `π_* Λ̃ = ε_abc y_a ∂_b ∧ ∂_c`.
    pub fn contravariant_poisson(&self, p: &SphereChart) -> Matrix3<f64> {
        epsilon_matrix(p.y()) * 2.0
    }

    /// Matrix of `g̃` on `T S²`.
    pub fn metric_matrix(&self, p: &SphereChart) -> Matrix3<f64> {
        p.tangent_projector()
    }

    /// Matrix of `ω̃` on `T S²`.
    pub fn symplectic_matrix(&self, p: &SphereChart) -> Matrix3<f64> {
        epsilon_matrix(p.y()) * 2.0
    }

    /// Matrix of `J̃_π`, `v ↦ 2 y × v`.
    pub fn complex_matrix(&self, p: &SphereChart) -> Matrix3<f64> {
        p.y().cross_matrix() * 2.0
    }

    pub fn metric(&self, p: &SphereChart, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        u.dot(&(self.metric_matrix(p) * v))
    }

    pub fn symplectic(&self, p: &SphereChart, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        2.0 * p.y().dot(&u.cross(v))
    }

    pub fn complex(&self, p: &SphereChart, v: &Vector3<f64>) -> Vector3<f64> {
        p.y().cross(v) * 2.0
    }
}

/// Residuals of `g(Ju, v) = ω(u, v)`, `g(Ju, Jv) = g(u, v)`,
/// `ω(Ju, Jv) = ω(u, v)` and `J²u = -u` for tangent `u, v`.
pub fn sphere_compatibility(p: &SphereChart, u: &Vector3<f64>, v: &Vector3<f64>) -> [f64; 4] {
    let k = sphere_kaehler();
    let ju = k.complex(p, u);
    let jv = k.complex(p, v);
    [
        (k.metric(p, &ju, v) - k.symplectic(p, u, v)).abs(),
        (k.metric(p, &ju, &jv) - k.metric(p, u, v)).abs(),
        (k.symplectic(p, &ju, &jv) - k.symplectic(p, u, v)).abs(),
        (k.complex(p, &ju) + u).amax(),
    ]
}

/// `dπ^*ω̃` at `x ∈ R^4_0` as a 4×4 matrix.
pub fn pulled_back_sphere_form(x: &DVector<f64>) -> Result<DMatrix<f64>> {
    let z = HilbertPoint::from_real(x.clone())?;
    let p = project_point(&z)?;
    let dpi = projection_differential(&z)?;
    let w = sphere_kaehler().symplectic_matrix(&p);
    let w = DMatrix::from_fn(3, 3, |i, j| w[(i, j)]);
    Ok(dpi.transpose() * w * dpi)
}

/// Finite-difference `dω̃`, evaluated through the pullback to `R^4_0`.
pub fn sphere_closedness_defect(z: &HilbertPoint) -> Result<f64> {
    z.require_nonzero()?;
    pauli_frame(z.dim())?;
    Ok(fd::closedness_defect(
        |x| pulled_back_sphere_form(x).expect("nonzero near a nonzero point"),
        z.real(),
    ))
}

/// Largest component of the Jacobiator of the bracket defined by a
/// contravariant antisymmetric field `Λ`, on coordinate functions:
/// `Σ_cyc(ijk) Λ_il ∂_l Λ_jk`.
pub fn jacobiator_max(t: &dyn TensorField, at: &DVector<f64>) -> Result<f64> {
    if t.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Contravariant.name(),
            found: t.variance().name(),
        });
    }
    let d = t.dim();
    let lam = t.components(at);
    let partials: Vec<DMatrix<f64>> = (0..d)
        .map(|l| {
            let mut e = DVector::zeros(d);
            e[l] = 1.0;
            t.directional_derivative(at, &e)
        })
        .collect();
    let term = |i: usize, j: usize, k: usize| (0..d).map(|l| lam[(i, l)] * partials[l][(j, k)]).sum::<f64>();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                worst = worst.max((term(i, j, k) + term(j, k, i) + term(k, i, j)).abs());
            }
        }
    }
    Ok(worst)
}
