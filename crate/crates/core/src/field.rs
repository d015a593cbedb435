//! Position-dependent rank-2 tensor fields and Lie derivatives at a point.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hilbert::{LinearVectorField, Tensor2, Variance};
use crate::tol;

/// A rank-2 tensor field on `R^{2N}` given by its components in the chart.
pub trait TensorField {
    /// Real dimension `2N`.
    fn dim(&self) -> usize;

    fn variance(&self) -> Variance;

    fn components(&self, x: &DVector<f64>) -> DMatrix<f64>;

    /// Derivative of the components along `v` at `x`. Defaults to a
    /// Richardson-extrapolated central difference.
    fn directional_derivative(&self, x: &DVector<f64>, v: &DVector<f64>) -> DMatrix<f64> {
        fd::richardson_derivative(|s| self.components(&(x + v * s)), tol::FD_STEP)
    }
}

impl TensorField for Tensor2 {
    fn dim(&self) -> usize {
        Tensor2::dim(self)
    }

    fn variance(&self) -> Variance {
        Tensor2::variance(self)
    }

    fn components(&self, _x: &DVector<f64>) -> DMatrix<f64> {
        self.matrix().clone()
    }

    fn directional_derivative(&self, _x: &DVector<f64>, _v: &DVector<f64>) -> DMatrix<f64> {
        DMatrix::zeros(self.dim(), self.dim())
    }
}

/// The field `|x|² T` for a constant tensor `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledTensor {
    base: Tensor2,
}

impl ScaledTensor {
    pub fn new(base: Tensor2) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &Tensor2 {
        &self.base
    }
}

impl TensorField for ScaledTensor {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn variance(&self) -> Variance {
        self.base.variance()
    }

    fn components(&self, x: &DVector<f64>) -> DMatrix<f64> {
        self.base.matrix() * x.norm_squared()
    }

    fn directional_derivative(&self, x: &DVector<f64>, v: &DVector<f64>) -> DMatrix<f64> {
        self.base.matrix() * (2.0 * x.dot(v))
    }
}

fn algebraic_part(w: &DMatrix<f64>, t: &DMatrix<f64>, variance: Variance) -> DMatrix<f64> {
    match variance {
        Variance::Covariant => w.transpose() * t + t * w,
        Variance::Contravariant => -(w * t + t * w.transpose()),
        Variance::Mixed => t * w - w * t,
    }
}

/// `(L_X T)(x) = X(T)(x) + (algebraic terms in W)`.
pub fn lie_derivative_at(x: &LinearVectorField, t: &dyn TensorField, at: &DVector<f64>) -> Result<DMatrix<f64>> {
    let d = x.matrix().nrows();
    if t.dim() != d || at.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if t.dim() != d { t.dim() } else { at.len() },
        });
    }
    let transport = t.directional_derivative(at, &x.apply(at));
    Ok(transport + algebraic_part(x.matrix(), &t.components(at), t.variance()))
}

/// Finite-difference oracles, independent of the closed forms.
pub mod fd {
    use super::*;

    /// `f'(0)` from central differences at `h` and `h/2`, one Richardson level.
    pub fn richardson_derivative<F>(f: F, h: f64) -> DMatrix<f64>
    where
        F: Fn(f64) -> DMatrix<f64>,
    {
        let central = |h: f64| (f(h) - f(-h)) / (2.0 * h);
        let coarse = central(h);
        let fine = central(h / 2.0);
        (fine * 4.0 - coarse) / 3.0
    }

    /// The same for scalar functions.
    pub fn richardson_scalar<F>(f: F, h: f64) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let central = |h: f64| (f(h) - f(-h)) / (2.0 * h);
        (4.0 * central(h / 2.0) - central(h)) / 3.0
    }

    /// Pullback of `T` by the flow `Φ_s = exp(sW)`, evaluated at `x`.
    pub fn pullback(x: &LinearVectorField, t: &dyn TensorField, at: &DVector<f64>, s: f64) -> DMatrix<f64> {
        let phi = (x.matrix() * s).exp();
        let phi_inv = (x.matrix() * -s).exp();
        let moved = t.components(&(&phi * at));
        match t.variance() {
            Variance::Covariant => phi.transpose() * moved * &phi,
            Variance::Contravariant => &phi_inv * moved * phi_inv.transpose(),
            Variance::Mixed => &phi_inv * moved * &phi,
        }
    }

    /// `d/ds (Φ_s^* T)(x)` at `s = 0`.
    pub fn lie_derivative(x: &LinearVectorField, t: &dyn TensorField, at: &DVector<f64>) -> DMatrix<f64> {
        richardson_derivative(|s| pullback(x, t, at, s), tol::FD_STEP)
    }

    /// Largest `|dβ(e_i, e_j, e_k)|` over coordinate triples for a 2-form
    /// given by its component matrix, with
    /// `dβ_ijk = ∂_i β_jk - ∂_j β_ik + ∂_k β_ij`.
    pub fn closedness_defect<F>(beta: F, at: &DVector<f64>) -> f64
    where
        F: Fn(&DVector<f64>) -> DMatrix<f64>,
    {
        let d = at.len();
        let partials: Vec<DMatrix<f64>> = (0..d)
            .map(|i| {
                let mut e = DVector::zeros(d);
                e[i] = 1.0;
                richardson_derivative(|s| beta(&(at + &e * s)), tol::FD_STEP)
            })
            .collect();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let v = partials[i][(j, k)] - partials[j][(i, k)] + partials[k][(i, j)];
                    worst = worst.max(v.abs());
                }
            }
        }
        worst
    }

    /// `|dβ(u, v, w)|` for constant directions, with `β` given as a function
    /// `(x, a, b) ↦ β_x(a, b)`:
    /// `dβ(u, v, w) = D_u β(v, w) - D_v β(u, w) + D_w β(u, v)`.
    pub fn closedness_along<F>(beta: F, at: &DVector<f64>, dirs: [&DVector<f64>; 3]) -> f64
    where
        F: Fn(&DVector<f64>, &DVector<f64>, &DVector<f64>) -> f64,
    {
        let [u, v, w] = dirs;
        let d = |e: &DVector<f64>, a: &DVector<f64>, b: &DVector<f64>| {
            richardson_scalar(|s| beta(&(at + e * s), a, b), tol::FD_STEP)
        };
        (d(u, v, w) - d(v, u, w) + d(w, u, v)).abs()
    }
}
