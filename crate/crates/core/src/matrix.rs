//! Hermitian and anti-Hermitian matrices, i.e. elements of `u*_N` and `u_N`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::point::C64;

/// Absolute entrywise tolerance for accepting a matrix as (anti-)Hermitian.
pub const TOL_SYM: f64 = 1e-12;

const I: C64 = C64::new(0.0, 1.0);

/// Largest entrywise `|M - M†|`.
pub fn hermitian_residual(m: &DMatrix<C64>) -> f64 {
    (m - m.adjoint()).iter().fold(0.0, |acc, c| acc.max(c.norm()))
}

fn check_square(m: &DMatrix<C64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(m.nrows())
}

/// A Hermitian `N×N` matrix: an observable, a momentum-map value, or a
/// 1-form label on `u*_N`.
///
/// The stored matrix is exactly Hermitian; inputs within [`TOL_SYM`] are
/// symmetrized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<C64>);

impl HermitianMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        check_square(&m)?;
        let residual = hermitian_residual(&m);
        if residual > TOL_SYM {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(M + M†)/2`, always Hermitian.
    pub fn symmetrize(m: &DMatrix<C64>) -> Self {
        Self((m + m.adjoint()).map(|c| c * 0.5))
    }

    /// `H = B + iA` with `B` symmetric and `A` antisymmetric.
    pub fn from_parts(re: &DMatrix<f64>, im: &DMatrix<f64>) -> Result<Self> {
        if re.shape() != im.shape() {
            return Err(Error::DimensionMismatch {
                expected: re.nrows(),
                found: im.nrows(),
            });
        }
        let m = DMatrix::from_fn(re.nrows(), re.ncols(), |i, j| C64::new(re[(i, j)], im[(i, j)]));
        Self::new(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    /// Pauli matrices `σ_0 = 1, σ_1, σ_2, σ_3`.
    pub fn pauli(k: usize) -> Self {
        let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        let entries = match k {
            0 => [l, o, o, l],
            1 => [o, l, l, o],
            2 => [o, -I, I, o],
            3 => [l, o, o, -l],
            _ => panic!("Pauli index must be 0..=3, got {k}"),
        };
        Self(DMatrix::from_row_slice(2, 2, &entries))
    }

    /// The projector `|z⟩⟨z|` built from a complex column.
    pub fn outer(u: &nalgebra::DVector<C64>, v: &nalgebra::DVector<C64>) -> DMatrix<C64> {
        u * v.adjoint()
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Symmetric real part `B`.
    pub fn re(&self) -> DMatrix<f64> {
        self.0.map(|c| c.re)
    }

    /// Antisymmetric imaginary part `A`.
    pub fn im(&self) -> DMatrix<f64> {
        self.0.map(|c| c.im)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        // BA = (AB)† for Hermitian A, B
        let ab = &self.0 * &other.0;
        Self::symmetrize(&(&ab + ab.adjoint()))
    }

    /// `[A, B]_{u*} = -i[A, B]`, again Hermitian.
    pub fn dual_bracket(&self, other: &Self) -> Self {
        let ab = &self.0 * &other.0;
        let comm = &ab - ab.adjoint();
        Self::symmetrize(&comm.map(|c| -I * c))
    }

    /// `U H U†`.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Self {
        Self::symmetrize(&(u * &self.0 * u.adjoint()))
    }

    /// The hat map `A ↦ -iA` into `u_N`.
    pub fn hat(&self) -> AntiHermitianMatrix {
        AntiHermitianMatrix(self.0.map(|c| -I * c))
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, c| acc.max(c.norm()))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }
}

/// An anti-Hermitian matrix `T = -T†`, an element of `u_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiHermitianMatrix(DMatrix<C64>);

impl AntiHermitianMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        check_square(&m)?;
        let residual = (&m + m.adjoint()).iter().fold(0.0, |acc: f64, c| acc.max(c.norm()));
        if residual > TOL_SYM {
            return Err(Error::NotAntiHermitian { residual });
        }
        Ok(Self((&m - m.adjoint()).map(|c| c * 0.5)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    /// Inverse of [`HermitianMatrix::hat`]: `T ↦ iT`.
    pub fn unhat(&self) -> HermitianMatrix {
        HermitianMatrix(self.0.map(|c| I * c))
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Orthonormal basis `{σ_α}` of `u*_N` with `Tr(σ_α σ_β) = 2 δ_αβ`.
///
/// Ordering: `σ_0 = sqrt(2/N)·1`, then for every pair `j < k` the symmetric
/// and antisymmetric off-diagonal elements, then the traceless diagonal
/// elements. For `N = 2` this is exactly `(1, σ_1, σ_2, σ_3)`.
pub fn generalized_pauli_basis(n: usize) -> Vec<HermitianMatrix> {
    let mut basis = Vec::with_capacity(n * n);
    let mut id = DMatrix::<C64>::identity(n, n);
    id *= C64::from((2.0 / n as f64).sqrt());
    basis.push(HermitianMatrix(id));
    for j in 0..n {
        for k in (j + 1)..n {
            let mut sym = DMatrix::zeros(n, n);
            sym[(j, k)] = C64::from(1.0);
            sym[(k, j)] = C64::from(1.0);
            basis.push(HermitianMatrix(sym));
            let mut anti = DMatrix::zeros(n, n);
            anti[(j, k)] = -I;
            anti[(k, j)] = I;
            basis.push(HermitianMatrix(anti));
        }
    }
    for l in 1..n {
        let c = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut d = DMatrix::zeros(n, n);
        for m in 0..l {
            d[(m, m)] = C64::from(c);
        }
        d[(l, l)] = C64::from(-(l as f64) * c);
        basis.push(HermitianMatrix(d));
    }
    basis
}
