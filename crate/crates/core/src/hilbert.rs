//! The canonical Kähler structure of `R^{2N} ≅ C^N`, Hermitian vector
//! fields, their Hamiltonian functions, and Schrödinger flow.
//!
//! Conventions (chart `x = (q, p)`):
//!
//! | object | matrix |
//! |--------|--------|
//! | metric `g` | `1_{2N}` |
//! | symplectic form `ω(u, v) = uᵀ Ω v` | `Ω = [[0, 1], [-1, 0]]` |
//! | complex structure `J` (acts on components) | `[[0, -1], [1, 0]]` |
//! | contravariant metric `G` | `1_{2N}` |
//! | Poisson tensor `Λ = ∂q ∧ ∂p` | `Ω` |
//!
//! so that `g(Ju, v) = ω(u, v)`, `G = g⁻¹` and `Λ = -ω⁻¹`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::{generalized_pauli_basis, HermitianMatrix};
use crate::point::{complex_to_real, HilbertPoint, C64};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
    /// A `(1,1)` tensor, stored as the matrix acting on vector components.
    Mixed,
}

impl Variance {
    pub fn name(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
            Variance::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    None,
}

/// A rank-2 tensor at a point (or a constant-coefficient tensor field) in
/// the real chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2 {
    matrix: DMatrix<f64>,
    variance: Variance,
    symmetry: Symmetry,
}

impl Tensor2 {
    /// Validates shape and the declared symmetry (relative tolerance
    /// `1e-12 · max(1, max|M|)`).
    pub fn new(matrix: DMatrix<f64>, variance: Variance, symmetry: Symmetry) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let residual = match symmetry {
            Symmetry::Symmetric => max_abs(&(&matrix - matrix.transpose())),
            Symmetry::Antisymmetric => max_abs(&(&matrix + matrix.transpose())),
            Symmetry::None => 0.0,
        };
        if residual > tol::LIE_EXACT * 1f64.max(max_abs(&matrix)) {
            return Err(Error::SymmetryMismatch { residual });
        }
        Ok(Self {
            matrix,
            variance,
            symmetry,
        })
    }

    pub fn general(matrix: DMatrix<f64>, variance: Variance) -> Result<Self> {
        Self::new(matrix, variance, Symmetry::None)
    }

    pub fn zeros(dim: usize, variance: Variance) -> Self {
        Self {
            matrix: DMatrix::zeros(dim, dim),
            variance,
            symmetry: Symmetry::Symmetric,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Real dimension `2N`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `T(u, v) = uᵀ T v` for a covariant or contravariant tensor (with `u`, `v`
    /// read as covectors in the contravariant case).
    pub fn eval(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(&(&self.matrix * v))
    }

    /// Action of a mixed tensor on a vector.
    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            matrix: &self.matrix * s,
            ..self.clone()
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }
}

/// Largest entrywise modulus.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Largest deviation of `W` from the block form `[[A, B], [-B, A]]` with
/// `Aᵀ = -A`, `Bᵀ = B`.
pub fn block_form_residual(w: &DMatrix<f64>) -> f64 {
    let n = w.nrows() / 2;
    let a = w.view((0, 0), (n, n));
    let b = w.view((0, n), (n, n));
    let c = w.view((n, 0), (n, n));
    let d = w.view((n, n), (n, n));
    let r1 = max_abs(&(a - d));
    let r2 = max_abs(&(b + c));
    let r3 = max_abs(&(a + a.transpose()));
    let r4 = max_abs(&(b - b.transpose()));
    r1.max(r2).max(r3).max(r4)
}

/// The linear vector field `X_W = W_{ab} x_b ∂_a` on `R^{2N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearVectorField {
    matrix: DMatrix<f64>,
    hermitian: bool,
}

impl LinearVectorField {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 || !matrix.nrows().is_multiple_of(2) {
            return Err(Error::OddCoordinates(matrix.nrows()));
        }
        let hermitian = block_form_residual(&matrix) <= tol::LIE_EXACT * 1f64.max(max_abs(&matrix));
        Ok(Self { matrix, hermitian })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(2 * n, 2 * n),
            hermitian: true,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// True when `W` has the block form of `u_N`.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Complex dimension `N`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn at(&self, z: &HilbertPoint) -> DVector<f64> {
        &self.matrix * z.real()
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.matrix * x
    }

    /// Lie bracket of vector fields: `[X_V, X_W] = X_{WV - VW}`.
    pub fn bracket(&self, other: &Self) -> Self {
        let m = &other.matrix * &self.matrix - &self.matrix * &other.matrix;
        Self::new(m).expect("shape preserved")
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            matrix: &self.matrix * s,
            hermitian: self.hermitian,
        }
    }
}

/// `(g, ω, J)` and their contravariant partners `(G, Λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalStructures {
    pub metric: Tensor2,
    pub symplectic: Tensor2,
    pub complex: Tensor2,
    pub inverse_metric: Tensor2,
    pub poisson: Tensor2,
}

impl CanonicalStructures {
    pub fn dim(&self) -> usize {
        self.metric.dim() / 2
    }
}

/// `Ω = [[0, 1], [-1, 0]]` in `N×N` blocks.
pub fn omega_matrix(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        m[(a, n + a)] = 1.0;
        m[(n + a, a)] = -1.0;
    }
    m
}

/// Matrix of `J`: `J(∂q_a) = ∂p_a`, `J(∂p_a) = -∂q_a`.
pub fn complex_structure_matrix(n: usize) -> DMatrix<f64> {
    -omega_matrix(n)
}

pub fn canonical_structures(n: usize) -> Result<CanonicalStructures> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let id = DMatrix::identity(2 * n, 2 * n);
    let om = omega_matrix(n);
    Ok(CanonicalStructures {
        metric: Tensor2::new(id.clone(), Variance::Covariant, Symmetry::Symmetric)?,
        symplectic: Tensor2::new(om.clone(), Variance::Covariant, Symmetry::Antisymmetric)?,
        complex: Tensor2::new(complex_structure_matrix(n), Variance::Mixed, Symmetry::Antisymmetric)?,
        inverse_metric: Tensor2::new(id, Variance::Contravariant, Symmetry::Symmetric)?,
        poisson: Tensor2::new(om, Variance::Contravariant, Symmetry::Antisymmetric)?,
    })
}

/// `X_H` for `H = B + iA`: the matrix `W = [[A, B], [-B, A]]`.
///
/// Its flow is `z ↦ exp(-iHt) z`.
pub fn hermitian_field(h: &HermitianMatrix) -> LinearVectorField {
    let n = h.dim();
    let (b, a) = (h.re(), h.im());
    let mut w = DMatrix::zeros(2 * n, 2 * n);
    w.view_mut((0, 0), (n, n)).copy_from(&a);
    w.view_mut((0, n), (n, n)).copy_from(&b);
    w.view_mut((n, 0), (n, n)).copy_from(&(-&b));
    w.view_mut((n, n), (n, n)).copy_from(&a);
    LinearVectorField {
        matrix: w,
        hermitian: true,
    }
}

/// Recovers `H` from a Hermitian field; rejects fields outside `u_N`.
pub fn hermitian_of_field(x: &LinearVectorField) -> Result<HermitianMatrix> {
    let w = x.matrix();
    let n = x.dim();
    if !x.is_hermitian() {
        return Err(Error::NotHermitian {
            residual: block_form_residual(w),
        });
    }
    let a = w.view((0, 0), (n, n)).into_owned();
    let b = w.view((0, n), (n, n)).into_owned();
    HermitianMatrix::from_parts(&b, &a)
}

/// Quadratic form `M = [[B, -A], [A, B]]` with `f_H(x) = ½ xᵀ M x`.
pub fn hamiltonian_form(h: &HermitianMatrix) -> DMatrix<f64> {
    let n = h.dim();
    let (b, a) = (h.re(), h.im());
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&b);
    m.view_mut((0, n), (n, n)).copy_from(&(-&a));
    m.view_mut((n, 0), (n, n)).copy_from(&a);
    m.view_mut((n, n), (n, n)).copy_from(&b);
    m
}

/// `f_H(z) = ½ ⟨z|H z⟩`.
pub fn hamiltonian_function(h: &HermitianMatrix, z: &HilbertPoint) -> Result<f64> {
    z.require_dim(h.dim())?;
    let zc = z.to_complex();
    let val = zc.dotc(&(h.matrix() * &zc));
    Ok(0.5 * val.re)
}

/// Differential `df_H = M x` as a covector in the real chart.
pub fn hamiltonian_differential(h: &HermitianMatrix, x: &DVector<f64>) -> DVector<f64> {
    hamiltonian_form(h) * x
}

fn require_tensor_dim(x: &LinearVectorField, t: &Tensor2) -> Result<()> {
    if x.matrix().nrows() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.matrix().nrows(),
            found: t.dim(),
        });
    }
    Ok(())
}

/// Lie derivative of a constant-coefficient tensor along a linear field.
///
/// * covariant: `Wᵀ T + T W`
/// * contravariant: `-(W T + T Wᵀ)`
/// * mixed: `T W - W T`
pub fn lie_derivative(x: &LinearVectorField, t: &Tensor2) -> Result<Tensor2> {
    require_tensor_dim(x, t)?;
    let w = x.matrix();
    let m = t.matrix();
    let out = match t.variance() {
        Variance::Covariant => w.transpose() * m + m * w,
        Variance::Contravariant => -(w * m + m * w.transpose()),
        Variance::Mixed => m * w - w * m,
    };
    let symmetry = match t.variance() {
        Variance::Mixed => Symmetry::None,
        _ => t.symmetry(),
    };
    Ok(Tensor2 {
        matrix: out,
        variance: t.variance(),
        symmetry,
    })
}

/// Which pairs of invariance conditions `X_W` satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitaryFlags {
    /// `L J = 0` and `L g = 0`.
    pub complex_and_metric: bool,
    /// `L J = 0` and `L ω = 0`.
    pub complex_and_symplectic: bool,
    /// `L g = 0` and `L ω = 0`.
    pub metric_and_symplectic: bool,
}

impl UnitaryFlags {
    pub fn all(self) -> bool {
        self.complex_and_metric && self.complex_and_symplectic && self.metric_and_symplectic
    }

    pub fn none(self) -> bool {
        !(self.complex_and_metric || self.complex_and_symplectic || self.metric_and_symplectic)
    }
}

/// Largest entries of `(L_X g, L_X ω, L_X J)`.
pub fn unitary_defects(w: &LinearVectorField) -> (f64, f64, f64) {
    let c = canonical_structures(w.dim()).expect("field dimension is positive");
    let lg = lie_derivative(w, &c.metric).expect("dims match").max_abs();
    let lw = lie_derivative(w, &c.symplectic).expect("dims match").max_abs();
    let lj = lie_derivative(w, &c.complex).expect("dims match").max_abs();
    (lg, lw, lj)
}

/// Evaluates the three pairwise unitarity conditions; a condition vanishes
/// when its Lie derivative is below `1e-12 · max(1, max|W|)`.
pub fn check_unitary_conditions(w: &LinearVectorField) -> UnitaryFlags {
    let (lg, lw, lj) = unitary_defects(w);
    let tol = tol::LIE_EXACT * 1f64.max(max_abs(w.matrix()));
    let (g0, w0, j0) = (lg <= tol, lw <= tol, lj <= tol);
    UnitaryFlags {
        complex_and_metric: j0 && g0,
        complex_and_symplectic: j0 && w0,
        metric_and_symplectic: g0 && w0,
    }
}

/// Both sides of `ω(X_1, X_2) = f_{-i[H_1,H_2]}` and
/// `g(X_1, X_2) = f_{H_1 H_2 + H_2 H_1}` at `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketValues {
    pub lhs_omega: f64,
    pub rhs_omega: f64,
    pub lhs_g: f64,
    pub rhs_g: f64,
}

impl BracketValues {
    pub fn max_relative_error(&self) -> f64 {
        tol::relative_error(self.lhs_omega, self.rhs_omega).max(tol::relative_error(self.lhs_g, self.rhs_g))
    }
}

pub fn bracket_identities(h1: &HermitianMatrix, h2: &HermitianMatrix, z: &HilbertPoint) -> Result<BracketValues> {
    z.require_dim(h1.dim())?;
    z.require_dim(h2.dim())?;
    let n = z.dim();
    let x1 = hermitian_field(h1).at(z);
    let x2 = hermitian_field(h2).at(z);
    let lhs_omega = x1.dot(&(omega_matrix(n) * &x2));
    let lhs_g = x1.dot(&x2);
    Ok(BracketValues {
        lhs_omega,
        rhs_omega: hamiltonian_function(&h1.dual_bracket(h2), z)?,
        lhs_g,
        rhs_g: hamiltonian_function(&h1.anticommutator(h2), z)?,
    })
}

/// `exp(-iHt)` through the eigendecomposition `H = V Λ V†`.
pub fn propagator(h: &HermitianMatrix, t: f64) -> DMatrix<C64> {
    let eig = SymmetricEigen::new(h.matrix().clone());
    let phases = eig.eigenvalues.map(|lambda| C64::new(0.0, -lambda * t).exp());
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, phase) in phases.iter().enumerate() {
        let mut col = scaled.column_mut(j);
        col *= *phase;
    }
    scaled * v.adjoint()
}

/// `z(t) = exp(-iHt) z_0`, the flow of `X_H`.
pub fn schrodinger_flow(h: &HermitianMatrix, z0: &HilbertPoint, t: f64) -> Result<HilbertPoint> {
    z0.require_dim(h.dim())?;
    let z = propagator(h, t) * z0.to_complex();
    HilbertPoint::from_real(complex_to_real(&z))
}

/// Hermitian fields of the orthonormal basis of `u*_N`.
pub fn unitary_algebra_basis(n: usize) -> Vec<LinearVectorField> {
    generalized_pauli_basis(n).iter().map(hermitian_field).collect()
}

/// Numerical rank of a family of `2N×2N` matrices seen as vectors.
pub fn matrix_family_rank(fields: &[LinearVectorField]) -> usize {
    if fields.is_empty() {
        return 0;
    }
    let len = fields[0].matrix().len();
    let stacked = DMatrix::from_fn(len, fields.len(), |i, j| fields[j].matrix()[i]);
    let sv = stacked.singular_values();
    let top = sv.max();
    sv.iter().filter(|s| **s > top * 1e-10).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_hermitian, random_point, random_real_matrix, trial_rng};

    #[test]
    fn j_for_one_mode() {
        let c = canonical_structures(1).unwrap();
        assert_eq!(
            c.complex.matrix(),
            &DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
        );
        assert!(canonical_structures(0).is_err());
    }

    #[test]
    fn compatibility_triplet_holds_exactly() {
        for n in [1, 2, 3, 6] {
            let c = canonical_structures(n).unwrap();
            let (g, w, j) = (c.metric.matrix(), c.symplectic.matrix(), c.complex.matrix());
            let id = DMatrix::identity(2 * n, 2 * n);
            assert_eq!(j * j, -&id);
            assert_eq!(j.transpose() * g, *w);
            assert_eq!(j.transpose() * g * j, *g);
            assert_eq!(j.transpose() * w * j, *w);
            assert_eq!(c.inverse_metric.matrix() * g, id);
            assert_eq!(c.poisson.matrix() * w, -id);
        }
    }

    #[test]
    fn pauli_three_field_components() {
        let x3 = hermitian_field(&HermitianMatrix::pauli(3));
        let z = HilbertPoint::from_qp(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        // (q1, q2, p1, p2) = (1, 2, 3, 4) -> (p1, -p2, -q1, q2)
        assert_eq!(x3.at(&z).as_slice(), &[3.0, -4.0, -1.0, 2.0]);
    }

    #[test]
    fn identity_gives_phase_rotation() {
        let gamma = hermitian_field(&HermitianMatrix::identity(3));
        let z = HilbertPoint::from_qp(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(gamma.at(&z).as_slice(), &[4.0, 5.0, 6.0, -1.0, -2.0, -3.0]);
        let zero = hermitian_field(&HermitianMatrix::zeros(3));
        assert_eq!(zero.at(&z).norm(), 0.0);
    }

    #[test]
    fn hamiltonian_function_examples() {
        let z = HilbertPoint::from_qp(&[0.3, -1.1], &[0.7, 0.2]).unwrap();
        let r2 = z.norm_sq();
        let f_id = hamiltonian_function(&HermitianMatrix::identity(2), &z).unwrap();
        assert!((f_id - 0.5 * r2).abs() < 1e-15);
        let (q1, q2, p1, p2) = (0.3, -1.1, 0.7, 0.2);
        let f3 = hamiltonian_function(&HermitianMatrix::pauli(3), &z).unwrap();
        assert!((f3 - 0.5 * (q1 * q1 + p1 * p1 - q2 * q2 - p2 * p2)).abs() < 1e-15);
        let e1 = HilbertPoint::basis(2, 0).unwrap();
        assert_eq!(hamiltonian_function(&HermitianMatrix::pauli(1), &e1).unwrap(), 0.0);
        assert!(hamiltonian_function(&HermitianMatrix::identity(3), &z).is_err());
    }

    #[test]
    fn quadratic_form_matches_complex_route() {
        let mut rng = trial_rng(3, "form", 0);
        let h = random_hermitian(4, &mut rng);
        let z = random_point(4, &mut rng);
        let via_form = 0.5 * z.real().dot(&(hamiltonian_form(&h) * z.real()));
        assert!((via_form - hamiltonian_function(&h, &z).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn hermitian_fields_are_killing_and_hamiltonian() {
        let mut rng = trial_rng(5, "killing", 0);
        for n in [1, 2, 5] {
            let w = hermitian_field(&random_hermitian(n, &mut rng));
            let (lg, lw, lj) = unitary_defects(&w);
            assert!(lg <= 1e-12 && lw <= 1e-12 && lj <= 1e-12);
            assert!(check_unitary_conditions(&w).all());
        }
    }

    #[test]
    fn dilation_is_not_unitary() {
        let dil = LinearVectorField::new(DMatrix::identity(4, 4)).unwrap();
        let flags = check_unitary_conditions(&dil);
        assert!(!flags.complex_and_metric && !flags.metric_and_symplectic && !flags.complex_and_symplectic);
        // it does preserve J
        assert_eq!(unitary_defects(&dil).2, 0.0);
    }

    #[test]
    fn generic_field_is_rejected() {
        let mut rng = trial_rng(9, "generic", 0);
        let w = LinearVectorField::new(random_real_matrix(6, 6, &mut rng)).unwrap();
        assert!(!w.is_hermitian());
        assert!(check_unitary_conditions(&w).none());
        assert!(hermitian_of_field(&w).is_err());
    }

    #[test]
    fn lie_derivative_of_zero_field_vanishes() {
        let c = canonical_structures(2).unwrap();
        let zero = LinearVectorField::zero(2);
        for t in [&c.metric, &c.symplectic, &c.complex, &c.inverse_metric, &c.poisson] {
            assert_eq!(lie_derivative(&zero, t).unwrap().max_abs(), 0.0);
        }
        let bad = canonical_structures(3).unwrap();
        assert!(lie_derivative(&zero, &bad.metric).is_err());
    }

    #[test]
    fn euler_field_scales_contravariant_metric() {
        let c = canonical_structures(2).unwrap();
        let euler = LinearVectorField::new(DMatrix::identity(4, 4)).unwrap();
        let l = lie_derivative(&euler, &c.inverse_metric).unwrap();
        assert_eq!(l.matrix(), &(c.inverse_metric.matrix() * -2.0));
    }

    #[test]
    fn sigma_bracket_example() {
        let mut rng = trial_rng(2, "bracket", 0);
        let z = random_point(2, &mut rng);
        let v = bracket_identities(&HermitianMatrix::pauli(1), &HermitianMatrix::pauli(2), &z).unwrap();
        let y3 = hamiltonian_function(&HermitianMatrix::pauli(3), &z).unwrap();
        assert!((v.rhs_omega - 2.0 * y3).abs() < 1e-14);
        assert!(v.max_relative_error() < 1e-12);
        let same = bracket_identities(&HermitianMatrix::pauli(1), &HermitianMatrix::pauli(1), &z).unwrap();
        assert!(same.lhs_omega.abs() < 1e-15 && same.rhs_omega.abs() < 1e-15);
    }

    #[test]
    fn flow_examples() {
        let e1 = HilbertPoint::basis(2, 0).unwrap();
        let z = schrodinger_flow(&HermitianMatrix::pauli(3), &e1, std::f64::consts::PI).unwrap();
        assert!((z.z(0) - C64::new(-1.0, 0.0)).norm() < 1e-14);
        assert!(z.z(1).norm() < 1e-14);
        let still = schrodinger_flow(&HermitianMatrix::zeros(2), &e1, 3.0).unwrap();
        assert_eq!(still, e1);
    }

    #[test]
    fn unitary_algebra_has_dimension_n_squared() {
        for n in 1..=5 {
            let basis = unitary_algebra_basis(n);
            assert!(basis.iter().all(|f| f.is_hermitian()));
            assert_eq!(matrix_family_rank(&basis), n * n);
        }
    }
}
