//! The projective space as the `U(N)` coadjoint orbit through `μ(z) = |z⟩⟨z|`.
//!
//! Conventions on `u*_N` (Hermitian matrices):
//!
//! * scalar product and 1-form pairing `⟨A, B⟩ = Â(W_B) = Tr(AB)/2`
//! * bracket `[A, B]_{u*} = -i[A, B]`
//! * the vector `W_A` at a point is the Hermitian matrix `A` itself; the
//!   orbit generator of `A` at `ξ` is `[A, ξ]_{u*}`
//!
//! The inverted tensors are obtained from the pushforwards of the canonical
//! `G`, `Λ` with `g̃ = G⁻¹` and `ω̃ = -Λ⁻¹`, the same inversion that turns
//! `(G, Λ)` back into `(g, ω)` on `R^{2N}`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::field::fd;
use crate::hilbert::{complex_structure_matrix, hamiltonian_function, hermitian_field, omega_matrix};
use crate::matrix::{generalized_pauli_basis, max_abs_diff, AntiHermitianMatrix, HermitianMatrix};
use crate::point::{real_to_complex, HilbertPoint, C64};
use crate::reduction::{pauli_frame, project_point, sphere_kaehler, vertical_fields};
use crate::sampling::{haar_unitary, random_real_vector, trial_rng};

const I: C64 = C64::new(0.0, 1.0);

/// `⟨A, B⟩ = Tr(AB)/2`, also the value `Â(W_B)`.
pub fn scalar_product(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    // Tr(AB) = Σ a_ij b_ji = Σ a_ij conj(b_ij) for Hermitian B
    0.5 * a
        .matrix()
        .iter()
        .zip(b.matrix().iter())
        .map(|(x, y)| x.re * y.re + x.im * y.im)
        .sum::<f64>()
}

/// `[⟨v_i, v_j⟩]`, as one product of the stacked real and imaginary parts.
pub fn gram_matrix(v: &[&HermitianMatrix]) -> DMatrix<f64> {
    let s = stack(v);
    s.transpose() * &s * 0.5
}

/// `[⟨a_i, b_j⟩]` for two lists of the same size.
pub fn pairing_table(a: &[&HermitianMatrix], b: &[&HermitianMatrix]) -> DMatrix<f64> {
    stack(a).transpose() * stack(b) * 0.5
}

fn stack(v: &[&HermitianMatrix]) -> DMatrix<f64> {
    let len = v.first().map_or(0, |m| m.matrix().len());
    let mut s = DMatrix::zeros(2 * len, v.len());
    for (j, m) in v.iter().enumerate() {
        for (r, c) in m.matrix().iter().enumerate() {
            s[(r, j)] = c.re;
            s[(len + r, j)] = c.im;
        }
    }
    s
}

/// The pairing, scalar product and bracket of `u*_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingBracket {
    /// `A(T) = i Tr(AT)/2`.
    pub pair: f64,
    /// `⟨A, B⟩ = Tr(AB)/2`.
    pub scal: f64,
    /// `[A, B]_{u*} = -i[A, B]`.
    pub brak: HermitianMatrix,
}

pub fn pairing_and_bracket(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    t: &AntiHermitianMatrix,
) -> Result<PairingBracket> {
    if a.dim() != b.dim() || a.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: if a.dim() != b.dim() { b.dim() } else { t.dim() },
        });
    }
    let pair = (I * (a.matrix() * t.matrix()).trace() * 0.5).re;
    Ok(PairingBracket {
        pair,
        scal: scalar_product(a, b),
        brak: a.dual_bracket(b),
    })
}

/// A point of `u*_N` with coordinates `y_α = Tr(ρ σ_α)/2` in the
/// generalized Pauli basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DualAlgebraPoint {
    value: HermitianMatrix,
}

impl DualAlgebraPoint {
    pub fn new(value: HermitianMatrix) -> Self {
        Self { value }
    }

    pub fn value(&self) -> &HermitianMatrix {
        &self.value
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    pub fn coords(&self) -> Vec<f64> {
        generalized_pauli_basis(self.dim())
            .iter()
            .map(|s| scalar_product(&self.value, s))
            .collect()
    }

    /// `Σ_α y_α σ_α`.
    pub fn from_coords(n: usize, coords: &[f64]) -> Result<Self> {
        if coords.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: coords.len(),
            });
        }
        let mut value = HermitianMatrix::zeros(n);
        for (s, y) in generalized_pauli_basis(n).iter().zip(coords) {
            value = value.add(&s.scale(*y));
        }
        Ok(Self { value })
    }
}

/// `μ(z) = |z⟩⟨z|`.
pub fn momentum_map(z: &HilbertPoint) -> Result<DualAlgebraPoint> {
    z.require_nonzero()?;
    let zc = z.to_complex();
    Ok(DualAlgebraPoint {
        value: HermitianMatrix::symmetrize(&HermitianMatrix::outer(&zc, &zc)),
    })
}

/// `dμ_z(u) = |u⟩⟨z| + |z⟩⟨u|` for a real-chart tangent vector `u`.
pub fn momentum_differential(z: &HilbertPoint, u: &DVector<f64>) -> Result<HermitianMatrix> {
    if u.len() != 2 * z.dim() {
        return Err(Error::DimensionMismatch {
            expected: 2 * z.dim(),
            found: u.len(),
        });
    }
    let zc = z.to_complex();
    let uc = real_to_complex(u);
    Ok(HermitianMatrix::symmetrize(&(&uc * zc.adjoint() * C64::from(2.0))))
}

/// Jacobian of `x ↦ (y_α(x))` as an `N² × 2N` matrix (rows `df_{σ_α}`).
pub fn momentum_jacobian(z: &HilbertPoint) -> DMatrix<f64> {
    let n = z.dim();
    let basis = generalized_pauli_basis(n);
    let mut d = DMatrix::zeros(n * n, 2 * n);
    for (a, s) in basis.iter().enumerate() {
        let row = crate::hilbert::hamiltonian_form(s) * z.real();
        d.row_mut(a).copy_from(&row.transpose());
    }
    d
}

/// `μ_* G (Â, B̂) = f_{AB+BA}` and `μ_* Λ (Â, B̂) = f_{[A,B]_{u*}}` at `z`.
pub fn pushforward_tensors(z: &HilbertPoint, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(f64, f64)> {
    z.require_nonzero()?;
    Ok((
        hamiltonian_function(&a.anticommutator(b), z)?,
        hamiltonian_function(&a.dual_bracket(b), z)?,
    ))
}

/// The same values through the chart: `a^T (D D^T) b` and `a^T (D Ω D^T) b`
/// with `D` the momentum Jacobian and `a_α = ⟨A, σ_α⟩`.
pub fn pushforward_tensors_in_chart(z: &HilbertPoint, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(f64, f64)> {
    z.require_nonzero()?;
    let n = z.dim();
    let basis = generalized_pauli_basis(n);
    let coords = |m: &HermitianMatrix| DVector::from_iterator(n * n, basis.iter().map(|s| scalar_product(m, s)));
    let (ca, cb) = (coords(a), coords(b));
    let d = momentum_jacobian(z);
    let g = &d * d.transpose();
    let l = &d * omega_matrix(n) * d.transpose();
    Ok((ca.dot(&(&g * &cb)), ca.dot(&(&l * &cb))))
}

/// The orbit generator `W = [A, ξ]_{u*}` of `A` at `ξ`.
pub fn orbit_generator(a: &HermitianMatrix, xi: &HermitianMatrix) -> HermitianMatrix {
    a.dual_bracket(xi)
}

/// A unitary in the stabilizer of `μ(z)`: `e^{iα}|ẑ⟩⟨ẑ|` plus a Haar
/// rotation of the orthogonal complement.
pub fn stabilizer_element(z: &HilbertPoint, seed: u64) -> Result<DMatrix<C64>> {
    let frame = build_orbit_frame(z, seed)?;
    let zh = z.normalized()?.to_complex();
    let n = z.dim();
    let mut rng = trial_rng(seed, "stabilizer", 0);
    let alpha = random_real_vector(1, &mut rng)[0];
    let mut u = &zh * zh.adjoint() * C64::new(0.0, alpha).exp();
    if n > 1 {
        let e = frame.complement_matrix();
        let v = haar_unitary(n - 1, &mut rng);
        u += &e * v * e.adjoint();
    }
    Ok(u)
}

/// `(μ(Uz) = μ(z), [U, μ(z)] = 0)`, each decided at `1e-12` entrywise.
pub fn stabilizer_test(u: &DMatrix<C64>, z: &HilbertPoint) -> Result<(bool, bool)> {
    let mu = momentum_map(z)?;
    let uz = HilbertPoint::from_complex(&(u * z.to_complex()))?;
    let moved = momentum_map(&uz)?;
    let fixes = moved.value().max_abs_diff(mu.value()) <= 1e-12 * (1.0f64).max(z.norm_sq());
    let m = mu.value().matrix();
    let comm = max_abs_diff(&(u * m), &(m * u));
    Ok((fixes, comm <= 1e-12 * (1.0f64).max(z.norm_sq())))
}

/// `{φ_a, ψ_a}` at `z`, built from an orthonormal complement `{e_a}` of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitFrame {
    z: HilbertPoint,
    norm_sq: f64,
    complement: Vec<DVector<C64>>,
    phis: Vec<HermitianMatrix>,
    psis: Vec<HermitianMatrix>,
}

/// Householder complement of `z`; for `seed ≠ 0` rotated by a seeded Haar
/// unitary of `U(N-1)`.
pub fn build_orbit_frame(z: &HilbertPoint, seed: u64) -> Result<OrbitFrame> {
    let n = z.dim();
    let zh = z.normalized()?.to_complex();
    let z1 = zh[0];
    let alpha = if z1.norm() > 0.0 {
        -z1 / z1.norm()
    } else {
        C64::from(1.0)
    };
    let mut w = -zh.clone();
    w[0] += alpha;
    let h = DMatrix::<C64>::identity(n, n) - &w * w.adjoint() * C64::from(2.0 / w.norm_squared());
    let mut complement: Vec<DVector<C64>> = (1..n).map(|j| h.column(j).into_owned()).collect();
    if seed != 0 && n > 1 {
        let v = haar_unitary(n - 1, &mut trial_rng(seed, "complement", 0));
        complement = (0..n - 1)
            .map(|b| {
                complement
                    .iter()
                    .enumerate()
                    .fold(DVector::zeros(n), |acc, (a, e)| acc + e * v[(a, b)])
            })
            .collect();
    }
    OrbitFrame::with_complement(z, complement)
}

impl OrbitFrame {
    /// Uses a caller-supplied complement after checking it to `1e-12`.
    pub fn with_complement(z: &HilbertPoint, complement: Vec<DVector<C64>>) -> Result<Self> {
        let r = z.require_nonzero()?;
        let n = z.dim();
        if complement.len() + 1 != n || complement.iter().any(|e| e.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: complement.len(),
            });
        }
        let zc = z.to_complex();
        let mut residual: f64 = 0.0;
        for (a, ea) in complement.iter().enumerate() {
            residual = residual.max(zc.dotc(ea).norm() / r);
            for (b, eb) in complement.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                residual = residual.max((ea.dotc(eb) - target).norm());
            }
        }
        if residual > 1e-12 {
            return Err(Error::BadComplement { residual });
        }
        let phis = complement
            .iter()
            .map(|e| HermitianMatrix::symmetrize(&(e * zc.adjoint() * C64::from(2.0))))
            .collect();
        let psis = complement
            .iter()
            .map(|e| HermitianMatrix::symmetrize(&(&zc * e.adjoint() * C64::new(0.0, 2.0))))
            .collect();
        Ok(Self {
            z: z.clone(),
            norm_sq: r * r,
            complement,
            phis,
            psis,
        })
    }

    pub fn z(&self) -> &HilbertPoint {
        &self.z
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn complement(&self) -> &[DVector<C64>] {
        &self.complement
    }

    /// Complement vectors as the columns of an `N × (N-1)` matrix.
    pub fn complement_matrix(&self) -> DMatrix<C64> {
        let n = self.z.dim();
        DMatrix::from_fn(n, n - 1, |i, a| self.complement[a][i])
    }

    pub fn phis(&self) -> &[HermitianMatrix] {
        &self.phis
    }

    pub fn psis(&self) -> &[HermitianMatrix] {
        &self.psis
    }

    /// `2(N-1)`, the real dimension of the orbit.
    pub fn len(&self) -> usize {
        2 * self.phis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phis.is_empty()
    }

    /// Frame vectors ordered `(φ_1, .., φ_{N-1}, ψ_1, .., ψ_{N-1})`.
    pub fn vectors(&self) -> impl Iterator<Item = &HermitianMatrix> {
        self.phis.iter().chain(self.psis.iter())
    }

    /// Gram matrix of `⟨·,·⟩` on the frame.
    pub fn gram(&self) -> DMatrix<f64> {
        let v: Vec<_> = self.vectors().collect();
        gram_matrix(&v)
    }

    /// Largest entrywise residual of `[φ_a, μ] = ‖z‖² ψ_a` and
    /// `[ψ_a, μ] = -‖z‖² φ_a`.
    pub fn commutator_residual(&self) -> f64 {
        let mu = momentum_map(&self.z).expect("frame point is nonzero").value;
        let mut worst: f64 = 0.0;
        for (phi, psi) in self.phis.iter().zip(&self.psis) {
            worst = worst.max(orbit_generator(phi, &mu).max_abs_diff(&psi.scale(self.norm_sq)));
            worst = worst.max(orbit_generator(psi, &mu).max_abs_diff(&phi.scale(-self.norm_sq)));
        }
        worst
    }

    /// Largest `|⟨f, μ⟩|` and `|⟨f, 1⟩|` over frame vectors `f`.
    pub fn normal_overlap(&self) -> (f64, f64) {
        let mu = momentum_map(&self.z).expect("frame point is nonzero").value;
        let id = HermitianMatrix::identity(self.z.dim());
        self.vectors().fold((0.0, 0.0), |(a, b), f| {
            (a.max(scalar_product(f, &mu).abs()), b.max(scalar_product(f, &id).abs()))
        })
    }

    /// Coefficients of a tangent vector along the frame, from the Gram
    /// matrix `‖z‖² 1`.
    pub fn tangent_coords(&self, x: &HermitianMatrix) -> DVector<f64> {
        DVector::from_iterator(self.len(), self.vectors().map(|f| scalar_product(f, x) / self.norm_sq))
    }

    /// `Σ c_i f_i`.
    pub fn from_coords(&self, c: &DVector<f64>) -> HermitianMatrix {
        self.vectors()
            .zip(c.iter())
            .fold(HermitianMatrix::zeros(self.z.dim()), |acc, (f, ci)| {
                acc.add(&f.scale(*ci))
            })
    }

    /// Orthogonal projection onto the tangent space of the orbit.
    pub fn tangent_projection(&self, x: &HermitianMatrix) -> HermitianMatrix {
        self.from_coords(&self.tangent_coords(x))
    }

    /// Values of the four duality expressions `f̂_a([h_b, μ])` under the
    /// pairing `Tr(AB)/2`.
    pub fn duality_values(&self) -> DualityValues {
        let mu = momentum_map(&self.z).expect("frame point is nonzero").value;
        let k = self.phis.len();
        let w_phi: Vec<_> = self.phis.iter().map(|f| orbit_generator(f, &mu)).collect();
        let w_psi: Vec<_> = self.psis.iter().map(|f| orbit_generator(f, &mu)).collect();
        let table = |hats: &[HermitianMatrix], gens: &[HermitianMatrix]| {
            let t = pairing_table(&hats.iter().collect::<Vec<_>>(), &gens.iter().collect::<Vec<_>>());
            debug_assert_eq!(t.shape(), (k, k));
            t
        };
        DualityValues {
            phi_psi: table(&self.phis, &w_psi),
            phi_phi: table(&self.phis, &w_phi),
            psi_psi: table(&self.psis, &w_psi),
            psi_phi: table(&self.psis, &w_phi),
        }
    }

    /// Numerical rank of `{[A, μ] : A ∈ u*_N}` and of that range together
    /// with the frame; both equal `2(N-1)` when the frame spans it.
    pub fn commutator_range_ranks(&self) -> (usize, usize) {
        let n = self.z.dim();
        let mu = momentum_map(&self.z).expect("frame point is nonzero").value;
        let basis = generalized_pauli_basis(n);
        let coords = |m: &HermitianMatrix| basis.iter().map(|s| scalar_product(m, s)).collect::<Vec<_>>();
        let range: Vec<Vec<f64>> = basis.iter().map(|a| coords(&orbit_generator(a, &mu))).collect();
        let with_frame: Vec<Vec<f64>> = range.iter().cloned().chain(self.vectors().map(coords)).collect();
        (numerical_rank(&range), numerical_rank(&with_frame))
    }
}

fn numerical_rank(rows: &[Vec<f64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > top * 1e-10).count()
}

/// `⟨f_a, [h_b, μ]⟩` tables, indexed `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityValues {
    pub phi_psi: DMatrix<f64>,
    pub phi_phi: DMatrix<f64>,
    pub psi_psi: DMatrix<f64>,
    pub psi_phi: DMatrix<f64>,
}

/// Frame matrix of a pushed-forward contravariant tensor, ordered like
/// [`OrbitFrame::vectors`], evaluated on the covectors `f̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTensorBlock {
    pub full: DMatrix<f64>,
}

impl OrbitTensorBlock {
    fn block(&self, r: usize, c: usize) -> DMatrix<f64> {
        let k = self.full.nrows() / 2;
        self.full.view((r * k, c * k), (k, k)).into_owned()
    }

    pub fn phi_block(&self) -> DMatrix<f64> {
        self.block(0, 0)
    }

    pub fn psi_block(&self) -> DMatrix<f64> {
        self.block(1, 1)
    }

    /// Rows `φ̂_a`, columns `ψ̂_b`.
    pub fn cross_block(&self) -> DMatrix<f64> {
        self.block(0, 1)
    }
}

/// `(μ_* G, μ_* Λ)` on the frame covectors, through
/// `f_{AB+BA} = Re⟨Az|Bz⟩` and `f_{[A,B]_{u*}} = Im⟨Az|Bz⟩`.
pub fn pushforward_blocks(frame: &OrbitFrame) -> Result<(OrbitTensorBlock, OrbitTensorBlock)> {
    let zc = frame.z().to_complex();
    let w: Vec<DVector<C64>> = frame.vectors().map(|f| f.matrix() * &zc).collect();
    let k = w.len();
    let inner = DMatrix::from_fn(k, k, |i, j| w[i].dotc(&w[j]));
    Ok((
        OrbitTensorBlock {
            full: inner.map(|c| c.re),
        },
        OrbitTensorBlock {
            full: inner.map(|c| c.im),
        },
    ))
}

/// `(g̃, ω̃, J̃)` on the tangent space of the orbit through `μ(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitKaehler {
    frame: OrbitFrame,
    metric: DMatrix<f64>,
    symplectic: DMatrix<f64>,
    complex: DMatrix<f64>,
}

/// Builds the triple by inverting the pushforward blocks: with the pairing
/// matrix `P_ij = f̂_i(W_j)`, `g̃ = P G⁻¹ P` and `ω̃ = -P Λ⁻¹ P` in the
/// frame, and `J̃ = ‖z‖² (-g̃⁻¹ ω̃)`.
pub fn orbit_kaehler(z: &HilbertPoint) -> Result<OrbitKaehler> {
    orbit_kaehler_with_frame(build_orbit_frame(z, 0)?)
}

pub fn orbit_kaehler_with_frame(frame: OrbitFrame) -> Result<OrbitKaehler> {
    let (g_up, l_up) = pushforward_blocks(&frame)?;
    let p = frame.gram();
    let g_inv = g_up.full.try_inverse().ok_or(Error::Degenerate)?;
    let l_inv = l_up.full.try_inverse().ok_or(Error::Degenerate)?;
    let metric = &p * g_inv * &p;
    let symplectic = -(&p * l_inv * &p);
    let metric_inv = metric.clone().try_inverse().ok_or(Error::Degenerate)?;
    let complex = -(metric_inv * &symplectic) * frame.norm_sq();
    Ok(OrbitKaehler {
        frame,
        metric,
        symplectic,
        complex,
    })
}

impl OrbitKaehler {
    pub fn frame(&self) -> &OrbitFrame {
        &self.frame
    }

    /// `g̃(f_i, f_j)`.
    pub fn metric_matrix(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// `ω̃(f_i, f_j)`.
    pub fn symplectic_matrix(&self) -> &DMatrix<f64> {
        &self.symplectic
    }

    /// `J̃` acting on frame coordinates.
    pub fn complex_matrix(&self) -> &DMatrix<f64> {
        &self.complex
    }

    pub fn metric(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
        let (cx, cy) = (self.frame.tangent_coords(x), self.frame.tangent_coords(y));
        cx.dot(&(&self.metric * cy))
    }

    pub fn symplectic(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
        let (cx, cy) = (self.frame.tangent_coords(x), self.frame.tangent_coords(y));
        cx.dot(&(&self.symplectic * cy))
    }

    pub fn complex(&self, x: &HermitianMatrix) -> HermitianMatrix {
        self.frame.from_coords(&(&self.complex * self.frame.tangent_coords(x)))
    }
}

/// Frame-free forms of the orbit tensors on tangent vectors:
/// `g̃(X, Y) = Tr(XY) / (2‖z‖²)`, `ω̃(X, Y) = Im⟨z|X P⊥ Y|z⟩ / ‖z‖⁴`
/// with `P⊥` the projector orthogonal to `z`, and `J̃(X) = -[X, μ]_{u*}`.
pub mod invariant {
    use super::*;

    pub fn metric(z: &HilbertPoint, x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
        scalar_product(x, y) / z.norm_sq()
    }

    pub fn symplectic(z: &HilbertPoint, x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
        let r2 = z.norm_sq();
        let zc = z.to_complex();
        let (xz, yz) = (x.matrix() * &zc, y.matrix() * &zc);
        let perp = |v: DVector<C64>| {
            let c = zc.dotc(&v) / r2;
            v - &zc * c
        };
        perp(xz).dotc(&perp(yz)).im / (r2 * r2)
    }

    pub fn complex(z: &HilbertPoint, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(orbit_generator(x, momentum_map(z)?.value()).scale(-1.0))
    }
}

/// `ω̃` pulled back by `x ↦ μ(x/‖x‖)`, evaluated on `u, v` at `x`; the
/// orbit triple is built through the Householder frame at `x/‖x‖`.
pub fn pulled_back_orbit_form(x: &DVector<f64>, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
    let p = HilbertPoint::from_real(x.clone())?;
    let r = p.require_nonzero()?;
    let unit = p.normalized()?;
    let k = orbit_kaehler(&unit)?;
    let push = |e: &DVector<f64>| {
        let radial = unit.real().dot(e);
        momentum_differential(&unit, &((e - unit.real() * radial) / r))
    };
    Ok(k.symplectic(&push(u)?, &push(v)?))
}

/// Finite-difference `dω̃` of the pulled-back orbit form over all coordinate
/// triples of `R^{2N}`.
pub fn orbit_closedness_defect(z: &HilbertPoint) -> Result<f64> {
    z.require_nonzero()?;
    let d = z.real().len();
    let beta = |x: &DVector<f64>| {
        let e = |i: usize| DVector::from_fn(d, |j, _| if i == j { 1.0 } else { 0.0 });
        DMatrix::from_fn(d, d, |i, j| {
            pulled_back_orbit_form(x, &e(i), &e(j)).expect("nonzero near a nonzero point")
        })
    };
    Ok(fd::closedness_defect(beta, z.real()))
}

/// `|dω̃(u, v, w)|` for constant directions `u, v, w`, by finite differences
/// of the pulled-back orbit form.
pub fn orbit_closedness_along(z: &HilbertPoint, u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> Result<f64> {
    z.require_nonzero()?;
    for e in [u, v, w] {
        if e.len() != z.real().len() {
            return Err(Error::DimensionMismatch {
                expected: z.real().len(),
                found: e.len(),
            });
        }
    }
    Ok(fd::closedness_along(
        |x, a, b| pulled_back_orbit_form(x, a, b).expect("nonzero near a nonzero point"),
        z.real(),
        [u, v, w],
    ))
}

fn require_unit(z: &HilbertPoint) -> Result<()> {
    let norm_sq = z.norm_sq();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// Values of the `N = 2` comparison between the unfolding and `C^2_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct N2Crosscheck {
    /// `|φ - 2(y_1 σ_3 - y_3 σ_1)|` with the literal `e = (z_2, -z_1)`.
    pub phi_closed_form: f64,
    /// `|ψ - 2(y_0 σ_2 + y_2 σ_0)|` with the literal `e`.
    pub psi_closed_form: f64,
    /// `|⟨z|e⟩|` for the literal `e`; equals `2|y_2|`.
    pub literal_overlap: f64,
    /// `|μ_*(-X_2) - W_φ|`.
    pub unfold_phi: f64,
    /// `|μ_*(2(y_2 Δ - y_3 X_1 + y_1 X_3)) - W_ψ|`.
    pub unfold_psi: f64,
    /// `g(a, a)`, `g(b, b)`, `g(b, a)` for `a = -X_2`, `b = 2(y_2 Δ - y_3 X_1 + y_1 X_3)`.
    pub metric_values: [f64; 3],
    /// `ω(b, a)`.
    pub symplectic_value: f64,
    /// `|J(Γ) - Δ|`.
    pub j_gamma: f64,
    /// `max_k |μ_*(J X_k) - 2(y_k σ_0 + y_0 σ_k)|`.
    pub j_pauli: f64,
    /// `|J̃(W_φ) + W_ψ|` on the orthonormal complement `e = (z̄_2, -z̄_1)`.
    pub j_tilde: f64,
    /// `|J̃(W_φ) + T(W_ψ)|` for the literal pair, `T` the tangent projection.
    pub j_tilde_literal: f64,
}

impl N2Crosscheck {
    pub fn metric_error(&self) -> f64 {
        let target = [1.0, 1.0, 0.0];
        self.metric_values
            .iter()
            .zip(target)
            .fold(0.0, |acc, (v, t)| acc.max((v - t).abs()))
    }

    pub fn symplectic_error(&self) -> f64 {
        (self.symplectic_value - 1.0).abs()
    }

    /// Largest residual among the identities expected to hold exactly.
    pub fn max_residual(&self) -> f64 {
        [
            self.phi_closed_form,
            self.psi_closed_form,
            self.unfold_phi,
            self.unfold_psi,
            self.j_gamma,
            self.j_pauli,
            self.j_tilde,
            self.j_tilde_literal,
            self.metric_error(),
            self.symplectic_error(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn frame_pair(z: &DVector<C64>, e: &DVector<C64>) -> (HermitianMatrix, HermitianMatrix) {
    let phi = HermitianMatrix::symmetrize(&(e * z.adjoint() * C64::from(2.0)));
    let psi = HermitianMatrix::symmetrize(&(z * e.adjoint() * C64::new(0.0, 2.0)));
    (phi, psi)
}

pub fn n2_crosscheck(z: &HilbertPoint) -> Result<N2Crosscheck> {
    let frame = pauli_frame(z.dim())?;
    require_unit(z)?;
    let s = HermitianMatrix::pauli;
    let y = frame.y(z)?;
    let y0 = frame.y_gamma(z)?;
    let zc = z.to_complex();

    let literal = DVector::from_vec(vec![zc[1], -zc[0]]);
    let (phi_lit, psi_lit) = frame_pair(&zc, &literal);
    let phi_expected = s(3).scale(2.0 * y[0]).sub(&s(1).scale(2.0 * y[2]));
    let psi_expected = s(2).scale(2.0 * y0).add(&s(0).scale(2.0 * y[1]));

    let v = vertical_fields(2)?;
    let x = |j: usize| frame.field(j).at(z);
    let a = -x(2);
    let b = (v.delta.at(z) * y[1] - x(1) * y[2] + x(3) * y[0]) * 2.0;
    let om = omega_matrix(2);
    let jm = complex_structure_matrix(2);

    let mut j_pauli: f64 = 0.0;
    for k in 1..=3 {
        let pushed = momentum_differential(z, &(&jm * x(k)))?;
        let expected = s(0).scale(2.0 * y[k - 1]).add(&s(k).scale(2.0 * y0));
        j_pauli = j_pauli.max(pushed.max_abs_diff(&expected));
    }

    let e = DVector::from_vec(vec![zc[1].conj(), -zc[0].conj()]);
    let orbit = orbit_kaehler_with_frame(OrbitFrame::with_complement(z, vec![e.clone()])?)?;
    let (phi, psi) = frame_pair(&zc, &e);

    Ok(N2Crosscheck {
        phi_closed_form: phi_lit.max_abs_diff(&phi_expected),
        psi_closed_form: psi_lit.max_abs_diff(&psi_expected),
        literal_overlap: zc.dotc(&literal).norm(),
        unfold_phi: momentum_differential(z, &a)?.max_abs_diff(&phi_lit),
        unfold_psi: momentum_differential(z, &b)?.max_abs_diff(&psi_lit),
        metric_values: [a.dot(&a), b.dot(&b), b.dot(&a)],
        symplectic_value: b.dot(&(&om * &a)),
        j_gamma: (&jm * v.gamma.at(z) - v.delta.at(z)).amax(),
        j_pauli,
        j_tilde: orbit.complex(&phi).max_abs_diff(&psi.scale(-1.0)),
        j_tilde_literal: orbit
            .complex(&phi_lit)
            .max_abs_diff(&orbit.frame().tangent_projection(&psi_lit).scale(-1.0)),
    })
}

/// Deviations between the orbit triple and the Bloch-sphere triple over
/// sampled tangent pairs, with `∂/∂y_k ↔ σ_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FubiniStudyComparison {
    pub metric: f64,
    pub symplectic: f64,
    pub complex: f64,
}

impl FubiniStudyComparison {
    pub fn max(&self) -> f64 {
        self.metric.max(self.symplectic).max(self.complex)
    }
}

pub fn fubini_study_compare(z: &HilbertPoint, pairs: usize, seed: u64) -> Result<FubiniStudyComparison> {
    pauli_frame(z.dim())?;
    require_unit(z)?;
    let p = project_point(z)?;
    let sphere = sphere_kaehler();
    let orbit = orbit_kaehler(z)?;
    let proj = p.tangent_projector();
    let lift = |v: &nalgebra::Vector3<f64>| {
        (1..=3).fold(HermitianMatrix::zeros(2), |acc, k| {
            acc.add(&HermitianMatrix::pauli(k).scale(v[k - 1]))
        })
    };
    let mut out = FubiniStudyComparison {
        metric: 0.0,
        symplectic: 0.0,
        complex: 0.0,
    };
    for trial in 0..pairs as u64 {
        let mut rng = trial_rng(seed, "fubini-study", trial);
        let g = random_real_vector(6, &mut rng);
        let u = proj * nalgebra::Vector3::new(g[0], g[1], g[2]);
        let v = proj * nalgebra::Vector3::new(g[3], g[4], g[5]);
        let (xu, xv) = (lift(&u), lift(&v));
        out.metric = out
            .metric
            .max((orbit.metric(&xu, &xv) - sphere.metric(&p, &u, &v)).abs());
        out.symplectic = out
            .symplectic
            .max((orbit.symplectic(&xu, &xv) - sphere.symplectic(&p, &u, &v)).abs());
        out.complex = out
            .complex
            .max(orbit.complex(&xu).max_abs_diff(&lift(&sphere.complex(&p, &u))));
    }
    Ok(out)
}

/// The field `X_H` pushed by `μ` equals the orbit generator `[H, μ(z)]_{u*}`;
/// returns the entrywise residual.
pub fn equivariance_residual(h: &HermitianMatrix, z: &HilbertPoint) -> Result<f64> {
    let pushed = momentum_differential(z, &hermitian_field(h).at(z))?;
    let mu = momentum_map(z)?;
    Ok(pushed.max_abs_diff(&orbit_generator(h, mu.value())))
}
