//! Kähler geometry of the Hilbert space `C^N`, its reduction to the
//! projective space along dilations and phases, and the unfolding of that
//! space as a coadjoint orbit of `U(N)`.
//!
//! ```
//! use kaehler::{canonical_structures, hermitian_field, HermitianMatrix};
//! use kaehler::hilbert::check_unitary_conditions;
//!
//! let c = canonical_structures(2).unwrap();
//! let j = c.complex.matrix();
//! assert_eq!(j * j, -nalgebra::DMatrix::<f64>::identity(4, 4));
//!
//! let x3 = hermitian_field(&HermitianMatrix::pauli(3));
//! assert!(check_unitary_conditions(&x3).all());
//! ```
//!
//! Modules:
//!
//! * [`hilbert`]: `(g, ω, J)` on `R^{2N}`, Hermitian fields, Schrödinger flow
//! * [`field`]: position-dependent tensors and a finite-difference Lie derivative
//! * [`reduction`]: vertical fields, projectability, the Bloch sphere triple
//! * [`unfolding`]: momentum map, orbit frame, the orbit triple, `N = 2` comparison

pub mod error;
pub mod field;
pub mod hilbert;
pub mod matrix;
pub mod point;
pub mod reduction;
pub mod sampling;
pub mod tol;
pub mod unfolding;

pub use error::{Error, Result};
pub use hilbert::{
    bracket_identities, canonical_structures, check_unitary_conditions, hamiltonian_function, hermitian_field,
    lie_derivative, schrodinger_flow, CanonicalStructures, LinearVectorField, Symmetry, Tensor2, UnitaryFlags,
    Variance,
};
pub use matrix::{generalized_pauli_basis, AntiHermitianMatrix, HermitianMatrix};
pub use point::{HilbertPoint, C64};
pub use reduction::{
    is_projectable_field, is_projectable_tensor, pauli_frame, project_point, pushforward_fields, rescaled_tensors,
    sphere_kaehler, vertical_fields, Connection1Form, PauliFrame, SphereChart, VerticalPair,
};
pub use unfolding::{
    build_orbit_frame, fubini_study_compare, momentum_map, n2_crosscheck, orbit_kaehler, pairing_and_bracket,
    pushforward_tensors, DualAlgebraPoint, OrbitFrame, OrbitKaehler, OrbitTensorBlock,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kaehler.md")]
    mod kaehler {}
    #[doc = include_str!("../../../book/src/hermitian-fields.md")]
    mod hermitian_fields {}
    #[doc = include_str!("../../../book/src/flow.md")]
    mod flow {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/unfolding.md")]
    mod unfolding {}
    #[doc = include_str!("../../../book/src/crosscheck.md")]
    mod crosscheck {}
}
