//! Points of the Hilbert space `C^N` and their real chart.
//!
//! The real chart is ordered `x = (q_1, .., q_N, p_1, .., p_N)` with
//! `z_a = q_a + i p_a`. Every real matrix in this crate uses that ordering.

use nalgebra::{Complex, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// A vector `z` in `C^N`, stored through its real coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertPoint {
    coords: DVector<f64>,
}

impl HilbertPoint {
    /// Builds a point from real chart coordinates `(q.., p..)`.
    pub fn from_real(coords: DVector<f64>) -> Result<Self> {
        let len = coords.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::OddCoordinates(len));
        }
        Ok(Self { coords })
    }

    pub fn from_qp(q: &[f64], p: &[f64]) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::DimensionMismatch {
                expected: q.len(),
                found: p.len(),
            });
        }
        let coords = DVector::from_iterator(2 * q.len(), q.iter().chain(p).copied());
        Self::from_real(coords)
    }

    pub fn from_complex(z: &DVector<C64>) -> Result<Self> {
        let n = z.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let coords = DVector::from_fn(2 * n, |i, _| if i < n { z[i].re } else { z[i - n].im });
        Ok(Self { coords })
    }

    pub fn from_slice(z: &[C64]) -> Result<Self> {
        Self::from_complex(&DVector::from_column_slice(z))
    }

    /// The standard basis vector `e_a` (zero-based `a`).
    pub fn basis(n: usize, a: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if a >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a + 1,
            });
        }
        let mut coords = DVector::zeros(2 * n);
        coords[a] = 1.0;
        Ok(Self { coords })
    }

    /// Complex dimension `N`.
    pub fn dim(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn real(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn q(&self, a: usize) -> f64 {
        self.coords[a]
    }

    pub fn p(&self, a: usize) -> f64 {
        self.coords[self.dim() + a]
    }

    pub fn z(&self, a: usize) -> C64 {
        C64::new(self.q(a), self.p(a))
    }

    pub fn to_complex(&self) -> DVector<C64> {
        DVector::from_fn(self.dim(), |a, _| self.z(a))
    }

    /// `‖z‖² = Σ (q_a² + p_a²)`.
    pub fn norm_sq(&self) -> f64 {
        self.coords.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    /// The point `u·z` for a complex scalar `u`.
    pub fn scale(&self, u: C64) -> Self {
        let z = self.to_complex().map(|c| c * u);
        Self::from_complex(&z).expect("dimension is preserved")
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.require_nonzero()?;
        Ok(Self {
            coords: &self.coords / norm,
        })
    }

    /// Returns `‖z‖` or rejects the origin.
    pub fn require_nonzero(&self) -> Result<f64> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(norm)
    }

    pub(crate) fn require_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Splits a complex vector into the real chart ordering.
pub(crate) fn complex_to_real(z: &DVector<C64>) -> DVector<f64> {
    let n = z.len();
    DVector::from_fn(2 * n, |i, _| if i < n { z[i].re } else { z[i - n].im })
}

pub(crate) fn real_to_complex(x: &DVector<f64>) -> DVector<C64> {
    let n = x.len() / 2;
    DVector::from_fn(n, |a, _| C64::new(x[a], x[n + a]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_round_trip_is_exact() {
        let z = [C64::new(0.3, -1.25), C64::new(2.0, 0.5)];
        let pt = HilbertPoint::from_slice(&z).unwrap();
        assert_eq!(pt.real().as_slice(), &[0.3, 2.0, -1.25, 0.5]);
        assert_eq!(pt.z(0), z[0]);
        assert_eq!(pt.z(1).conj(), C64::new(2.0, -0.5));
        assert_eq!(pt.to_complex().as_slice(), &z);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            HilbertPoint::from_real(DVector::from_vec(vec![1.0, 2.0, 3.0])),
            Err(Error::OddCoordinates(3))
        );
        assert!(HilbertPoint::basis(0, 0).is_err());
        let zero = HilbertPoint::from_real(DVector::zeros(4)).unwrap();
        assert_eq!(zero.require_nonzero(), Err(Error::ZeroVector));
    }

    #[test]
    fn norm_matches_complex_norm() {
        let pt = HilbertPoint::from_qp(&[1.0, 2.0], &[3.0, -4.0]).unwrap();
        let direct: f64 = pt.to_complex().iter().map(|c| c.norm_sqr()).sum();
        assert_eq!(pt.norm_sq(), direct);
        assert_eq!(pt.norm_sq(), 30.0);
    }
}
