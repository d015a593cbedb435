pub mod crosscheck;
pub mod kahler;
pub mod reduction;
pub mod unfolding;

use nalgebra::{DMatrix, Matrix3, Vector3};

pub(crate) fn m3(m: &Matrix3<f64>) -> DMatrix<f64> {
    DMatrix::from_iterator(3, 3, m.iter().copied())
}

pub(crate) fn v3(v: &Vector3<f64>) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_iterator(3, v.iter().copied())
}
