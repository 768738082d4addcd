//! Fixed matrices: identity, `e^{ij}`, the Pauli trio and `F = Diag(1,1,0,…,0)`.
//!
//! Indices are zero-based throughout; `basis_matrix(0, 1, 2)` is `e^{12}`.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

pub fn identity(d: usize) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(ComplexMatrix::identity(d))
}

pub fn basis_matrix(i: usize, j: usize, d: usize) -> Result<ComplexMatrix> {
    if d == 0 || i >= d || j >= d {
        return Err(Error::InvalidArgument(format!(
            "basis index ({i}, {j}) out of range for dimension {d}"
        )));
    }
    let mut m = ComplexMatrix::zeros(d, d);
    m[(i, j)] = ONE;
    Ok(m)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]])
}

/// `[[0, i], [−i, 0]]`.
pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[vec![ZERO, i], vec![-i, ZERO]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]])
}

pub fn f_matrix(d: usize) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut m = ComplexMatrix::zeros(d, d);
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    Ok(m)
}

/// `F` as a vector `(1, 1, 0, …, 0)`.
pub fn f_vector(d: usize) -> Result<Vec<C64>> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let mut v = vec![ZERO; d];
    v[0] = ONE;
    v[1] = ONE;
    Ok(v)
}

/// The rank-one/unitary anti-commuting pair
/// `X = [[√2, −2−√2], [2−√2, −√2]]/4`, `Y = [[1, 1], [1, −1]]/√2`.
pub fn rank_one_unitary_pair() -> (ComplexMatrix, ComplexMatrix) {
    let r2 = std::f64::consts::SQRT_2;
    let x = ComplexMatrix::from_real_rows(&[&[r2 / 4.0, (-2.0 - r2) / 4.0], &[(2.0 - r2) / 4.0, -r2 / 4.0]]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let y = ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]);
    (x, y)
}
