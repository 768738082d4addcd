//! Hermitian matrices, the cyclic Jacobi eigensolver, and the constrained
//! carriers built on top of it (density matrices and unit vectors).

use std::ops::Deref;

use super::matrix::{vec_norm, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;
/// Negative eigenvalues down to `-PSD_CLAMP * (1 + ‖H‖)` are treated as rounding noise.
pub const PSD_CLAMP: f64 = 1e-10;

/// Square matrix equal to its adjoint. Construction symmetrizes `(H + H*)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hermitian(ComplexMatrix);

/// Eigenpairs with eigenvalues sorted non-increasing; column `i` of
/// `vectors` belongs to `values[i]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    /// `V diag(f(λ)) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.values.len();
        let mut out = ComplexMatrix::zeros(d, d);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..d {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..d {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

impl Hermitian {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let d = m.dim()?;
        let mut h = m;
        for i in 0..d {
            h[(i, i)] = C64::new(h[(i, i)].re, 0.0);
            for j in i + 1..d {
                let avg = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
                h[(i, j)] = avg;
                h[(j, i)] = avg.conj();
            }
        }
        Ok(Self(h))
    }

    pub fn zeros(d: usize) -> Self {
        Self(ComplexMatrix::zeros(d, d))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eig(&self) -> Result<EigenDecomposition> {
        jacobi_eig(&self.0)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eig()?.values)
    }

    pub fn lambda_max(&self) -> Result<f64> {
        Ok(self.eig()?.values[0])
    }

    /// Largest eigenvalue together with a unit eigenvector.
    pub fn top_eigenpair(&self) -> Result<(f64, Vec<C64>)> {
        let e = self.eig()?;
        Ok((e.values[0], e.vector(0)))
    }

    /// `Tr[ρ H]`, real for Hermitian `H`.
    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        trace_product(rho.matrix(), &self.0).re
    }

    /// Principal square root of a positive semidefinite matrix.
    pub fn psd_sqrt(&self) -> Result<Hermitian> {
        let e = self.eig()?;
        let scale = 1.0 + e.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let min = e.values.last().copied().unwrap_or(0.0);
        if min < -PSD_CLAMP * scale {
            return Err(Error::NotPsd(min));
        }
        Hermitian::new(e.reconstruct_with(|l| l.max(0.0).sqrt()))
    }

    pub fn square(&self) -> Hermitian {
        Hermitian(&self.0 * &self.0)
    }
}

impl Deref for Hermitian {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// `Tr[AB]` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    assert_eq!(a.cols(), b.rows());
    assert_eq!(a.rows(), b.cols());
    let mut t = ZERO;
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    t
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies the classical real rotation, so every step is an
/// exact unitary similarity.
pub fn jacobi_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = h.dim()?;
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let mut converged = scale == 0.0 || n == 1;
    let mut sweeps = 0;

    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= 1e-15 * scale;
    }

    if !converged {
        let off = off_diagonal_norm(&a);
        if off > 1e-10 * scale {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new)] = v[(r, old)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app - t * g, 0.0);
    a[(q, q)] = C64::new(aqq + t * g, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Normalised vector in `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector(Vec<C64>);

impl UnitVector {
    pub fn new(v: Vec<C64>) -> Result<Self> {
        let n = vec_norm(&v);
        if v.is_empty() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit(n));
        }
        Ok(Self(v))
    }

    pub fn normalize(v: Vec<C64>) -> Result<Self> {
        let n = vec_norm(&v);
        if v.is_empty() || !(n > 1e-300) || !n.is_finite() {
            return Err(Error::NotUnit(n));
        }
        Ok(Self(v.into_iter().map(|z| z / n).collect()))
    }

    pub fn basis(i: usize, d: usize) -> Self {
        let mut v = vec![ZERO; d];
        v[i] = ONE;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.0
    }

    /// The rank-one state `ψψ*`.
    pub fn projector(&self) -> DensityMatrix {
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.0[i] * self.0[j].conj();
            }
        }
        DensityMatrix(Hermitian::new(m).expect("square"))
    }
}

/// Positive semidefinite matrix of unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Hermitian);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let h = Hermitian::new(m)?;
        let tr = h.trace().re;
        if (tr - 1.0).abs() > 1e-10 {
            return Err(Error::NotDensity(format!("trace {tr}")));
        }
        let min = *h.eigenvalues()?.last().expect("non-empty spectrum");
        if min < -1e-10 {
            return Err(Error::NotDensity(format!("eigenvalue {min}")));
        }
        Ok(Self(h))
    }

    /// `P / Tr P` for a positive semidefinite `P` with positive trace.
    pub fn from_psd(m: ComplexMatrix) -> Result<Self> {
        let tr = m.trace().re;
        if !(tr > 0.0) {
            return Err(Error::NotDensity(format!("trace {tr}")));
        }
        Self::new(m.scale_real(1.0 / tr))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self(Hermitian(ComplexMatrix::identity(d).scale_real(1.0 / d as f64)))
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diag(probs))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.0
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    /// `Tr[ρ X]`.
    pub fn expect(&self, x: &ComplexMatrix) -> C64 {
        trace_product(self.matrix(), x)
    }
}

impl Deref for DensityMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        self.matrix()
    }
}
