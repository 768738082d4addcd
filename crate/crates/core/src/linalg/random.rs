//! Seeded random ensembles driving the property suites.
//!
//! Every sampler draws from a caller-owned [`ChaCha8Rng`], so a fixed seed
//! reproduces the same stream on every platform. [`derive_seed`] splits a
//! master seed into independent per-trial streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::hermitian::{DensityMatrix, Hermitian, UnitVector};
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 mix of `(seed, stream)`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("finite gaussian samples")
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Hermitian {
    Hermitian::new(ginibre(rng, d, d)).expect("square")
}

/// Haar unitary: Gram–Schmidt on Ginibre columns. Normalising each column
/// makes the implicit R factor positive on the diagonal, which fixes the phases.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, d);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = g.column(j);
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let n = super::matrix::vec_norm(&v);
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    ComplexMatrix::from_columns(&cols)
}

/// `U Diag(λ) U*` with complex Gaussian eigenvalues.
pub fn normal_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let u = unitary(rng, d);
    let lambda: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let ud = &u * &ComplexMatrix::from_diag(&lambda);
    &ud * &u.adjoint()
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> UnitVector {
    let v = (0..d).map(|_| complex_gaussian(rng)).collect();
    UnitVector::normalize(v).expect("non-zero gaussian vector")
}

/// `GG*/Tr(GG*)` with `G` a `d × rank` Ginibre matrix.
pub fn density<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(Error::InvalidArgument(format!("rank {rank} not in 1..={d}")));
    }
    if rank == 1 {
        return Ok(unit_vector(rng, d).projector());
    }
    let g = ginibre(rng, d, rank);
    DensityMatrix::from_psd(&g * &g.adjoint())
}

pub fn point_set<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Uniform sample from the probability simplex (flat Dirichlet).
pub fn prob_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Ensemble selector for [`sample`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    Ginibre,
    Hermitian,
    NormalMatrix,
    Density { rank: usize },
    UnitVector,
    PointSet { n: usize },
}

#[derive(Clone, Debug)]
pub enum Sample {
    Matrix(ComplexMatrix),
    Hermitian(Hermitian),
    Density(DensityMatrix),
    Vector(UnitVector),
    Points(Vec<C64>),
}

/// One draw from `ensemble` in dimension `d`, fully determined by `seed`.
pub fn sample(seed: u64, d: usize, ensemble: Ensemble) -> Result<Sample> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let mut rng = seeded(seed);
    Ok(match ensemble {
        Ensemble::Ginibre => Sample::Matrix(ginibre(&mut rng, d, d)),
        Ensemble::Hermitian => Sample::Hermitian(hermitian(&mut rng, d)),
        Ensemble::NormalMatrix => Sample::Matrix(normal_matrix(&mut rng, d)),
        Ensemble::Density { rank } => Sample::Density(density(&mut rng, d, rank)?),
        Ensemble::UnitVector => Sample::Vector(unit_vector(&mut rng, d)),
        Ensemble::PointSet { n } => {
            if n == 0 {
                return Err(Error::EmptyPointSet);
            }
            Sample::Points(point_set(&mut rng, n))
        }
    })
}
