//! Quantum variances and the matrix radii they are bounded by, together with
//! the numerical range machinery (support function, numerical radius,
//! central numerical radius).
//!
//! The radius of `X` for a modulus kind is computed twice: as the dual
//! minimum `min_y λ_max(|X − y1|²)` over complex shifts, and as the primal
//! maximum of `⟨ψ,|X|²ψ⟩ − |⟨ψ,Xψ⟩|²` over unit vectors. The dual is convex
//! and certifies the primal.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::random::{derive_seed, seeded, unit_vector};
use crate::linalg::{
    inner, modulus_squared, rotated_real_part, vec_norm, ComplexMatrix, DensityMatrix, Hermitian, ModulusKind,
    UnitVector, C64,
};
use crate::optimize::{golden_max, minimize, NelderMeadOptions};
use crate::scalar::{enclosing_circle, PointSet};

/// Restarts from random unit vectors used by [`radius`].
pub const DEFAULT_RESTARTS: usize = 20;
const NUMRANGE_SAMPLES: usize = 360;
pub const MEMBERSHIP_ANGLES: usize = 720;
const PRIMAL_SEED: u64 = 0x7261_6469_7573;

/// `Var_kind(X) = Tr[ρ|X|²] − |Tr[ρX]|²`, evaluated in the centred form
/// `Tr[ρ|X − Tr[ρX]·1|²]` to avoid cancellation.
pub fn quantum_variance(x: &ComplexMatrix, rho: &DensityMatrix, kind: ModulusKind) -> Result<f64> {
    check_dims(x, rho.dim())?;
    let shifted = x.shift(rho.expect(x));
    Ok(modulus_squared(&shifted, kind)?.expectation(rho).max(0.0))
}

/// The uncentred form `Tr[ρ|X|²] − |Tr[ρX]|²`.
pub fn quantum_variance_uncentered(x: &ComplexMatrix, rho: &DensityMatrix, kind: ModulusKind) -> Result<f64> {
    check_dims(x, rho.dim())?;
    let q = modulus_squared(x, kind)?;
    Ok((q.expectation(rho) - rho.expect(x).norm_sqr()).max(0.0))
}

fn check_dims(x: &ComplexMatrix, d: usize) -> Result<()> {
    let dx = x.dim()?;
    if dx != d {
        return Err(Error::DimensionMismatch { expected: dx, got: d });
    }
    Ok(())
}

/// `X`, `X*` and `|X|²` prepared once for repeated evaluation.
struct Shifted {
    x: ComplexMatrix,
    xh: ComplexMatrix,
    q: ComplexMatrix,
}

impl Shifted {
    fn new(x: &ComplexMatrix, kind: ModulusKind) -> Result<Self> {
        Ok(Self {
            x: x.clone(),
            xh: x.adjoint(),
            q: modulus_squared(x, kind)?.into_matrix(),
        })
    }

    /// `|X − y1|² = Q − yX* − ȳX + |y|²·1`.
    fn dual_matrix(&self, y: C64) -> Result<Hermitian> {
        let mut m = &(&self.q - &self.xh.scale(y)) - &self.x.scale(y.conj());
        for i in 0..m.rows() {
            m[(i, i)] += y.norm_sqr();
        }
        Hermitian::new(m)
    }

    /// Value, mean `⟨ψ,Xψ⟩` and Riemannian gradient of the primal objective.
    fn primal(&self, psi: &[C64]) -> (f64, C64, Vec<C64>) {
        let qpsi = self.q.mul_vec(psi);
        let xpsi = self.x.mul_vec(psi);
        let xhpsi = self.xh.mul_vec(psi);
        let z = inner(psi, &xpsi);
        let f = inner(psi, &qpsi).re - z.norm_sqr();
        let g: Vec<C64> = (0..psi.len())
            .map(|i| qpsi[i] - z.conj() * xpsi[i] - z * xhpsi[i])
            .collect();
        let along = inner(psi, &g);
        let proj = g.iter().zip(psi).map(|(gi, pi)| gi - along * pi).collect();
        (f, z, proj)
    }

    fn primal_value(&self, psi: &[C64]) -> f64 {
        self.primal(psi).0
    }
}

/// `λ_max(|X − y1|_kind²)`, the dual objective whose minimum is `r_kind(X)²`.
pub fn dual_objective(x: &ComplexMatrix, kind: ModulusKind, y: C64) -> Result<f64> {
    Shifted::new(x, kind)?.dual_matrix(y)?.lambda_max()
}

/// `⟨ψ,|X|²ψ⟩ − |⟨ψ,Xψ⟩|²`, the variance in the pure state `ψ`.
pub fn vector_variance(x: &ComplexMatrix, psi: &UnitVector, kind: ModulusKind) -> Result<f64> {
    check_dims(x, psi.dim())?;
    Ok(Shifted::new(x, kind)?.primal_value(psi.as_slice()))
}

fn normalized(v: Vec<C64>) -> Vec<C64> {
    let n = vec_norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// Projected gradient ascent on the unit sphere with backtracking.
fn ascend(s: &Shifted, start: Vec<C64>, scale: f64) -> (f64, Vec<C64>) {
    let mut psi = normalized(start);
    let (mut f, _, mut g) = s.primal(&psi);
    let mut t = 1.0 / scale;
    let mut stalls = 0;
    for _ in 0..4000 {
        let gn2: f64 = g.iter().map(|z| z.norm_sqr()).sum();
        if gn2.sqrt() <= 1e-13 * scale {
            break;
        }
        loop {
            let cand = normalized(psi.iter().zip(&g).map(|(p, gi)| p + gi * t).collect());
            let (fc, _, gc) = s.primal(&cand);
            if fc >= f + 1e-4 * t * gn2 {
                stalls = if fc - f <= 1e-15 * scale { stalls + 1 } else { 0 };
                psi = cand;
                f = fc;
                g = gc;
                t *= 2.0;
                break;
            }
            t *= 0.5;
            if t < 1e-18 / scale {
                return (f, psi);
            }
        }
        if stalls >= 5 {
            break;
        }
    }
    (f, psi)
}

/// Largest pure-state variance found and the state attaining it.
#[derive(Clone, Debug)]
pub struct MaxVariance {
    pub value: f64,
    pub witness: UnitVector,
}

fn matrix_scale(x: &ComplexMatrix) -> f64 {
    1.0 + x.max_abs() * x.max_abs() * x.rows() as f64
}

fn primal_search(s: &Shifted, starts: Vec<Vec<C64>>, scale: f64) -> Result<MaxVariance> {
    let mut best: Option<(f64, Vec<C64>)> = None;
    for start in starts {
        let (f, psi) = ascend(s, start, scale);
        if best.as_ref().is_none_or(|(bf, _)| f > *bf) {
            best = Some((f, psi));
        }
    }
    let (value, psi) = best.ok_or_else(|| Error::InvalidArgument("no primal starts".into()))?;
    Ok(MaxVariance {
        value: value.max(0.0),
        witness: UnitVector::normalize(psi)?,
    })
}

fn default_starts(s: &Shifted, d: usize, restarts: usize) -> Result<Vec<Vec<C64>>> {
    let mut starts = vec![Hermitian::new(s.q.clone())?.top_eigenpair()?.1];
    for k in 0..restarts {
        let mut rng = seeded(derive_seed(PRIMAL_SEED, k as u64));
        starts.push(unit_vector(&mut rng, d).into_vec());
    }
    Ok(starts)
}

/// Maximises the pure-state variance from the top eigenvector of `|X|²`
/// and `restarts` seeded random unit vectors.
pub fn max_variance(x: &ComplexMatrix, kind: ModulusKind, restarts: usize) -> Result<MaxVariance> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be >= 1".into()));
    }
    let d = x.dim()?;
    let s = Shifted::new(x, kind)?;
    let starts = default_starts(&s, d, restarts)?;
    primal_search(&s, starts, matrix_scale(x))
}

/// Dual and primal solution of the radius problem for one modulus kind.
#[derive(Clone, Debug)]
pub struct RadiusResult {
    pub kind: ModulusKind,
    /// Optimal shift `y*`.
    pub y_star: C64,
    /// `r_kind(X) = sqrt(λ_max(|X − y*1|²))`.
    pub value: f64,
    /// Largest variance found by the primal search.
    pub primal_value: f64,
    pub witness: UnitVector,
    /// `value² − primal_value`.
    pub gap: f64,
    /// Membership margin of `y*` in the numerical range.
    pub membership_margin: f64,
    pub evals: usize,
}

/// `Some(c)` when `X = c·1` up to rounding.
fn scalar_part(x: &ComplexMatrix) -> Option<C64> {
    let d = x.rows();
    let c = x.trace() / d as f64;
    ((x.shift(c)).max_abs() <= 1e-14 * (1.0 + x.max_abs())).then_some(c)
}

/// `r_kind(X) = min_y ‖|X − y1|_kind‖_∞`, cross-checked by the primal maximum.
pub fn radius(x: &ComplexMatrix, kind: ModulusKind) -> Result<RadiusResult> {
    let d = x.dim()?;
    if let Some(c) = scalar_part(x) {
        return Ok(RadiusResult {
            kind,
            y_star: c,
            value: 0.0,
            primal_value: 0.0,
            witness: UnitVector::basis(0, d),
            gap: 0.0,
            membership_margin: 0.0,
            evals: 0,
        });
    }
    let s = Shifted::new(x, kind)?;
    let scale = 1.0 + x.max_abs();
    let opts = NelderMeadOptions {
        step: 0.25 * scale,
        x_tol: 1e-10 * scale,
        f_tol: 1e-14,
        max_evals: 4000,
        max_restarts: 8,
    };
    let centroid = {
        let nr = numerical_range(x, 16)?;
        nr.boundary_points.iter().sum::<C64>() / nr.boundary_points.len() as f64
    };
    let objective = |v: &[f64]| s.dual_matrix(C64::new(v[0], v[1]))?.lambda_max();
    let mut best = None;
    let mut evals = 0;
    for start in [x.trace() / d as f64, centroid, C64::new(0.0, 0.0)] {
        let m = minimize(objective, &[start.re, start.im], &opts)?;
        evals += m.evals;
        if best.as_ref().is_none_or(|b: &crate::optimize::Minimum| m.value < b.value) {
            best = Some(m);
        }
    }
    let best = best.expect("three starts");
    let y_star = C64::new(best.x[0], best.x[1]);
    if !best.converged {
        return Err(Error::MinimizerFailed {
            re: y_star.re,
            im: y_star.im,
            value: best.value,
        });
    }
    let dual = s.dual_matrix(y_star)?.eig()?;
    let lam = dual.values[0].max(0.0);

    let mut starts = default_starts(&s, d, DEFAULT_RESTARTS)?;
    // the near-top eigenspace of the dual matrix spans the optimal states
    let top_tol = 1e-6 * (1.0 + lam);
    for k in 0..d {
        if dual.values[k] >= lam - top_tol {
            starts.push(dual.vector(k));
        }
    }
    if d > 1 && dual.values[1] >= lam - top_tol {
        let mixed = dual.vector(0).iter().zip(dual.vector(1)).map(|(a, b)| a + b).collect();
        starts.push(mixed);
    }
    let primal = primal_search(&s, starts, matrix_scale(x))?;
    let membership = membership_in_range(x, y_star, MEMBERSHIP_ANGLES)?;
    Ok(RadiusResult {
        kind,
        y_star,
        value: lam.sqrt(),
        primal_value: primal.value,
        witness: primal.witness,
        gap: lam - primal.value,
        membership_margin: membership.margin,
        evals,
    })
}

/// Eigenvalues of a normal matrix, read off the eigenvectors of a generic
/// real combination of its Cartesian parts.
pub fn normal_eigenvalues(x: &ComplexMatrix) -> Result<Vec<C64>> {
    x.dim()?;
    let scale = 1.0 + x.max_abs() * x.max_abs();
    let defect = x.normality_defect();
    if defect > 1e-9 * scale {
        return Err(Error::InvalidArgument(format!("matrix is not normal (defect {defect:e})")));
    }
    let h = rotated_real_part(x, 0.0)?;
    let b = rotated_real_part(x, -std::f64::consts::FRAC_PI_2)?;
    let mix = Hermitian::new(h.matrix() + &b.matrix().scale_real(std::f64::consts::SQRT_2 - 1.0 / 7.0))?;
    let e = mix.eig()?;
    Ok((0..x.rows()).map(|k| x.quadratic_form(&e.vector(k))).collect())
}

/// Support-function samples of the numerical range.
#[derive(Clone, Debug)]
pub struct NumericalRangeSample {
    pub angles: Vec<f64>,
    /// `λ_max(Re(e^{iθ}X))` per angle.
    pub support_values: Vec<f64>,
    /// `⟨v, Xv⟩` for the top eigenvector `v` per angle.
    pub boundary_points: Vec<C64>,
}

fn support_point(x: &ComplexMatrix, theta: f64) -> Result<(f64, C64)> {
    let (lam, v) = rotated_real_part(x, theta)?.top_eigenpair()?;
    Ok((lam, x.quadratic_form(&v)))
}

pub fn numerical_range(x: &ComplexMatrix, k: usize) -> Result<NumericalRangeSample> {
    x.dim()?;
    if k < 8 {
        return Err(Error::InvalidArgument(format!("need at least 8 angles, got {k}")));
    }
    let angles: Vec<f64> = (0..k).map(|i| TAU * i as f64 / k as f64).collect();
    let mut support_values = Vec::with_capacity(k);
    let mut boundary_points = Vec::with_capacity(k);
    for &t in &angles {
        let (lam, z) = support_point(x, t)?;
        support_values.push(lam);
        boundary_points.push(z);
    }
    Ok(NumericalRangeSample {
        angles,
        support_values,
        boundary_points,
    })
}

/// `max_θ λ_max(Re(e^{−iθ}X))` with the maximising angle and the boundary point there.
fn support_maximum(x: &ComplexMatrix) -> Result<(f64, C64)> {
    let k = NUMRANGE_SAMPLES;
    let step = TAU / k as f64;
    let h = |t: f64| -> Result<f64> { rotated_real_part(x, -t)?.lambda_max() };
    let mut grid: Vec<(f64, f64)> = Vec::with_capacity(k);
    for i in 0..k {
        let t = step * i as f64;
        grid.push((h(t)?, t));
    }
    let mut ranked = grid.clone();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = ranked[0];
    for &(_, t) in ranked.iter().take(3) {
        let (tm, vm) = golden_max(h, t - step, t + step, 1e-11)?;
        if vm > best.0 {
            best = (vm, tm);
        }
    }
    let (_, z) = support_point(x, -best.1)?;
    Ok((best.0, z))
}

/// `w(X) = max_ρ |Tr ρX|`.
pub fn numerical_radius(x: &ComplexMatrix) -> Result<f64> {
    x.dim()?;
    Ok(support_maximum(x)?.0.max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralRadius {
    pub z_star: C64,
    /// `w(X − z*1)`, an upper bound on `r_W(X)`.
    pub value: f64,
    /// Radius of the enclosing circle of the sampled boundary, a lower bound.
    pub lower: f64,
    pub iterations: usize,
}

/// `r_W(X) = min_z w(X − z1)`, the planar radius of the numerical range.
///
/// Boundary samples are enclosed by a circle; the boundary point farthest
/// from its center is added until `w(X − z1)` meets the sample radius.
pub fn central_numerical_radius(x: &ComplexMatrix) -> Result<CentralRadius> {
    x.dim()?;
    if let Some(c) = scalar_part(x) {
        return Ok(CentralRadius {
            z_star: c,
            value: 0.0,
            lower: 0.0,
            iterations: 0,
        });
    }
    let mut points = numerical_range(x, NUMRANGE_SAMPLES)?.boundary_points;
    let tol = 1e-11 * (1.0 + x.max_abs());
    let mut result = None;
    for it in 1..=200 {
        let circle = enclosing_circle(&PointSet::new(points.clone())?);
        let (w, far) = support_maximum(&x.shift(circle.center))?;
        result = Some(CentralRadius {
            z_star: circle.center,
            value: w.max(circle.radius),
            lower: circle.radius,
            iterations: it,
        });
        if w - circle.radius <= tol {
            break;
        }
        points.push(far + circle.center);
    }
    Ok(result.expect("at least one iteration"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// `min_φ λ_max(Re(e^{iφ}X)) − Re(e^{iφ}z)` over the angle grid.
    pub margin: f64,
}

pub fn membership_in_range(x: &ComplexMatrix, z: C64, angles: usize) -> Result<Membership> {
    x.dim()?;
    if angles < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 angles, got {angles}")));
    }
    let mut margin = f64::INFINITY;
    for k in 0..angles {
        let phi = TAU * k as f64 / angles as f64;
        let lam = rotated_real_part(x, phi)?.lambda_max()?;
        margin = margin.min(lam - (C64::from_polar(1.0, phi) * z).re);
    }
    Ok(Membership {
        member: margin >= -1e-8,
        margin,
    })
}
