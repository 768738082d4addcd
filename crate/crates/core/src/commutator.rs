//! Commutator norm bounds: the Frobenius identity behind the factor √2, the
//! variance chain that sharpens it, exact witness pairs for the constants
//! `c_{p,q,r}`, and a seeded random search for those constants.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::constants::{basis_matrix, pauli_x, pauli_z, rank_one_unitary_pair};
use crate::linalg::random::{derive_seed, ginibre, normal_matrix, seeded};
use crate::linalg::{trace_product, ComplexMatrix, DensityMatrix, ModulusKind};
use crate::norms::{ky_fan, ky_fan_pk, schatten};
use crate::radii::{quantum_variance, radius};

/// `1/p`, with `1/∞ = 0`.
pub fn inverse(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Checks `p, q, r ≥ 1` and `1/p ≤ 1/q + 1/r`.
pub fn check_exponents(p: f64, q: f64, r: f64) -> Result<()> {
    for (name, v) in [("p", p), ("q", q), ("r", r)] {
        if !(v >= 1.0) {
            return Err(Error::InvalidNorm(format!("{name} = {v} must be >= 1")));
        }
    }
    if inverse(p) > inverse(q) + inverse(r) + 1e-12 {
        return Err(Error::ExponentConstraint { p, q, r });
    }
    Ok(())
}

fn same_dim(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<usize> {
    let d = x.dim()?;
    let e = y.dim()?;
    if d != e {
        return Err(Error::DimensionMismatch { expected: d, got: e });
    }
    Ok(d)
}

/// `[X, Y] = XY − YX`.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    same_dim(x, y)?;
    Ok(&(x * y) - &(y * x))
}

/// `|‖XY−YX‖₂² + ‖X*Y+YX*‖₂² − Tr[(X*X+XX*)(Y*Y+YY*)]|`, zero in exact arithmetic.
pub fn proof_identity_residual(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    let c = commutator(x, y)?;
    let xh = x.adjoint();
    let yh = y.adjoint();
    let anti = &(&xh * y) + &(y * &xh);
    let sx = &(&xh * x) + &(x * &xh);
    let sy = &(&yh * y) + &(y * &yh);
    let lhs = c.frobenius_norm().powi(2) + anti.frobenius_norm().powi(2);
    Ok((lhs - trace_product(&sx, &sy).re).abs())
}

/// `‖YX*+X*Y‖₂‖X‖₂ − |Tr[(YX*+X*Y)X]|`, non-negative by Cauchy–Schwarz.
pub fn cauchy_schwarz_slack(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    same_dim(x, y)?;
    let xh = x.adjoint();
    let anti = &(y * &xh) + &(&xh * y);
    Ok(anti.frobenius_norm() * x.frobenius_norm() - trace_product(&anti, x).norm())
}

/// `ρ = (X*X + XX*)/(2‖X‖₂²)`.
pub fn rho_from_x(x: &ComplexMatrix) -> Result<DensityMatrix> {
    x.dim()?;
    let n2 = x.frobenius_norm().powi(2);
    if !(x.frobenius_norm() > 1e-14) {
        return Err(Error::InvalidArgument("rho_from_x needs a non-zero matrix".into()));
    }
    let xh = x.adjoint();
    DensityMatrix::new((&(&xh * x) + &(x * &xh)).scale_real(0.5 / n2))
}

/// One named upper bound on a commutator norm.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    /// The norm being bounded.
    pub lhs: f64,
    pub value: f64,
    pub holds: bool,
    /// `value − lhs`.
    pub slack: f64,
}

impl BoundEntry {
    fn new(name: &'static str, lhs: f64, value: f64) -> Self {
        let slack = value - lhs;
        Self {
            name,
            lhs,
            value,
            holds: slack >= -1e-9 * (1.0 + value),
            slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// `‖[X,Y]‖_p`.
    pub lhs: f64,
    /// `‖[X,Y]‖_p / (‖X‖_q‖Y‖_r)`, `None` when the denominator vanishes.
    pub ratio: Option<f64>,
    pub bounds: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

/// Names of the sharpened Frobenius chain, in increasing order.
pub const CHAIN: [&str; 4] = ["cartesian_variance", "cartesian_radius", "ky_fan_2_2", "schatten_r"];
/// Names of the chain for normal `Y`, in increasing order.
pub const NORMAL_CHAIN: [&str; 3] = ["normal_radius", "normal_ky_fan_2", "normal_schatten_r"];

fn is_normal(y: &ComplexMatrix) -> bool {
    y.normality_defect() <= 1e-10 * (1.0 + y.max_abs() * y.max_abs())
}

/// Evaluates every applicable bound on `‖[X,Y]‖`. The Hölder entry needs
/// `1/p = 1/q + 1/r`; the Frobenius chains bound `‖[X,Y]‖₂` with `r` as
/// the exponent on `Y`; the normal chain appears only for normal `Y`.
pub fn evaluate_bounds(x: &ComplexMatrix, y: &ComplexMatrix, p: f64, q: f64, r: f64) -> Result<BoundReport> {
    check_exponents(p, q, r)?;
    let d = same_dim(x, y)?;
    let c = commutator(x, y)?;
    let lhs = schatten(&c, p);
    let den = schatten(x, q) * schatten(y, r);
    let ratio = (den >= 1e-14).then(|| lhs / den);
    let c2 = schatten(&c, 2.0);
    let x2 = schatten(x, 2.0);
    let mut bounds = Vec::new();

    if p == 2.0 && q == 2.0 && r == 2.0 {
        bounds.push(BoundEntry::new("bottcher_wenzel", c2, std::f64::consts::SQRT_2 * x2 * schatten(y, 2.0)));
    }
    if (inverse(p) - inverse(q) - inverse(r)).abs() <= 1e-12 {
        bounds.push(BoundEntry::new("holder", lhs, 2.0 * den));
    }

    let var = if x2 > 1e-14 {
        quantum_variance(y, &rho_from_x(x)?, ModulusKind::C)?
    } else {
        0.0
    };
    let rc = radius(y, ModulusKind::C)?.value;
    let kf22 = ky_fan_pk(y, 2.0, 2.min(d));
    let exponent = 0.5f64.max(1.0 - inverse(r));
    let chain = [
        2.0 * x2 * var.sqrt(),
        2.0 * x2 * rc,
        std::f64::consts::SQRT_2 * x2 * kf22,
        2f64.powf(exponent) * x2 * schatten(y, r),
    ];
    for (name, value) in CHAIN.iter().zip(chain) {
        bounds.push(BoundEntry::new(name, c2, value));
    }

    if is_normal(y) {
        let rn = radius(y, ModulusKind::L)?.value;
        let normal = [
            2.0 * x2 * rn,
            x2 * ky_fan(y, 2.min(d)),
            2f64.powf(1.0 - inverse(r)) * x2 * schatten(y, r),
        ];
        for (name, value) in NORMAL_CHAIN.iter().zip(normal) {
            bounds.push(BoundEntry::new(name, c2, value));
        }
    }
    Ok(BoundReport { lhs, ratio, bounds })
}

/// `‖[X,Y]‖_p / (‖X‖_q‖Y‖_r)`, or `None` when the denominator is below `1e-14`.
pub fn ratio(x: &ComplexMatrix, y: &ComplexMatrix, p: f64, q: f64, r: f64) -> Result<Option<f64>> {
    let c = commutator(x, y)?;
    let den = schatten(x, q) * schatten(y, r);
    Ok((den >= 1e-14).then(|| schatten(&c, p) / den))
}

/// A pair with a known commutator ratio.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub name: &'static str,
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub exact_ratio: f64,
}

/// The anti-commuting Pauli pair, `e¹²` with `e²¹`, and the rank-one/unitary
/// pair in both orders, with their closed-form ratios.
pub fn witness_families(p: f64, q: f64, r: f64) -> Result<Vec<WitnessFamily>> {
    for v in [p, q, r] {
        if !(v >= 1.0) {
            return Err(Error::InvalidNorm(format!("exponent {v} must be >= 1")));
        }
    }
    let (ip, iq, ir) = (inverse(p), inverse(q), inverse(r));
    let (a, u) = rank_one_unitary_pair();
    Ok(vec![
        WitnessFamily {
            name: "pauli",
            x: pauli_x(),
            y: pauli_z(),
            exact_ratio: 2f64.powf(1.0 + ip - iq - ir),
        },
        WitnessFamily {
            name: "e12_e21",
            x: basis_matrix(0, 1, 2)?,
            y: basis_matrix(1, 0, 2)?,
            exact_ratio: 2f64.powf(ip),
        },
        WitnessFamily {
            name: "rank_one_unitary",
            x: a.clone(),
            y: u.clone(),
            exact_ratio: 2f64.powf(1.0 - ir),
        },
        WitnessFamily {
            name: "unitary_rank_one",
            x: u,
            y: a,
            exact_ratio: 2f64.powf(1.0 - iq),
        },
    ])
}

/// `2^{max(1/p, 1−1/p, 1−1/r)}`, the conjectured `c_{p,p,r}`.
pub fn conjectured_constant(p: f64, r: f64) -> f64 {
    let ip = inverse(p);
    2f64.powf(ip.max(1.0 - ip).max(1.0 - inverse(r)))
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub best_ratio: f64,
    pub witness_x: ComplexMatrix,
    pub witness_y: ComplexMatrix,
    /// Witness family name, or the kind of random trial that found the best pair.
    pub witness_source: String,
    pub trials: usize,
    /// Trials whose denominator vanished.
    pub skipped: usize,
    /// Present when `p = q`.
    pub conjectured: Option<f64>,
    /// Set when `best_ratio` exceeds the conjectured value by more than `1e-6`.
    pub exceeds_conjecture: bool,
    pub dims_tried: Vec<usize>,
    pub seed: u64,
}

impl SearchResult {
    /// `conjectured − best_ratio`.
    pub fn gap(&self) -> Option<f64> {
        self.conjectured.map(|c| c - self.best_ratio)
    }
}

fn perturb<R: Rng>(rng: &mut R, m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.rows();
    let n = m.frobenius_norm().max(1e-300);
    let g = ginibre(rng, d, d);
    &m.scale_real(1.0 / n) + &g.scale_real(0.05 / d as f64)
}

/// Maximises `‖[X,Y]‖_p / (‖X‖_q‖Y‖_r)` over the witness families and
/// `trials` random pairs: 70% Ginibre pairs, 20% normal pairs and 10%
/// perturbations of the best pair so far. Trial `t` draws from the stream
/// `derive_seed(seed, t)`.
pub fn search_constant(p: f64, q: f64, r: f64, dims: &[usize], trials: usize, seed: u64) -> Result<SearchResult> {
    check_exponents(p, q, r)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument(format!("dims must be non-empty and positive, got {dims:?}")));
    }
    let mut best: Option<(f64, ComplexMatrix, ComplexMatrix, String)> = None;
    let consider = |best: &mut Option<(f64, ComplexMatrix, ComplexMatrix, String)>,
                    v: f64,
                    x: ComplexMatrix,
                    y: ComplexMatrix,
                    src: &str| {
        if best.as_ref().is_none_or(|b| v > b.0) {
            *best = Some((v, x, y, src.to_string()));
        }
    };
    for fam in witness_families(p, q, r)? {
        if let Some(v) = ratio(&fam.x, &fam.y, p, q, r)? {
            consider(&mut best, v, fam.x, fam.y, fam.name);
        }
    }
    let mut skipped = 0;
    let mut dims_tried: Vec<usize> = Vec::new();
    for t in 0..trials {
        let mut rng = seeded(derive_seed(seed, t as u64));
        let u: f64 = rng.random();
        let d = dims[rng.random_range(0..dims.len())];
        let (x, y, src) = if u < 0.7 {
            (ginibre(&mut rng, d, d), ginibre(&mut rng, d, d), "ginibre")
        } else if u < 0.9 {
            (normal_matrix(&mut rng, d), normal_matrix(&mut rng, d), "normal")
        } else {
            let (_, bx, by, _) = best.as_ref().expect("witness families seed the incumbent");
            (perturb(&mut rng, bx), perturb(&mut rng, by), "perturbation")
        };
        if !dims_tried.contains(&x.rows()) {
            dims_tried.push(x.rows());
        }
        match ratio(&x, &y, p, q, r)? {
            Some(v) => consider(&mut best, v, x, y, src),
            None => skipped += 1,
        }
    }
    dims_tried.sort_unstable();
    let (best_ratio, witness_x, witness_y, witness_source) = best.expect("non-empty search");
    let conjectured = (p == q).then(|| conjectured_constant(p, r));
    let exceeds_conjecture = conjectured.is_some_and(|c| best_ratio > c + 1e-6);
    Ok(SearchResult {
        p,
        q,
        r,
        best_ratio,
        witness_x,
        witness_y,
        witness_source,
        trials,
        skipped,
        conjectured,
        exceeds_conjecture,
        dims_tried,
        seed,
    })
}
