//! Seeded property suites behind `varbound verify`. Every check records one
//! outcome per trial, so `pass + fail = trials` for each entry of the report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::commutator::{
    cauchy_schwarz_slack, commutator, evaluate_bounds, inverse, proof_identity_residual, ratio, search_constant,
    witness_families, CHAIN,
};
use crate::error::{Error, Result};
use crate::linalg::constants::basis_matrix;
use crate::linalg::random::{self, derive_seed, seeded, SeededRng};
use crate::linalg::{modulus, modulus_squared, singular_values, Hermitian, ModulusKind, C64};
use crate::norms::{ky_fan, ky_fan_pk, norm, schatten, vector_norm, NormSpec};
use crate::radii::{central_numerical_radius, normal_eigenvalues, numerical_radius, quantum_variance, radius};
use crate::scalar::{self, PointSet, ProbVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Scalar,
    Norms,
    Radii,
    Commutator,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["scalar", "norms", "radii", "commutator", "all"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Scalar, Suite::Norms, Suite::Radii, Suite::Commutator],
            s => vec![s],
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(Self::NAMES[*self as usize])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" => Ok(Suite::Scalar),
            "norms" => Ok(Suite::Norms),
            "radii" => Ok(Suite::Radii),
            "commutator" => Ok(Suite::Commutator),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!(
                "unknown suite '{s}', expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub trials: usize,
    pub dim_max: usize,
    pub seed: u64,
    /// Base tolerance. Every pinned check tolerance is scaled by `tol / 1e-9`.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            trials: 100,
            dim_max: 8,
            seed: 0,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub pass: usize,
    pub fail: usize,
    /// Smallest observed `bound − value` (or `−error` for equalities).
    pub worst_slack: f64,
    /// First failing trial, or the counterexample for guard checks.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckReport>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.fail).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }
}

struct Tally {
    report: CheckReport,
    tol: f64,
}

impl Tally {
    fn new(id: &str, tol: f64) -> Self {
        Self {
            report: CheckReport {
                id: id.to_string(),
                pass: 0,
                fail: 0,
                worst_slack: f64::INFINITY,
                witness: None,
            },
            tol,
        }
    }

    fn record(&mut self, slack: Result<f64>, loc: &str) {
        match slack {
            Ok(s) if s.is_finite() || s == f64::INFINITY => {
                self.report.worst_slack = self.report.worst_slack.min(s);
                if s >= -self.tol {
                    self.report.pass += 1;
                } else {
                    self.fail(format!("{loc} (slack {s:e})"));
                }
            }
            Ok(s) => self.fail(format!("{loc} (slack {s})")),
            Err(e) => self.fail(format!("{loc} ({e})")),
        }
    }

    fn fail(&mut self, witness: String) {
        self.report.fail += 1;
        self.report.witness.get_or_insert(witness);
    }

    fn finish(mut self) -> CheckReport {
        if !self.report.worst_slack.is_finite() {
            self.report.worst_slack = 0.0;
        }
        self.report
    }
}

/// Per-suite trial context: one RNG stream per trial and the scaled tolerances.
struct Ctx {
    seed: u64,
    dim_max: usize,
    scale: f64,
}

impl Ctx {
    fn rng(&self, suite: Suite, trial: usize) -> SeededRng {
        seeded(derive_seed(derive_seed(self.seed, suite.tag()), trial as u64))
    }

    fn tol(&self, pinned: f64) -> f64 {
        pinned * self.scale
    }

    fn dim(&self, rng: &mut SeededRng, lo: usize, hi: usize) -> usize {
        let hi = hi.min(self.dim_max).max(lo);
        rng.random_range(lo..=hi)
    }
}

fn min_all(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(f64::INFINITY, f64::min)
}

/// Runs the configured suites.
pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if cfg.dim_max == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {}", cfg.tol)));
    }
    let start = Instant::now();
    let ctx = Ctx {
        seed: cfg.seed,
        dim_max: cfg.dim_max,
        scale: cfg.tol / 1e-9,
    };
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for suite in cfg.suite.parts() {
        let tallies = match suite {
            Suite::Scalar => scalar_suite(&ctx, cfg.trials),
            Suite::Norms => norms_suite(&ctx, cfg.trials),
            Suite::Radii => radii_suite(&ctx, cfg.trials, &mut warnings),
            Suite::Commutator => commutator_suite(&ctx, cfg.trials),
            Suite::All => unreachable!(),
        };
        checks.extend(tallies.into_iter().map(Tally::finish));
    }
    Ok(VerifyReport {
        suite: cfg.suite.to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
        warnings,
    })
}

fn f_vector_norm(spec: &NormSpec, n: usize) -> Result<f64> {
    let mut f = vec![C64::new(0.0, 0.0); n.max(2)];
    f[0] = C64::new(1.0, 0.0);
    f[1] = C64::new(1.0, 0.0);
    vector_norm(&f, spec)
}

fn scalar_suite(ctx: &Ctx, trials: usize) -> Vec<Tally> {
    let mut chain = Tally::new("scalar.variance_chain", ctx.tol(1e-9));
    let mut invariance = Tally::new("scalar.circle_invariance", ctx.tol(1e-10));
    let mut ms = Tally::new("scalar.murthy_sethi", ctx.tol(1e-6));
    let mut two = Tally::new("scalar.two_largest_radius", ctx.tol(1e-7));
    let mut maxvar = Tally::new("scalar.max_variance", ctx.tol(1e-9));
    let mut stationarity = Tally::new("scalar.mean_stationarity", ctx.tol(1e-10));
    for t in 0..trials {
        let mut rng = ctx.rng(Suite::Scalar, t);
        let n = ctx.dim(&mut rng, 2, 10);
        let loc = format!("trial {t}, n = {n}");
        let raw = random::point_set(&mut rng, n);
        let pts = match PointSet::new(raw.clone()) {
            Ok(p) => p,
            Err(e) => {
                for tally in [&mut chain, &mut invariance, &mut ms, &mut two, &mut maxvar, &mut stationarity] {
                    tally.record(Err(e.clone()), &loc);
                }
                continue;
            }
        };
        let r = scalar::radius(&pts);

        let mut specs: Vec<NormSpec> = [1.0, 1.5, 2.0, 3.0, f64::INFINITY].into_iter().map(NormSpec::Schatten).collect();
        specs.extend((1..=n).map(NormSpec::KyFan));
        specs.push(NormSpec::WeightedGauge(random::prob_vector(&mut rng, n)));
        let probs: Vec<Vec<f64>> = (0..200).map(|_| random::prob_vector(&mut rng, n)).collect();
        chain.record(
            (|| {
                let kf2 = vector_norm(pts.points(), &NormSpec::KyFan(2))? / 2.0;
                let mut slack = kf2 - r;
                for p in &probs {
                    let sd = scalar::variance(&pts, &ProbVector::new(p.clone())?)?.sqrt();
                    slack = slack.min(r - sd);
                }
                for spec in &specs {
                    slack = slack.min(vector_norm(pts.points(), spec)? / f_vector_norm(spec, n)? - kf2);
                }
                Ok(slack)
            })(),
            &loc,
        );

        let w = random::complex_gaussian(&mut rng) * 3.0;
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let s: f64 = rng.random_range(-4.0..4.0);
        invariance.record(
            (|| {
                let shifted = scalar::radius(&pts.map(|z| z + w)?);
                let rotated = scalar::radius(&pts.map(|z| z * C64::from_polar(1.0, theta))?);
                let scaled = scalar::radius(&pts.map(|z| z * s)?);
                let tol = 1.0 + pts.scale() + w.norm();
                Ok(-[(shifted - r).abs(), (rotated - r).abs(), (scaled - s.abs() * r).abs() / (1.0 + s.abs())]
                    .into_iter()
                    .fold(0.0, f64::max)
                    / tol)
            })(),
            &loc,
        );

        let dr = rng.random_range(2..=4usize);
        let reals: Vec<f64> = (0..dr).map(|_| rng.random_range(-3.0..3.0)).collect();
        let rp = random::prob_vector(&mut rng, dr);
        ms.record(
            (|| {
                let m = reals.iter().cloned().fold(f64::INFINITY, f64::min);
                let big_m = reals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let v = scalar::variance(&PointSet::from_real(&reals)?, &ProbVector::new(rp.clone())?)?;
                Ok(scalar::murthy_sethi_bound(m, big_m)? - v)
            })(),
            &format!("trial {t}, real points {reals:?}"),
        );

        two.record(
            (|| {
                let mut worst: f64 = 0.0;
                for p in [1.0, 2.0, 4.0] {
                    worst = worst.max((scalar::two_largest_radius(&pts, p)?.value - r).abs());
                }
                Ok(-worst)
            })(),
            &loc,
        );

        maxvar.record(
            scalar::max_variance_distribution(&pts).map(|(_, v)| -(v - r * r).abs() / (1.0 + pts.scale().powi(2))),
            &loc,
        );

        let p = random::prob_vector(&mut rng, n);
        let q = random::prob_vector(&mut rng, n);
        stationarity.record(
            (|| {
                let pv = ProbVector::new(p.clone())?;
                let mu_p = scalar::mean(&pts, &pv)?;
                let mu_q = scalar::mean(&pts, &ProbVector::new(q.clone())?)?;
                let at = |mu: C64| -> f64 { pts.points().iter().zip(&p).map(|(x, w)| w * (x - mu).norm_sqr()).sum() };
                Ok((at(mu_q) - at(mu_p)) / (1.0 + pts.scale().powi(2)))
            })(),
            &loc,
        );
    }
    vec![chain, invariance, ms, two, maxvar, stationarity]
}

fn norm_grid(rng: &mut SeededRng, d: usize) -> Vec<NormSpec> {
    let mut specs: Vec<NormSpec> = [1.0, 1.5, 2.0, 3.0, f64::INFINITY].into_iter().map(NormSpec::Schatten).collect();
    specs.extend((1..=d).map(NormSpec::KyFan));
    specs.push(NormSpec::KyFanPK { p: 2.5, k: d.min(2) });
    specs.push(NormSpec::WeightedGauge(random::prob_vector(rng, d)));
    specs
}

fn norms_suite(ctx: &Ctx, trials: usize) -> Vec<Tally> {
    let mut unitary = Tally::new("norms.unitary_invariance", ctx.tol(1e-9));
    let mut triangle = Tally::new("norms.triangle_homogeneity", ctx.tol(1e-9));
    let mut kyfan = Tally::new("norms.ky_fan_consistency", ctx.tol(1e-9));
    let mut sandwich = Tally::new("norms.f_ratio_sandwich", ctx.tol(1e-9));
    let mut kf_chain = Tally::new("norms.ky_fan_schatten_chain", ctx.tol(1e-9));
    let mut bk = Tally::new("norms.bhatia_kittaneh", ctx.tol(1e-9));
    let mut cart = Tally::new("norms.cartesian_ky_fan", ctx.tol(1e-9));
    let mut moduli = Tally::new("norms.left_right_moduli", ctx.tol(1e-9));
    for t in 0..trials {
        let mut rng = ctx.rng(Suite::Norms, t);
        let d = ctx.dim(&mut rng, 2, 12);
        let loc = format!("trial {t}, d = {d}");
        let x = random::ginibre(&mut rng, d, d);
        let y = random::ginibre(&mut rng, d, d);
        let u = random::unitary(&mut rng, d);
        let v = random::unitary(&mut rng, d);
        let a = random::complex_gaussian(&mut rng);
        let specs = norm_grid(&mut rng, d);
        let scale = 1.0 + schatten(&x, 2.0);

        unitary.record(
            (|| {
                let uxv = &(&u * &x) * &v;
                let mut worst: f64 = 0.0;
                for spec in &specs {
                    worst = worst.max((norm(&uxv, spec)? - norm(&x, spec)?).abs());
                }
                Ok(-worst / scale)
            })(),
            &loc,
        );

        triangle.record(
            (|| {
                let sum = &x + &y;
                let ax = x.scale(a);
                let mut slack = f64::INFINITY;
                for spec in &specs {
                    let (nx, ny) = (norm(&x, spec)?, norm(&y, spec)?);
                    slack = slack.min((nx + ny - norm(&sum, spec)?) / (1.0 + nx + ny));
                    slack = slack.min(-(norm(&ax, spec)? - a.norm() * nx).abs() / (1.0 + a.norm() * nx));
                }
                Ok(slack)
            })(),
            &loc,
        );

        kyfan.record(
            Ok({
                let s = singular_values(&x);
                let mut slack = f64::INFINITY;
                for k in 1..d {
                    slack = slack.min(ky_fan(&x, k + 1) - ky_fan(&x, k));
                }
                for k in 1..=d {
                    let direct = s.values()[..k].iter().map(|v| v.powf(2.5)).sum::<f64>().powf(1.0 / 2.5);
                    slack = slack.min(-(ky_fan_pk(&x, 2.5, k) - direct).abs() / scale);
                }
                slack
            }),
            &loc,
        );

        sandwich.record(
            (|| {
                let mut slack = f64::INFINITY;
                for spec in &specs {
                    slack = slack.min(crate::norms::f_ratio_bounds(&x, spec)?.slack());
                }
                Ok(slack)
            })(),
            &loc,
        );

        kf_chain.record(
            Ok({
                let kf = ky_fan_pk(&x, 2.0, 2) / std::f64::consts::SQRT_2;
                let upper = (schatten(&x, 2.0) / std::f64::consts::SQRT_2).max(schatten(&x, f64::INFINITY));
                let mut slack = f64::INFINITY;
                for p in [2.0, 3.0, 4.0, f64::INFINITY] {
                    let ratio = schatten(&x, p) / 2f64.powf(inverse(p));
                    slack = slack.min(ratio - kf).min(upper - ratio);
                }
                slack
            }),
            &loc,
        );

        bk.record(
            (|| {
                let c = modulus(&x, ModulusKind::C)?.into_matrix();
                let mut slack = f64::INFINITY;
                for p in [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY] {
                    let (nc, nx) = (schatten(&c, p), schatten(&x, p));
                    let f = 2f64.powf((0.5 - inverse(p)).abs());
                    if p >= 2.0 {
                        slack = slack.min(nx - nc).min(f * nc - nx);
                    } else {
                        slack = slack.min(nc - nx).min(f * nx - nc);
                    }
                }
                Ok(slack)
            })(),
            &loc,
        );

        cart.record(
            (|| {
                let c = modulus(&x, ModulusKind::C)?.into_matrix();
                Ok(min_all((1..=d).map(|k| ky_fan_pk(&x, 2.0, k) - ky_fan_pk(&c, 2.0, k))))
            })(),
            &loc,
        );

        moduli.record(
            (|| {
                let l = modulus(&x, ModulusKind::L)?.eigenvalues()?;
                let r = modulus(&x, ModulusKind::R)?.eigenvalues()?;
                let lr = l.iter().zip(&r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                let c2 = modulus_squared(&x, ModulusKind::C)?.into_matrix();
                let l2 = modulus_squared(&x, ModulusKind::L)?.into_matrix();
                let r2 = modulus_squared(&x, ModulusKind::R)?.into_matrix();
                let avg = (&l2 + &r2).scale_real(0.5);
                Ok(-(lr.max((&c2 - &avg).max_abs())) / scale)
            })(),
            &loc,
        );
    }
    vec![unitary, triangle, kyfan, sandwich, kf_chain, bk, cart, moduli]
}

fn radii_suite(ctx: &Ctx, trials: usize, warnings: &mut Vec<String>) -> Vec<Tally> {
    let mut duality = Tally::new("radii.duality", ctx.tol(1e-5));
    let mut ordering = Tally::new("radii.ordering", ctx.tol(1e-8));
    let mut membership = Tally::new("radii.center_membership", ctx.tol(1e-7));
    let mut nonnormal = Tally::new("radii.nonnormal_bounds", ctx.tol(1e-9));
    let mut normal = Tally::new("radii.normal_reduction", ctx.tol(1e-7));
    let mut numrad = Tally::new("radii.numerical_radius", ctx.tol(1e-9));
    let mut central = Tally::new("radii.central_radius", ctx.tol(1e-7));
    let mut shift = Tally::new("radii.shift_covariance", ctx.tol(1e-7));
    let mut concavity = Tally::new("radii.cartesian_concavity", ctx.tol(1e-9));
    let mut sharp = Tally::new("radii.basis_matrix_equality", ctx.tol(1e-6));
    let mut guard = Tally::new("radii.cartesian_ky_fan_guard", f64::INFINITY);
    let e12 = basis_matrix(0, 1, 2).expect("valid basis matrix");
    for t in 0..trials {
        let mut rng = ctx.rng(Suite::Radii, t);
        let d = ctx.dim(&mut rng, 1, 8);
        let loc = format!("trial {t}, d = {d}");
        let x = random::ginibre(&mut rng, d, d);
        let radii: Result<Vec<_>> = ModulusKind::ALL.iter().map(|&k| radius(&x, k)).collect();

        match &radii {
            Ok(r) => {
                duality.record(
                    Ok(min_all(r.iter().map(|ri| {
                        let v2 = ri.value * ri.value;
                        -(ri.primal_value - v2).abs() / (1.0 + v2)
                    }))),
                    &loc,
                );
                ordering.record(
                    Ok((-(r[0].value - r[1].value).abs()).min(r[0].value - r[2].value)),
                    &loc,
                );
                membership.record(Ok(min_all(r.iter().map(|ri| ri.membership_margin))), &loc);
                nonnormal.record(
                    Ok({
                        let mut slack = (schatten(&x, f64::INFINITY) - r[0].value)
                            .min(ky_fan_pk(&x, 2.0, 2.min(d)) / std::f64::consts::SQRT_2 - r[2].value);
                        for p in [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY] {
                            let f = if p >= 2.0 { 2f64.powf(-inverse(p)) } else { std::f64::consts::FRAC_1_SQRT_2 };
                            slack = slack.min(f * schatten(&x, p) - r[2].value);
                        }
                        slack
                    }),
                    &loc,
                );
            }
            Err(e) => {
                for tally in [&mut duality, &mut ordering, &mut membership, &mut nonnormal] {
                    tally.record(Err(e.clone()), &loc);
                }
            }
        }

        let xn = random::normal_matrix(&mut rng, d);
        let rank = rng.random_range(1..=d);
        let rho = random::density(&mut rng, d, rank);
        normal.record(
            (|| {
                let spectrum = PointSet::new(normal_eigenvalues(&xn)?)?;
                let planar = scalar::radius(&spectrum);
                let mut slack = f64::INFINITY;
                let mut rn = 0.0;
                for kind in ModulusKind::ALL {
                    rn = radius(&xn, kind)?.value;
                    slack = slack.min(-(rn - planar).abs());
                }
                let var = quantum_variance(&xn, &rho?, ModulusKind::C)?;
                slack = slack.min(rn + 1e-9 - var.max(0.0).sqrt());
                if d >= 2 {
                    let kf2 = ky_fan(&xn, 2) / 2.0;
                    slack = slack.min(kf2 - rn);
                    for p in [1.0, 2.0, 3.0, f64::INFINITY] {
                        slack = slack.min(2f64.powf(-inverse(p)) * schatten(&xn, p) - kf2);
                    }
                }
                Ok(slack)
            })(),
            &loc,
        );

        numrad.record(
            (|| {
                let w = numerical_radius(&x)?;
                Ok(modulus(&x, ModulusKind::C)?.lambda_max()? - w)
            })(),
            &loc,
        );

        central.record(
            (|| {
                let rw = central_numerical_radius(&x)?;
                let rc = radii.as_ref().map_err(Clone::clone)?[2].value;
                Ok(rc - rw.value)
            })(),
            &loc,
        );

        let w = random::complex_gaussian(&mut rng);
        let kind = ModulusKind::ALL[t % 3];
        let rho2 = random::density(&mut rng, d, d);
        shift.record(
            (|| {
                let base = radii.as_ref().map_err(Clone::clone)?[t % 3].value;
                let moved = radius(&x.shift(-w), kind)?.value;
                let rho2 = rho2?;
                let dv = quantum_variance(&x.shift(-w), &rho2, kind)? - quantum_variance(&x, &rho2, kind)?;
                Ok((-(moved - base).abs()).min(-dv.abs() * 1e3))
            })(),
            &loc,
        );

        let a = random::hermitian(&mut rng, d);
        let b = random::hermitian(&mut rng, d);
        let rank3 = rng.random_range(1..=d);
        let rho3 = random::density(&mut rng, d, rank3);
        concavity.record(
            (|| {
                let rho3 = rho3?;
                let lhs = a.expectation(&rho3).hypot(b.expectation(&rho3));
                let sum = Hermitian::new(a.square().matrix() + b.square().matrix())?;
                Ok(sum.psd_sqrt()?.expectation(&rho3) - lhs)
            })(),
            &loc,
        );

        let p: f64 = rng.random_range(1.0..=2.0);
        sharp.record(
            radius(&e12, ModulusKind::C)
                .map(|rc| -(rc.value - std::f64::consts::FRAC_1_SQRT_2 * schatten(&e12, p)).abs()),
            &format!("trial {t}, p = {p}"),
        );

        let dg = rng.random_range(3..=6usize);
        let xg = random::ginibre(&mut rng, dg, dg);
        let g = (|| {
            let c = modulus(&xg, ModulusKind::C)?.into_matrix();
            Ok(ky_fan(&c, 2) / 2.0 - radius(&xg, ModulusKind::C)?.value)
        })();
        if let Ok(s) = g {
            if s < -1e-9 && guard.report.witness.is_none() {
                guard.report.witness = Some(format!("trial {t}, d = {dg}, r_C exceeds half the Cartesian Ky Fan 2-norm by {:e}", -s));
            }
        }
        guard.record(g, &format!("trial {t}, d = {dg}"));
    }
    if guard.report.witness.is_none() {
        warnings.push(format!(
            "radii.cartesian_ky_fan_guard: no sample with r_C > ||X|_C||_(2)/2 in {trials} trials"
        ));
    }
    vec![duality, ordering, membership, nonnormal, normal, numrad, central, shift, concavity, sharp, guard]
}

const EXPONENTS: [f64; 6] = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];

fn commutator_suite(ctx: &Ctx, trials: usize) -> Vec<Tally> {
    let mut bw = Tally::new("commutator.bottcher_wenzel", ctx.tol(1e-9));
    let mut sharp = Tally::new("commutator.bottcher_wenzel_sharpness", ctx.tol(1e-9));
    let mut identity = Tally::new("commutator.proof_identity", ctx.tol(1e-9));
    let mut cs = Tally::new("commutator.cauchy_schwarz", ctx.tol(1e-10));
    let mut chain = Tally::new("commutator.variance_chain", ctx.tol(1e-8));
    let mut kf_chain = Tally::new("commutator.ky_fan_chain", ctx.tol(1e-9));
    let mut holder = Tally::new("commutator.holder", ctx.tol(1e-9));
    let mut inflation = Tally::new("commutator.tensor_inflation", ctx.tol(1e-9));
    let mut witnesses = Tally::new("commutator.witness_families", ctx.tol(1e-10));
    let mut determinism = Tally::new("commutator.search_determinism", 0.0);
    for t in 0..trials {
        let mut rng = ctx.rng(Suite::Commutator, t);
        let d = ctx.dim(&mut rng, 1, 12);
        let loc = format!("trial {t}, d = {d}");
        let x = random::ginibre(&mut rng, d, d);
        let y = random::ginibre(&mut rng, d, d);
        let (x2, y2) = (schatten(&x, 2.0), schatten(&y, 2.0));

        let c2 = commutator(&x, &y).map(|c| schatten(&c, 2.0));
        bw.record(c2.clone().map(|c| std::f64::consts::SQRT_2 * x2 * y2 - c), &loc);

        sharp.record(
            (|| {
                let mut best = c2.clone()? / (x2 * y2);
                for f in witness_families(2.0, 2.0, 2.0)? {
                    best = best.max(ratio(&f.x, &f.y, 2.0, 2.0, 2.0)?.unwrap_or(0.0));
                }
                Ok(-(best - std::f64::consts::SQRT_2).abs())
            })(),
            &loc,
        );

        identity.record(
            proof_identity_residual(&x, &y).map(|r| -r / (1.0 + x2 * x2 * y2 * y2)),
            &loc,
        );
        cs.record(cauchy_schwarz_slack(&x, &y).map(|s| s / (1.0 + x2 * x2 * y2)), &loc);

        let dc = d.min(8);
        let xc = random::ginibre(&mut rng, dc, dc);
        let yc = if rng.random_bool(0.5) {
            random::ginibre(&mut rng, dc, dc)
        } else {
            random::normal_matrix(&mut rng, dc)
        };
        let rc = EXPONENTS[rng.random_range(0..EXPONENTS.len())];
        chain.record(
            (|| {
                let rep = evaluate_bounds(&xc, &yc, 2.0, 2.0, rc)?;
                let mut slack = min_all(rep.bounds.iter().map(|b| b.slack));
                let values: Vec<f64> = CHAIN.iter().filter_map(|n| rep.get(n).map(|b| b.value)).collect();
                for w in values.windows(2) {
                    slack = slack.min(w[1] - w[0]);
                }
                Ok(slack)
            })(),
            &format!("{loc}, r = {rc}"),
        );

        kf_chain.record(
            c2.clone().map(|c| {
                let kf = std::f64::consts::SQRT_2 * x2 * ky_fan_pk(&y, 2.0, 2.min(d));
                let mut slack = kf - c;
                for p in [1.0, 2.0, 4.0, f64::INFINITY] {
                    slack = slack.min(2f64.powf(0.5f64.max(1.0 - inverse(p))) * x2 * schatten(&y, p) - kf);
                }
                slack
            }),
            &loc,
        );

        let p = [1.0, 1.5, 2.0, 3.0][rng.random_range(0..4)];
        let q = loop {
            let q = EXPONENTS[rng.random_range(0..EXPONENTS.len())];
            if inverse(q) <= inverse(p) {
                break q;
            }
        };
        let ir = inverse(p) - inverse(q);
        let r = if ir == 0.0 { f64::INFINITY } else { 1.0 / ir };
        holder.record(
            commutator(&x, &y).map(|c| 2.0 * schatten(&x, q) * schatten(&y, r) - schatten(&c, p)),
            &format!("{loc}, (p, q, r) = ({p}, {q}, {r})"),
        );

        let di = d.min(4);
        let xi = random::ginibre(&mut rng, di, di);
        let yi = random::ginibre(&mut rng, di, di);
        let big_d = rng.random_range(2..=3usize);
        inflation.record(
            (|| {
                let base = ratio(&xi, &yi, p, q, r)?.unwrap_or(0.0);
                let big = ratio(&xi.kron_identity(big_d), &yi.kron_identity(big_d), p, q, r)?.unwrap_or(0.0);
                let scale = (big_d as f64).powf(inverse(p) - inverse(q) - inverse(r));
                Ok(-(big - base * scale).abs() / (1.0 + big))
            })(),
            &format!("{loc}, D = {big_d}"),
        );

        let (wp, wq, wr) = (
            EXPONENTS[rng.random_range(0..EXPONENTS.len())],
            EXPONENTS[rng.random_range(0..EXPONENTS.len())],
            EXPONENTS[rng.random_range(0..EXPONENTS.len())],
        );
        witnesses.record(
            (|| {
                let mut worst: f64 = 0.0;
                for f in witness_families(wp, wq, wr)? {
                    let got = ratio(&f.x, &f.y, wp, wq, wr)?.unwrap_or(f64::NAN);
                    worst = worst.max((got - f.exact_ratio).abs());
                }
                Ok(-worst)
            })(),
            &format!("trial {t}, (p, q, r) = ({wp}, {wq}, {wr})"),
        );

        let sseed: u64 = rng.random();
        determinism.record(
            (|| {
                let a = search_constant(1.5, 1.5, 2.0, &[2, 3], 4, sseed)?;
                let b = search_constant(1.5, 1.5, 2.0, &[2, 3], 4, sseed)?;
                let same = a.best_ratio.to_bits() == b.best_ratio.to_bits()
                    && a.witness_x == b.witness_x
                    && a.witness_y == b.witness_y;
                Ok(if same { 0.0 } else { -1.0 })
            })(),
            &format!("trial {t}, search seed {sseed}"),
        );
    }
    vec![bw, sharp, identity, cs, chain, kf_chain, holder, inflation, witnesses, determinism]
}
