//! Unitarily invariant norms computed from singular values.
//!
//! All norms go through [`singular_values`] so that identities between
//! different norms of the same matrix hold to rounding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{constants, singular_values, ComplexMatrix, SingularSpectrum, C64};

/// A unitarily invariant norm.
///
/// `Schatten(f64::INFINITY)` is the operator norm and coincides with `KyFan(1)`.
/// `WeightedGauge(α)` is `Σ α↓_i σ_i`, with `α` sorted non-increasing internally.
#[derive(Clone, Debug, PartialEq)]
pub enum NormSpec {
    Schatten(f64),
    KyFan(usize),
    KyFanPK { p: f64, k: usize },
    WeightedGauge(Vec<f64>),
}

impl NormSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            NormSpec::Schatten(p) | NormSpec::KyFanPK { p, .. } if !(*p >= 1.0) => {
                Err(Error::InvalidNorm(format!("exponent p = {p} must be >= 1")))
            }
            NormSpec::KyFan(0) | NormSpec::KyFanPK { k: 0, .. } => {
                Err(Error::InvalidNorm("Ky Fan index k must be >= 1".into()))
            }
            NormSpec::WeightedGauge(alpha) => {
                if alpha.iter().any(|a| !(*a >= 0.0) || !a.is_finite()) {
                    Err(Error::InvalidNorm("gauge weights must be finite and >= 0".into()))
                } else if alpha.iter().all(|&a| a == 0.0) {
                    Err(Error::InvalidNorm("gauge weights must not all be zero".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Value of the norm on a given singular spectrum.
    pub fn of_spectrum(&self, s: &SingularSpectrum) -> Result<f64> {
        self.validate()?;
        let n = s.len();
        let sv = s.values();
        match self {
            NormSpec::Schatten(p) => Ok(power_sum(sv, *p)),
            NormSpec::KyFan(k) => {
                check_k(*k, n)?;
                Ok(sv[..*k].iter().sum())
            }
            NormSpec::KyFanPK { p, k } => {
                check_k(*k, n)?;
                Ok(power_sum(&sv[..*k], *p))
            }
            NormSpec::WeightedGauge(alpha) => {
                if alpha.len() < n {
                    return Err(Error::InvalidNorm(format!(
                        "gauge has {} weights, need at least {n}",
                        alpha.len()
                    )));
                }
                let mut a = alpha.clone();
                a.sort_by(|x, y| y.total_cmp(x));
                Ok(a.iter().zip(sv).map(|(w, s)| w * s).sum())
            }
        }
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k > n {
        Err(Error::InvalidNorm(format!("k = {k} exceeds min(rows, cols) = {n}")))
    } else {
        Ok(())
    }
}

/// `(Σ s_i^p)^{1/p}` for sorted non-negative `s`, with `p = ∞` giving `s_1`.
fn power_sum(s: &[f64], p: f64) -> f64 {
    let top = s.first().copied().unwrap_or(0.0);
    if p.is_infinite() || top == 0.0 {
        return top;
    }
    if p == 1.0 {
        return s.iter().sum();
    }
    if p == 2.0 {
        return s.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    // scale by the largest value so large p does not overflow
    top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Parses an exponent, accepting `inf` for infinity.
pub fn parse_exponent(s: &str) -> Result<f64> {
    let t = s.trim();
    let p = match t {
        "inf" | "Inf" | "infinity" | "∞" => f64::INFINITY,
        _ => t
            .parse::<f64>()
            .map_err(|_| Error::InvalidNorm(format!("cannot parse exponent {s:?}")))?,
    };
    if !(p >= 1.0) {
        return Err(Error::InvalidNorm(format!("exponent {s} must be >= 1")));
    }
    Ok(p)
}

fn fmt_exponent(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Schatten(p) => write!(f, "schatten:{}", fmt_exponent(*p)),
            NormSpec::KyFan(k) => write!(f, "kyfan:{k}"),
            NormSpec::KyFanPK { p, k } => write!(f, "kyfanpk:{}:{k}", fmt_exponent(*p)),
            NormSpec::WeightedGauge(a) => {
                let parts: Vec<String> = a.iter().map(|x| format!("{x}")).collect();
                write!(f, "gauge:{}", parts.join(","))
            }
        }
    }
}

/// Grammar `name[:param[:param]]`: `schatten:p`, `kyfan:k`, `kyfanpk:p:k`,
/// `gauge:a1,a2,...`; `p` may be `inf`.
impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::InvalidNorm(format!("cannot parse norm spec {s:?}"));
        let parse_k = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let spec = match parts.as_slice() {
            ["schatten", p] => NormSpec::Schatten(parse_exponent(p)?),
            ["kyfan", k] => NormSpec::KyFan(parse_k(k)?),
            ["kyfanpk", p, k] => NormSpec::KyFanPK {
                p: parse_exponent(p)?,
                k: parse_k(k)?,
            },
            ["gauge", w] => NormSpec::WeightedGauge(
                w.split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn norm(x: &ComplexMatrix, spec: &NormSpec) -> Result<f64> {
    spec.of_spectrum(&singular_values(x))
}

/// Permutation invariant vector norm, realised as the norm of `Diag(x)`.
pub fn vector_norm(x: &[C64], spec: &NormSpec) -> Result<f64> {
    let s = SingularSpectrum::from_values(x.iter().map(|z| z.norm()).collect());
    spec.of_spectrum(&s)
}

pub fn schatten(x: &ComplexMatrix, p: f64) -> f64 {
    power_sum(singular_values(x).values(), p)
}

pub fn operator_norm(x: &ComplexMatrix) -> f64 {
    singular_values(x).largest()
}

/// Ky Fan `k`-norm; `k` is capped at the number of singular values.
pub fn ky_fan(x: &ComplexMatrix, k: usize) -> f64 {
    singular_values(x).values().iter().take(k).sum()
}

/// Ky Fan `(p, k)`-norm; `k` is capped at the number of singular values.
pub fn ky_fan_pk(x: &ComplexMatrix, p: f64, k: usize) -> f64 {
    let s = singular_values(x);
    let k = k.min(s.len());
    power_sum(&s.values()[..k], p)
}

/// The sandwich `‖X‖₍₂₎/2 ≤ |||X|||/|||F||| ≤ max(‖X‖_∞, ‖X‖₁/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FRatio {
    pub lower: f64,
    pub ratio: f64,
    pub upper: f64,
}

impl FRatio {
    /// Smallest of `ratio - lower` and `upper - ratio`.
    pub fn slack(&self) -> f64 {
        (self.ratio - self.lower).min(self.upper - self.ratio)
    }
}

pub fn f_ratio_bounds(x: &ComplexMatrix, spec: &NormSpec) -> Result<FRatio> {
    let d = x.dim()?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let s = singular_values(x);
    let f = singular_values(&constants::f_matrix(d)?);
    let sv = s.values();
    Ok(FRatio {
        lower: (sv[0] + sv[1]) / 2.0,
        ratio: spec.of_spectrum(&s)? / spec.of_spectrum(&f)?,
        upper: sv[0].max(sv.iter().sum::<f64>() / 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::constants::{basis_matrix, f_matrix, pauli_x, pauli_z, rank_one_unitary_pair};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn f_matrix_schatten_norms() {
        let f = f_matrix(4).unwrap();
        for p in [1.0, 2.0, 3.0] {
            let v = norm(&f, &NormSpec::Schatten(p)).unwrap();
            assert!((v - 2f64.powf(1.0 / p)).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_ky_fan_and_commutator_frobenius() {
        assert_eq!(norm(&pauli_x(), &NormSpec::KyFan(2)).unwrap(), 2.0);
        let x = pauli_x();
        let z = pauli_z();
        let comm = &(&x * &z) - &(&z * &x);
        let v = norm(&comm, &NormSpec::Schatten(2.0)).unwrap();
        assert_eq!(v, 2.0 * std::f64::consts::SQRT_2);
    }

    #[test]
    fn rank_one_commutator_has_constant_schatten_norm() {
        let (x, y) = rank_one_unitary_pair();
        let comm = &(&x * &y) - &(&y * &x);
        for p in [1.0, 1.5, 2.0, 3.0, 7.0, f64::INFINITY] {
            assert!((norm(&comm, &NormSpec::Schatten(p)).unwrap() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn vector_norms() {
        let x = [c(1.0), c(1.0), c(0.0)];
        assert_eq!(vector_norm(&x, &NormSpec::KyFan(2)).unwrap(), 2.0);
        assert_eq!(vector_norm(&[c(3.0), c(-4.0)], &NormSpec::Schatten(2.0)).unwrap(), 5.0);
        let f = f_matrix(5).unwrap();
        let fv = constants::f_vector(5).unwrap();
        for spec in [
            NormSpec::Schatten(1.7),
            NormSpec::KyFan(3),
            NormSpec::KyFanPK { p: 3.0, k: 2 },
            NormSpec::WeightedGauge(vec![0.2, 1.0, 0.5, 0.0, 0.1]),
        ] {
            assert_eq!(vector_norm(&fv, &spec).unwrap(), norm(&f, &spec).unwrap());
        }
    }

    #[test]
    fn ratio_of_f_is_one() {
        let f = f_matrix(4).unwrap();
        let r = f_ratio_bounds(&f, &NormSpec::Schatten(3.0)).unwrap();
        assert_eq!(r.lower, 1.0);
        assert!((r.ratio - 1.0).abs() < 1e-15);
        assert_eq!(r.upper, 1.0);
    }

    #[test]
    fn basis_matrix_attains_lower_bound() {
        // singular values (1, 0): ‖e12‖₁/‖F‖₁ = 1/2 = lower
        let r = f_ratio_bounds(&basis_matrix(0, 1, 2).unwrap(), &NormSpec::Schatten(1.0)).unwrap();
        assert_eq!(r.ratio, 0.5);
        assert_eq!(r.lower, 0.5);
        assert_eq!(r.upper, 1.0);
        assert!(f_ratio_bounds(&ComplexMatrix::identity(1), &NormSpec::KyFan(1)).is_err());
    }

    #[test]
    fn k_out_of_range_is_an_error() {
        let x = pauli_x();
        assert!(norm(&x, &NormSpec::KyFan(3)).is_err());
        assert!(norm(&x, &NormSpec::KyFanPK { p: 2.0, k: 0 }).is_err());
        assert!(norm(&x, &NormSpec::WeightedGauge(vec![1.0])).is_err());
        assert!(norm(&x, &NormSpec::Schatten(0.5)).is_err());
    }

    #[test]
    fn operator_norm_is_ky_fan_one() {
        let x = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[-3.0, 0.5]]);
        assert_eq!(
            norm(&x, &NormSpec::Schatten(f64::INFINITY)).unwrap(),
            norm(&x, &NormSpec::KyFan(1)).unwrap()
        );
    }

    #[test]
    fn parse_and_display() {
        for s in ["schatten:2", "schatten:inf", "kyfan:2", "kyfanpk:2:3", "gauge:1,0.5"] {
            let spec: NormSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("schatten:inf".parse::<NormSpec>().unwrap(), NormSpec::Schatten(f64::INFINITY));
        assert!("schatten".parse::<NormSpec>().is_err());
        assert!("schatten:0.3".parse::<NormSpec>().is_err());
        assert!("frobenius:2".parse::<NormSpec>().is_err());
        assert!("gauge:0,0".parse::<NormSpec>().is_err());
    }
}
