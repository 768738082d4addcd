use super::matrix::{inner, ComplexMatrix, C64};

const MAX_SWEEPS: usize = 80;

/// Singular values sorted non-increasing, `σ₁ ≥ σ₂ ≥ … ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum(Vec<f64>);

impl SingularSpectrum {
    /// Sorts the given non-negative values; negative noise is clamped to zero.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            *v = v.max(0.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }

    /// `σ_i` with 1-based index, zero past the end.
    pub fn get(&self, i: usize) -> f64 {
        self.0.get(i - 1).copied().unwrap_or(0.0)
    }
}

/// Singular values of `x` by one-sided (Hestenes) Jacobi.
///
/// The rotations are the Jacobi rotations of `X*X` applied implicitly to the
/// columns of `X`, so small singular values keep full relative accuracy.
pub fn singular_values(x: &ComplexMatrix) -> SingularSpectrum {
    let work = if x.rows() >= x.cols() {
        x.clone()
    } else {
        x.adjoint()
    };
    let m = work.rows();
    let n = work.cols();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| work.column(j)).collect();
    let tol = f64::EPSILON * m as f64;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[i], &cols[j]);
                let g = gamma.norm();
                if g < f64::MIN_POSITIVE || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let (left, right) = cols.split_at_mut(j);
                for (a, b) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let bi = *b * phase;
                    let ai = *a;
                    *a = ai * c - bi * s;
                    *b = ai * s + bi * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    SingularSpectrum::from_values(
        cols.iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect(),
    )
}
