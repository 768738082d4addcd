use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::hermitian::Hermitian;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Which matrix modulus to use: left `(X*X)^{1/2}`, right `(XX*)^{1/2}`
/// or Cartesian `((X*X + XX*)/2)^{1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModulusKind {
    L,
    R,
    C,
}

impl ModulusKind {
    pub const ALL: [ModulusKind; 3] = [ModulusKind::L, ModulusKind::R, ModulusKind::C];
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModulusKind::L => "L",
            ModulusKind::R => "R",
            ModulusKind::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for ModulusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(ModulusKind::L),
            "R" | "r" => Ok(ModulusKind::R),
            "C" | "c" => Ok(ModulusKind::C),
            other => Err(Error::InvalidArgument(format!(
                "unknown modulus kind {other:?} (expected L, R or C)"
            ))),
        }
    }
}

/// `|X|_kind²` without taking a square root.
pub fn modulus_squared(x: &ComplexMatrix, kind: ModulusKind) -> Result<Hermitian> {
    x.dim()?;
    let xh = x.adjoint();
    let m = match kind {
        ModulusKind::L => &xh * x,
        ModulusKind::R => x * &xh,
        ModulusKind::C => (&(&xh * x) + &(x * &xh)).scale_real(0.5),
    };
    Hermitian::new(m)
}

pub fn modulus(x: &ComplexMatrix, kind: ModulusKind) -> Result<Hermitian> {
    modulus_squared(x, kind)?.psd_sqrt()
}

/// Hermitian parts `A = (X + X*)/2`, `B = (X − X*)/(2i)` with `X = A + iB`.
pub fn cartesian_parts(x: &ComplexMatrix) -> Result<(Hermitian, Hermitian)> {
    x.dim()?;
    let xh = x.adjoint();
    let a = (x + &xh).scale_real(0.5);
    let b = (x - &xh).scale(C64::new(0.0, -0.5));
    Ok((Hermitian::new(a)?, Hermitian::new(b)?))
}

/// `Re(e^{iθ} X) = (e^{iθ}X + e^{−iθ}X*)/2`.
pub fn rotated_real_part(x: &ComplexMatrix, theta: f64) -> Result<Hermitian> {
    let rotated = x.scale(C64::from_polar(1.0, theta));
    Ok(cartesian_parts(&rotated)?.0)
}
