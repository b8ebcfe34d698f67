//! Poincaré polynomials of the atomic spaces the pipelines are built from.
//!
//! Hilbert schemes of points on the plane come from the generating product
//!
//! ```text
//! sum_n P(Hilb^n) z^n = prod_{m>=1} 1 / ((1 - q^{m-1} z^m)(1 - q^m z^m)(1 - q^{m+1} z^m))
//! ```
//!
//! truncated at `z^n`. The [`euler`] submodule computes the same spaces'
//! Euler numbers by integer recurrences that never touch a polynomial.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{QPoly, QZSeries};
use crate::extcalc::in_bundle_regime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("B({d},{n}) is outside the projective-bundle regime (need 0 <= n <= d+1, d >= 1)")]
    OutsideBundleRegime { d: i64, n: i64 },
    #[error("no catalog entry for the sheaf moduli M({d},{chi})")]
    NoSheafModuli { d: i64, chi: i64 },
    #[error("invalid space parameters: {0}")]
    Invalid(String),
}

/// Which atomic space a [`SpaceClass`] describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceLabel {
    Point,
    Projective { n: i64 },
    Hilbert { n: i64 },
    RelativeHilbert { d: i64, n: i64 },
    Grassmannian { n: i64, k: i64 },
    SheafModuli { d: i64, chi: i64 },
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceLabel::Point => write!(f, "pt"),
            SpaceLabel::Projective { n } => write!(f, "P^{n}"),
            SpaceLabel::Hilbert { n } => write!(f, "Hilb^{n}(P^2)"),
            SpaceLabel::RelativeHilbert { d, n } => write!(f, "B({d},{n})"),
            SpaceLabel::Grassmannian { n, k } => write!(f, "Gr({k},{n})"),
            SpaceLabel::SheafModuli { d, chi } => write!(f, "M({d},{chi})"),
        }
    }
}

/// A named space with its Poincaré polynomial and complex dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceClass {
    pub label: SpaceLabel,
    pub poincare: QPoly,
    pub dim: i64,
}

impl SpaceClass {
    pub fn point() -> Self {
        SpaceClass { label: SpaceLabel::Point, poincare: QPoly::one(), dim: 0 }
    }

    pub fn projective(n: i64) -> Result<Self, CatalogError> {
        let poincare = QPoly::projective(n).map_err(|e| CatalogError::Invalid(e.to_string()))?;
        Ok(SpaceClass { label: SpaceLabel::Projective { n }, poincare, dim: n })
    }

    pub fn hilbert(n: i64) -> Result<Self, CatalogError> {
        let size = usize::try_from(n).map_err(|_| CatalogError::Invalid(format!("Hilb^{n}")))?;
        Ok(SpaceClass { label: SpaceLabel::Hilbert { n }, poincare: hilb_poincare(size), dim: 2 * n })
    }

    pub fn relative_hilbert(d: i64, n: i64) -> Result<Self, CatalogError> {
        let poincare = relhilb_poincare(d, n)?;
        let dim = relhilb_fiber_dim(d, n) + 2 * n;
        Ok(SpaceClass { label: SpaceLabel::RelativeHilbert { d, n }, poincare, dim })
    }

    pub fn grassmannian(n: i64, k: i64) -> Result<Self, CatalogError> {
        let poincare =
            QPoly::gaussian_binomial(n, k).map_err(|e| CatalogError::Invalid(e.to_string()))?;
        Ok(SpaceClass { label: SpaceLabel::Grassmannian { n, k }, poincare, dim: k * (n - k) })
    }

    pub fn sheaf_moduli(d: i64, chi: i64) -> Result<Self, CatalogError> {
        let poincare = sheaf_moduli_poincare(d, chi)?;
        Ok(SpaceClass { label: SpaceLabel::SheafModuli { d, chi }, poincare, dim: d * d + 1 })
    }

    pub fn euler(&self) -> BigInt {
        self.poincare.eval_at_one()
    }
}

/// Poincaré polynomial of the Hilbert scheme of `n` points on the plane.
pub fn hilb_poincare(n: usize) -> QPoly {
    let mut product = QZSeries::one(n);
    for m in 1..=n {
        for shift in [m - 1, m, m + 1] {
            product = product
                .mul(&QZSeries::geometric(n, shift, m))
                .expect("all factors share the truncation order");
        }
    }
    product.coeff(n).cloned().expect("order n keeps z^n")
}

/// Dimension of the fiber of `B(d, n) -> Hilb^n`: `C(d+2, 2) - n - 1`.
pub fn relhilb_fiber_dim(d: i64, n: i64) -> i64 {
    (d + 2) * (d + 1) / 2 - n - 1
}

fn check_bundle(d: i64, n: i64) -> Result<(), CatalogError> {
    if d < 1 || n < 0 || n > d + 1 {
        return Err(CatalogError::OutsideBundleRegime { d, n });
    }
    // the same bound phrased through chi
    let chi = n + d * (3 - d) / 2;
    debug_assert!(in_bundle_regime(d, chi));
    Ok(())
}

/// Poincaré polynomial of the relative Hilbert scheme `B(d, n)` of `n` points
/// on degree-`d` plane curves, a `P^{C(d+2,2)-n-1}`-bundle over `Hilb^n`.
pub fn relhilb_poincare(d: i64, n: i64) -> Result<QPoly, CatalogError> {
    check_bundle(d, n)?;
    let fiber = QPoly::projective(relhilb_fiber_dim(d, n)).expect("fiber dimension >= 0");
    Ok(fiber * hilb_poincare(n as usize))
}

/// Poincaré polynomial of the moduli of stable sheaves `M(d, chi)` for the
/// two degrees the pipelines need: lines (`P^2` for every `chi`) and conics
/// with odd `chi` (`P^5`).
pub fn sheaf_moduli_poincare(d: i64, chi: i64) -> Result<QPoly, CatalogError> {
    match d {
        1 => Ok(QPoly::projective(2).expect("valid")),
        2 if chi.rem_euclid(2) == 1 => Ok(QPoly::projective(5).expect("valid")),
        _ => Err(CatalogError::NoSheafModuli { d, chi }),
    }
}

/// Euler numbers of the same spaces by integer arithmetic alone.
pub mod euler {
    use num_bigint::BigInt;
    use num_traits::Zero;

    use super::{check_bundle, relhilb_fiber_dim, CatalogError};

    pub fn projective(n: i64) -> BigInt {
        BigInt::from((n + 1).max(0))
    }

    /// Coefficient of `z^n` in `prod_m (1 - z^m)^{-3}`, from the recurrence
    /// `n a_n = sum_{k=1}^n 3 sigma(k) a_{n-k}`.
    pub fn hilbert(n: usize) -> BigInt {
        let sigma = |k: usize| -> BigInt { (1..=k).filter(|j| k.is_multiple_of(*j)).sum::<usize>().into() };
        let mut a: Vec<BigInt> = vec![BigInt::from(1)];
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for k in 1..=m {
                acc += 3 * sigma(k) * &a[m - k];
            }
            a.push(acc / m);
        }
        a.swap_remove(n)
    }

    pub fn relative_hilbert(d: i64, n: i64) -> Result<BigInt, CatalogError> {
        check_bundle(d, n)?;
        Ok(projective(relhilb_fiber_dim(d, n)) * hilbert(n as usize))
    }

    pub fn sheaf_moduli(d: i64, chi: i64) -> Result<BigInt, CatalogError> {
        match d {
            1 => Ok(projective(2)),
            2 if chi.rem_euclid(2) == 1 => Ok(projective(5)),
            _ => Err(CatalogError::NoSheafModuli { d, chi }),
        }
    }
}
