//! Dense polynomials in `q` with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{bigint_json, AlgError};

/// Polynomial in `q`; `coeffs[i]` is the coefficient of `q^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Poincaré polynomial of `P^n`: `1 + q + ... + q^n`.
    ///
    /// `n = -1` gives the zero polynomial, the usual convention for the empty
    /// projective space. Anything below `-1` is rejected.
    pub fn projective(n: i64) -> Result<Self, AlgError> {
        if n < -1 {
            return Err(AlgError::ProjectiveDimension(n));
        }
        let len = (n + 1) as usize;
        Ok(QPoly { coeffs: vec![BigInt::one(); len] })
    }

    /// Gaussian binomial coefficient `[n choose k]_q`, the Poincaré polynomial
    /// of the Grassmannian of `k`-planes in `C^n`.
    pub fn gaussian_binomial(n: i64, k: i64) -> Result<Self, AlgError> {
        if n < 0 || k < 0 || k > n {
            return Err(AlgError::BinomialRange { n, k });
        }
        let (n, k) = (n as usize, k as usize);
        // row[j] = [m choose j]_q, built by [m, j] = [m-1, j-1] + q^j [m-1, j]
        let mut row = vec![QPoly::one()];
        for m in 1..=n {
            let mut next = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let left = if j > 0 { row[j - 1].clone() } else { QPoly::zero() };
                let right = row.get(j).map(|p| p.shift(j)).unwrap_or_default();
                next.push(left + right);
            }
            row = next;
        }
        Ok(row.swap_remove(k))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `q = 1`: the topological Euler characteristic.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `coeffs[i] == coeffs[deg - i]` for every `i`; the zero polynomial counts.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Division by a monic polynomial. Returns `None` when `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &QPoly) -> Option<(QPoly, QPoly)> {
        let dd = divisor.degree()?;
        if !divisor.coeffs[dd].is_one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        Some((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Quotient by a monic divisor when the division is exact.
    pub fn exact_div_monic(&self, divisor: &QPoly) -> Option<QPoly> {
        self.div_rem_monic(divisor)
            .filter(|(_, r)| r.is_zero())
            .map(|(q, _)| q)
    }

    /// Writes the largest factor `(1 - q^k)/(1 - q)` (with `k >= 2`) that
    /// divides `self` exactly, as `(k, cofactor)`.
    pub fn factor_projective(&self) -> Option<(usize, QPoly)> {
        let deg = self.degree()?;
        (2..=deg + 1).rev().find_map(|k| {
            let divisor = QPoly::projective(k as i64 - 1).ok()?;
            self.exact_div_monic(&divisor).map(|cof| (k, cof))
        })
    }

    /// LaTeX rendering, e.g. `1+q+4q^2+q^{11}`.
    pub fn to_latex(&self) -> String {
        self.render(|k| {
            if k < 10 {
                format!("q^{k}")
            } else {
                format!("q^{{{k}}}")
            }
        }, "+", "-")
    }

    fn render(&self, power: impl Fn(usize) -> String, plus: &str, minus: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { minus } else { plus });
            }
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => power(k),
            };
            if var.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var);
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|k| format!("q^{k}"), " + ", " - "))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        bigint_json::serialize_vec(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        bigint_json::deserialize_vec(d).map(QPoly::from_coeffs)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -self.clone()
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        *self = QPoly::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        *self = QPoly::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(mut self, rhs: QPoly) -> QPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(mut self, rhs: &QPoly) -> QPoly {
                self.$assign(&rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<QPoly> for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl Mul<&QPoly> for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        &self * rhs
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |acc, p| acc * p)
    }
}
