use super::{AlgError, QPoly};

/// Power series in `z` truncated after `z^order`, with `QPoly` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QZSeries {
    order: usize,
    coeffs: Vec<QPoly>,
}

impl QZSeries {
    pub fn zero(order: usize) -> Self {
        QZSeries { order, coeffs: vec![QPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = QPoly::one();
        s
    }

    /// `poly * z^z_exp`; vanishes when `z_exp` exceeds the order.
    pub fn monomial(order: usize, poly: QPoly, z_exp: usize) -> Self {
        let mut s = Self::zero(order);
        if z_exp <= order {
            s.coeffs[z_exp] = poly;
        }
        s
    }

    /// Expansion of `1 / (1 - q^q_exp z^z_step)`.
    pub fn geometric(order: usize, q_exp: usize, z_step: usize) -> Self {
        assert!(z_step >= 1, "geometric series needs a positive z step");
        let mut s = Self::zero(order);
        for (j, z_exp) in (0..=order).step_by(z_step).enumerate() {
            s.coeffs[z_exp] = QPoly::monomial(1, q_exp * j);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^k`; `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&QPoly> {
        self.coeffs.get(k)
    }

    fn check_order(&self, other: &QZSeries) -> Result<(), AlgError> {
        if self.order != other.order {
            return Err(AlgError::TruncationMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &QZSeries) -> Result<QZSeries, AlgError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(QZSeries { order: self.order, coeffs })
    }

    pub fn mul(&self, other: &QZSeries) -> Result<QZSeries, AlgError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }
}
