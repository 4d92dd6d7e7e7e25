//! Truncated power-series inversion.

use num_traits::Zero;

use super::poly::TPoly;
use super::rational::Rational;
use super::AlgebraError;

/// Coefficients `c_0..=c_order` of `1/q(x)` as a power series in `x`, so that
/// `q(x) * Σ c_k x^k ≡ 1 (mod x^(order+1))`.
pub fn series_inverse(q: &TPoly, order: usize) -> Result<Vec<Rational>, AlgebraError> {
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return Err(AlgebraError::ZeroConstantTerm);
    }
    let inv0 = q0.recip();
    let mut c: Vec<Rational> = Vec::with_capacity(order + 1);
    c.push(inv0.clone());
    for k in 1..=order {
        let mut acc = Rational::zero();
        for j in 1..=k.min(q.coeffs().len().saturating_sub(1)) {
            acc += q.coeff(j) * &c[k - j];
        }
        c.push(-acc * &inv0);
    }
    Ok(c)
}
