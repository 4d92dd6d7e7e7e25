//! Polynomials in the translation operator `T` and the transformations the
//! rule engine needs: scaling `P(λT)`, rewriting in the difference basis
//! `Δ = T - 1`, and splitting off `(T - λ)^m`.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Rational, TPoly};

/// `a_0 T^n + a_1 T^(n-1) + … + a_n`, stored lowest power first (index `i`
/// holds the coefficient of `T^i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorPoly {
    poly: TPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperatorError {
    #[error("cannot scale the operator argument by zero")]
    ZeroScale,
}

impl OperatorPoly {
    /// From coefficients of `T^0, T^1, …`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        OperatorPoly {
            poly: TPoly::new(coeffs),
        }
    }

    pub fn from_poly(poly: TPoly) -> Self {
        OperatorPoly { poly }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_poly(TPoly::from_ints(coeffs))
    }

    /// From `a_0, a_1, …, a_n`, highest power first, as the equation is written.
    pub fn from_descending(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs.into_iter().rev().collect())
    }

    /// `T^k`.
    pub fn shift(k: usize) -> Self {
        Self::from_poly(TPoly::monomial(Rational::one(), k))
    }

    /// `(T - λ)^m`.
    pub fn root_power(lambda: &Rational, m: u32) -> Self {
        Self::from_poly(TPoly::linear_root(lambda).pow(m))
    }

    pub fn as_poly(&self) -> &TPoly {
        &self.poly
    }

    pub fn into_poly(self) -> TPoly {
        self.poly
    }

    /// `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient of `T^i`.
    pub fn coeff(&self, i: usize) -> Rational {
        self.poly.coeff(i)
    }

    /// `a_0, …, a_n`, highest power first.
    pub fn descending(&self) -> Vec<Rational> {
        self.poly.coeffs().iter().rev().cloned().collect()
    }

    /// Nonzero `(k, coefficient of T^k)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Largest `k` with `T^k | P`.
    pub fn trailing_shift(&self) -> usize {
        self.poly
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// `P / T^k`; requires `T^k | P`.
    pub fn strip_shift(&self, k: usize) -> Self {
        debug_assert!(k <= self.trailing_shift());
        Self::new(self.poly.coeffs()[k..].to_vec())
    }

    pub fn compose(&self, other: &OperatorPoly) -> Self {
        Self::from_poly(&self.poly * &other.poly)
    }

    pub fn eval_scalar(&self, lambda: &Rational) -> Rational {
        self.poly.eval(lambda)
    }

    /// `P(λT)`.
    pub fn scale_argument(&self, lambda: &Rational) -> Result<Self, OperatorError> {
        if lambda.is_zero() {
            return Err(OperatorError::ZeroScale);
        }
        Ok(Self::from_poly(self.poly.scale_argument(lambda)))
    }

    /// `Q` with `Q(T - 1) = P(T)`, as a polynomial in `Δ`.
    pub fn to_delta_basis(&self) -> TPoly {
        self.poly.taylor_shift(&Rational::one())
    }

    /// `P̃` with `P̃(T - λ) = P(T)`, as a polynomial in `u = T - λ`.
    pub fn shifted_form(&self, lambda: &Rational) -> TPoly {
        self.poly.taylor_shift(lambda)
    }

    /// Splits `P = (T - λ)^m · S` with `S(λ) ≠ 0`. The zero operator yields
    /// `(0, 0)`.
    pub fn factor_root(&self, lambda: &Rational) -> (usize, OperatorPoly) {
        let mut m = 0;
        let mut rest = self.poly.clone();
        if rest.is_zero() {
            return (0, self.clone());
        }
        let linear = TPoly::linear_root(lambda);
        while rest.eval(lambda).is_zero() {
            rest = rest.div_rem(&linear).0;
            m += 1;
        }
        (m, Self::from_poly(rest))
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_in("T"))
    }
}
