//! Antidifferences of polynomials via the falling-factorial basis, where
//! `Δ t^(k) = k t^(k-1)` makes summation look like integration.

use num_traits::{One, Zero};

use crate::algebra::{Rational, TPoly};

/// Coefficients `b_k` with `p(t) = Σ b_k t^(k)`, `t^(k) = t(t-1)…(t-k+1)`.
pub fn to_falling(p: &TPoly) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut diff = p.clone();
    let mut factorial = Rational::one();
    let mut k = 0i64;
    while !diff.is_zero() {
        if k > 0 {
            factorial *= Rational::from_integer(k.into());
        }
        out.push(diff.coeff(0) / &factorial);
        diff = diff.forward_difference();
        k += 1;
    }
    out
}

pub fn from_falling(b: &[Rational]) -> TPoly {
    let mut acc = TPoly::zero();
    let mut ff = TPoly::one();
    for (k, c) in b.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &ff.scale(c);
        }
        ff = &ff * &TPoly::linear_root(&Rational::from_integer((k as i64).into()));
    }
    acc
}

/// `Δ^(-m) f`: the polynomial `g` with `Δ^m g = f` whose every intermediate
/// antidifference vanishes at `t = 0` (zero constant in the falling-factorial
/// basis). In particular `Δ^(-m) t = t(t-1)…(t-m)/(m+1)!`.
pub fn antidifference(f: &TPoly, m: usize) -> TPoly {
    let mut b = to_falling(f);
    for _ in 0..m {
        let mut next = Vec::with_capacity(b.len() + 1);
        next.push(Rational::zero());
        for (k, c) in b.iter().enumerate() {
            next.push(c / Rational::from_integer(((k + 1) as i64).into()));
        }
        b = next;
    }
    from_falling(&b)
}

/// `Δ^m g`.
pub fn difference(g: &TPoly, m: usize) -> TPoly {
    (0..m).fold(g.clone(), |acc, _| acc.forward_difference())
}
