//! Homogeneous solutions from characteristic roots, and fitting the free
//! constants to initial conditions.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{One, Zero};

use super::SolveError;
use crate::algebra::rational::to_f64;
use crate::algebra::{find_roots, Rational, RootValue, TPoly};
use crate::expr::{eval_at, SequenceExpr, TrigPart};
use crate::operator::OperatorPoly;

/// Tolerance for a vanishing pivot in the floating-point constant fit.
pub const PIVOT_TOLERANCE: f64 = 1e-12;
/// Residual allowed on redundant conditions in the floating-point fit.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModePart {
    Cos,
    Sin,
}

/// `t^power · modulus^t · cos(angle·t)` (or `sin`), for roots without an
/// exact rational value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericMode {
    pub modulus: f64,
    pub angle: f64,
    pub power: u32,
    pub part: ModePart,
}

impl NumericMode {
    pub fn eval_at(&self, t: i64) -> f64 {
        let tf = t as f64;
        let trig = match self.part {
            ModePart::Cos => (self.angle * tf).cos(),
            ModePart::Sin => (self.angle * tf).sin(),
        };
        tf.powi(self.power as i32) * self.modulus.powf(tf) * trig
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = match self.part {
            ModePart::Cos => "cos",
            ModePart::Sin => "sin",
        };
        match self.power {
            0 => {}
            1 => write!(f, "t * ")?,
            j => write!(f, "t^{j} * ")?,
        }
        // real modes: θ = 0 or π
        if self.part == ModePart::Cos && self.angle == 0.0 {
            write!(f, "{}^t", self.modulus)
        } else if self.part == ModePart::Cos && self.angle == std::f64::consts::PI {
            write!(f, "(-{})^t", self.modulus)
        } else {
            write!(f, "{}^t * {part}({}*t)", self.modulus, self.angle)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisElement {
    Exact(SequenceExpr),
    Numeric(NumericMode),
}

impl BasisElement {
    pub fn is_exact(&self) -> bool {
        matches!(self, BasisElement::Exact(_))
    }

    pub fn eval_f64(&self, t: i64) -> f64 {
        match self {
            BasisElement::Exact(e) => to_f64(&eval_at(e, t)),
            BasisElement::Numeric(m) => m.eval_at(t),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Exact(e) => {
                // 1^t reads more clearly than the constant 1 in a basis list
                if e.as_constant().is_some_and(|c| c.is_one()) {
                    f.write_str("1^t")
                } else {
                    write!(f, "{e}")
                }
            }
            BasisElement::Numeric(m) => write!(f, "{m}"),
        }
    }
}

/// Constants multiplying the homogeneous basis.
#[derive(Clone, Debug, PartialEq)]
pub enum Constants {
    Exact(Vec<Rational>),
    Numeric(Vec<f64>),
}

impl Constants {
    pub fn len(&self) -> usize {
        match self {
            Constants::Exact(v) => v.len(),
            Constants::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_f64(&self) -> Vec<f64> {
        match self {
            Constants::Exact(v) => v.iter().map(to_f64).collect(),
            Constants::Numeric(v) => v.clone(),
        }
    }
}

/// One basis sequence per root and multiplicity index `j < m`.
///
/// A rational root `λ` gives `t^j λ^t`. A complex pair `r e^(±iθ)` gives
/// `t^j r^t cos θt` and `t^j r^t sin θt`; an irrational real root gives a
/// single cosine mode with `θ ∈ {0, π}`. The root `0` (a factor `T^k` of
/// `P`) contributes nothing: `T^k y = 0` forces `y ≡ 0` on the integers.
pub fn solve_homogeneous(p: &OperatorPoly) -> Vec<BasisElement> {
    let mut basis = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return basis;
    }
    let roots = find_roots(p.as_poly());
    for (root, mult) in &roots.roots {
        match root {
            RootValue::Exact(r) if r.is_zero() => {}
            RootValue::Exact(r) => {
                for j in 0..*mult {
                    basis.push(BasisElement::Exact(SequenceExpr::from_parts(
                        TPoly::monomial(Rational::one(), j),
                        r.clone(),
                        TrigPart::None,
                    )));
                }
            }
            RootValue::Numeric(z) => {
                if z.im < 0.0 {
                    continue;
                }
                let modulus = z.norm();
                let parts: &[ModePart] = if z.im > 0.0 {
                    &[ModePart::Cos, ModePart::Sin]
                } else {
                    &[ModePart::Cos]
                };
                let angle = if z.im > 0.0 {
                    z.arg()
                } else if z.re < 0.0 {
                    PI
                } else {
                    0.0
                };
                for j in 0..*mult {
                    for &part in parts {
                        basis.push(BasisElement::Numeric(NumericMode {
                            modulus,
                            angle,
                            power: j as u32,
                            part,
                        }));
                    }
                }
            }
        }
    }
    basis
}

/// Solves `Σ c_i basis_i(t_k) = value_k - y_P(t_k)` for the constants.
///
/// Exact elimination when every basis element is exact, otherwise partial
/// pivoting in `f64`. Conditions in excess of the basis size (possible
/// when `T | P`) must be consistent.
pub fn fit_constants(
    p: &OperatorPoly,
    particular: &SequenceExpr,
    basis: &[BasisElement],
    initial: &[(i64, Rational)],
) -> Result<Constants, SolveError> {
    let degree = p.degree().unwrap_or(0);
    if initial.len() != degree {
        return Err(SolveError::ConditionCount {
            expected: degree,
            got: initial.len(),
        });
    }
    if initial.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(SolveError::NonConsecutiveConditions);
    }
    if basis.iter().all(BasisElement::is_exact) {
        let rows: Vec<Vec<Rational>> = initial
            .iter()
            .map(|(t, v)| {
                let mut row: Vec<Rational> = basis
                    .iter()
                    .map(|b| match b {
                        BasisElement::Exact(e) => eval_at(e, *t),
                        BasisElement::Numeric(_) => unreachable!(),
                    })
                    .collect();
                row.push(v - eval_at(particular, *t));
                row
            })
            .collect();
        solve_exact(rows, basis.len()).map(Constants::Exact)
    } else {
        let rows: Vec<Vec<f64>> = initial
            .iter()
            .map(|(t, v)| {
                let mut row: Vec<f64> = basis.iter().map(|b| b.eval_f64(*t)).collect();
                row.push(to_f64(&(v - eval_at(particular, *t))));
                row
            })
            .collect();
        solve_numeric(rows, basis.len()).map(Constants::Numeric)
    }
}

fn solve_exact(mut rows: Vec<Vec<Rational>>, n: usize) -> Result<Vec<Rational>, SolveError> {
    for col in 0..n {
        let Some(found) = (col..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(SolveError::SingularSystem);
        };
        rows.swap(col, found);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &factor * p;
                }
            }
        }
    }
    if rows[n..].iter().any(|row| !row[n].is_zero()) {
        return Err(SolveError::InconsistentConditions);
    }
    Ok(rows[..n].iter().map(|row| row[n].clone()).collect())
}

fn solve_numeric(mut rows: Vec<Vec<f64>>, n: usize) -> Result<Vec<f64>, SolveError> {
    let scale = rows
        .iter()
        .flat_map(|r| r[..n].iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    for col in 0..n {
        let (best, magnitude) = (col..rows.len())
            .map(|r| (r, rows[r][col].abs()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if magnitude <= PIVOT_TOLERANCE * scale {
            return Err(SolveError::SingularSystem);
        }
        rows.swap(col, best);
        let pivot = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col {
                let factor = row[col] / pivot[col];
                if factor != 0.0 {
                    for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *x -= factor * p;
                    }
                }
            }
        }
    }
    if rows[n..]
        .iter()
        .any(|row| row[n].abs() > RESIDUAL_TOLERANCE)
    {
        return Err(SolveError::InconsistentConditions);
    }
    Ok((0..n).map(|i| rows[i][n] / rows[i][i]).collect())
}

/// `y_H(t) = Σ c_i basis_i(t)` in floating point.
pub fn eval_homogeneous_f64(basis: &[BasisElement], constants: &[f64], t: i64) -> f64 {
    basis
        .iter()
        .zip(constants)
        .map(|(b, c)| c * b.eval_f64(t))
        .sum()
}

/// `Σ c_i basis_i` as an exact expression; `None` if any element is numeric.
pub fn assemble_exact(basis: &[BasisElement], constants: &[Rational]) -> Option<SequenceExpr> {
    let mut acc = SequenceExpr::zero();
    for (b, c) in basis.iter().zip(constants) {
        match b {
            BasisElement::Exact(e) => acc = acc.add(&e.scale(c)),
            BasisElement::Numeric(_) => return None,
        }
    }
    Some(acc)
}

/// `λ^t` helper for tests and callers that need a basis element by root.
pub fn exact_mode(root: &Rational, power: usize) -> SequenceExpr {
    SequenceExpr::from_parts(
        TPoly::monomial(Rational::one(), power),
        root.clone(),
        TrigPart::None,
    )
}
