//! Particular, homogeneous and general solutions of `P(T) y = φ`.

mod antidiff;
mod homogeneous;
mod particular;
mod trace;

use std::fmt;

use num_traits::{One, Signed, Zero};

pub use antidiff::{antidifference, difference, from_falling, to_falling};
pub use homogeneous::{
    assemble_exact, eval_homogeneous_f64, exact_mode, fit_constants, solve_homogeneous,
    BasisElement, Constants, ModePart, NumericMode, PIVOT_TOLERANCE, RESIDUAL_TOLERANCE,
};
pub use particular::solve_particular;
pub use trace::{Rule, SolveStep, SolveTrace};

use crate::algebra::rational::to_f64;
use crate::algebra::Rational;
use crate::expr::{eval_at, SequenceExpr};
use crate::operator::OperatorPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("the operator polynomial is zero")]
    ZeroOperator,
    #[error("operator must have degree at least 1")]
    ConstantOperator,
    #[error("right-hand side term outside the supported class: {0}")]
    UnsupportedRhs(String),
    #[error("expected {expected} initial conditions, got {got}")]
    ConditionCount { expected: usize, got: usize },
    #[error("initial conditions must sit at consecutive integers")]
    NonConsecutiveConditions,
    #[error("initial conditions do not determine the constants")]
    SingularSystem,
    #[error("initial conditions are inconsistent with the equation")]
    InconsistentConditions,
}

/// `a_0 y(t+n) + … + a_n y(t) = φ(t)` with optional initial conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub operator: OperatorPoly,
    pub rhs: SequenceExpr,
    pub initial: Option<Vec<(i64, Rational)>>,
}

impl Equation {
    pub fn new(operator: OperatorPoly, rhs: SequenceExpr) -> Result<Self, SolveError> {
        match operator.degree() {
            None => Err(SolveError::ZeroOperator),
            Some(0) => Err(SolveError::ConstantOperator),
            Some(_) => Ok(Equation {
                operator,
                rhs,
                initial: None,
            }),
        }
    }

    /// Attaches `n` conditions at consecutive abscissae.
    pub fn with_initial(mut self, initial: Vec<(i64, Rational)>) -> Result<Self, SolveError> {
        let n = self.degree();
        if initial.len() != n {
            return Err(SolveError::ConditionCount {
                expected: n,
                got: initial.len(),
            });
        }
        if initial.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
            return Err(SolveError::NonConsecutiveConditions);
        }
        self.initial = Some(initial);
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.operator.degree().unwrap_or(0)
    }
}

impl fmt::Display for Equation {
    /// Canonical form, e.g. `y(t+2) - 5*y(t+1) + 4*y(t) = 3^t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.operator.terms().collect::<Vec<_>>().into_iter().rev() {
            let y = if k == 0 {
                "y(t)".to_string()
            } else {
                format!("y(t+{k})")
            };
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            }
            if mag.is_one() {
                f.write_str(&y)?;
            } else {
                write!(f, "{mag}*{y}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " = {}", self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: SequenceExpr,
    pub homogeneous_basis: Vec<BasisElement>,
    pub constants: Option<Constants>,
    pub trace: SolveTrace,
}

impl Solution {
    /// `y_G = y_H + y_P` as an exact expression, when the constants are
    /// fitted and exact.
    pub fn general(&self) -> Option<SequenceExpr> {
        match &self.constants {
            Some(Constants::Exact(c)) => {
                assemble_exact(&self.homogeneous_basis, c).map(|h| h.add(&self.particular))
            }
            _ => None,
        }
    }

    pub fn has_numeric_modes(&self) -> bool {
        self.homogeneous_basis.iter().any(|b| !b.is_exact())
    }

    /// `y_G(t)` in floating point; `None` until constants are fitted.
    pub fn eval_general_f64(&self, t: i64) -> Option<f64> {
        let c = self.constants.as_ref()?.as_f64();
        Some(
            to_f64(&eval_at(&self.particular, t))
                + eval_homogeneous_f64(&self.homogeneous_basis, &c, t),
        )
    }

    /// `y_G(t)` exactly, if available.
    pub fn eval_general(&self, t: i64) -> Option<Rational> {
        self.general().map(|g| eval_at(&g, t))
    }
}

/// Particular solution, homogeneous basis and (with initial conditions)
/// fitted constants.
pub fn solve(eq: &Equation) -> Result<Solution, SolveError> {
    let (particular, trace) = solve_particular(&eq.operator, &eq.rhs)?;
    let homogeneous_basis = solve_homogeneous(&eq.operator);
    let constants = match &eq.initial {
        Some(init) => Some(fit_constants(
            &eq.operator,
            &particular,
            &homogeneous_basis,
            init,
        )?),
        None => None,
    };
    Ok(Solution {
        particular,
        homogeneous_basis,
        constants,
        trace,
    })
}

impl Constants {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Constants::Exact(v) if v.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::TPoly;
    use crate::expr::TrigPart;

    fn eq(c: &[i64], rhs: SequenceExpr) -> Equation {
        Equation::new(OperatorPoly::from_ints(c), rhs).unwrap()
    }

    #[test]
    fn example_one_general() {
        let sol = solve(&eq(&[4, -5, 1], SequenceExpr::geometric(int(3)))).unwrap();
        assert_eq!(sol.particular.to_string(), "-1/2 * 3^t");
        let basis: Vec<String> = sol
            .homogeneous_basis
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(basis, vec!["1^t", "4^t"]);
        assert!(sol.constants.is_none());
    }

    #[test]
    fn unity_equation() {
        let sol = solve(&eq(&[-1, 1], SequenceExpr::constant(int(1)))).unwrap();
        assert_eq!(sol.particular, SequenceExpr::from_poly(TPoly::x()));
        assert_eq!(sol.homogeneous_basis.len(), 1);
    }

    #[test]
    fn shifted_operator() {
        let sol = solve(&eq(&[0, -2, 1], SequenceExpr::geometric(int(2)))).unwrap();
        let want = SequenceExpr::from_parts(
            TPoly::new(vec![rat(-1, 4), rat(1, 4)]),
            int(2),
            TrigPart::None,
        );
        assert_eq!(sol.particular, want);
    }

    #[test]
    fn fitted_general_solution() {
        let e = eq(&[6, -5, 1], SequenceExpr::zero())
            .with_initial(vec![(0, int(0)), (1, int(1))])
            .unwrap();
        let sol = solve(&e).unwrap();
        let g = sol.general().unwrap();
        assert_eq!(
            g,
            SequenceExpr::geometric(int(3)).sub(&SequenceExpr::geometric(int(2)))
        );
        // iterate y(t+2) = 5y(t+1) - 6y(t)
        let (mut a, mut b) = (int(0), int(1));
        for t in 0..20 {
            assert_eq!(eval_at(&g, t), a);
            let next = int(5) * &b - int(6) * &a;
            a = b;
            b = next;
        }
    }

    #[test]
    fn equation_validation() {
        assert_eq!(
            Equation::new(OperatorPoly::from_ints(&[3]), SequenceExpr::zero()),
            Err(SolveError::ConstantOperator)
        );
        assert_eq!(
            eq(&[1, 1], SequenceExpr::zero()).with_initial(vec![]),
            Err(SolveError::ConditionCount {
                expected: 1,
                got: 0
            })
        );
    }

    #[test]
    fn canonical_equation_text() {
        let e = eq(&[4, -5, 1], SequenceExpr::geometric(int(3)));
        assert_eq!(e.to_string(), "y(t+2) - 5*y(t+1) + 4*y(t) = 3^t");
        let e = eq(&[-1, 2], SequenceExpr::zero());
        assert_eq!(e.to_string(), "2*y(t+1) - y(t) = 0");
    }
}
