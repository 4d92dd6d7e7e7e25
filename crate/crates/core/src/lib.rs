//! Closed-form solutions of linear difference equations with constant
//! coefficients, `a_0 y(t+n) + … + a_n y(t) = φ(t)`, computed by treating
//! `1/P(T)` as an operator on sequences and inverting it rule by rule.
//!
//! The pipeline is: [`parser`] reads the equation, [`solver`] produces a
//! particular solution (with a [`solver::SolveTrace`]), a homogeneous basis
//! and optionally fitted constants, and [`oracle`] checks the result by two
//! independent routes.

pub mod algebra;
pub mod expr;
pub mod operator;
pub mod oracle;
pub mod parser;
pub mod solver;

pub use algebra::{Rational, RootSet, RootValue, TPoly};
pub use expr::{apply_operator, eval_at, normalize, SequenceExpr, Term, TrigPart};
pub use operator::OperatorPoly;
pub use oracle::{iterate_recurrence, verify_solution, Verification, VerifyReport, VerifyStatus};
pub use parser::{
    parse_equation, parse_expr, parse_initial, parse_operator, ParseError, ParseErrorKind,
};
pub use solver::{solve, solve_particular, Equation, Solution, SolveError, SolveTrace};
