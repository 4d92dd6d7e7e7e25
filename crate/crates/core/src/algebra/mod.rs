//! Exact arithmetic foundation: rationals, polynomials over them, truncated
//! series inversion and characteristic-root extraction.

pub mod poly;
pub mod rational;
pub mod roots;
pub mod series;

pub use poly::{poly_arith, taylor_shift, PolyOp, TPoly};
pub use rational::Rational;
pub use roots::{find_roots, RootSet, RootValue};
pub use series::series_inverse;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("series inversion needs a nonzero constant term; factor out the power of the variable first")]
    ZeroConstantTerm,
}
