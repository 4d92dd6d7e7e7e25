//! Verification that never goes through the rule engine: direct iteration
//! of the recurrence from its initial conditions, and pointwise evaluation
//! of `Σ a_k y(t+k)` against `φ(t)`.

use std::fmt;

use num_traits::Zero;

use crate::algebra::rational::to_f64;
use crate::algebra::Rational;
use crate::expr::eval_at;
use crate::solver::{Equation, Solution};

pub const DEFAULT_HORIZON: i64 = 50;
/// Absolute tolerance when the homogeneous part has numeric modes.
pub const NUMERIC_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("iteration needs initial conditions")]
    MissingInitialConditions,
    #[error("iteration needs a nonzero leading coefficient")]
    ZeroLeadingCoefficient,
}

/// `y(t0), y(t0+1), …, y(horizon)` by stepping
/// `y(t+n) = (φ(t) - Σ_{k<n} a_k y(t+k)) / a_n`, where `a_k` multiplies
/// `y(t+k)` and `t0` is the first condition.
pub fn iterate_recurrence(eq: &Equation, horizon: i64) -> Result<Vec<Rational>, OracleError> {
    let init = eq
        .initial
        .as_ref()
        .filter(|i| !i.is_empty())
        .ok_or(OracleError::MissingInitialConditions)?;
    let coeffs = eq.operator.as_poly().coeffs();
    let n = coeffs.len() - 1;
    let lead = &coeffs[n];
    if lead.is_zero() {
        return Err(OracleError::ZeroLeadingCoefficient);
    }
    let t0 = init[0].0;
    let mut ys: Vec<Rational> = init.iter().map(|(_, v)| v.clone()).collect();
    let last = horizon.max(t0 + n as i64 - 1);
    while (ys.len() as i64) < last - t0 + 1 {
        let i = ys.len() - n;
        let t = t0 + i as i64;
        let mut acc = eval_at(&eq.rhs, t);
        for k in 0..n {
            acc -= &coeffs[k] * &ys[i + k];
        }
        ys.push(acc / lead);
    }
    Ok(ys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMethod {
    /// `Σ a_k y_P(t+k) = φ(t)` pointwise.
    ForwardApply,
    /// `y_G(t)` against the iterated recurrence.
    Iterate,
}

impl VerifyMethod {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMethod::ForwardApply => "forward-apply",
            VerifyMethod::Iterate => "iterate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyStatus {
    /// Every point compared equal as rationals.
    ExactMatch,
    /// Floating-point comparison within tolerance; the largest deviation seen.
    MaxAbsDeviation(f64),
    MismatchAt {
        t: i64,
        expected: Rational,
        got: Rational,
    },
    NumericMismatchAt {
        t: i64,
        expected: f64,
        got: f64,
    },
    /// Values agree but the amplitudes of the `sin(nπt)` terms do not.
    SineAmplitudeMismatchAt {
        t: i64,
        expected: Rational,
        got: Rational,
    },
}

impl VerifyStatus {
    pub fn passed(&self) -> bool {
        matches!(
            self,
            VerifyStatus::ExactMatch | VerifyStatus::MaxAbsDeviation(_)
        )
    }

    pub fn mismatch_t(&self) -> Option<i64> {
        match self {
            VerifyStatus::MismatchAt { t, .. }
            | VerifyStatus::NumericMismatchAt { t, .. }
            | VerifyStatus::SineAmplitudeMismatchAt { t, .. } => Some(*t),
            _ => None,
        }
    }
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyStatus::ExactMatch => f.write_str("exact-match"),
            VerifyStatus::MaxAbsDeviation(d) => write!(f, "max-abs-deviation({d:e})"),
            VerifyStatus::MismatchAt { t, expected, got } => {
                write!(f, "mismatch-at(t={t}, expected={expected}, got={got})")
            }
            VerifyStatus::NumericMismatchAt { t, expected, got } => {
                write!(f, "mismatch-at(t={t}, expected={expected}, got={got})")
            }
            VerifyStatus::SineAmplitudeMismatchAt { t, expected, got } => {
                write!(
                    f,
                    "sine-amplitude-mismatch-at(t={t}, expected={expected}, got={got})"
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub method: VerifyMethod,
    pub range: (i64, i64),
    pub status: VerifyStatus,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {}..{}: {}",
            self.method.name(),
            self.range.0,
            self.range.1,
            self.status
        )
    }
}

/// All reports produced by [`verify_solution`].
#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub reports: Vec<VerifyReport>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.status.passed())
    }

    pub fn first_failure(&self) -> Option<&VerifyReport> {
        self.reports.iter().find(|r| !r.status.passed())
    }
}

/// Forward check of the particular solution on `-horizon..=horizon`, values
/// and sine amplitudes, non-negative `t` scanned first. Then, when initial
/// conditions and fitted constants exist, the general solution against
/// iteration on `t0..=t0+horizon`.
pub fn verify_solution(eq: &Equation, sol: &Solution, horizon: i64) -> Verification {
    let horizon = horizon.max(0);
    let mut reports = vec![VerifyReport {
        method: VerifyMethod::ForwardApply,
        range: (-horizon, horizon),
        status: forward_check(eq, sol, horizon),
    }];
    if let (Some(init), Some(_)) = (&eq.initial, &sol.constants) {
        if let Some(&(t0, _)) = init.first() {
            let end = t0 + horizon;
            let status = match iterate_recurrence(eq, end) {
                Ok(seq) => iterate_check(sol, t0, &seq),
                Err(_) => VerifyStatus::MismatchAt {
                    t: t0,
                    expected: Rational::zero(),
                    got: Rational::zero(),
                },
            };
            reports.push(VerifyReport {
                method: VerifyMethod::Iterate,
                range: (t0, end),
                status,
            });
        }
    }
    Verification { reports }
}

fn forward_check(eq: &Equation, sol: &Solution, horizon: i64) -> VerifyStatus {
    let coeffs = eq.operator.as_poly().coeffs();
    let order = (0..=horizon).chain((1..=horizon).map(|t| -t));
    for t in order {
        let got: Rational = coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| a * eval_at(&sol.particular, t + k as i64))
            .sum();
        let expected = eval_at(&eq.rhs, t);
        if got != expected {
            return VerifyStatus::MismatchAt { t, expected, got };
        }
        let got: Rational = coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| a * sol.particular.sine_amplitude_at(t + k as i64))
            .sum();
        let expected = eq.rhs.sine_amplitude_at(t);
        if got != expected {
            return VerifyStatus::SineAmplitudeMismatchAt { t, expected, got };
        }
    }
    VerifyStatus::ExactMatch
}

fn iterate_check(sol: &Solution, t0: i64, seq: &[Rational]) -> VerifyStatus {
    if let Some(general) = sol.general() {
        for (i, expected) in seq.iter().enumerate() {
            let t = t0 + i as i64;
            let got = eval_at(&general, t);
            if &got != expected {
                return VerifyStatus::MismatchAt {
                    t,
                    expected: expected.clone(),
                    got,
                };
            }
        }
        return VerifyStatus::ExactMatch;
    }
    let mut worst = 0.0f64;
    for (i, expected) in seq.iter().enumerate() {
        let t = t0 + i as i64;
        let expected = to_f64(expected);
        let got = sol.eval_general_f64(t).unwrap_or(f64::NAN);
        let dev = (got - expected).abs();
        if dev.is_nan() || dev > NUMERIC_TOLERANCE {
            return VerifyStatus::NumericMismatchAt { t, expected, got };
        }
        worst = worst.max(dev);
    }
    VerifyStatus::MaxAbsDeviation(worst)
}
