//! Output documents. Field names are stable; rationals are serialized as
//! strings ("3", "-1/2") so nothing is lost to floating point.

use std::fmt::Write as _;

use fdecalc_core::oracle::{Verification, VerifyStatus};
use fdecalc_core::solver::Constants;
use fdecalc_core::{Equation, OperatorPoly, SequenceExpr, Solution};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub input: String,
    /// `a_0, a_1, …, a_n`: entry `k` multiplies `y(t+k)`.
    pub operator: Vec<String>,
    pub rhs: String,
    pub particular: String,
    pub homogeneous: Vec<String>,
    pub constants: Option<Vec<ConstantDoc>>,
    pub general: Option<String>,
    pub trace: Vec<StepDoc>,
    pub verification: Option<VerificationDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ConstantDoc {
    Exact(String),
    Numeric(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepDoc {
    pub rule: String,
    pub label: String,
    pub step: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationDoc {
    pub passed: bool,
    pub reports: Vec<ReportDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDoc {
    pub method: String,
    pub range: [i64; 2],
    pub passed: bool,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_deviation: Option<f64>,
    /// One-line rendering, as in text mode.
    pub summary: String,
}

fn coefficients(p: &OperatorPoly) -> Vec<String> {
    p.as_poly().coeffs().iter().map(|c| c.to_string()).collect()
}

impl OutputDocument {
    pub fn new(
        input: &str,
        eq: &Equation,
        sol: &Solution,
        with_trace: bool,
        verification: Option<&Verification>,
    ) -> Self {
        let constants = sol.constants.as_ref().map(|c| match c {
            Constants::Exact(v) => v
                .iter()
                .map(|r| ConstantDoc::Exact(r.to_string()))
                .collect(),
            Constants::Numeric(v) => v.iter().copied().map(ConstantDoc::Numeric).collect(),
        });
        let trace = if with_trace {
            sol.trace
                .steps
                .iter()
                .map(|s| StepDoc {
                    rule: s.rule.id().to_string(),
                    label: s.rule.label().to_string(),
                    step: format!("{} => {}", s.before, s.after),
                })
                .collect()
        } else {
            Vec::new()
        };
        OutputDocument {
            input: input.to_string(),
            operator: coefficients(&eq.operator),
            rhs: eq.rhs.to_string(),
            particular: sol.particular.to_string(),
            homogeneous: sol
                .homogeneous_basis
                .iter()
                .map(|b| b.to_string())
                .collect(),
            constants,
            general: sol.general().map(|g| g.to_string()),
            trace,
            verification: verification.map(VerificationDoc::from),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "particular:  {}", self.particular);
        if !self.homogeneous.is_empty() {
            let _ = writeln!(out, "homogeneous: {}", self.homogeneous.join(", "));
        }
        if let Some(cs) = &self.constants {
            if !cs.is_empty() {
                let rendered: Vec<String> = cs
                    .iter()
                    .map(|c| match c {
                        ConstantDoc::Exact(s) => s.clone(),
                        ConstantDoc::Numeric(x) => format!("{x}"),
                    })
                    .collect();
                let _ = writeln!(out, "constants:   {}", rendered.join(", "));
            }
        }
        if let Some(g) = &self.general {
            let _ = writeln!(out, "general:     {g}");
        }
        if !self.trace.is_empty() {
            let _ = writeln!(out, "trace:");
            for (i, s) in self.trace.iter().enumerate() {
                let _ = writeln!(out, "  {}. [{}] {}", i + 1, s.label, s.step);
            }
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(
                out,
                "verification: {}",
                if v.passed { "passed" } else { "FAILED" }
            );
            for r in &v.reports {
                let _ = writeln!(out, "  {}", r.summary);
            }
        }
        out
    }
}

impl From<&Verification> for VerificationDoc {
    fn from(v: &Verification) -> Self {
        VerificationDoc {
            passed: v.passed(),
            reports: v
                .reports
                .iter()
                .map(|r| ReportDoc {
                    method: r.method.name().to_string(),
                    range: [r.range.0, r.range.1],
                    passed: r.status.passed(),
                    status: match r.status {
                        VerifyStatus::ExactMatch => "exact-match",
                        VerifyStatus::MaxAbsDeviation(_) => "max-abs-deviation",
                        _ => "mismatch",
                    }
                    .to_string(),
                    first_mismatch: r.status.mismatch_t(),
                    max_abs_deviation: match r.status {
                        VerifyStatus::MaxAbsDeviation(d) => Some(d),
                        _ => None,
                    },
                    summary: r.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApplyDocument {
    pub input: String,
    pub operator: Vec<String>,
    pub expression: String,
    pub result: String,
}

impl ApplyDocument {
    pub fn new(op_src: &str, expr_src: &str, p: &OperatorPoly, result: &SequenceExpr) -> Self {
        ApplyDocument {
            input: format!("{op_src} | {expr_src}"),
            operator: coefficients(p),
            expression: expr_src.to_string(),
            result: result.to_string(),
        }
    }
}
