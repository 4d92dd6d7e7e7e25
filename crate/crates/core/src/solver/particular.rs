//! The rule engine for particular solutions.
//!
//! Each right-hand-side term `c · λ^t · f(t) · trig` is inverted separately.
//! A trigonometric factor with frequency `n` advances like `((-1)^n)^t`, so
//! the term behaves like a geometric term with effective base
//! `β = λ · (-1)^n`. Writing `P(T) = P̃(T - β)`, the shift theorem turns
//! `1/P(T)` into `λ^t · 1/Q(Δ)` with `Q(Δ) = P̃(βΔ)`; `Q = Δ^m · Q'` where `m`
//! is the multiplicity of `β` as a root of `P`, and the remaining inverse is
//! `Δ^(-m)` of a truncated series in `Δ` applied to `f`.

use num_traits::{One, Zero};

use super::antidiff::antidifference;
use super::trace::{Rule, SolveTrace};
use super::SolveError;
use crate::algebra::{series_inverse, Rational, TPoly};
use crate::expr::{SequenceExpr, Term, TrigPart};
use crate::operator::OperatorPoly;

/// Computes `y_P = (1/P(T)) φ` and the trace of rules used.
///
/// Deterministic; `apply_operator(P, y_P) == φ` exactly.
pub fn solve_particular(
    p: &OperatorPoly,
    rhs: &SequenceExpr,
) -> Result<(SequenceExpr, SolveTrace), SolveError> {
    if p.is_zero() {
        return Err(SolveError::ZeroOperator);
    }
    if let Some(term) = rhs.terms().iter().find(|t| t.base.is_zero()) {
        return Err(SolveError::UnsupportedRhs(format!("{term:?}")));
    }
    let mut trace = SolveTrace::default();
    let k = p.trailing_shift();
    let reduced = if k > 0 {
        let reduced = p.strip_shift(k);
        trace.push(
            Rule::InverseTranslation,
            format!("({p}) y = {rhs}"),
            format!(
                "T^{k} ({reduced}) y = {rhs}; solve ({reduced}) z = {rhs}, then y(t) = z(t-{k})"
            ),
        );
        reduced
    } else {
        p.clone()
    };

    let terms = rhs.terms();
    if terms.len() > 1 {
        let parts: Vec<String> = terms
            .iter()
            .map(|t| format!("1/({reduced}) [{t}]"))
            .collect();
        trace.push(
            Rule::Linearity,
            format!("1/({reduced}) [{rhs}]"),
            parts.join(" + "),
        );
    }

    let mut pieces = Vec::with_capacity(terms.len());
    for term in terms {
        pieces.push(solve_term(&reduced, term, &mut trace));
    }
    let z = pieces
        .iter()
        .fold(SequenceExpr::zero(), |acc, piece| acc.add(piece));
    let summands: Vec<String> = pieces.iter().map(ToString::to_string).collect();
    let summed = if summands.is_empty() {
        "0".to_string()
    } else {
        summands.join(" + ")
    };
    trace.push(Rule::Linearity, summed, z.to_string());

    let y = if k > 0 {
        let y = z.shift(-(k as i64));
        trace.push(
            Rule::InverseTranslation,
            format!("z(t) = {z}"),
            y.to_string(),
        );
        y
    } else {
        z
    };
    Ok((y, trace))
}

fn solve_term(p: &OperatorPoly, term: &Term, trace: &mut SolveTrace) -> SequenceExpr {
    let f = term.scaled_poly();
    let lambda = &term.base;
    let trig = term.trig;
    let beta = lambda * trig.sign();
    let input = SequenceExpr::from_parts(f.clone(), lambda.clone(), trig);
    let wrap = |g: TPoly| SequenceExpr::from_parts(g, lambda.clone(), trig);

    let p_beta = p.eval_scalar(&beta);
    let resonant = p_beta.is_zero();

    if !resonant && f.is_constant() {
        if trig.is_none() {
            let out = wrap(f.scale(&p_beta.recip()));
            trace.push(
                Rule::Power,
                format!("1/({p}) [{input}]"),
                format!("{input} / ({p_beta}) = {out}"),
            );
            return out;
        }
        let rule = match trig {
            TrigPart::Sin(_) => Rule::Sine,
            _ => Rule::Cosine,
        };
        let out = wrap(f.scale(&p_beta.recip()));
        if lambda.is_one() {
            trace.push(
                rule,
                format!("1/({p}) [{input}]"),
                format!(
                    "{input} / P({}) = {input} / ({p_beta}) = {out}",
                    trig.sign()
                ),
            );
        } else {
            let scaled = OperatorPoly::from_poly(p.as_poly().scale_argument(lambda));
            let inner = SequenceExpr::from_parts(f.clone(), Rational::one(), trig);
            trace.push(
                Rule::Scale,
                format!("1/({p}) [{input}]"),
                format!("{}^t * 1/({scaled}) [{inner}]", base_text(lambda)),
            );
            trace.push(
                rule,
                format!("1/({scaled}) [{inner}]"),
                format!("{inner} / ({p_beta}) = {out}"),
            );
        }
        return out;
    }

    // Q(Δ) = P̃(βΔ) where P(T) = P̃(T - β).
    let q = p.shifted_form(&beta).scale_argument(&beta);
    let m = q.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let q_rest = TPoly::new(q.coeffs()[m..].to_vec());
    let delta_q = q.display_in("(T - 1)");
    let geometric_prefix = if lambda.is_one() {
        String::new()
    } else {
        format!("{}^t * ", base_text(lambda))
    };
    let trig_suffix = if trig.is_none() {
        String::new()
    } else {
        format!(" * {trig}")
    };
    let f_text = SequenceExpr::from_poly(f.clone()).to_string();

    if m > 0 && (!beta.is_one() || !lambda.is_one()) {
        let shifted = OperatorPoly::from_poly(p.shifted_form(&beta));
        trace.push(
            Rule::ShiftTheorem,
            format!("1/({p}) [{input}]"),
            format!(
                "P(T) = {} with u = T - {}; {geometric_prefix}1/({delta_q}) [{f_text}]{trig_suffix}",
                shifted.as_poly().display_in("u"),
                beta
            ),
        );
    } else if m == 0 && !(lambda.is_one() && trig.is_none()) {
        let scaled = OperatorPoly::from_poly(p.as_poly().scale_argument(lambda));
        trace.push(
            Rule::Scale,
            format!("1/({p}) [{input}]"),
            format!("{geometric_prefix}1/({scaled}) [{f_text}{trig_suffix}]"),
        );
    }

    let degree = f.degree().unwrap_or(0);
    let coeffs = series_inverse(&q_rest, degree).expect("Q' has nonzero constant term");
    let mut g0 = TPoly::zero();
    let mut power = f.clone();
    for c in &coeffs {
        g0 = &g0 + &power.scale(c);
        power = power.forward_difference();
    }
    if !q_rest.is_constant() || m == 0 {
        let series: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        trace.push(
            Rule::SeriesInverse,
            format!(
                "1/({}) [{f_text}] with Δ = T - 1, series [{}]",
                q_rest.display_in("Δ"),
                series.join(", ")
            ),
            SequenceExpr::from_poly(g0.clone()).to_string(),
        );
    }

    let g = if m > 0 {
        let g = antidifference(&g0, m);
        let rule = if m == 1 && g0.is_constant() {
            Rule::Unity
        } else {
            Rule::Propagation
        };
        let power = if m == 1 {
            String::new()
        } else {
            format!("^{m}")
        };
        trace.push(
            rule,
            format!("1/(T - 1){power} [{}]", SequenceExpr::from_poly(g0.clone())),
            SequenceExpr::from_poly(g.clone()).to_string(),
        );
        g
    } else {
        g0
    };
    wrap(g)
}

fn base_text(base: &Rational) -> String {
    if base.is_integer() && *base > Rational::zero() {
        base.to_string()
    } else {
        format!("({base})")
    }
}
