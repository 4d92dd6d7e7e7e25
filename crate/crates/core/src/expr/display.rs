//! Canonical text syntax, e.g. `-1/2 * 3^t`, `2^(t-1) * t`,
//! `1/12 * cos(pi*t)`, `t^2 + 2*t + 1`. The parser reads all of these back.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{SequenceExpr, Term, TrigPart};
use crate::algebra::Rational;

impl fmt::Display for TrigPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrigPart::None => f.write_str("1"),
            TrigPart::Cos(1) => f.write_str("cos(pi*t)"),
            TrigPart::Sin(1) => f.write_str("sin(pi*t)"),
            TrigPart::Cos(n) => write!(f, "cos({n}*pi*t)"),
            TrigPart::Sin(n) => write!(f, "sin({n}*pi*t)"),
        }
    }
}

fn base_atom(base: &Rational) -> String {
    if base.is_integer() && base.is_positive() {
        base.to_string()
    } else {
        format!("({base})")
    }
}

impl Term {
    fn is_plain_poly(&self) -> bool {
        self.base.is_one() && self.trig.is_none()
    }

    /// `(negative, magnitude text)`. Plain polynomial terms are rendered
    /// with their own internal signs and always report `negative = false`.
    fn render(&self) -> (bool, String) {
        if self.is_plain_poly() {
            return (false, self.scaled_poly().to_string());
        }
        let mut coeff = self.coeff.clone();
        let mut factors = Vec::new();
        if !self.base.is_one() {
            let b = base_atom(&self.base);
            if self.base.abs() != Rational::one() && coeff.abs() == self.base.recip().abs() {
                // c = ±1/λ reads better as λ^(t-1)
                coeff = if coeff == self.base.recip() {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                factors.push(format!("{b}^(t-1)"));
            } else {
                factors.push(format!("{b}^t"));
            }
        }
        if !self.poly.is_constant() {
            let p = self.poly.to_string();
            let nterms = self.poly.coeffs().iter().filter(|c| !c.is_zero()).count();
            factors.push(if nterms > 1 { format!("({p})") } else { p });
        }
        if !self.trig.is_none() {
            factors.push(self.trig.to_string());
        }
        let negative = coeff.is_negative();
        let mag = coeff.abs();
        if !mag.is_one() || factors.is_empty() {
            factors.insert(0, mag.to_string());
        }
        (negative, factors.join(" * "))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = self.render();
        if neg {
            write!(f, "-{body}")
        } else {
            f.write_str(&body)
        }
    }
}

impl fmt::Display for SequenceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // The plain polynomial part (if any) leads so that its own signs
        // never follow a binary operator.
        let (plain, rest): (Vec<&Term>, Vec<&Term>) =
            self.terms.iter().partition(|t| t.is_plain_poly());
        let mut first = true;
        for term in plain.into_iter().chain(rest) {
            let (neg, body) = term.render();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::TPoly;

    #[test]
    fn worked_answers_render_canonically() {
        let e1 = SequenceExpr::geometric(int(3)).scale(&rat(-1, 2));
        assert_eq!(e1.to_string(), "-1/2 * 3^t");
        let e2 = SequenceExpr::trig(TrigPart::Cos(1)).scale(&rat(1, 12));
        assert_eq!(e2.to_string(), "1/12 * cos(pi*t)");
        let e3 = SequenceExpr::from_parts(TPoly::constant(rat(1, 28)), int(3), TrigPart::Sin(1));
        assert_eq!(e3.to_string(), "1/28 * 3^t * sin(pi*t)");
        let e4 =
            SequenceExpr::from_parts(TPoly::new(vec![int(0), rat(1, 2)]), int(2), TrigPart::None);
        assert_eq!(e4.to_string(), "2^(t-1) * t");
    }

    #[test]
    fn polynomials_and_mixtures() {
        let sq = SequenceExpr::from_poly(TPoly::from_ints(&[1, 2, 1]));
        assert_eq!(sq.to_string(), "t^2 + 2*t + 1");
        let lin = SequenceExpr::from_poly(TPoly::new(vec![rat(-1, 4), rat(-1, 2)]));
        assert_eq!(lin.to_string(), "-1/2*t - 1/4");
        let mix = lin.add(&SequenceExpr::geometric(int(-2)).scale(&int(-3)));
        assert_eq!(mix.to_string(), "-1/2*t - 1/4 - 3 * (-2)^t");
        let quad = SequenceExpr::from_parts(
            TPoly::new(vec![int(0), rat(-1, 4), rat(1, 4)]),
            int(2),
            TrigPart::None,
        );
        assert_eq!(quad.to_string(), "1/4 * 2^t * (t^2 - t)");
        assert_eq!(SequenceExpr::geometric(rat(1, 2)).to_string(), "(1/2)^t");
        assert_eq!(
            SequenceExpr::geometric(int(3))
                .scale(&rat(-1, 3))
                .to_string(),
            "-3^(t-1)"
        );
        assert_eq!(
            SequenceExpr::trig(TrigPart::Sin(2)).to_string(),
            "sin(2*pi*t)"
        );
        assert_eq!(SequenceExpr::zero().to_string(), "0");
    }
}
