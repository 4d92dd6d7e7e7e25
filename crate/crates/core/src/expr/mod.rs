//! Sequence expressions: finite sums of `c · λ^t · p(t) · trig(t)` with
//! `trig ∈ {1, cos nπt, sin nπt}`, evaluated on the integers.

mod display;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::rational::pow;
use crate::algebra::{Rational, TPoly};
use crate::operator::OperatorPoly;

/// Trigonometric factor `cos nπt` / `sin nπt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum TrigPart {
    #[default]
    None,
    Cos(u32),
    Sin(u32),
}

impl TrigPart {
    /// `(-1)^n`: the value `cos nπ`, which is also the ratio `trig(t+1)/trig(t)`.
    pub fn sign(self) -> Rational {
        match self {
            TrigPart::None => Rational::one(),
            TrigPart::Cos(n) | TrigPart::Sin(n) => parity_sign(n as i64),
        }
    }

    /// `trig(t + k) / trig(t)`, exactly `(-1)^(nk)`.
    pub fn shift_factor(self, k: i64) -> Rational {
        match self {
            TrigPart::None => Rational::one(),
            TrigPart::Cos(n) | TrigPart::Sin(n) => parity_sign(n as i64 * k),
        }
    }

    /// Value at integer `t`.
    pub fn eval_at(self, t: i64) -> Rational {
        match self {
            TrigPart::None => Rational::one(),
            TrigPart::Cos(n) => parity_sign(n as i64 * t),
            TrigPart::Sin(_) => Rational::zero(),
        }
    }

    pub fn is_none(self) -> bool {
        self == TrigPart::None
    }

    /// `sin 0` vanishes identically and `cos 0` is the constant one.
    fn canonical(self) -> Option<TrigPart> {
        match self {
            TrigPart::Sin(0) => None,
            TrigPart::Cos(0) => Some(TrigPart::None),
            other => Some(other),
        }
    }
}

fn parity_sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("geometric base must be nonzero")]
    ZeroBase,
    #[error("product of two trigonometric factors is outside the supported term class")]
    TrigProduct,
}

/// One summand `coeff · base^t · poly(t) · trig`.
///
/// In normalized form `poly` is monic and `coeff` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub base: Rational,
    pub poly: TPoly,
    pub trig: TrigPart,
}

impl Term {
    pub fn new(
        coeff: Rational,
        base: Rational,
        poly: TPoly,
        trig: TrigPart,
    ) -> Result<Self, ExprError> {
        if base.is_zero() {
            return Err(ExprError::ZeroBase);
        }
        Ok(Term {
            coeff,
            base,
            poly,
            trig,
        })
    }

    /// `coeff · base^t`.
    pub fn geometric(coeff: Rational, base: Rational) -> Result<Self, ExprError> {
        Self::new(coeff, base, TPoly::one(), TrigPart::None)
    }

    /// The full polynomial factor `coeff · poly`.
    pub fn scaled_poly(&self) -> TPoly {
        self.poly.scale(&self.coeff)
    }

    pub fn eval_at(&self, t: i64) -> Rational {
        let trig = self.trig.eval_at(t);
        if trig.is_zero() {
            return trig;
        }
        &self.coeff * pow(&self.base, t) * self.poly.eval(&Rational::from_integer(t.into())) * trig
    }

    /// For a `sin(nπt)` term, the signed amplitude `c · λ^t · f(t) · (-1)^(nt)`
    /// it carries just off the integers; zero for every other term.
    pub fn sine_amplitude_at(&self, t: i64) -> Rational {
        match self.trig {
            TrigPart::Sin(n) => {
                &self.coeff
                    * pow(&self.base, t)
                    * self.poly.eval(&Rational::from_integer(t.into()))
                    * TrigPart::Cos(n).eval_at(t)
            }
            _ => Rational::zero(),
        }
    }

    /// The term `e(t + k)`.
    pub fn shift(&self, k: i64) -> Term {
        Term {
            coeff: &self.coeff * pow(&self.base, k) * self.trig.shift_factor(k),
            base: self.base.clone(),
            poly: self.poly.taylor_shift(&Rational::from_integer(k.into())),
            trig: self.trig,
        }
    }
}

type Key = (TrigPart, Rational);

/// Sum of [`Term`]s. Values built through the public constructors and
/// arithmetic are always normalized: at most one term per `(base, trig)`,
/// each with a monic nonzero polynomial and nonzero coefficient, sorted by key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SequenceExpr {
    terms: Vec<Term>,
}

impl SequenceExpr {
    pub fn zero() -> Self {
        SequenceExpr { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(TPoly::constant(c))
    }

    pub fn from_poly(p: TPoly) -> Self {
        Self::from_parts(p, Rational::one(), TrigPart::None)
    }

    /// `base^t`; panics on a zero base.
    pub fn geometric(base: Rational) -> Self {
        assert!(!base.is_zero(), "zero geometric base");
        Self::from_parts(TPoly::one(), base, TrigPart::None)
    }

    pub fn trig(trig: TrigPart) -> Self {
        Self::from_parts(TPoly::one(), Rational::one(), trig)
    }

    /// `base^t · p(t) · trig`; panics on a zero base.
    pub fn from_parts(p: TPoly, base: Rational, trig: TrigPart) -> Self {
        assert!(!base.is_zero(), "zero geometric base");
        let mut acc = Accumulator::default();
        acc.add(trig, base, p);
        acc.finish()
    }

    /// Wraps terms without normalizing them; see [`normalize`].
    pub fn raw(terms: Vec<Term>) -> Self {
        SequenceExpr { terms }
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        normalize(&Self::raw(terms))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        normalize(self) == *self
    }

    pub fn eval_at(&self, t: i64) -> Rational {
        eval_at(self, t)
    }

    /// Sum of [`Term::sine_amplitude_at`]. Sine terms vanish on the integers,
    /// but shifts act on their amplitudes exactly as on values, so comparing
    /// amplitudes as well catches errors that pointwise values cannot.
    pub fn sine_amplitude_at(&self, t: i64) -> Rational {
        self.terms
            .iter()
            .map(|term| term.sine_amplitude_at(t))
            .sum()
    }

    /// `e(t + k)`.
    pub fn shift(&self, k: i64) -> SequenceExpr {
        Self::from_terms(self.terms.iter().map(|term| term.shift(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> SequenceExpr {
        if c.is_zero() {
            return Self::zero();
        }
        SequenceExpr {
            terms: self
                .terms
                .iter()
                .map(|term| Term {
                    coeff: &term.coeff * c,
                    ..term.clone()
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &SequenceExpr) -> SequenceExpr {
        let mut acc = Accumulator::default();
        for term in self.terms.iter().chain(&other.terms) {
            acc.add_term(term);
        }
        acc.finish()
    }

    pub fn sub(&self, other: &SequenceExpr) -> SequenceExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SequenceExpr {
        self.scale(&-Rational::one())
    }

    /// Product of two expressions. Fails when two trigonometric factors would
    /// meet in the same term.
    pub fn mul(&self, other: &SequenceExpr) -> Result<SequenceExpr, ExprError> {
        let mut acc = Accumulator::default();
        for a in &self.terms {
            for b in &other.terms {
                let trig = match (a.trig, b.trig) {
                    (TrigPart::None, t) | (t, TrigPart::None) => t,
                    _ => return Err(ExprError::TrigProduct),
                };
                acc.add(
                    trig,
                    &a.base * &b.base,
                    (&a.poly * &b.poly).scale(&(&a.coeff * &b.coeff)),
                );
            }
        }
        Ok(acc.finish())
    }

    /// The constant value if this is a constant sequence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.base.is_one() && t.trig.is_none() && t.poly.is_constant() => {
                Some(t.scaled_poly().coeff(0))
            }
            _ => None,
        }
    }

    /// The polynomial if this is a plain polynomial in `t`.
    pub fn as_poly(&self) -> Option<TPoly> {
        match self.terms.as_slice() {
            [] => Some(TPoly::zero()),
            [t] if t.base.is_one() && t.trig.is_none() => Some(t.scaled_poly()),
            _ => None,
        }
    }
}

/// Merges like terms, drops zero terms and rescales each polynomial to be
/// monic. Idempotent; never changes the value at any integer.
pub fn normalize(e: &SequenceExpr) -> SequenceExpr {
    let mut acc = Accumulator::default();
    for term in &e.terms {
        acc.add_term(term);
    }
    acc.finish()
}

/// Exact value at integer `t`; `sin nπt` contributes zero and `cos nπt`
/// contributes `((-1)^n)^t`.
pub fn eval_at(e: &SequenceExpr, t: i64) -> Rational {
    e.terms.iter().map(|term| term.eval_at(t)).sum()
}

/// Forward application `P(T) e = Σ_k a_k e(t + k)` carried out term by term.
pub fn apply_operator(p: &OperatorPoly, e: &SequenceExpr) -> SequenceExpr {
    let mut acc = Accumulator::default();
    for (k, a) in p.terms() {
        for term in &e.terms {
            let mut shifted = term.shift(k as i64);
            shifted.coeff *= a;
            acc.add_term(&shifted);
        }
    }
    acc.finish()
}

#[derive(Default)]
struct Accumulator {
    parts: BTreeMap<Key, TPoly>,
}

impl Accumulator {
    fn add(&mut self, trig: TrigPart, base: Rational, p: TPoly) {
        let Some(trig) = trig.canonical() else {
            return;
        };
        if p.is_zero() {
            return;
        }
        let slot = self.parts.entry((trig, base)).or_default();
        *slot = &*slot + &p;
    }

    fn add_term(&mut self, term: &Term) {
        self.add(term.trig, term.base.clone(), term.scaled_poly());
    }

    fn finish(self) -> SequenceExpr {
        let terms = self
            .parts
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|((trig, base), p)| Term {
                coeff: p.leading(),
                poly: p.monic(),
                base,
                trig,
            })
            .collect();
        SequenceExpr { terms }
    }
}
