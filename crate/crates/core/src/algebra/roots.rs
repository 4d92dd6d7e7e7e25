//! Characteristic-root extraction: exact rational roots first, then a numeric
//! Durand–Kerner pass on whatever square-free factors remain.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::TPoly;
use super::rational::{to_f64, Rational};

/// Durand–Kerner stopping threshold on the largest root update.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Roots with an imaginary part below this magnitude are snapped to the real axis.
pub const REAL_SNAP: f64 = 1e-10;

const MAX_ITERATIONS: usize = 2000;
/// Rational-root candidates are only enumerated when both end coefficients
/// of the primitive integer form fit below this bound.
const CANDIDATE_LIMIT: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(Rational),
    Numeric(Complex64),
}

impl RootValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            RootValue::Exact(r) => Complex64::new(to_f64(r), 0.0),
            RootValue::Numeric(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RootValue::Exact(_))
    }
}

/// Roots with multiplicities; multiplicities sum to the polynomial degree.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RootSet {
    pub roots: Vec<(RootValue, usize)>,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn all_exact(&self) -> bool {
        self.roots.iter().all(|(r, _)| r.is_exact())
    }

    pub fn exact(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.roots.iter().filter_map(|(r, m)| match r {
            RootValue::Exact(q) => Some((q, *m)),
            RootValue::Numeric(_) => None,
        })
    }

    /// Monic coefficients (lowest power first) of `Π (x - r)^m` in floating point.
    pub fn expand_f64(&self) -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for (r, m) in &self.roots {
            let z = r.to_complex();
            for _ in 0..*m {
                let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
                for (i, a) in acc.iter().enumerate() {
                    next[i + 1] += a;
                    next[i] -= a * z;
                }
                acc = next;
            }
        }
        acc
    }
}

/// All roots of `p` (degree ≥ 1) with multiplicity.
pub fn find_roots(p: &TPoly) -> RootSet {
    let mut roots = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let (rational, rest) = extract_rational_roots(&factor);
        roots.extend(rational.into_iter().map(|r| (RootValue::Exact(r), mult)));
        if rest.degree().unwrap_or(0) > 0 {
            for z in numeric_roots(&rest) {
                roots.push((RootValue::Numeric(z), mult));
            }
        }
    }
    RootSet { roots }
}

/// Splits a square-free polynomial into its rational roots and the remaining
/// cofactor (monic).
fn extract_rational_roots(f: &TPoly) -> (Vec<Rational>, TPoly) {
    let mut rest = f.monic();
    let mut found = Vec::new();
    if rest.coeff(0).is_zero() {
        found.push(Rational::zero());
        rest = rest.div_rem(&TPoly::x()).0;
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (found, rest);
    }
    let ints = primitive_integer_form(&rest);
    let (Some(c0), Some(cn)) = (
        ints.first().and_then(|c| c.abs().to_u64()),
        ints.last().and_then(|c| c.abs().to_u64()),
    ) else {
        return (found, rest);
    };
    if c0 > CANDIDATE_LIMIT || cn > CANDIDATE_LIMIT {
        return (found, rest);
    }
    let mut candidates = Vec::new();
    for p in divisors(c0) {
        for q in divisors(cn) {
            if p.gcd(&q) != 1 {
                continue;
            }
            let r = Rational::new(BigInt::from(p), BigInt::from(q));
            candidates.push(-r.clone());
            candidates.push(r);
        }
    }
    candidates.sort();
    for r in candidates {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        if rest.eval(&r).is_zero() {
            rest = rest.div_rem(&TPoly::linear_root(&r)).0;
            found.push(r);
        }
    }
    found.sort();
    (found, rest)
}

fn primitive_integer_form(p: &TPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Durand–Kerner on a square-free polynomial, followed by a Newton polish.
/// Returned roots are conjugate-paired and near-real roots are snapped.
fn numeric_roots(p: &TPoly) -> Vec<Complex64> {
    let lead = to_f64(&p.leading());
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c) / lead).collect();
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let deriv = |z: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                acc * z + c * i as f64
            })
    };

    // Cauchy bound on root modulus.
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * (radius / seed.norm().powi(k as i32)).min(radius))
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if i != j {
                    denom *= z[i] - zj;
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < ROOT_TOLERANCE {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*zi);
            if d.norm() == 0.0 {
                break;
            }
            *zi -= eval(*zi) / d;
        }
    }
    pair_conjugates(z)
}

fn pair_conjugates(z: Vec<Complex64>) -> Vec<Complex64> {
    let mut reals = Vec::new();
    let mut upper = Vec::new();
    let mut lower = 0usize;
    for w in &z {
        if w.im.abs() < REAL_SNAP {
            reals.push(Complex64::new(w.re, 0.0));
        } else if w.im > 0.0 {
            upper.push(*w);
        } else {
            lower += 1;
        }
    }
    if upper.len() != lower {
        return z;
    }
    reals.sort_by(|a, b| a.re.total_cmp(&b.re));
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out = reals;
    for w in upper {
        out.push(w);
        out.push(w.conj());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn rational_roots_are_exact() {
        let rs = find_roots(&TPoly::from_ints(&[4, -5, 1]));
        assert_eq!(
            rs.roots,
            vec![(RootValue::Exact(int(1)), 1), (RootValue::Exact(int(4)), 1)]
        );
        let rs = find_roots(&TPoly::from_ints(&[4, -4, 1]));
        assert_eq!(rs.roots, vec![(RootValue::Exact(int(2)), 2)]);
    }

    #[test]
    fn fractional_and_zero_roots() {
        // x (2x - 1)(3x + 2)
        let p = &(&TPoly::x() * &TPoly::from_ints(&[-1, 2])) * &TPoly::from_ints(&[2, 3]);
        let rs = find_roots(&p);
        let exact: Vec<_> = rs.exact().map(|(r, m)| (r.clone(), m)).collect();
        assert_eq!(exact, vec![(rat(-2, 3), 1), (int(0), 1), (rat(1, 2), 1)]);
    }

    #[test]
    fn imaginary_pair() {
        let rs = find_roots(&TPoly::from_ints(&[1, 0, 1]));
        assert_eq!(rs.total_multiplicity(), 2);
        let zs: Vec<Complex64> = rs.roots.iter().map(|(r, _)| r.to_complex()).collect();
        assert!((zs[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(zs[1], zs[0].conj());
    }

    #[test]
    fn repeated_irrational_root() {
        // (x^2 - 2)^2 (x - 3)
        let p = &TPoly::from_ints(&[-2, 0, 1]).pow(2) * &TPoly::from_ints(&[-3, 1]);
        let rs = find_roots(&p);
        assert_eq!(rs.total_multiplicity(), 5);
        let sqrt2 = 2f64.sqrt();
        let numeric: Vec<_> = rs
            .roots
            .iter()
            .filter(|(r, _)| !r.is_exact())
            .map(|(r, m)| (r.to_complex().re, *m))
            .collect();
        assert_eq!(numeric.len(), 2);
        assert!((numeric[0].0 + sqrt2).abs() < 1e-12 && numeric[0].1 == 2);
        assert!((numeric[1].0 - sqrt2).abs() < 1e-12 && numeric[1].1 == 2);
    }

    proptest! {
        #[test]
        fn reexpansion_matches(coeffs in proptest::collection::vec(-9i64..=9, 1..6), lead in 1i64..=4) {
            let mut c = coeffs.clone();
            c.push(lead);
            let p = TPoly::from_ints(&c);
            let rs = find_roots(&p);
            prop_assert_eq!(rs.total_multiplicity(), p.degree().unwrap());
            let expanded = rs.expand_f64();
            let monic = p.monic();
            for (i, z) in expanded.iter().enumerate() {
                let want = to_f64(&monic.coeff(i));
                prop_assert!((z.re - want).abs() < 1e-9, "coeff {} {} vs {}", i, z, want);
                prop_assert!(z.im.abs() < 1e-9);
            }
        }
    }
}
