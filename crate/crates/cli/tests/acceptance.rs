//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed. Deterministic: all randomness is seeded.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use fdecalc_core::algebra::rational::{int, rat, to_f64};
use fdecalc_core::oracle::NUMERIC_TOLERANCE;
use fdecalc_core::solver::antidifference;
use fdecalc_core::{
    apply_operator, eval_at, iterate_recurrence, parse_equation, solve, solve_particular,
    verify_solution, Equation, OperatorPoly, ParseErrorKind, Rational, SequenceExpr, Solution,
    TPoly, Term, TrigPart,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zero() -> Rational {
    int(0)
}

// ---- random instances -------------------------------------------------------

fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rat(rng);
        if r != zero() {
            return r;
        }
    }
}

fn base(rng: &mut ChaCha8Rng) -> Rational {
    const BASES: &[(i64, i64)] = &[
        (1, 1),
        (-1, 1),
        (2, 1),
        (3, 1),
        (-2, 1),
        (1, 2),
        (-3, 2),
        (2, 3),
    ];
    let (n, d) = BASES[rng.gen_range(0..BASES.len())];
    rat(n, d)
}

fn poly(rng: &mut ChaCha8Rng, max_degree: usize) -> TPoly {
    let deg = rng.gen_range(0..=max_degree);
    let mut c: Vec<Rational> = (0..deg).map(|_| small_rat(rng)).collect();
    c.push(nonzero_rat(rng));
    TPoly::new(c)
}

fn trig(rng: &mut ChaCha8Rng) -> TrigPart {
    match rng.gen_range(0..4) {
        0 => TrigPart::Cos(rng.gen_range(1..=3)),
        1 => TrigPart::Sin(rng.gen_range(1..=3)),
        _ => TrigPart::None,
    }
}

/// Up to three terms `c · λ^t · f(t) · trig` with `deg f ≤ 3`.
fn rhs(rng: &mut ChaCha8Rng) -> SequenceExpr {
    let n = rng.gen_range(1..=3);
    let terms = (0..n)
        .map(|_| Term::new(nonzero_rat(rng), base(rng), poly(rng, 3), trig(rng)).unwrap())
        .collect();
    SequenceExpr::from_terms(terms)
}

fn operator(rng: &mut ChaCha8Rng, degree: usize) -> OperatorPoly {
    let mut c: Vec<Rational> = (0..degree).map(|_| small_rat(rng)).collect();
    c.push(nonzero_rat(rng));
    OperatorPoly::new(c)
}

/// The root of `P` that makes a term resonant: `λ (-1)^n`.
fn effective_root(term: &Term) -> Rational {
    &term.base * term.trig.sign()
}

// ---- criteria ---------------------------------------------------------------

const GOLDEN: &[(&str, &str)] = &[
    ("y(t+2)-5*y(t+1)+4*y(t)=3^t", "-1/2 * 3^t"),
    ("y(t+2)-5*y(t+1)+6*y(t)=cos(pi*t)", "1/12 * cos(pi*t)"),
    (
        "y(t+2)-5*y(t+1)+4*y(t)=3^t*sin(pi*t)",
        "1/28 * 3^t * sin(pi*t)",
    ),
    ("y(t+1)-2*y(t)=2^t", "2^(t-1) * t"),
];

fn golden_examples() -> Outcome {
    let start = Instant::now();
    for &(src, expected) in GOLDEN {
        let eq = parse_equation(src).map_err(|e| format!("{src}: {e}"))?;
        let sol = solve(&eq).map_err(|e| format!("{src}: {e}"))?;
        let got = sol.particular.to_string();
        ensure(got == expected, || {
            format!("{src}: got `{got}`, want `{expected}`")
        })?;
        // the rendering is canonical and exact: it re-parses to the same expression
        let back = fdecalc_core::parse_expr(&got).map_err(|e| e.to_string())?;
        ensure(back == sol.particular, || {
            format!("{src}: `{got}` does not round-trip")
        })?;
        ensure(
            apply_operator(&eq.operator, &sol.particular) == eq.rhs,
            || format!("{src}: forward application differs from the right-hand side"),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?} (limit 1 s)")
    })?;
    Ok(format!("4/4 exact in {elapsed:?}"))
}

fn forward_inverse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let start = Instant::now();
    let mut resonant = 0;
    for i in 0..200 {
        let phi = rhs(&mut rng);
        let p = if i % 3 == 0 {
            // P = (T - λ)^m · S with λ the root of one right-hand-side term
            let terms = phi.terms();
            let target = &terms[rng.gen_range(0..terms.len())];
            let m = rng.gen_range(1..=3u32);
            let deg = rng.gen_range(0..=(4 - m as usize));
            let s = operator(&mut rng, deg);
            OperatorPoly::root_power(&effective_root(target), m).compose(&s)
        } else {
            let deg = rng.gen_range(1..=4);
            operator(&mut rng, deg)
        };
        if phi
            .terms()
            .iter()
            .any(|t| p.eval_scalar(&effective_root(t)) == zero())
        {
            resonant += 1;
        }
        let (y, _) = solve_particular(&p, &phi).map_err(|e| format!("instance {i}: {e}"))?;
        let back = apply_operator(&p, &y);
        ensure(back == phi, || {
            format!("instance {i}: P = {p}, φ = {phi}, y = {y}, P y = {back}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(resonant >= 50, || {
        format!("only {resonant} resonant instances")
    })?;
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?} (limit 10 s)")
    })?;
    Ok(format!("200/200 exact, {resonant} resonant, {elapsed:?}"))
}

fn propagation() -> Outcome {
    let t_poly = TPoly::x();
    for m in 1..=5usize {
        let g = antidifference(&t_poly, m);
        // level k: g_k(t) = Σ_{s<t} g_{k-1}(s), starting from g_0(t) = t
        let mut level: Vec<Rational> = (0..=30).map(int).collect();
        for _ in 0..m {
            let mut acc = zero();
            let mut next = Vec::with_capacity(level.len());
            for v in &level {
                next.push(acc.clone());
                acc += v;
            }
            level = next;
        }
        for (t, want) in level.iter().enumerate() {
            let got = g.eval(&int(t as i64));
            ensure(&got == want, || {
                format!("m={m}, t={t}: closed form {got}, nested sum {want}")
            })?;
        }
    }
    Ok("m=1..5, t=0..30 exact".to_string())
}

fn shift_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut checked = 0;
    for n in 1..=5u32 {
        for _ in 0..20 {
            let lambda = nonzero_rat(&mut rng);
            let f = poly(&mut rng, 3);
            let lhs = apply_operator(
                &OperatorPoly::root_power(&lambda, n),
                &SequenceExpr::from_parts(f.clone(), lambda.clone(), TrigPart::None),
            );
            // [λ(T - 1)]^n
            let step = OperatorPoly::new(vec![-lambda.clone(), lambda.clone()]);
            let mut op = OperatorPoly::new(vec![int(1)]);
            for _ in 0..n {
                op = op.compose(&step);
            }
            let inner = apply_operator(&op, &SequenceExpr::from_poly(f.clone()))
                .as_poly()
                .ok_or("plain polynomial expected")?;
            let rhs = SequenceExpr::from_parts(inner, lambda.clone(), TrigPart::None);
            ensure(lhs == rhs, || {
                format!("n={n}, λ={lambda}, f={f}: {lhs} vs {rhs}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, λ, f) triples exact"))
}

fn rational_root_operator(rng: &mut ChaCha8Rng, degree: usize) -> OperatorPoly {
    const ROOTS: &[(i64, i64)] = &[
        (1, 1),
        (-1, 1),
        (2, 1),
        (1, 2),
        (-1, 2),
        (3, 2),
        (-2, 1),
        (2, 3),
    ];
    let mut p = OperatorPoly::new(vec![int(1)]);
    for _ in 0..degree {
        let (a, b) = ROOTS[rng.gen_range(0..ROOTS.len())];
        p = p.compose(&OperatorPoly::root_power(&rat(a, b), 1));
    }
    p.compose(&OperatorPoly::new(vec![nonzero_rat(rng)]))
}

fn initial_conditions(rng: &mut ChaCha8Rng, n: usize) -> Vec<(i64, Rational)> {
    (0..n as i64).map(|t| (t, small_rat(rng))).collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for i in 0..50 {
        let degree = rng.gen_range(1..=4);
        let p = rational_root_operator(&mut rng, degree);
        let eq = Equation::new(p, rhs(&mut rng))
            .and_then(|e| e.with_initial(initial_conditions(&mut rng, degree)))
            .map_err(|e| format!("instance {i}: {e}"))?;
        let sol = solve(&eq).map_err(|e| format!("instance {i}: {e}"))?;
        let general = sol
            .general()
            .ok_or_else(|| format!("instance {i}: no exact closed form"))?;
        let iterated = iterate_recurrence(&eq, 50).map_err(|e| e.to_string())?;
        for (t, want) in iterated.iter().enumerate() {
            let got = eval_at(&general, t as i64);
            ensure(&got == want, || {
                format!("instance {i} ({eq}), t={t}: {got} vs {want}")
            })?;
        }
    }

    // numeric modes: irreducible quadratics and irrational real roots
    const QUADRATICS: &[[i64; 3]] = &[
        [1, 1, 1],
        [1, 0, 1],
        [-1, -1, 1],
        [-2, 0, 1],
        [2, -2, 1],
        [1, -1, 1],
    ];
    const MILD: &[(i64, i64)] = &[(1, 1), (-1, 1), (2, 1), (1, 2)];
    let mut worst = 0.0f64;
    for i in 0..24 {
        let q = OperatorPoly::from_ints(&QUADRATICS[i % QUADRATICS.len()]);
        let extra = rng.gen_range(0..=2);
        let mut p = q;
        for _ in 0..extra {
            let (a, b) = MILD[rng.gen_range(0..MILD.len())];
            p = p.compose(&OperatorPoly::root_power(&rat(a, b), 1));
        }
        let (a, b) = MILD[rng.gen_range(0..MILD.len())];
        let phi = SequenceExpr::from_terms(vec![Term::new(
            nonzero_rat(&mut rng),
            rat(a, b),
            poly(&mut rng, 2),
            TrigPart::None,
        )
        .unwrap()]);
        let degree = 2 + extra;
        let eq = Equation::new(p, phi)
            .and_then(|e| e.with_initial(initial_conditions(&mut rng, degree)))
            .map_err(|e| format!("numeric instance {i}: {e}"))?;
        let sol = solve(&eq).map_err(|e| format!("numeric instance {i}: {e}"))?;
        ensure(sol.has_numeric_modes(), || {
            format!("numeric instance {i}: no numeric modes")
        })?;
        let iterated = iterate_recurrence(&eq, 20).map_err(|e| e.to_string())?;
        for (t, want) in iterated.iter().enumerate() {
            let got = sol
                .eval_general_f64(t as i64)
                .ok_or_else(|| format!("numeric instance {i}: constants not fitted"))?;
            let dev = (got - to_f64(want)).abs();
            worst = worst.max(dev);
            ensure(dev <= NUMERIC_TOLERANCE, || {
                format!("numeric instance {i} ({eq}), t={t}: {got} vs {want} (|Δ| = {dev:e})")
            })?;
        }
    }
    Ok(format!(
        "50 exact over 50 steps; 24 numeric over 20 steps, max |Δ| = {worst:.1e}"
    ))
}

fn corrupt_leading(e: &SequenceExpr) -> SequenceExpr {
    let mut terms = e.terms().to_vec();
    terms[0].coeff = &terms[0].coeff * rat(3, 2);
    SequenceExpr::from_terms(terms)
}

fn negative_controls() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fdecalc");
    for &(src, _) in GOLDEN {
        let eq = parse_equation(src).map_err(|e| e.to_string())?;
        let sol = solve(&eq).map_err(|e| e.to_string())?;
        let bad = Solution {
            particular: corrupt_leading(&sol.particular),
            ..sol
        };
        let report = verify_solution(&eq, &bad, 50);
        let failure = report
            .first_failure()
            .ok_or_else(|| format!("{src}: corrupted `{}` passed", bad.particular))?;
        let t = failure
            .status
            .mismatch_t()
            .ok_or("mismatch without a position")?;
        let within = eq.degree() as i64 + 1;
        ensure((0..within).contains(&t), || {
            format!("{src}: first mismatch at t={t}, not within {within} steps")
        })?;

        let out = Command::new(bin)
            .args(["verify", src, &bad.particular.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(3), || {
            format!(
                "{src}: `fdecalc verify` exited {:?}, want 3",
                out.status.code()
            )
        })?;
    }
    // and the uncorrupted solutions are accepted
    for &(src, good) in GOLDEN {
        let out = Command::new(bin)
            .args(["verify", src, good])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || {
            format!("{src}: `fdecalc verify` rejected the correct `{good}`")
        })?;
    }
    Ok("4/4 corruptions caught within degree+1 steps, exit 3".to_string())
}

/// Inputs that must be rejected with exit 1, and the byte offset reported.
const MALFORMED: &[(&str, usize)] = &[
    ("y(t+1)-y(t)=", 12),
    ("", 0),
    ("y(t+1)-y(t)", 11),
    ("y(t+1)-y(t)=1=2", 13),
    ("y(t+1)-y(x)=1", 9),
    ("y(t+1)-y(t=1", 10),
    ("y(t+1)-y(t)=3^", 14),
    ("y(t+1)-y(t)=cos(pi*x)", 19),
    ("y(t+1)-y(t)=cos(pi t)", 19),
    ("y(t+1)-y(t)=foo(t)", 12),
    ("y(t+1)-y(t)=2 $ 3", 14),
    ("y(t+1)-y(t)=(t+1", 16),
    ("y(t+1)-*y(t)=1", 7),
    ("y(t+1.5)-y(t)=1", 4),
    ("y(t+)-y(t)=1", 4),
    ("y(t+1)-y(t)=sin(pi*t", 20),
    ("y(t+1)-t*y(t)=1", 9),
    ("y(t+1)*y(t)=1", 7),
    ("t = 1", 0),
    ("y(t+1)-y(t)=1/0", 14),
];

fn parser_robustness() -> Outcome {
    // as printed, with juxtaposition, and with explicit `*`
    const WRITTEN: &[(&str, &str)] = &[
        ("y(t+2)-5y(t+1)+4y(t)=3^t", "y(t+2)-5*y(t+1)+4*y(t)=3^t"),
        (
            "y(t+2)-5y(t+1)+6y(t)=cos(pi*t)",
            "y(t+2)-5*y(t+1)+6*y(t)=cos(pi*t)",
        ),
        (
            "y(t+2)-5y(t+1)+4y(t)=3^t*sin(pi*t)",
            "y(t+2)-5*y(t+1)+4*y(t)=3^t*sin(pi*t)",
        ),
        ("y(t+1)-2y(t)=2^t", "y(t+1)-2*y(t)=2^t"),
    ];
    for &(written, explicit) in WRITTEN {
        let a = parse_equation(written).map_err(|e| format!("{written}: {e}"))?;
        let b = parse_equation(explicit).map_err(|e| format!("{explicit}: {e}"))?;
        ensure(a == b, || format!("`{written}` and `{explicit}` differ"))?;
    }
    let ex1 = parse_equation(WRITTEN[0].1).map_err(|e| e.to_string())?;
    ensure(ex1.operator == OperatorPoly::from_ints(&[4, -5, 1]), || {
        format!("operator {}", ex1.operator)
    })?;
    ensure(ex1.rhs == SequenceExpr::geometric(int(3)), || {
        format!("rhs {}", ex1.rhs)
    })?;

    ensure(MALFORMED.len() == 20, || {
        "corpus must have 20 entries".to_string()
    })?;
    for &(src, offset) in MALFORMED {
        let err = parse_equation(src).expect_err(src);
        ensure(err.kind != ParseErrorKind::UnsupportedRhs, || {
            format!("{src}: {err}")
        })?;
        ensure(err.offset == offset, || {
            format!("{src}: offset {} want {offset}", err.offset)
        })?;
        let out = fdecalc_cli::run(["fdecalc", "solve", src]);
        ensure(out.code == 1, || format!("{src}: exit {} want 1", out.code))?;
        let marker = format!("at byte {offset}");
        ensure(out.stderr.contains(&marker), || {
            format!("{src}: diagnostic `{}`", out.stderr)
        })?;
    }
    Ok("4/4 written forms parse; 20/20 malformed inputs exit 1 at the right offset".to_string())
}

fn main() {
    let criteria: &[Criterion] = &[
        ("golden examples", golden_examples),
        ("forward-inverse, 200 random instances", forward_inverse),
        ("propagation vs nested summation", propagation),
        ("shift-theorem identity", shift_theorem),
        ("closed form vs iteration", oracle_equivalence),
        ("negative controls", negative_controls),
        ("parser robustness", parser_robustness),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".to_string()))
        });
        match result {
            Ok(detail) => println!("PASS  criterion {}  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {}  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
