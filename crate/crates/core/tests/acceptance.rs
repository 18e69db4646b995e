//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use lexrecip::euler::strata;
use lexrecip::generate::{posets_up_to, seeded_poset};
use lexrecip::homeo::is_lex_increasing;
use lexrecip::{
    check_stanley_reciprocity, count_components, count_homs, order_polynomial, EulerCalc, FinitePoset, Homeomorphism,
    LexPoset, Mode, PointSampler,
};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [Mode; 2] = [Mode::Strict, Mode::Weak];
const ROUNDTRIP_TOL: f64 = 1e-9;
const ROUNDTRIP_POINTS: usize = 10_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn sign(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn fixtures() -> Vec<(&'static str, FinitePoset)> {
    vec![
        ("chain1", FinitePoset::chain(1)),
        ("chain2", FinitePoset::chain(2)),
        ("chain3", FinitePoset::chain(3)),
        ("antichain2", FinitePoset::antichain(2)),
        (
            "vposet",
            FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).expect("valid fixture"),
        ),
    ]
}

fn stanley_reciprocity() -> Outcome {
    let mut checked = 0;
    for p in posets_up_to(4) {
        let r = check_stanley_reciprocity(&p);
        if !r.holds {
            return fail(format!("{p:?}: {} != {}", r.lhs, r.rhs));
        }
        checked += 1;
    }
    let mut random = 0;
    for seed in 0..200u64 {
        let p = seeded_poset(5 + (seed % 2) as usize, seed);
        let r = check_stanley_reciprocity(&p);
        if !r.holds {
            return fail(format!("seed {seed}: {} != {}", r.lhs, r.rhs));
        }
        random += 1;
    }
    pass(format!("{checked} exhaustive posets (|P| <= 4), {random} seeded posets (|P| = 5, 6)"))
}

fn out_of_sample() -> Outcome {
    let mut evaluations = 0;
    for p in posets_up_to(5) {
        for mode in MODES {
            let op = order_polynomial(&p, mode);
            for n in (p.len() + 2)..=(p.len() + 5) {
                let count = count_homs(&p, &FinitePoset::chain(n), mode);
                if op.evaluate_at(n as i64) != BigInt::from(count) {
                    return fail(format!("{p:?} {mode} n={n}: {op} vs {count}"));
                }
                evaluations += 1;
            }
        }
    }
    pass(format!("{evaluations} exact evaluations on all posets with |P| <= 5"))
}

fn euler_reciprocity() -> Outcome {
    let calc = EulerCalc::new();
    let targets = posets_up_to(3);
    let mut reports = 0;
    for p in posets_up_to(4) {
        for q0 in &targets {
            for depth in 0..=1 {
                for r in calc.check_euler_reciprocity(&p, &LexPoset::new(q0.clone(), depth)) {
                    if !r.holds {
                        return fail(format!("{p:?} into {q0:?} x R^{depth}: {} != {}", r.lhs, r.rhs));
                    }
                    reports += 1;
                }
            }
        }
    }
    let mut spot = 0;
    for seed in 0..20u64 {
        let p = seeded_poset(5, 1000 + seed);
        let q0 = seeded_poset(1 + (seed % 3) as usize, 2000 + seed);
        for depth in [1, 2] {
            for r in calc.check_euler_reciprocity(&p, &LexPoset::new(q0.clone(), depth)) {
                if !r.holds {
                    return fail(format!("seed {seed} depth {depth}: {} != {}", r.lhs, r.rhs));
                }
                spot += 1;
            }
        }
    }
    pass(format!("{reports} exhaustive reports, {spot} seeded reports at |P| = 5, depth <= 2"))
}

fn order_polynomial_route() -> Outcome {
    let calc = EulerCalc::new();
    let mut checked = 0;
    for p in posets_up_to(4) {
        for mode in MODES {
            let op = order_polynomial(&p, mode);
            for m in 0..=3usize {
                for k in 0..=2usize {
                    let e_q = if k % 2 == 0 { m as i64 } else { -(m as i64) };
                    let lhs = calc.euler_hom(&p, &LexPoset::new(FinitePoset::chain(m), k), mode);
                    let rhs = op.evaluate_at(e_q);
                    if lhs != rhs {
                        return fail(format!("{p:?} {mode} m={m} k={k}: {lhs} != {rhs}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    pass(format!("{checked} exact comparisons"))
}

fn figure_one() -> Outcome {
    let c2 = FinitePoset::chain(2);
    let q = LexPoset::new(FinitePoset::chain(2), 1);
    let components = match count_components(&c2, &q, Mode::Weak) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let e = EulerCalc::new().euler_hom(&c2, &q, Mode::Weak);
    let rhs = sign(2) * BigInt::from(count_homs(&c2, &FinitePoset::chain(2), Mode::Strict));
    if components == 3 && e == BigInt::from(1) && e == rhs {
        pass(format!("components = {components}, e = {e} = e(Hom<([2],[2]) x R^2) = {rhs}"))
    } else {
        fail(format!("components = {components}, e = {e}, rhs = {rhs}"))
    }
}

fn homeomorphism_roundtrip() -> Outcome {
    let mut max_err = 0f64;
    let mut points = 0usize;
    let fx = fixtures();
    for (pi, (pname, p)) in fx.iter().enumerate() {
        for (qi, (qname, q)) in fx.iter().enumerate() {
            let h = Homeomorphism::new(p, q);
            let sampler = PointSampler::new(p, q, 10.0);
            let mut rng = ChaCha8Rng::seed_from_u64((pi * 16 + qi) as u64);
            for _ in 0..ROUNDTRIP_POINTS {
                let x = sampler.top(&mut rng);
                let fwd = match h.forward_trace(&x) {
                    Ok(t) => t,
                    Err(e) => return fail(format!("{pname}->{qname}: forward failed: {e}")),
                };
                if fwd.iter().any(|s| !h.membership(s, s.stage) || s.base != x.base) {
                    return fail(format!("{pname}->{qname}: forward stage left its space at {x:?}"));
                }
                let y = fwd.last().expect("nonempty trace");
                let back = match h.backward_trace(y) {
                    Ok(t) => t,
                    Err(e) => return fail(format!("{pname}->{qname}: backward failed: {e}")),
                };
                if back.iter().any(|s| !h.membership(s, s.stage) || s.base != x.base) {
                    return fail(format!("{pname}->{qname}: backward stage left its space at {y:?}"));
                }
                let z = back.last().expect("nonempty trace");
                if !is_lex_increasing(p, q, &z.base, &z.reals) {
                    return fail(format!("{pname}->{qname}: backward output not lex increasing"));
                }
                for (a, b) in z.reals.iter().zip(&x.reals) {
                    max_err = max_err.max((a - b).abs());
                }
                points += 1;
            }
        }
    }
    if max_err <= ROUNDTRIP_TOL {
        pass(format!("{points} points over {} fixture pairs, max error {max_err:.3e}", fx.len() * fx.len()))
    } else {
        fail(format!("max error {max_err:.3e} exceeds {ROUNDTRIP_TOL:e}"))
    }
}

fn counterexample() -> Outcome {
    let c2 = FinitePoset::chain(2);
    let c1 = FinitePoset::chain(1);
    let strict_count = count_homs(&c2, &c1, Mode::Strict);
    let lhs_space = LexPoset::new(c1.clone(), 1);
    let lhs = EulerCalc::new().euler_hom(&c2, &lhs_space, Mode::Weak);
    // e(Hom<(P,Q) x R^|P|) = (−1)^|P| |Hom<(P,Q)|
    let rhs = sign(2) * BigInt::from(strict_count);
    let cells = match strata(&c2, &lhs_space, Mode::Weak) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let by_cells: BigInt = cells.iter().map(|s| sign(s.dimension())).sum();
    let lhs_components = count_components(&c2, &lhs_space, Mode::Weak).unwrap_or(usize::MAX);
    let rhs_components = count_components(&c2, &LexPoset::finite(c1), Mode::Strict).unwrap_or(usize::MAX);
    if strict_count == 0 && lhs == rhs && by_cells == lhs && lhs_components == 1 && rhs_components == 0 {
        pass(format!(
            "Hom<([2],[1]) empty; e(Hom<=([2],[1] x R)) = {lhs} = {rhs}; components {lhs_components} vs {rhs_components}"
        ))
    } else {
        fail(format!(
            "count {strict_count}, lhs {lhs}, rhs {rhs}, cells {by_cells}, components {lhs_components}/{rhs_components}"
        ))
    }
}

fn main() {
    type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 7] = [
        ("AC1", "Stanley reciprocity", stanley_reciprocity, Duration::from_secs(60)),
        ("AC2", "order polynomial out-of-sample", out_of_sample, Duration::from_secs(60)),
        ("AC3", "Euler reciprocity Q vs -Q", euler_reciprocity, Duration::from_secs(300)),
        ("AC4", "Euler characteristic via order polynomial", order_polynomial_route, Duration::from_secs(120)),
        ("AC5", "Hom<=([2],[2] x R) instance", figure_one, Duration::from_secs(60)),
        ("AC6", "homeomorphism round trip", homeomorphism_roundtrip, Duration::from_secs(60)),
        ("AC7", "P=[2], Q=[1] counterexample sanity", counterexample, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.ok && elapsed > budget {
            outcome = fail(format!("{} (took {elapsed:.2?}, budget {budget:?})", outcome.detail));
        }
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {name}: {} ({elapsed:.2?})", outcome.detail);
        if !outcome.ok {
            failures += 1;
        }
    }
    if failures > 0 {
        println!("acceptance: {failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
