//! Property checks for the invariants of each module, against brute-force oracles.

use std::collections::HashSet;

use lexrecip::generate::{naturally_labeled_posets, posets_up_to, random_poset};
use lexrecip::homeo::is_lex_increasing;
use lexrecip::{
    compatible_preorders, count_homs, enumerate_homs, euler::classify_point, euler::strata, lemma_phi, lemma_phi_inv,
    order_polynomial, Bound, EulerCalc, FinitePoset, Homeomorphism, LexPoset, Mode, PointSampler,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every labelled poset on `n` elements, found by trying every relation on
/// the off-diagonal pairs and keeping the acyclic ones.
fn all_labeled_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let chosen: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if let Ok(p) = FinitePoset::from_index_relation(names.clone(), &chosen) {
            if seen.insert(p.strict_matrix().to_vec()) {
                out.push(p);
            }
        }
    }
    out
}

fn closure_by_paths(p: &FinitePoset) -> Vec<bool> {
    // depth-first reachability over the cover graph
    let n = p.len();
    let mut m = vec![false; n * n];
    for s in 0..n {
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(a, b) in p.covers() {
                if a == x && !m[s * n + b] {
                    m[s * n + b] = true;
                    stack.push(b);
                }
            }
        }
    }
    m
}

#[test]
fn labeled_poset_counts_and_closure() {
    // labelled posets: 1, 1, 3, 19, 219
    let counts: Vec<_> = (0..=4).map(|n| all_labeled_posets(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    for n in 0..=4 {
        for p in all_labeled_posets(n) {
            assert_eq!(closure_by_paths(&p), p.strict_matrix());
        }
    }
}

#[test]
fn admissible_numbering_on_every_small_poset() {
    for n in 0..=4 {
        for p in all_labeled_posets(n) {
            let num = p.admissible_numbering();
            let order = &num.order;
            assert_eq!(order.len(), n);
            for i in 0..n {
                for j in (i + 1)..n {
                    assert!(!p.le(order[j], order[i]), "{p:?} numbered {order:?}");
                }
            }
        }
    }
}

#[test]
fn covers_are_the_transitive_reduction() {
    for p in posets_up_to(4) {
        let n = p.len();
        let mut expected = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) && !(0..n).any(|c| p.lt(a, c) && p.lt(c, b)) {
                    expected.push((a, b));
                }
            }
        }
        assert_eq!(p.covers(), expected.as_slice());
    }
}

#[test]
fn hom_count_invariants() {
    for p in posets_up_to(3) {
        let mut prev = [0u64; 2];
        for n in 0..=5 {
            let c = FinitePoset::chain(n);
            let strict = count_homs(&p, &c, Mode::Strict);
            let weak = count_homs(&p, &c, Mode::Weak);
            assert!(strict <= weak);
            assert!(strict >= prev[0] && weak >= prev[1]);
            prev = [strict, weak];
        }
    }
    for k in 0..=3 {
        let a = FinitePoset::antichain(k);
        for q in posets_up_to(3) {
            let expected = (q.len() as u64).pow(k as u32);
            assert_eq!(count_homs(&a, &q, Mode::Strict), expected);
            assert_eq!(count_homs(&a, &q, Mode::Weak), expected);
        }
    }
}

#[test]
fn enumerated_maps_are_valid_distinct_and_sorted() {
    let v = FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    for q in posets_up_to(3) {
        for mode in [Mode::Strict, Mode::Weak] {
            let maps = enumerate_homs(&v, &q, mode);
            assert!(maps.iter().all(|m| m.is_valid(&v, &q)));
            assert!(maps.windows(2).all(|w| w[0].values < w[1].values));
        }
    }
}

#[test]
fn order_polynomial_out_of_sample() {
    for p in posets_up_to(4) {
        for mode in [Mode::Strict, Mode::Weak] {
            let op = order_polynomial(&p, mode);
            for n in (p.len() + 2)..=(p.len() + 5) {
                let count = count_homs(&p, &FinitePoset::chain(n), mode);
                assert_eq!(op.evaluate_at(n as i64), BigInt::from(count));
            }
            for t in -6..=6 {
                // integer-valued everywhere; evaluate_at asserts integrality
                op.evaluate_at(t);
            }
        }
    }
}

#[test]
fn euler_degenerates_to_counting_at_depth_zero() {
    let calc = EulerCalc::new();
    let targets = posets_up_to(3);
    for p in posets_up_to(4) {
        for q0 in &targets {
            for mode in [Mode::Strict, Mode::Weak] {
                let e = calc.euler_hom(&p, &LexPoset::finite(q0.clone()), mode);
                assert_eq!(e, BigInt::from(count_homs(&p, q0, mode)));
            }
        }
    }
}

#[test]
fn real_lex_powers_match_order_polynomial_at_sign() {
    let calc = EulerCalc::new();
    for p in posets_up_to(5) {
        for mode in [Mode::Strict, Mode::Weak] {
            let op = order_polynomial(&p, mode);
            for k in 0..=3usize {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(calc.euler_hom_real(&p, k, mode), op.evaluate_at(sign), "{p:?} k={k} {mode}");
            }
        }
    }
}

#[test]
fn strata_partition_sampled_points() {
    // integer grid {0,1,2} forces ties, so low-dimensional cells get hit too
    let grid = [0.0, 1.0, 2.0];
    for p in posets_up_to(3) {
        for q0 in posets_up_to(2).into_iter().filter(|q| !q.is_empty()) {
            let q = LexPoset::new(q0.clone(), 1);
            for mode in [Mode::Strict, Mode::Weak] {
                let cells = strata(&p, &q, mode).unwrap();
                let set: HashSet<_> = cells.iter().cloned().collect();
                assert_eq!(set.len(), cells.len(), "duplicate cell");
                let mut hit = HashSet::new();
                let n = p.len();
                let bases = q0.len().pow(n as u32);
                for b in 0..bases {
                    let mut base = vec![0; n];
                    let mut c = b;
                    for slot in &mut base {
                        *slot = c % q0.len();
                        c /= q0.len();
                    }
                    for r in 0..grid.len().pow(n as u32) {
                        let mut reals = vec![0.0; n];
                        let mut c = r;
                        for slot in &mut reals {
                            *slot = grid[c % grid.len()];
                            c /= grid.len();
                        }
                        if let Some(cell) = classify_point(&p, &q0, mode, &base, &reals) {
                            let matches = cells.iter().filter(|s| **s == cell).count();
                            assert_eq!(matches, 1, "{p:?} {base:?} {reals:?}");
                            hit.insert(cell);
                        }
                    }
                }
                assert_eq!(hit.len(), cells.len(), "some cell never sampled for {p:?}");
            }
        }
    }
}

#[test]
fn components_agree_with_convexity_count() {
    // each fibre space Hom^σ(F, ℝ) is convex and nonempty, so components are
    // exactly the weak base maps
    for p in posets_up_to(3) {
        for q0 in posets_up_to(3) {
            let q = LexPoset::new(q0.clone(), 1);
            for mode in [Mode::Strict, Mode::Weak] {
                let got = lexrecip::count_components(&p, &q, mode).unwrap();
                assert_eq!(got as u64, count_homs(&p, &q0, Mode::Weak));
            }
            for mode in [Mode::Strict, Mode::Weak] {
                let got = lexrecip::count_components(&p, &LexPoset::finite(q0.clone()), mode).unwrap();
                assert_eq!(got as u64, count_homs(&p, &q0, mode));
            }
        }
    }
}

#[test]
fn preorder_counts_for_chains_are_compositions() {
    for n in 1..=6 {
        assert_eq!(compatible_preorders(&FinitePoset::chain(n)).len(), 1 << (n - 1));
    }
    // ordered Bell numbers for antichains
    let fubini = [1, 1, 3, 13, 75, 541];
    for (n, &f) in fubini.iter().enumerate() {
        assert_eq!(compatible_preorders(&FinitePoset::antichain(n)).len(), f);
    }
}

/// Stage walker written straight from the definitions of `f_jk` and `f_k`.
fn reference_forward(p: &FinitePoset, x: &[usize], reals: &[f64]) -> Vec<f64> {
    let order = p.admissible_numbering().order;
    let n = order.len();
    let mut t = reals.to_vec();
    for k in (1..n).rev() {
        let next = order[k];
        let mut f = f64::NEG_INFINITY;
        for &pj in &order[..k] {
            let f_jk = if !p.le(pj, next) || x[pj] != x[next] { f64::NEG_INFINITY } else { t[pj] };
            f = f.max(f_jk);
        }
        let bound = if f == f64::NEG_INFINITY { Bound::NegInfinity } else { Bound::Finite(f) };
        t[next] = lemma_phi(bound, t[next]).unwrap();
    }
    t
}

#[test]
fn forward_matches_reference_stage_walker() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in naturally_labeled_posets(4) {
        let q = FinitePoset::chain(2);
        let h = Homeomorphism::new(&p, &q);
        let sampler = PointSampler::new(&p, &q, 10.0);
        for _ in 0..50 {
            let x = sampler.top(&mut rng);
            let got = h.forward(&x).unwrap();
            assert_eq!(got.reals, reference_forward(&p, &x.base, &x.reals));
        }
    }
}

proptest! {
    #[test]
    fn closure_is_a_strict_order(seed in any::<u64>(), n in 0usize..8) {
        let p = random_poset(n, &mut ChaCha8Rng::seed_from_u64(seed));
        for i in 0..n {
            prop_assert!(!p.lt(i, i));
            for j in 0..n {
                prop_assert!(!(p.lt(i, j) && p.lt(j, i)));
                for k in 0..n {
                    prop_assert!(!(p.lt(i, j) && p.lt(j, k)) || p.lt(i, k));
                }
            }
        }
        prop_assert_eq!(closure_by_paths(&p), p.strict_matrix().to_vec());
        prop_assert!(p.admissible_numbering().is_admissible_for(&p));
    }

    #[test]
    fn lemma_phi_roundtrip(f in -50.0f64..50.0, gap_exp in -40.0f64..6.0, s in -10.0f64..40.0) {
        let t = f + gap_exp.exp2();
        prop_assume!(t > f);
        let bound = Bound::Finite(f);
        let back = lemma_phi_inv(bound, lemma_phi(bound, t).unwrap());
        prop_assert!((back - t).abs() <= 1e-9);
        let fwd = lemma_phi(bound, lemma_phi_inv(bound, s)).unwrap();
        prop_assert!((fwd - s).abs() <= 1e-9 * s.abs().max(1.0));
        prop_assert!(lemma_phi(Bound::NegInfinity, s).unwrap() == s + 1.0);
    }

    #[test]
    fn lemma_phi_is_strictly_increasing(f in -10.0f64..10.0, a in 1e-9f64..20.0, b in 1e-9f64..20.0) {
        prop_assume!(a != b);
        let bound = Bound::Finite(f);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(f + lo < f + hi);
        prop_assert!(lemma_phi(bound, f + lo).unwrap() < lemma_phi(bound, f + hi).unwrap());
    }

    #[test]
    fn homeo_roundtrip_on_random_posets(seed in any::<u64>(), n in 1usize..6, m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poset(n, &mut rng);
        let q = random_poset(m, &mut rng);
        let h = Homeomorphism::new(&p, &q);
        let sampler = PointSampler::new(&p, &q, 10.0);
        let x = sampler.top(&mut rng);
        let y = h.forward(&x).unwrap();
        prop_assert_eq!(&y.base, &x.base);
        let z = h.backward(&y).unwrap();
        prop_assert!(is_lex_increasing(&p, &q, &z.base, &z.reals));
        for (a, b) in z.reals.iter().zip(&x.reals) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
        // forward acts monotonically on each coordinate it touches
        for k in 1..n {
            let e = h.numbering().order[k];
            let mut bumped = x.clone();
            bumped.reals[e] += 0.5;
            if h.membership(&bumped, n) {
                let yb = h.forward(&bumped).unwrap();
                let trace_x = h.forward_trace(&x).unwrap();
                let trace_b = h.forward_trace(&bumped).unwrap();
                let stage = n - k; // trace index after the stage acting on position k
                prop_assert!(trace_b[stage].reals[e] > trace_x[stage].reals[e]);
                prop_assert_eq!(&yb.base, &x.base);
            }
        }
    }
}
