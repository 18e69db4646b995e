//! Poset generators for exhaustive and randomized checks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::FinitePoset;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("p{i}")).collect()
}

/// Every naturally labelled poset on `n` elements (identity is a linear
/// extension), one per distinct strict-order matrix. Every isomorphism class
/// of `n`-element posets appears at least once.
///
/// Enumerates all `2^(n(n-1)/2)` relations on the pairs `i < j`, so keep `n`
/// at 6 or below.
pub fn naturally_labeled_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    assert!(pairs.len() < 32, "too many pairs to enumerate");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let chosen: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let poset = FinitePoset::from_index_relation(names(n), &chosen)
            .expect("forward edges are acyclic");
        if seen.insert(poset.strict_matrix().to_vec()) {
            out.push(poset);
        }
    }
    out
}

/// All naturally labelled posets with at most `max_len` elements, smallest first.
pub fn posets_up_to(max_len: usize) -> Vec<FinitePoset> {
    (0..=max_len).flat_map(naturally_labeled_posets).collect()
}

/// Random poset on `n` elements: shuffle the elements once, then include each
/// forward edge of the shuffled order with probability 1/2 and close.
pub fn random_poset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.5) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    FinitePoset::from_index_relation(names(n), &pairs).expect("forward edges are acyclic")
}

/// `random_poset` driven by a fresh ChaCha8 stream for `seed`.
pub fn seeded_poset(n: usize, seed: u64) -> FinitePoset {
    random_poset(n, &mut ChaCha8Rng::seed_from_u64(seed))
}
