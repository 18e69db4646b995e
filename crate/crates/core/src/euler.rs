//! Euler characteristics of `Hom^σ(P, Q0 × ℝ^k)` by stratification.
//!
//! A map into `ℝ^k` with lexicographic order splits along its first real
//! coordinate: the pattern of ties and inequalities among those values is an
//! ordered set partition of `P` compatible with the order, the values realising
//! a pattern with `b` blocks form an open cell `{x_1 < … < x_b} ≅ ℝ^b`, and the
//! remaining `k − 1` coordinates only constrain elements inside one block.
//! Hence
//!
//! ```text
//! e(Hom^σ(P, ℝ^k)) = Σ_π (−1)^{|π|} · Π_{B ∈ π} e(Hom^σ(P|_B, ℝ^{k−1}))
//! ```
//!
//! with `e(Hom^≤(P, pt)) = 1` and `e(Hom^<(P, pt)) = [P is an antichain]`.
//! For `Q0 × ℝ^k` the finite coordinate is most significant and `Q0` is
//! discrete, so the space is a disjoint union over weak base maps
//! `η0: P → Q0` of products over the fibres of `η0`; this is the lemma behind
//! [`EulerCalc::euler_hom`].

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, Mode, MonotoneMap};
use crate::poset::{FinitePoset, LexPoset};

/// Blocks listed in increasing value order; each block ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `block_of()[i]` is the block holding element `i`, or `None` if `i` is
    /// not covered.
    pub fn block_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                if i < n {
                    out[i] = Some(b);
                }
            }
        }
        out
    }

    /// Blocks are disjoint and nonempty and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for block in &self.blocks {
            if block.is_empty() {
                return false;
            }
            for &i in block {
                if i >= n || std::mem::replace(&mut seen[i], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `p_i < p_j ⇒ block(i) ≤ block(j)`.
    pub fn is_compatible_with(&self, poset: &FinitePoset) -> bool {
        let n = poset.len();
        let block = self.block_of(n);
        (0..n).all(|i| (0..n).all(|j| !poset.lt(i, j) || block[i] <= block[j]))
    }

    /// The ordered set partition recorded by a list of real values.
    pub fn from_values(values: &[f64]) -> Self {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        for i in idx {
            if last == Some(values[i]) {
                blocks.last_mut().unwrap().push(i);
            } else {
                blocks.push(vec![i]);
                last = Some(values[i]);
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        Self { blocks }
    }

    fn relabel(&self, names: &[usize]) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    let mut v: Vec<_> = b.iter().map(|&i| names[i]).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
        }
    }
}

/// All ordered set partitions of `P` compatible with its order, each once.
///
/// The next block is any nonempty down-set of the elements not yet placed, so
/// every strict predecessor of a block element lies in the same or an earlier
/// block.
pub fn compatible_preorders(poset: &FinitePoset) -> Vec<OrderedSetPartition> {
    let n = poset.len();
    assert!(n < 64, "poset too large for ordered set partition enumeration");
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    let all: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    extend_preorders(poset, all, &mut prefix, &mut out);
    out
}

fn extend_preorders(
    poset: &FinitePoset,
    remaining: u64,
    prefix: &mut Vec<Vec<usize>>,
    out: &mut Vec<OrderedSetPartition>,
) {
    if remaining == 0 {
        out.push(OrderedSetPartition {
            blocks: prefix.clone(),
        });
        return;
    }
    let rest: Vec<usize> = (0..poset.len()).filter(|&i| remaining >> i & 1 == 1).collect();
    // nonempty subsets of `rest`, indexed by masks over `rest`
    for sub in 1u64..(1u64 << rest.len()) {
        let block: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|(b, _)| sub >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let mut mask = 0u64;
        for &i in &block {
            mask |= 1 << i;
        }
        let downward_closed = block
            .iter()
            .all(|&q| rest.iter().all(|&p| !poset.lt(p, q) || mask >> p & 1 == 1));
        if downward_closed {
            prefix.push(block);
            extend_preorders(poset, remaining & !mask, prefix, out);
            prefix.pop();
        }
    }
}

/// Which side-by-side identity an [`EulerReport`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `e(Hom^<(P, Q)) = (−1)^|P| · e(Hom^≤(P, −Q))`
    StrictVsNegatedWeak,
    /// `e(Hom^<(P, −Q)) = (−1)^|P| · e(Hom^≤(P, Q))`
    NegatedStrictVsWeak,
    /// `e(Hom^σ(P, Q)) = ord^σ(P, e(Q))` for totally ordered `Q`
    OrderPolynomial,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::StrictVsNegatedWeak => "e(Hom<(P,Q)) = (-1)^|P| e(Hom<=(P,-Q))",
            Identity::NegatedStrictVsWeak => "e(Hom<(P,-Q)) = (-1)^|P| e(Hom<=(P,Q))",
            Identity::OrderPolynomial => "e(Hom(P,Q)) = ord(P, e(Q))",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub identity: Identity,
    pub holds: bool,
}

impl EulerReport {
    pub fn new(identity: Identity, lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs == rhs;
        Self {
            lhs,
            rhs,
            identity,
            holds,
        }
    }
}

type MemoKey = (Vec<bool>, usize, Mode);

/// Memoizing evaluator for the stratification recursion.
///
/// The memo is keyed by the strict-order matrix of the restricted poset, the
/// real depth and the mode. It sits behind a mutex, so one calculator can be
/// shared across threads.
#[derive(Debug, Default)]
pub struct EulerCalc {
    memo: Mutex<HashMap<MemoKey, BigInt>>,
}

impl EulerCalc {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e(Hom^mode(P, ℝ^depth))` with lexicographic order on `ℝ^depth`.
    pub fn euler_hom_real(&self, poset: &FinitePoset, depth: usize, mode: Mode) -> BigInt {
        if depth == 0 {
            return match mode {
                Mode::Weak => BigInt::one(),
                Mode::Strict if poset.is_antichain() => BigInt::one(),
                Mode::Strict => BigInt::zero(),
            };
        }
        let key = (poset.strict_matrix().to_vec(), depth, mode);
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for osp in compatible_preorders(poset) {
            let mut term = if osp.len() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for block in &osp.blocks {
                term *= self.euler_hom_real(&poset.restrict(block), depth - 1, mode);
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        self.memo.lock().unwrap().insert(key, total.clone());
        total
    }

    /// Contribution of one weak base map: the product over its fibres.
    fn fiber_product(&self, poset: &FinitePoset, base: &MonotoneMap, depth: usize, mode: Mode) -> BigInt {
        let mut prod = BigInt::one();
        for q in base.image() {
            prod *= self.euler_hom_real(&poset.restrict(&base.fiber(q)), depth, mode);
            if prod.is_zero() {
                break;
            }
        }
        prod
    }

    /// `e(Hom^mode(P, Q0 × ℝ^k))`.
    pub fn euler_hom(&self, poset: &FinitePoset, target: &LexPoset, mode: Mode) -> BigInt {
        enumerate_homs(poset, &target.base, Mode::Weak)
            .iter()
            .map(|base| self.fiber_product(poset, base, target.depth, mode))
            .sum()
    }

    /// Both sign-twisted reciprocity identities between `Q` and `−Q`.
    pub fn check_euler_reciprocity(&self, poset: &FinitePoset, target: &LexPoset) -> [EulerReport; 2] {
        let sign = if poset.len().is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let neg = target.negate();
        let first = EulerReport::new(
            Identity::StrictVsNegatedWeak,
            self.euler_hom(poset, target, Mode::Strict),
            &sign * self.euler_hom(poset, &neg, Mode::Weak),
        );
        let second = EulerReport::new(
            Identity::NegatedStrictVsWeak,
            self.euler_hom(poset, &neg, Mode::Strict),
            &sign * self.euler_hom(poset, target, Mode::Weak),
        );
        [first, second]
    }
}

pub fn euler_hom_real(poset: &FinitePoset, depth: usize, mode: Mode) -> BigInt {
    EulerCalc::new().euler_hom_real(poset, depth, mode)
}

pub fn euler_hom(poset: &FinitePoset, target: &LexPoset, mode: Mode) -> BigInt {
    EulerCalc::new().euler_hom(poset, target, mode)
}

pub fn check_euler_reciprocity(poset: &FinitePoset, target: &LexPoset) -> [EulerReport; 2] {
    EulerCalc::new().check_euler_reciprocity(poset, target)
}

/// An open cell of `Hom^σ(P, Q0 × ℝ)`: a weak base map plus, for every value
/// in its image, the ordered set partition traced by the real coordinates of
/// that fibre. Cells with depth 0 carry no partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    pub base: Vec<usize>,
    /// `(q, partition of η0⁻¹(q))` in increasing `q`; blocks use indices of `P`.
    pub fibers: Vec<(usize, OrderedSetPartition)>,
}

impl Stratum {
    /// The cell is homeomorphic to `ℝ^dimension`.
    pub fn dimension(&self) -> usize {
        self.fibers.iter().map(|(_, osp)| osp.len()).sum()
    }
}

fn block_admissible(poset: &FinitePoset, block: &[usize], mode: Mode) -> bool {
    match mode {
        Mode::Weak => true,
        Mode::Strict => block
            .iter()
            .all(|&a| block.iter().all(|&b| !poset.lt(a, b))),
    }
}

fn check_depth(target: &LexPoset) -> Result<()> {
    if target.depth > 1 {
        Err(Error::DepthUnsupported {
            depth: target.depth,
            max: 1,
        })
    } else {
        Ok(())
    }
}

/// All cells of `Hom^σ(P, Q0 × ℝ^d)` for `d ≤ 1`.
pub fn strata(poset: &FinitePoset, target: &LexPoset, mode: Mode) -> Result<Vec<Stratum>> {
    check_depth(target)?;
    if target.depth == 0 {
        return Ok(enumerate_homs(poset, &target.base, mode)
            .into_iter()
            .map(|m| Stratum {
                base: m.values,
                fibers: Vec::new(),
            })
            .collect());
    }
    let mut out = Vec::new();
    for base in enumerate_homs(poset, &target.base, Mode::Weak) {
        let choices: Vec<(usize, Vec<OrderedSetPartition>)> = base
            .image()
            .into_iter()
            .map(|q| {
                let fiber = base.fiber(q);
                let sub = poset.restrict(&fiber);
                let osps = compatible_preorders(&sub)
                    .into_iter()
                    .filter(|osp| osp.blocks.iter().all(|b| block_admissible(&sub, b, mode)))
                    .map(|osp| osp.relabel(&fiber))
                    .collect();
                (q, osps)
            })
            .collect();
        // cartesian product over fibres
        let mut partial: Vec<Vec<(usize, OrderedSetPartition)>> = vec![Vec::new()];
        for (q, osps) in &choices {
            let mut next = Vec::with_capacity(partial.len() * osps.len());
            for prefix in &partial {
                for osp in osps {
                    let mut v = prefix.clone();
                    v.push((*q, osp.clone()));
                    next.push(v);
                }
            }
            partial = next;
        }
        out.extend(partial.into_iter().map(|fibers| Stratum {
            base: base.values.clone(),
            fibers,
        }));
    }
    Ok(out)
}

/// The cell containing a point of `(Q0 × ℝ)^P`, or `None` if the point is not
/// in `Hom^σ(P, Q0 × ℝ)`.
pub fn classify_point(
    poset: &FinitePoset,
    target: &FinitePoset,
    mode: Mode,
    base: &[usize],
    reals: &[f64],
) -> Option<Stratum> {
    let n = poset.len();
    if base.len() != n || reals.len() != n || base.iter().any(|&q| q >= target.len()) {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if !poset.lt(i, j) {
                continue;
            }
            let ok = target.lt(base[i], base[j])
                || (base[i] == base[j]
                    && match mode {
                        Mode::Strict => reals[i] < reals[j],
                        Mode::Weak => reals[i] <= reals[j],
                    });
            if !ok {
                return None;
            }
        }
    }
    let mut image: Vec<usize> = base.to_vec();
    image.sort_unstable();
    image.dedup();
    let fibers = image
        .into_iter()
        .map(|q| {
            let fiber: Vec<usize> = (0..n).filter(|&i| base[i] == q).collect();
            let vals: Vec<f64> = fiber.iter().map(|&i| reals[i]).collect();
            (q, OrderedSetPartition::from_values(&vals).relabel(&fiber))
        })
        .collect();
    Some(Stratum {
        base: base.to_vec(),
        fibers,
    })
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

/// Connected components of `Hom^σ(P, Q0 × ℝ^d)`, `d ≤ 1`.
///
/// Two cells with the same base map are glued when one arises from the other
/// by merging two adjacent blocks of one fibre and the merged cell still lies
/// in the space: the merged cell is then in the closure of the finer one.
/// Cells with different base maps are never glued since `Q0` is discrete.
pub fn count_components(poset: &FinitePoset, target: &LexPoset, mode: Mode) -> Result<usize> {
    let cells = strata(poset, target, mode)?;
    let index: HashMap<&Stratum, usize> = cells.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut dsu = DisjointSet::new(cells.len());
    let mut components = cells.len();
    for (i, cell) in cells.iter().enumerate() {
        for (f, (_, osp)) in cell.fibers.iter().enumerate() {
            for b in 0..osp.len().saturating_sub(1) {
                let mut merged = osp.clone();
                let next = merged.blocks.remove(b + 1);
                merged.blocks[b].extend(next);
                merged.blocks[b].sort_unstable();
                if !block_admissible(poset, &merged.blocks[b], mode) {
                    continue;
                }
                let mut neighbour = cell.clone();
                neighbour.fibers[f].1 = merged;
                let j = *index
                    .get(&neighbour)
                    .expect("admissible merge of a compatible partition is a cell");
                if dsu.union(i, j) {
                    components -= 1;
                }
            }
        }
    }
    Ok(components)
}
