//! Finite posets, admissible numberings and lexicographic products `Q0 × ℝ^k`.
//!
//! A [`FinitePoset`] keeps both its Hasse diagram (the cover pairs) and the
//! full strict-order matrix, so comparisons are constant time. Elements are
//! opaque string identifiers; internal indices follow input order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    // row-major, strict[i * n + j] iff p_i < p_j
    strict: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from element identifiers and a generating relation.
    ///
    /// The pairs need not be a transitive reduction; they are closed and then
    /// reduced, so `covers()` always returns the Hasse diagram.
    pub fn new<S, T>(elements: &[S], covers: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        let names = elements.iter().map(|e| e.as_ref().to_string()).collect();
        Self::from_index_relation(names, &pairs)
    }

    /// Same as [`FinitePoset::new`] with the relation given by element indices.
    pub fn from_index_relation(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut strict = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::UnknownElement(format!("#{a}")));
            }
            if b >= n {
                return Err(Error::UnknownElement(format!("#{b}")));
            }
            strict[a * n + b] = true;
        }
        warshall(&mut strict, n);
        if let Some(i) = (0..n).find(|&i| strict[i * n + i]) {
            return Err(Error::Cycle(elements[i].clone()));
        }
        let covers = transitive_reduction(&strict, n);
        Ok(Self {
            elements,
            covers,
            strict,
        })
    }

    /// The chain `[n] = {1 < 2 < … < n}`; `chain(0)` is the empty poset.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_index_relation(numbered(n), &pairs).expect("a chain is acyclic")
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        Self::from_index_relation(numbered(n), &[]).expect("an antichain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Cover pairs `(a, b)` by index, `a` covered by `b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `p_i < p_j`.
    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.strict[i * self.len() + j]
    }

    /// `p_i ≤ p_j`.
    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt(j, i)
    }

    /// The row-major strict-order matrix.
    pub fn strict_matrix(&self) -> &[bool] {
        &self.strict
    }

    /// Indices strictly below `i`, ascending.
    pub fn strict_predecessors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.lt(a, i)).collect()
    }

    pub fn relation_count(&self) -> usize {
        self.strict.iter().filter(|&&b| b).count()
    }

    pub fn is_antichain(&self) -> bool {
        self.relation_count() == 0
    }

    /// Every pair of distinct elements is comparable.
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        2 * self.relation_count() == n * n.saturating_sub(1)
    }

    /// The induced subposet on `subset`, elements listed in the given order.
    pub fn restrict(&self, subset: &[usize]) -> Self {
        let m = subset.len();
        let mut strict = vec![false; m * m];
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                strict[a * m + b] = self.lt(i, j);
            }
        }
        let covers = transitive_reduction(&strict, m);
        Self {
            elements: subset.iter().map(|&i| self.elements[i].clone()).collect(),
            covers,
            strict,
        }
    }

    /// The unique minimal-element-first linear extension with ties broken by
    /// input order.
    pub fn admissible_numbering(&self) -> Numbering {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| !placed[i] && (0..n).all(|a| placed[a] || !self.lt(a, i)))
                .expect("finite acyclic order has a minimal element");
            placed[next] = true;
            order.push(next);
        }
        Numbering { order }
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.elements[a], self.elements[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.elements)
            .field("covers", &covers)
            .finish()
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn warshall(m: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !m[i * n + k] {
                continue;
            }
            for j in 0..n {
                if m[k * n + j] {
                    m[i * n + j] = true;
                }
            }
        }
    }
}

fn transitive_reduction(strict: &[bool], n: usize) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if strict[i * n + j] && !(0..n).any(|k| strict[i * n + k] && strict[k * n + j]) {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// A linear extension `p_1, …, p_n` with `p_j ≰ p_i` whenever `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numbering {
    /// `order[pos]` is the element index at position `pos`.
    pub order: Vec<usize>,
}

impl Numbering {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `positions()[element]` is the position of `element`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &e) in self.order.iter().enumerate() {
            pos[e] = p;
        }
        pos
    }

    /// Checks the admissibility condition against `poset`.
    pub fn is_admissible_for(&self, poset: &FinitePoset) -> bool {
        let n = poset.len();
        let mut seen = vec![false; n];
        if self.order.len() != n || self.order.iter().any(|&e| e >= n || std::mem::replace(&mut seen[e], true)) {
            return false;
        }
        (0..n).all(|i| ((i + 1)..n).all(|j| !poset.le(self.order[j], self.order[i])))
    }
}

/// The poset `Q0 × ℝ^depth` under lexicographic order, most significant
/// coordinate first. Each unit of depth is one application of `−Q := Q × ℝ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexPoset {
    pub base: FinitePoset,
    pub depth: usize,
}

impl LexPoset {
    pub fn new(base: FinitePoset, depth: usize) -> Self {
        Self { base, depth }
    }

    pub fn finite(base: FinitePoset) -> Self {
        Self::new(base, 0)
    }

    /// `ℝ^k` itself, i.e. `[1] × ℝ^k`.
    pub fn real(depth: usize) -> Self {
        Self::new(FinitePoset::chain(1), depth)
    }

    pub fn negate(&self) -> Self {
        Self::new(self.base.clone(), self.depth + 1)
    }

    /// `e(Q0 × ℝ^k) = (−1)^k · |Q0|`.
    pub fn euler_char(&self) -> i64 {
        let size = self.base.len() as i64;
        if self.depth.is_multiple_of(2) {
            size
        } else {
            -size
        }
    }
}
