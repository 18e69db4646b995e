//! Enumeration and counting of monotone maps between finite posets.
//!
//! Both operations share one backtracker. Elements of the source are assigned
//! in admissible-numbering order, so every predecessor of the element being
//! assigned already has a value and each constraint is checked exactly once.

use std::fmt;

use crate::poset::FinitePoset;

/// Which monotonicity condition a map satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// `p < q ⇒ η(p) < η(q)`
    Strict,
    /// `p < q ⇒ η(p) ≤ η(q)`
    Weak,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Weak => "weak",
        }
    }

    /// Whether `a → b` in the target is allowed for a strictly related source pair.
    #[inline]
    pub fn admits(self, target: &FinitePoset, a: usize, b: usize) -> bool {
        match self {
            Mode::Strict => target.lt(a, b),
            Mode::Weak => target.le(a, b),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" | "<" => Ok(Mode::Strict),
            "weak" | "<=" => Ok(Mode::Weak),
            other => Err(format!("unknown mode `{other}` (expected strict or weak)")),
        }
    }
}

/// A monotone map, stored as one target index per source element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    pub values: Vec<usize>,
    pub mode: Mode,
}

impl MonotoneMap {
    /// Direct check of the defining condition, independent of the backtracker.
    pub fn is_valid(&self, source: &FinitePoset, target: &FinitePoset) -> bool {
        is_monotone(source, target, &self.values, self.mode)
    }

    /// Source indices mapped to `q`, ascending.
    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] == q).collect()
    }

    /// Distinct target values, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.values.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

pub fn is_monotone(source: &FinitePoset, target: &FinitePoset, values: &[usize], mode: Mode) -> bool {
    let n = source.len();
    values.len() == n
        && values.iter().all(|&v| v < target.len())
        && (0..n).all(|i| (0..n).all(|j| !source.lt(i, j) || mode.admits(target, values[i], values[j])))
}

struct Backtracker<'a> {
    target: &'a FinitePoset,
    mode: Mode,
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
    values: Vec<usize>,
}

impl<'a> Backtracker<'a> {
    fn new(source: &FinitePoset, target: &'a FinitePoset, mode: Mode) -> Self {
        let order = source.admissible_numbering().order;
        let preds = (0..source.len()).map(|i| source.strict_predecessors(i)).collect();
        Self {
            target,
            mode,
            order,
            preds,
            values: vec![usize::MAX; source.len()],
        }
    }

    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize])) {
        if pos == self.order.len() {
            visit(&self.values);
            return;
        }
        let e = self.order[pos];
        for v in 0..self.target.len() {
            let ok = self.preds[e]
                .iter()
                .all(|&a| self.mode.admits(self.target, self.values[a], v));
            if ok {
                self.values[e] = v;
                self.run(pos + 1, visit);
            }
        }
        self.values[e] = usize::MAX;
    }
}

fn for_each_hom(source: &FinitePoset, target: &FinitePoset, mode: Mode, visit: &mut dyn FnMut(&[usize])) {
    Backtracker::new(source, target, mode).run(0, visit);
}

/// Every map in `Hom^mode(source, target)`, in lexicographic order of `values`.
pub fn enumerate_homs(source: &FinitePoset, target: &FinitePoset, mode: Mode) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    for_each_hom(source, target, mode, &mut |vals| {
        out.push(MonotoneMap {
            values: vals.to_vec(),
            mode,
        })
    });
    out.sort_unstable();
    out
}

/// `|Hom^mode(source, target)|` without materializing the maps.
pub fn count_homs(source: &FinitePoset, target: &FinitePoset, mode: Mode) -> u64 {
    let mut count = 0u64;
    for_each_hom(source, target, mode, &mut |_| count += 1);
    count
}
