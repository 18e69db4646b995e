//! Point evaluation of the homeomorphism
//! `φ: Hom^<(P, Q × ℝ) → Hom^≤(P, Q) × ℝ^|P|` for finite discrete `Q`.
//!
//! Fix an admissible numbering `p_1, …, p_n`. The space `X_k` consists of
//! pairs `(η, t)` with `η` weakly monotone and `t_i < t_j` whenever `i < j ≤ k`,
//! `p_i < p_j` and `η(p_i) = η(p_j)`; so `X_1 = Hom^≤(P, Q) × ℝ^n` and
//! `X_n = Hom^<(P, Q × ℝ)`. Passing from `X_k` to `X_{k+1}` only constrains
//! `t_{k+1}` to lie above
//!
//! ```text
//! f_k = max { t_j : j ≤ k, p_j ≤ p_{k+1}, η(p_j) = η(p_{k+1}) }   (−∞ if empty)
//! ```
//!
//! which is upper semicontinuous, and [`lemma_phi`] straightens
//! `{t > f}` onto `ℝ` one coordinate at a time. The base map is never touched,
//! so every stage commutes with the projection to `Hom^≤(P, Q)`.
//!
//! Reals are indexed by element (input order of `P`), not by position in the
//! numbering.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, is_monotone, Mode, MonotoneMap};
use crate::poset::{FinitePoset, Numbering};

/// A value in `ℝ ∪ {−∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    NegInfinity,
    Finite(f64),
}

impl Bound {
    pub fn as_f64(self) -> f64 {
        match self {
            Bound::NegInfinity => f64::NEG_INFINITY,
            Bound::Finite(v) => v,
        }
    }

    /// `t > self`.
    pub fn is_below(self, t: f64) -> bool {
        match self {
            Bound::NegInfinity => t.is_finite(),
            Bound::Finite(f) => t.is_finite() && t > f,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInfinity => f.write_str("-inf"),
            Bound::Finite(v) => write!(f, "{v}"),
        }
    }
}

// 2^e for any e, without overflowing the intermediate.
fn pow2(e: i32) -> f64 {
    let half = e / 2;
    2f64.powi(half) * 2f64.powi(e - half)
}

/// Straightens `{t > f}` onto `ℝ`.
///
/// Uses the decreasing approximations `g_i = f + 2^{−i}` (or `g_i = −(i + 1)`
/// when `f = −∞`): above `g_0` the map is a translation, and on
/// `[g_{i+1}, g_i]` it is the affine map onto `[−(i + 1), −i]`.
pub fn lemma_phi(f: Bound, t: f64) -> Result<f64> {
    if !f.is_below(t) {
        return Err(Error::Domain {
            threshold: f.as_f64(),
            t,
        });
    }
    let f = match f {
        // every piece of the −(i+1) sequence has slope one
        Bound::NegInfinity => return Ok(t + 1.0),
        Bound::Finite(f) => f,
    };
    let d = t - f;
    if d >= 1.0 {
        return Ok(d - 1.0);
    }
    // i with 2^{−(i+1)} ≤ d < 2^{−i}
    let mut i = (-d.log2()).floor().max(0.0) as i32;
    while d < pow2(-(i + 1)) {
        i += 1;
    }
    while i > 0 && d >= pow2(-i) {
        i -= 1;
    }
    Ok(d * pow2(i + 1) - f64::from(i + 2))
}

/// Inverse of [`lemma_phi`]; defined for every real `s`.
pub fn lemma_phi_inv(f: Bound, s: f64) -> f64 {
    let f = match f {
        Bound::NegInfinity => return s - 1.0,
        Bound::Finite(f) => f,
    };
    if s >= 0.0 {
        return f + (s + 1.0);
    }
    // s ∈ [−m, −m + 1)
    let m = (-s).ceil();
    let m_int = m.min(f64::from(i32::MAX / 2)) as i32;
    f + (s + m + 1.0) * pow2(-m_int)
}

/// A point of `Hom^≤(P, Q) × ℝ^|P|` claimed to lie in `X_stage`.
#[derive(Debug, Clone, PartialEq)]
pub struct LexHomPoint {
    /// Target index for each source element.
    pub base: Vec<usize>,
    /// Real coordinate for each source element.
    pub reals: Vec<f64>,
    pub stage: usize,
}

/// The data determining `f_k` at a point: the contributing elements and the
/// resulting bound.
#[derive(Debug, Clone, PartialEq)]
pub struct UscSpec {
    /// Elements `p_j`, `j ≤ k`, with `p_j ≤ p_{k+1}` and equal base value.
    pub support: Vec<usize>,
    pub value: Bound,
}

/// The stage machinery for one `(P, Q)` pair.
#[derive(Debug, Clone)]
pub struct Homeomorphism<'a> {
    source: &'a FinitePoset,
    target: &'a FinitePoset,
    numbering: Numbering,
}

impl<'a> Homeomorphism<'a> {
    pub fn new(source: &'a FinitePoset, target: &'a FinitePoset) -> Self {
        Self {
            source,
            target,
            numbering: source.admissible_numbering(),
        }
    }

    pub fn numbering(&self) -> &Numbering {
        &self.numbering
    }

    /// `n = |P|`; also the index of the top stage (at least 1).
    pub fn top_stage(&self) -> usize {
        self.source.len().max(1)
    }

    fn check_shape(&self, point: &LexHomPoint) -> Result<()> {
        let n = self.source.len();
        if point.base.len() != n || point.reals.len() != n {
            return Err(Error::Shape(format!(
                "expected {n} base values and {n} reals, got {} and {}",
                point.base.len(),
                point.reals.len()
            )));
        }
        if let Some(&q) = point.base.iter().find(|&&q| q >= self.target.len()) {
            return Err(Error::Shape(format!("base value {q} outside target of size {}", self.target.len())));
        }
        if let Some(t) = point.reals.iter().find(|t| !t.is_finite()) {
            return Err(Error::Shape(format!("non-finite coordinate {t}")));
        }
        Ok(())
    }

    /// The support set of `f_k`; depends only on the base map and `k`.
    pub fn usc_support(&self, base: &[usize], k: usize) -> Vec<usize> {
        assert!(k >= 1 && k < self.source.len(), "stage {k} out of range");
        let next = self.numbering.order[k];
        self.numbering.order[..k]
            .iter()
            .copied()
            .filter(|&e| self.source.le(e, next) && base[e] == base[next])
            .collect()
    }

    pub fn usc_spec(&self, point: &LexHomPoint, k: usize) -> UscSpec {
        let support = self.usc_support(&point.base, k);
        let value = support
            .iter()
            .map(|&e| point.reals[e])
            .fold(Bound::NegInfinity, |acc, t| match acc {
                Bound::NegInfinity => Bound::Finite(t),
                Bound::Finite(m) => Bound::Finite(m.max(t)),
            });
        UscSpec { support, value }
    }

    /// `f_k` at `point`, for `1 ≤ k ≤ n − 1`.
    pub fn usc_value(&self, point: &LexHomPoint, k: usize) -> Bound {
        self.usc_spec(point, k).value
    }

    /// Whether `point` lies in `X_k`. Written directly from the definition of
    /// `X_k`, without the stage maps.
    pub fn membership(&self, point: &LexHomPoint, k: usize) -> bool {
        if self.check_shape(point).is_err() || !is_monotone(self.source, self.target, &point.base, Mode::Weak) {
            return false;
        }
        let order = &self.numbering.order;
        let k = k.min(order.len());
        for j in 0..k {
            for i in 0..j {
                let (a, b) = (order[i], order[j]);
                if self.source.lt(a, b) && point.base[a] == point.base[b] && point.reals[a] >= point.reals[b] {
                    return false;
                }
            }
        }
        true
    }

    fn membership_error(&self, point: &LexHomPoint, stage: usize) -> Error {
        let reason = match self.check_shape(point) {
            Err(e) => e.to_string(),
            Ok(()) if !is_monotone(self.source, self.target, &point.base, Mode::Weak) => {
                "base map is not weakly monotone".to_string()
            }
            Ok(()) => "a comparable pair with equal base value is not strictly increasing".to_string(),
        };
        Error::Membership { stage, reason }
    }

    /// `φ`, returning every intermediate point: `trace[0]` is the input (in
    /// `X_n`) and the last entry is in `X_1`.
    pub fn forward_trace(&self, point: &LexHomPoint) -> Result<Vec<LexHomPoint>> {
        let n = self.top_stage();
        if !self.membership(point, n) {
            return Err(self.membership_error(point, n));
        }
        let mut current = LexHomPoint {
            stage: n,
            ..point.clone()
        };
        let mut trace = vec![current.clone()];
        for k in (1..n).rev() {
            let f = self.usc_value(&current, k);
            let e = self.numbering.order[k];
            current.reals[e] = lemma_phi(f, current.reals[e])?;
            current.stage = k;
            trace.push(current.clone());
        }
        Ok(trace)
    }

    /// `φ⁻¹` with intermediates: `trace[0]` is the input (in `X_1`) and the
    /// last entry is in `X_n`.
    pub fn backward_trace(&self, point: &LexHomPoint) -> Result<Vec<LexHomPoint>> {
        if !self.membership(point, 1) {
            return Err(self.membership_error(point, 1));
        }
        let n = self.top_stage();
        let mut current = LexHomPoint {
            stage: 1,
            ..point.clone()
        };
        let mut trace = vec![current.clone()];
        for k in 1..n {
            let f = self.usc_value(&current, k);
            let e = self.numbering.order[k];
            let t = lemma_phi_inv(f, current.reals[e]);
            if !f.is_below(t) {
                return Err(Error::PrecisionLoss { element: e });
            }
            current.reals[e] = t;
            current.stage = k + 1;
            trace.push(current.clone());
        }
        Ok(trace)
    }

    pub fn forward(&self, point: &LexHomPoint) -> Result<LexHomPoint> {
        Ok(self.forward_trace(point)?.pop().expect("trace is never empty"))
    }

    pub fn backward(&self, point: &LexHomPoint) -> Result<LexHomPoint> {
        Ok(self.backward_trace(point)?.pop().expect("trace is never empty"))
    }

    /// Smallest gap `t_{k+1} − f_k` over all stages, `+∞` if every bound is `−∞`.
    pub fn min_margin(&self, point: &LexHomPoint) -> f64 {
        (1..self.source.len())
            .map(|k| {
                let e = self.numbering.order[k];
                match self.usc_value(point, k) {
                    Bound::NegInfinity => f64::INFINITY,
                    Bound::Finite(f) => point.reals[e] - f,
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Whether `(base, reals)`, read as a map `P → Q × ℝ` with lexicographic
/// order, is strictly increasing. Compares pairs directly.
pub fn is_lex_increasing(source: &FinitePoset, target: &FinitePoset, base: &[usize], reals: &[f64]) -> bool {
    let n = source.len();
    if base.len() != n || reals.len() != n {
        return false;
    }
    (0..n).all(|a| {
        (0..n).all(|b| {
            !source.lt(a, b)
                || target.lt(base[a], base[b])
                || (base[a] == base[b] && reals[a] < reals[b])
        })
    })
}

/// Smallest gap kept between a coordinate and its bound when sampling.
pub const MIN_SAMPLE_MARGIN: f64 = 1.0 / (1u64 << 40) as f64;

/// Seeded sampler for points of `X_1` and `X_n` with coordinates in
/// `[−range, range]`.
#[derive(Debug, Clone)]
pub struct PointSampler<'a> {
    homeo: Homeomorphism<'a>,
    bases: Vec<MonotoneMap>,
    range: f64,
}

impl<'a> PointSampler<'a> {
    pub fn new(source: &'a FinitePoset, target: &'a FinitePoset, range: f64) -> Self {
        Self {
            homeo: Homeomorphism::new(source, target),
            bases: enumerate_homs(source, target, Mode::Weak),
            range,
        }
    }

    /// False when `Hom^≤(P, Q)` is empty and there is nothing to sample.
    pub fn is_inhabited(&self) -> bool {
        !self.bases.is_empty()
    }

    pub fn bottom<R: Rng + ?Sized>(&self, rng: &mut R) -> LexHomPoint {
        let base = self.bases[rng.gen_range(0..self.bases.len())].values.clone();
        let reals = (0..base.len()).map(|_| rng.gen_range(-self.range..=self.range)).collect();
        LexHomPoint { base, reals, stage: 1 }
    }

    /// Uniform rejection first; after a few misses, sorts the coordinates of
    /// each fibre along the numbering so the point lands in `X_n`. Points
    /// closer than [`MIN_SAMPLE_MARGIN`] to a stage bound are redrawn.
    pub fn top<R: Rng + ?Sized>(&self, rng: &mut R) -> LexHomPoint {
        let n = self.homeo.top_stage();
        let mut attempt = 0;
        loop {
            attempt += 1;
            let mut point = self.bottom(rng);
            if attempt > 16 {
                self.sort_fibres(&mut point);
            }
            point.stage = n;
            if self.homeo.membership(&point, n) && self.homeo.min_margin(&point) >= MIN_SAMPLE_MARGIN {
                return point;
            }
        }
    }

    fn sort_fibres(&self, point: &mut LexHomPoint) {
        let order = &self.homeo.numbering().order;
        let mut image = point.base.clone();
        image.sort_unstable();
        image.dedup();
        for q in image {
            let members: Vec<usize> = order.iter().copied().filter(|&e| point.base[e] == q).collect();
            let mut vals: Vec<f64> = members.iter().map(|&e| point.reals[e]).collect();
            vals.sort_by(f64::total_cmp);
            for (e, v) in members.into_iter().zip(vals) {
                point.reals[e] = v;
            }
        }
    }
}
