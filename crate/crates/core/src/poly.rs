//! Exact order polynomials and Stanley reciprocity.
//!
//! `ord^σ(P, t)` is recovered by Lagrange interpolation through the brute-force
//! counts `|Hom^σ(P, [n])|` at `n = 1, …, |P| + 1`. All arithmetic is over
//! arbitrary-precision rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hom::{count_homs, Mode};
use crate::poset::{FinitePoset, LexPoset};

/// Univariate polynomial with rational coefficients, `coeffs[i]` multiplying `t^i`.
/// Trailing zero coefficients are always trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> BigRational {
        self.coeffs.get(power).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn evaluate_int(&self, t: i64) -> BigRational {
        self.evaluate(&BigRational::from_integer(t.into()))
    }

    /// `p(−t)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn add_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        *self = Self::new(std::mem::take(&mut self.coeffs));
    }

    /// Multiply by the linear factor `(t − root)`.
    fn mul_linear(&self, root: &BigRational) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Self::new(out)
    }

    /// The unique polynomial of degree `< points.len()` through `points`.
    ///
    /// Panics if two nodes coincide.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::constant(BigRational::one());
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    assert!(xi != xj, "interpolation nodes must be distinct");
                    basis = basis.mul_linear(xj);
                    denom *= xi - xj;
                }
            }
            acc.add_assign(&basis.scale(&(yi / denom)));
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// `c_d*t^d + … + c_0`, zero terms omitted, unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one();
            if power == 0 || !unit {
                write!(f, "{mag}")?;
            }
            if power > 0 {
                if !unit {
                    f.write_str("*")?;
                }
                f.write_str("t")?;
                if power > 1 {
                    write!(f, "^{power}")?;
                }
            }
        }
        Ok(())
    }
}

/// `ord^σ(P, t)` together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPolynomial {
    pub poly: Polynomial,
    pub mode: Mode,
    pub source_size: usize,
}

impl OrderPolynomial {
    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.poly.evaluate(t)
    }

    /// Value at an integer, which is always an integer.
    pub fn evaluate_at(&self, t: i64) -> BigInt {
        let v = self.poly.evaluate_int(t);
        assert!(v.is_integer(), "order polynomial took non-integer value {v} at {t}");
        v.to_integer()
    }
}

impl fmt::Display for OrderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Interpolates `ord^mode(P, t)` through the counts at `n = 1, …, |P| + 1`.
pub fn order_polynomial(poset: &FinitePoset, mode: Mode) -> OrderPolynomial {
    let points: Vec<_> = (1..=poset.len() + 1)
        .map(|n| {
            let count = count_homs(poset, &FinitePoset::chain(n), mode);
            (
                BigRational::from_integer(BigInt::from(n)),
                BigRational::from_integer(BigInt::from(count)),
            )
        })
        .collect();
    OrderPolynomial {
        poly: Polynomial::interpolate(&points),
        mode,
        source_size: poset.len(),
    }
}

/// Outcome of comparing `ord^<(P, t)` against `(−1)^|P| · ord^≤(P, −t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub holds: bool,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

pub fn check_stanley_reciprocity(poset: &FinitePoset) -> ReciprocityReport {
    let lhs = order_polynomial(poset, Mode::Strict).poly;
    let mut rhs = order_polynomial(poset, Mode::Weak).poly.reflect();
    if poset.len() % 2 == 1 {
        rhs = rhs.scale(&-BigRational::one());
    }
    ReciprocityReport {
        holds: lhs == rhs,
        lhs,
        rhs,
    }
}

/// `e(Hom^mode(P, Q)) = ord^mode(P, e(Q))` for `Q` with totally ordered base.
pub fn euler_via_orderpoly(poset: &FinitePoset, target: &LexPoset, mode: Mode) -> Result<BigInt> {
    if !target.base.is_chain() {
        return Err(Error::NotTotallyOrdered);
    }
    Ok(order_polynomial(poset, mode).evaluate_at(target.euler_char()))
}
