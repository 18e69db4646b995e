//! Exact combinatorial reciprocity for finite posets.
//!
//! - [`poset`]: finite posets, admissible numberings, lexicographic products `Q0 × ℝ^k`
//! - [`hom`]: enumeration and counting of strict and weak monotone maps
//! - [`poly`]: order polynomials by exact interpolation, Stanley reciprocity
//! - [`euler`]: Euler characteristics of monotone-map spaces by stratification
//! - [`homeo`]: the stagewise homeomorphism `Hom^<(P, Q × ℝ) ≅ Hom^≤(P, Q) × ℝ^|P|`
//! - [`generate`]: exhaustive and seeded random posets

pub mod error;
pub mod euler;
pub mod generate;
pub mod hom;
pub mod homeo;
pub mod poly;
pub mod poset;

pub use error::{Error, Result};
pub use euler::{
    check_euler_reciprocity, compatible_preorders, count_components, euler_hom, euler_hom_real, EulerCalc,
    EulerReport, Identity, OrderedSetPartition, Stratum,
};
pub use hom::{count_homs, enumerate_homs, Mode, MonotoneMap};
pub use homeo::{lemma_phi, lemma_phi_inv, Bound, Homeomorphism, LexHomPoint, PointSampler, UscSpec};
pub use poly::{check_stanley_reciprocity, euler_via_orderpoly, order_polynomial, OrderPolynomial, Polynomial, ReciprocityReport};
pub use poset::{FinitePoset, LexPoset, Numbering};
