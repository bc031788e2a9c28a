//! Exact computation of Okounkov bodies, weight filtrations of test
//! configurations, their concave transforms and limiting measures on the
//! line, for toric data and deformations to the normal cone.
//!
//! Everything is generic over an exact rational [`Scalar`] (`Ratio<i64>`,
//! `Ratio<i128>` or [`BigRational`]). The aliases below fix the scalar to
//! `BigRational`, which never overflows.
//!
//! ```
//! use okounkov_core::{AffineForm, PlFunction, Polytope, Rational, Scalar};
//! use okounkov_core::measures::pushforward_lebesgue;
//!
//! let g = PlFunction::new(
//!     Polytope::unit_cube(1),
//!     vec![AffineForm::new(vec![Rational::from_int(-1)], Rational::from_int(1))],
//! )
//! .unwrap();
//! let m = pushforward_lebesgue(&g).unwrap();
//! assert_eq!(m.moment(1), Rational::from_frac(1, 2));
//! ```

pub mod error;
pub mod filtration;
mod linalg;
pub mod measures;
pub mod normal_cone;
pub mod okounkov;
pub mod pl;
pub mod poly;
pub mod polytope;
pub mod scalar;
pub mod toric_tc;

pub use error::{Error, Result};
pub use filtration::{AdmissibilityReport, ConcaveTransformEstimate, GkFunction, WeightFiltration};
pub use measures::{pushforward_lebesgue, DensityPiece, MeasureOnR};
pub use normal_cone::{NormalConeDatum, NormalConeFiltration};
pub use num_rational::BigRational;
pub use okounkov::{delta_k, lowest_term_valuation, okounkov_body, FiniteSemigroup, MultiIndex, RationalCone};
pub use pl::{AffineForm, Cell, ConcavePLFunction};
pub use poly::Polynomial;
pub use polytope::{Halfspace, RationalPolytope};
pub use scalar::Scalar;
pub use toric_tc::{F0Report, ToricTestConfiguration, WeightMeasure};

pub type Rational = BigRational;
pub type Polytope = RationalPolytope<Rational>;
pub type PlFunction = ConcavePLFunction<Rational>;
pub type Measure = MeasureOnR<Rational>;
pub type Filtration = WeightFiltration<Rational>;
pub type ToricTc = ToricTestConfiguration<Rational>;
pub type NormalCone = NormalConeDatum<Rational>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
