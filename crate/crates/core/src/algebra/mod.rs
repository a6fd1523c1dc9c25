//! Exact arithmetic: rationals, Laurent polynomials, beads, truncated
//! `h`-series and matrices of series.

pub mod bead;
pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod series;

pub use bead::{bead_on_matrix, RationalBead};
pub use laurent::LaurentPoly;
pub use matrix::{matrix_det, MatrixSeries};
pub use rational::{inv_factorial, parse_rational, rat, ratio, Rational};
pub use series::{series_calculus, HSeries, SeriesOp};
