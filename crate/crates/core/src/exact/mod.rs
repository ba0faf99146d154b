pub mod poly;
pub mod scalar;
pub mod series;

pub use poly::{Chart, CoordPoly, Exponents};
pub use scalar::{parse_rational, rat, rat_int, GaussRational, Rational};
pub use series::{divide_by_hbar, series_exp, HSeries};
