//! Presented noncommutative algebras over truncated ħ-series.

mod classical;
mod map;
mod models;
mod poly;
mod presentation;

pub use classical::{abelianize, classical_chart, classical_lie_algebra, semiclassical_bivector, semiclassical_bracket};
pub use map::{check_map, AlgebraMap};
pub use models::{qnumber_coeffs, uh_sl2, universal_enveloping};
pub use poly::{commutator, NCPoly, TensorElem, TensorWord};
pub use presentation::{check_confluence, word_cmp, Presentation, PresentationBuilder, Terms, Word};
