//! Exact rational arithmetic, graded multivariate polynomial rings and the
//! rational function field Q(x).

mod monomial;
mod poly;
mod ratfun;
mod rational;
mod text;

pub use monomial::{Monomial, MonomialOrder, PolyRing, VariableTable};
pub use poly::{product, sum, Polynomial};
pub use ratfun::{RationalFunction, UniPoly};
pub use rational::Rational;
pub use text::parse_monomial;

pub(crate) use poly::same_ring;
