//! Groebner bases, normal forms, membership, intersections, colon ideals and
//! Hilbert series of graded quotients.

mod groebner;
#[allow(clippy::module_inception)]
mod ideal;
mod lift;
mod quotient;
mod serial;

pub use groebner::{reduced_groebner_basis, s_polynomial, verify_groebner, Budget};
pub use ideal::Ideal;
pub use lift::lift_modulo;
pub use quotient::{HilbertSeries, QuotientRing};
pub use serial::{IdealSpec, VariableSpec};
