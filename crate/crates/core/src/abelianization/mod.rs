//! Root data and the classes `e`, `e'`, `b`; the Kirwan image as a quotient by
//! an annihilator; weights on acyclic quivers.

mod kirwan;
mod quiver;
mod roots;

pub use kirwan::{
    certify_annihilator, invariant_dimensions, kirwan_image, second_iso_bound,
    second_iso_dimensions, verify_second_iso, AbelianSide, KirwanPresentation, SecondIsoComparison,
};
pub use quiver::{is_proper, proper_quiver_weights, DagQuiver};
pub use roots::{class_b, class_e, class_eprime, sign_relation, RootDatum, WeylAction};
