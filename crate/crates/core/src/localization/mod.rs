//! Integration on circle-compact spaces through their fixed loci: Euler-class
//! inversion over `Q(x)`, the pairing, pushforwards as adjoints of pullbacks,
//! and the diagonal-class basis criterion.

mod component;
mod fixture;
mod maps;
mod model;

pub use component::{Coords, FixedComponent, PARAM};
pub use fixture::{
    rationalization_report, ComponentSpec, Fixture, FixtureSpec, GlobalMap, GlobalSpec, MapSpec,
    ModelSpec, RationalizationReport,
};
pub use maps::{
    diagonal, diagonal_basis, hyperplane_class, projective_space, standard_diagonal_decomposition,
    ModelMap, ProductModel,
};
pub use model::{CircleCompactModel, EquivariantClass};
