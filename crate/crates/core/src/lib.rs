//! Exact computer algebra for abelianizing hyperkähler Kirwan maps.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: rationals, graded polynomial rings, the field Q(x);
//! * [`ideal`]: Groebner bases, colon ideals, Hilbert series;
//! * [`localization`]: integration over circle-fixed-point data;
//! * [`abelianization`]: root data, the Euler-type classes and Kirwan images;
//! * [`hyperpolygon`]: the full pipeline for hyperpolygon spaces;
//! * [`cli`]: batch reports behind the `hyperkirwan` binary.

pub mod abelianization;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod hyperpolygon;
pub mod ideal;
pub mod linalg;
pub mod localization;

pub use error::{Error, ErrorKind, Result};
