//! Realizations of the doubly truncated expansion on sphere-time grids.
//!
//! A draw holds independent standard normals per `(k, j, m)`; synthesis
//! multiplies them by `sqrt(a_{k,j})`, the temporal basis and the real
//! spherical harmonics scaled by `c_j = sqrt(4 pi / (2j + 1))`. In quarter-wave
//! mode the pointwise variance is `sum_{j <= J, k <= K} a_{k,j}`.

mod draw;
mod export;
mod grid;
pub mod rng;
mod synth;

pub use crate::temporal::{temporal_basis_eval, BasisMode, TemporalBasis};
pub use draw::{draw_coefficients, CoefficientDraw};
pub use export::{
    read_binary, write_binary, write_csv, write_provenance, BinaryField, BINARY_HEADER_LEN,
    BINARY_MAGIC,
};
pub use grid::{ColatitudeRule, SpatialLayout, SphereTimeGrid};
pub use synth::{simulate, synthesize, synthesize_serial, Provenance, Realization};
