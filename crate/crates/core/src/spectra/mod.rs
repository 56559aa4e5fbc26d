//! Power spectra: closed-form families, explicit tables, Schoenberg
//! function extraction and summability diagnostics.
//!
//! A spectrum is `a_{k,j} = xi * shape(k, j)` with `k` the temporal and `j`
//! the spherical index. Families are evaluated lazily; their infinite sums
//! come with enclosures (see [`crate::series`]).

mod diagnostics;
mod io;
mod normalize;
mod schoenberg;
mod spectrum;
pub(crate) mod sums;

pub(crate) use diagnostics::{check_delta, require_hermite};
pub use diagnostics::{
    check_holder_hypothesis, check_summability, HolderHypothesisReport, SummabilityReport,
};
pub use io::SpectrumDocument;
pub use normalize::{normalize_unit_variance, Normalized, VarianceConvention, VarianceSum};
pub use schoenberg::{
    hermite_coeffs, schoenberg_from_kernel, SchoenbergFunction, SchoenbergFunctionSet, DEGREE_GUARD,
};
pub use spectrum::{
    family_polyproduct, family_polysum, sequence_polyproduct, CoefficientMatrix, PowerSpectrum,
    SpectrumKind, SpectrumSource, ZERO_FLOOR,
};
pub use sums::{IndexRange, Weight};
