//! Covariance kernels assembled from spectra or Schoenberg functions, and
//! their regularity diagnostics.

mod grid;
mod model;
mod regularity;

pub use grid::{kernel_grid, write_kernel_grid_csv, KernelGridRow};
pub use model::{kernel_eval, kernel_eval_hermite, KernelContent, KernelModel};
pub use regularity::{
    hermite_legendre_coefficients, hermite_synthesis, holder_constant, holder_kernel_bound_check,
    seminorm_coefficient_sum, seminorm_integral, smoothness_index, weighted_sobolev_norm,
    HolderBoundReport, HolderConstant, SeminormWeights, SignedCoefficients, SmoothnessIndex,
    SobolevMode, SMOOTHNESS_CEILING,
};
