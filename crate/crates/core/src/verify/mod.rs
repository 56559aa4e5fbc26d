//! Statistical and oracle checks that tie simulated fields back to kernel
//! theory.
//!
//! Monte Carlo comparisons always target the truncated kernel, which is
//! what the sampler produces. Replications run in parallel, one derived
//! seed each, and are aggregated in replication order so every report is
//! reproducible from its seeds.

mod cholesky;
mod montecarlo;
mod report;
mod roundtrip;

pub use cholesky::{
    cholesky_oracle_check, kernel_matrix, ENTRY_PASS_FRACTION, MAX_ORACLE_POINTS, PSD_FLOOR,
};
pub use montecarlo::{
    empirical_covariance, holder_ladder, holder_moment_check, sample_points, MonteCarlo, MIN_REPS,
};
pub use report::{CheckGroup, Statistic, VerificationReport};
pub use roundtrip::{schoenberg_roundtrip, ROUNDTRIP_TOLERANCE};
