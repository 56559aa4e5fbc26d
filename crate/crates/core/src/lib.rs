//! Gaussian random fields on the sphere cross time.
//!
//! The crate is layered bottom-up: [`specfun`] supplies polynomials,
//! harmonics and Gauss rules; [`spectra`] holds the power spectra and their
//! sums; [`temporal`] the time basis. [`kernel`] evaluates the covariance a
//! spectrum induces, [`simulator`] draws truncated realizations of it and
//! [`bounds`] says how much the truncation loses. [`verify`] checks
//! simulated fields against the model.

pub mod bounds;
pub mod error;
pub mod kernel;
pub mod series;
pub mod simulator;
pub mod specfun;
pub mod spectra;
pub mod temporal;
pub mod verify;

pub use error::{Error, Result};

// Code blocks in the guide compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/spectra.md")]
    struct Spectra;
    #[doc = include_str!("../../../book/src/simulation.md")]
    struct Simulation;
    #[doc = include_str!("../../../book/src/bounds.md")]
    struct Bounds;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
