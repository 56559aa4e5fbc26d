//! Probabilistic bounds on the error of the doubly truncated expansion.
//!
//! With `P` the 4-pi-weighted mass of the dropped coefficients and `Q` the
//! 4-pi-weighted root of their squared, `c_j^2`-weighted mass, the L2 error
//! exceeds `sqrt(P + eps Q)` with probability at most
//! `exp(-eps / 2) sqrt(1 + eps)`.
//!
//! Family tails are infinite sums and come back as [`Bracketed`] values.
//! [`TailMode::Capped`] replaces every infinite index range by one that
//! stops at a fixed index, which is how reference error tables are
//! reproduced.

mod table;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_domain, Error, Result};
use crate::series::Bracketed;
use crate::spectra::sums::{weighted_sum, IndexRange, Weight};
use crate::spectra::PowerSpectrum;

pub use table::{
    error_table, fit_diagnostic, write_error_table_csv, HypothesisFit, TableCell, TableFamily,
    TableScenario, TableValue, XiChoice, XiSource,
};

/// How the infinite index ranges of the tails are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TailMode {
    #[default]
    Infinite,
    /// Every index range stops at this index, inclusive.
    Capped(usize),
}

impl TailMode {
    fn range_from(self, start: usize) -> IndexRange {
        match self {
            TailMode::Infinite => IndexRange::from(start),
            TailMode::Capped(n) => IndexRange::between(start, n),
        }
    }
}

impl fmt::Display for TailMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailMode::Infinite => f.write_str("infinite"),
            TailMode::Capped(n) => write!(f, "capped:{n}"),
        }
    }
}

impl FromStr for TailMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "infinite" {
            return Ok(TailMode::Infinite);
        }
        s.strip_prefix("capped:")
            .and_then(|n| n.trim().parse().ok())
            .map(TailMode::Capped)
            .ok_or(Error::Unknown {
                what: "tail mode",
                value: s,
            })
    }
}

/// The two tail regions `{j > J, k >= 0}` and `{j <= J, k > K}`.
fn tail_sum(
    spectrum: &PowerSpectrum,
    j_max: usize,
    k_max: usize,
    power: i32,
    wj: Weight,
    tail: TailMode,
) -> Result<Bracketed> {
    let outer = weighted_sum(
        spectrum,
        power,
        tail.range_from(j_max + 1),
        tail.range_from(0),
        wj,
        Weight::One,
    )?;
    let inner = weighted_sum(
        spectrum,
        power,
        IndexRange::between(0, j_max),
        tail.range_from(k_max + 1),
        wj,
        Weight::One,
    )?;
    Ok(outer + inner)
}

/// `P_{J,K} = 4 pi (sum_{j>J, k>=0} a + sum_{j<=J, k>K} a)`.
///
/// ```
/// use stgrf::bounds::truncation_p;
/// use stgrf::spectra::{CoefficientMatrix, PowerSpectrum};
/// let s = PowerSpectrum::explicit(CoefficientMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap());
/// let p = truncation_p(&s, 0, 0).unwrap();
/// assert!((p.value - 4.0 * std::f64::consts::PI).abs() < 1e-15);
/// ```
pub fn truncation_p(spectrum: &PowerSpectrum, j_max: usize, k_max: usize) -> Result<Bracketed> {
    truncation_p_with(spectrum, j_max, k_max, TailMode::Infinite)
}

pub fn truncation_p_with(
    spectrum: &PowerSpectrum,
    j_max: usize,
    k_max: usize,
    tail: TailMode,
) -> Result<Bracketed> {
    Ok(tail_sum(spectrum, j_max, k_max, 1, Weight::One, tail)?.scale(4.0 * PI))
}

/// `Q_{J,K} = 4 pi (sum over the same tails of c_j^2 a^2)^{1/2}`.
pub fn truncation_q(spectrum: &PowerSpectrum, j_max: usize, k_max: usize) -> Result<Bracketed> {
    truncation_q_with(spectrum, j_max, k_max, TailMode::Infinite)
}

pub fn truncation_q_with(
    spectrum: &PowerSpectrum,
    j_max: usize,
    k_max: usize,
    tail: TailMode,
) -> Result<Bracketed> {
    Ok(
        tail_sum(spectrum, j_max, k_max, 2, Weight::LegendreNorm, tail)?
            .sqrt()
            .scale(4.0 * PI),
    )
}

/// `exp(-eps / 2) sqrt(1 + eps)`.
///
/// ```
/// let p = stgrf::bounds::exceedance_probability(8.2).unwrap();
/// assert!((p - 0.05027).abs() < 1e-5);
/// ```
pub fn exceedance_probability(epsilon: f64) -> Result<f64> {
    check_domain(
        "epsilon",
        epsilon,
        epsilon.is_finite() && epsilon > 0.0,
        "> 0",
    )?;
    Ok((-0.5 * epsilon).exp() * (1.0 + epsilon).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationBound {
    pub j_max: usize,
    pub k_max: usize,
    pub p: Bracketed,
    pub q: Bracketed,
    pub epsilon: f64,
    pub tail: TailMode,
    /// `P + eps Q` on the brackets' midpoints.
    pub bound_sq: f64,
    /// `sqrt(P + eps Q)`.
    pub bound: f64,
    pub exceedance_probability: f64,
}

impl TruncationBound {
    /// Width of the enclosure of `P + eps Q`.
    pub fn bracket_width(&self) -> f64 {
        self.p.width() + self.epsilon * self.q.width()
    }
}

pub fn error_bound(
    spectrum: &PowerSpectrum,
    j_max: usize,
    k_max: usize,
    epsilon: f64,
) -> Result<TruncationBound> {
    error_bound_with(spectrum, j_max, k_max, epsilon, TailMode::Infinite)
}

pub fn error_bound_with(
    spectrum: &PowerSpectrum,
    j_max: usize,
    k_max: usize,
    epsilon: f64,
    tail: TailMode,
) -> Result<TruncationBound> {
    let exceedance_probability = exceedance_probability(epsilon)?;
    let p = truncation_p_with(spectrum, j_max, k_max, tail)?;
    let q = truncation_q_with(spectrum, j_max, k_max, tail)?;
    let bound_sq = p.value + epsilon * q.value;
    Ok(TruncationBound {
        j_max,
        k_max,
        p,
        q,
        epsilon,
        tail,
        bound_sq,
        bound: bound_sq.sqrt(),
        exceedance_probability,
    })
}
