use super::spectrum::{PowerSpectrum, SpectrumKind};
use super::sums::{converges, weighted_sum, IndexRange, Weight};
use crate::error::{check_domain, Error, Result};
use crate::series::Bracketed;
use crate::temporal::TemporalBasis;

/// Outcome of [`check_summability`].
#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityReport {
    /// `sum a_{k,j} sup|eps_k|`, `None` when divergent.
    pub total: Option<Bracketed>,
    /// Width of the remainder enclosure.
    pub tail_bound: f64,
    pub pass: bool,
}

/// Checks `sum_{j,k} a_{k,j} sup_u |eps_k(u)| < inf` for the given basis.
///
/// ```
/// use stgrf::spectra::{check_summability, family_polyproduct};
/// use stgrf::temporal::TemporalBasis;
/// let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
/// let r = check_summability(&s, &TemporalBasis::quarter_wave(1.0).unwrap());
/// assert!(r.pass);
/// ```
pub fn check_summability(spectrum: &PowerSpectrum, basis: &TemporalBasis) -> SummabilityReport {
    let wk = Weight::Split {
        first: basis.sup_factor(0),
        rest: basis.sup_factor(1),
    };
    if !converges(spectrum, 1, Weight::One, wk) {
        return SummabilityReport {
            total: None,
            tail_bound: f64::INFINITY,
            pass: false,
        };
    }
    match weighted_sum(
        spectrum,
        1,
        IndexRange::all(),
        IndexRange::all(),
        Weight::One,
        wk,
    ) {
        Ok(b) => SummabilityReport {
            tail_bound: b.width(),
            pass: b.hi.is_finite(),
            total: Some(b),
        },
        Err(_) => SummabilityReport {
            total: None,
            tail_bound: f64::INFINITY,
            pass: false,
        },
    }
}

/// Outcome of [`check_holder_hypothesis`].
#[derive(Debug, Clone, PartialEq)]
pub struct HolderHypothesisReport {
    pub delta: f64,
    /// The weighted sum, `None` when divergent.
    pub sum: Option<Bracketed>,
    pub pass: bool,
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    check_domain("delta", delta, delta > 0.0 && delta <= 2.0, "(0, 2]")
}

pub(crate) fn require_hermite(spectrum: &PowerSpectrum) -> Result<()> {
    if spectrum.kind() != SpectrumKind::Hermite {
        return Err(Error::Spectrum(
            "a Hermite spectrum is required here".into(),
        ));
    }
    Ok(())
}

/// Evaluates `sum alpha_{k,j} max(k,1)^{delta/8} max(j,1)^{(d-1+delta)/2}`.
///
/// ```
/// use stgrf::spectra::{check_holder_hypothesis, family_polyproduct, SpectrumKind};
/// let s = family_polyproduct(1.0, 1.4, 2.0).unwrap().with_kind(SpectrumKind::Hermite);
/// assert!(!check_holder_hypothesis(&s, 1.0).unwrap().pass);
/// ```
pub fn check_holder_hypothesis(
    spectrum: &PowerSpectrum,
    delta: f64,
) -> Result<HolderHypothesisReport> {
    check_delta(delta)?;
    require_hermite(spectrum)?;
    let wj = Weight::IndexPow(0.5 * (spectrum.d() as f64 - 1.0 + delta));
    let wk = Weight::IndexPow(delta / 8.0);
    let sum = if converges(spectrum, 1, wj, wk) {
        match weighted_sum(spectrum, 1, IndexRange::all(), IndexRange::all(), wj, wk) {
            Ok(b) => Some(b),
            Err(Error::Divergent(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(HolderHypothesisReport {
        delta,
        pass: sum.is_some(),
        sum,
    })
}
