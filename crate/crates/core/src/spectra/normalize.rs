use std::fmt;
use std::str::FromStr;

use super::spectrum::PowerSpectrum;
use super::sums::{weighted_sum, IndexRange, Weight};
use crate::error::{Error, Result};
use crate::series::Bracketed;

/// Which double sum is set to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VarianceSum {
    /// `sum a_{k,j} = 1`: the pointwise variance of the quarter-wave field.
    #[default]
    MeanField,
    /// `sum (2j + 1) a_{k,j} = 1`.
    ModeSum,
}

/// A variance sum, optionally restricted to `j <= J`, `k <= K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarianceConvention {
    pub sum: VarianceSum,
    pub truncation: Option<(usize, usize)>,
}

impl VarianceConvention {
    pub fn mean_field() -> Self {
        Self::default()
    }

    pub fn mode_sum() -> Self {
        Self {
            sum: VarianceSum::ModeSum,
            truncation: None,
        }
    }

    /// Restricts the sum to `j <= j_max`, `k <= k_max`.
    pub fn truncated(sum: VarianceSum, j_max: usize, k_max: usize) -> Self {
        Self {
            sum,
            truncation: Some((j_max, k_max)),
        }
    }

    /// The convention's variance sum for `spectrum`.
    pub fn variance(&self, spectrum: &PowerSpectrum) -> Result<Bracketed> {
        let wj = match self.sum {
            VarianceSum::MeanField => Weight::One,
            VarianceSum::ModeSum => Weight::ModeCount,
        };
        let (jr, kr) = match self.truncation {
            None => (IndexRange::all(), IndexRange::all()),
            Some((j, k)) => (IndexRange::between(0, j), IndexRange::between(0, k)),
        };
        weighted_sum(spectrum, 1, jr, kr, wj, Weight::One)
    }
}

impl fmt::Display for VarianceConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.sum {
            VarianceSum::MeanField => "mean-field",
            VarianceSum::ModeSum => "mode-sum",
        };
        match self.truncation {
            None => f.write_str(name),
            Some((j, k)) => write!(f, "truncated-{name}:{j},{k}"),
        }
    }
}

impl FromStr for VarianceConvention {
    type Err = Error;

    /// `mean-field`, `mode-sum`, or `truncated-<either>:J,K`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let unknown = || Error::Unknown {
            what: "variance convention",
            value: s.clone(),
        };
        let sum_of = |name: &str| match name {
            "mean-field" | "infinite-sum" => Ok(VarianceSum::MeanField),
            "mode-sum" => Ok(VarianceSum::ModeSum),
            _ => Err(unknown()),
        };
        if let Some(rest) = s.strip_prefix("truncated-") {
            let (name, jk) = rest.split_once(':').ok_or_else(unknown)?;
            let (j, k) = jk.split_once(',').ok_or_else(unknown)?;
            let j = j.trim().parse().map_err(|_| unknown())?;
            let k = k.trim().parse().map_err(|_| unknown())?;
            return Ok(Self::truncated(sum_of(name)?, j, k));
        }
        Ok(Self {
            sum: sum_of(&s)?,
            truncation: None,
        })
    }
}

/// Result of [`normalize_unit_variance`].
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub spectrum: PowerSpectrum,
    /// The fitted scale `xi`.
    pub xi: f64,
    /// The convention's variance sum before rescaling.
    pub variance_before: Bracketed,
    pub convention: VarianceConvention,
}

/// Rescales so that the convention's variance sum equals one.
///
/// ```
/// use stgrf::spectra::{family_polyproduct, normalize_unit_variance, VarianceConvention};
/// let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
/// let n = normalize_unit_variance(&s, VarianceConvention::mean_field()).unwrap();
/// let zeta3 = 1.2020569031595942;
/// let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
/// assert!((n.xi - 1.0 / (zeta3 * zeta2)).abs() < 1e-14);
/// ```
pub fn normalize_unit_variance(
    spectrum: &PowerSpectrum,
    convention: VarianceConvention,
) -> Result<Normalized> {
    let variance = convention.variance(spectrum)?;
    if !(variance.value > 0.0 && variance.value.is_finite()) {
        return Err(Error::Spectrum(format!(
            "variance sum under {convention} is {}",
            variance.value
        )));
    }
    let xi = spectrum.scale() / variance.value;
    Ok(Normalized {
        spectrum: spectrum.clone().with_scale(xi)?,
        xi,
        variance_before: variance,
        convention,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{family_polysum, CoefficientMatrix};

    #[test]
    fn single_coefficient() {
        let s = PowerSpectrum::explicit(CoefficientMatrix::new(0, 0, vec![4.0]).unwrap());
        let n = normalize_unit_variance(&s, VarianceConvention::mean_field()).unwrap();
        assert_eq!(n.spectrum.coeff(0, 0), 1.0);
        assert_eq!(n.xi, 0.25);
    }

    #[test]
    fn idempotent() {
        let s = family_polysum(3.0, 3.0, 2.0, 1.5).unwrap();
        for c in [
            VarianceConvention::mean_field(),
            VarianceConvention::mode_sum(),
            VarianceConvention::truncated(VarianceSum::MeanField, 20, 20),
        ] {
            let once = normalize_unit_variance(&s, c).unwrap();
            let twice = normalize_unit_variance(&once.spectrum, c).unwrap();
            assert!((twice.xi / once.xi - 1.0).abs() < 1e-12, "{c}");
        }
    }

    #[test]
    fn convention_round_trip() {
        for c in [
            VarianceConvention::mean_field(),
            VarianceConvention::mode_sum(),
            VarianceConvention::truncated(VarianceSum::ModeSum, 50, 7),
        ] {
            assert_eq!(c.to_string().parse::<VarianceConvention>().unwrap(), c);
        }
        assert!("median".parse::<VarianceConvention>().is_err());
        assert!("truncated-mean-field:3"
            .parse::<VarianceConvention>()
            .is_err());
    }
}
