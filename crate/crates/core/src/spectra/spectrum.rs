use std::fmt;

use crate::error::{check_domain, Error, Result};

/// Coefficients below this are flushed to zero to keep subnormals out of
/// the inner loops.
pub const ZERO_FLOOR: f64 = 1e-300;

/// Whether the coefficients weight the temporal Fourier modes or the
/// Hermite polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SpectrumKind {
    #[default]
    Angular,
    Hermite,
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Angular => "angular",
            SpectrumKind::Hermite => "hermite",
        })
    }
}

/// Dense nonnegative coefficients, `(k_max + 1)` rows by `(j_max + 1)`
/// columns, row-major in `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    k_max: usize,
    j_max: usize,
    values: Vec<f64>,
}

impl CoefficientMatrix {
    pub fn new(k_max: usize, j_max: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != (k_max + 1) * (j_max + 1) {
            return Err(Error::Shape(format!(
                "{} values for a {}x{} coefficient table",
                values.len(),
                k_max + 1,
                j_max + 1
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Spectrum(format!(
                "coefficient {bad} is not a finite nonnegative number"
            )));
        }
        let values = values
            .into_iter()
            .map(|v| if v < ZERO_FLOOR { 0.0 } else { v })
            .collect();
        Ok(Self {
            k_max,
            j_max,
            values,
        })
    }

    /// Builds from rows indexed by `k`, each holding `j = 0..=j_max`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Shape("empty coefficient table".into()))?;
        if rows.iter().any(|r| r.len() != first.len()) || first.is_empty() {
            return Err(Error::Shape("ragged coefficient table".into()));
        }
        Self::new(
            rows.len() - 1,
            first.len() - 1,
            rows.iter().flatten().copied().collect(),
        )
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    /// Zero outside the stored range.
    #[inline]
    pub fn get(&self, k: usize, j: usize) -> f64 {
        if k > self.k_max || j > self.j_max {
            0.0
        } else {
            self.values[k * (self.j_max + 1) + j]
        }
    }

    pub fn row(&self, k: usize) -> &[f64] {
        let w = self.j_max + 1;
        &self.values[k * w..(k + 1) * w]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Where the coefficients come from. Families give the shape; the overall
/// scale lives in [`PowerSpectrum`].
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumSource {
    /// `1 / ((1 + j)^nu1 (1 + k)^nu2)`.
    ProductFamily {
        nu1: f64,
        nu2: f64,
    },
    /// `1 / (1 + j^nu1 + k^nu2)^tau`.
    SumFamily {
        nu1: f64,
        nu2: f64,
        tau: f64,
    },
    Explicit(CoefficientMatrix),
}

/// Nonnegative double-indexed spectrum `a_{k,j} = scale * shape(k, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    kind: SpectrumKind,
    source: SpectrumSource,
    scale: f64,
    d: usize,
}

fn check_exponent(name: &'static str, v: f64) -> Result<()> {
    check_domain(name, v, v.is_finite() && v > 1.0, "> 1")
}

fn check_scale(xi: f64) -> Result<()> {
    check_domain("xi", xi, xi.is_finite() && xi > 0.0, "> 0")
}

/// `a_{k,j} = xi / ((1 + j)^nu1 (1 + k)^nu2)`.
///
/// ```
/// let s = stgrf::spectra::family_polyproduct(1.0, 2.0, 2.0).unwrap();
/// assert_eq!(s.coeff(1, 1), 1.0 / 16.0);
/// ```
pub fn family_polyproduct(xi: f64, nu1: f64, nu2: f64) -> Result<PowerSpectrum> {
    check_scale(xi)?;
    check_exponent("nu1", nu1)?;
    check_exponent("nu2", nu2)?;
    Ok(PowerSpectrum {
        kind: SpectrumKind::Angular,
        source: SpectrumSource::ProductFamily { nu1, nu2 },
        scale: xi,
        d: 2,
    })
}

/// `a_{k,j} = xi / (1 + j^nu1 + k^nu2)^tau`.
///
/// Summable exactly when `1/nu1 + 1/nu2 < tau`.
pub fn family_polysum(xi: f64, nu1: f64, nu2: f64, tau: f64) -> Result<PowerSpectrum> {
    check_scale(xi)?;
    check_exponent("nu1", nu1)?;
    check_exponent("nu2", nu2)?;
    check_exponent("tau", tau)?;
    if 1.0 / nu1 + 1.0 / nu2 >= tau {
        return Err(Error::Divergent(format!(
            "sum family with nu1 = {nu1}, nu2 = {nu2}, tau = {tau}: need 1/nu1 + 1/nu2 < tau"
        )));
    }
    Ok(PowerSpectrum {
        kind: SpectrumKind::Angular,
        source: SpectrumSource::SumFamily { nu1, nu2, tau },
        scale: xi,
        d: 2,
    })
}

/// `b_{k,j} = xi / ((1 + j)^nu1 (1 + k)^nu2)` with any positive exponents.
///
/// Unlike [`family_polyproduct`] this need not be summable; it describes
/// coefficient sequences whose weighted norms are examined. Sums that
/// diverge are reported as such.
pub fn sequence_polyproduct(xi: f64, nu1: f64, nu2: f64) -> Result<PowerSpectrum> {
    check_scale(xi)?;
    check_domain("nu1", nu1, nu1.is_finite() && nu1 > 0.0, "> 0")?;
    check_domain("nu2", nu2, nu2.is_finite() && nu2 > 0.0, "> 0")?;
    Ok(PowerSpectrum {
        kind: SpectrumKind::Angular,
        source: SpectrumSource::ProductFamily { nu1, nu2 },
        scale: xi,
        d: 2,
    })
}

impl PowerSpectrum {
    /// An explicit table with unit scale.
    pub fn explicit(matrix: CoefficientMatrix) -> Self {
        Self {
            kind: SpectrumKind::Angular,
            source: SpectrumSource::Explicit(matrix),
            scale: 1.0,
            d: 2,
        }
    }

    pub fn with_kind(mut self, kind: SpectrumKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_dimension(mut self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain {
                name: "d",
                value: 0.0,
                expected: "d >= 1",
            });
        }
        self.d = d;
        Ok(self)
    }

    pub fn with_scale(mut self, xi: f64) -> Result<Self> {
        check_scale(xi)?;
        self.scale = xi;
        Ok(self)
    }

    /// Multiplies every coefficient by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        self.clone().with_scale(self.scale * lambda)
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn source(&self) -> &SpectrumSource {
        &self.source
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Largest `(k, j)` with a possibly nonzero coefficient, if finite.
    pub fn support(&self) -> Option<(usize, usize)> {
        match &self.source {
            SpectrumSource::Explicit(m) => Some((m.k_max(), m.j_max())),
            _ => None,
        }
    }

    /// Shape at real arguments, without the scale.
    #[inline]
    pub(crate) fn shape_at(&self, k: f64, j: f64) -> f64 {
        match &self.source {
            SpectrumSource::ProductFamily { nu1, nu2 } => {
                ((1.0 + j).powf(*nu1) * (1.0 + k).powf(*nu2)).recip()
            }
            SpectrumSource::SumFamily { nu1, nu2, tau } => {
                (1.0 + j.powf(*nu1) + k.powf(*nu2)).powf(-*tau)
            }
            SpectrumSource::Explicit(m) => m.get(k as usize, j as usize),
        }
    }

    /// `a_{k,j}`.
    #[inline]
    pub fn coeff(&self, k: usize, j: usize) -> f64 {
        let v = self.scale * self.shape_at(k as f64, j as f64);
        if v < ZERO_FLOOR {
            0.0
        } else {
            v
        }
    }

    /// The coefficients for `k <= k_max`, `j <= j_max` as a dense table.
    pub fn materialize(&self, k_max: usize, j_max: usize) -> CoefficientMatrix {
        let values = (0..=k_max)
            .flat_map(|k| (0..=j_max).map(move |j| (k, j)))
            .map(|(k, j)| self.coeff(k, j))
            .collect();
        CoefficientMatrix {
            k_max,
            j_max,
            values,
        }
    }
}
