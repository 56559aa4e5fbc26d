use std::fmt;
use std::sync::Arc;

use super::spectrum::{PowerSpectrum, SpectrumKind};
use crate::error::{Error, Result};
use crate::specfun::{
    gegenbauer_unchecked, hermite_h, sph_harm_dim, surface_area, QuadratureKind, QuadratureRule,
};
use crate::temporal::TemporalBasis;

/// Extra Legendre nodes required beyond the projected degree.
pub const DEGREE_GUARD: usize = 8;

/// `phi_{j,d}(t)` extracted from a kernel `psi(x, t)`, `x = cos theta`, by
/// Gauss-Legendre quadrature against `c_j(d, x) (1 - x^2)^{d/2 - 1}`.
///
/// ```
/// use stgrf::spectra::schoenberg_from_kernel;
/// use stgrf::specfun::{quadrature, QuadratureKind};
/// let rule = quadrature(QuadratureKind::GaussLegendre, 32).unwrap();
/// let psi = |x: f64, t: f64| (-t * t).exp() * x;
/// let phi1 = schoenberg_from_kernel(&psi, 1, 2, 0.3, &rule).unwrap();
/// assert!((phi1 - (-0.09f64).exp()).abs() < 1e-12);
/// ```
pub fn schoenberg_from_kernel<F>(
    psi: &F,
    j: usize,
    d: usize,
    t: f64,
    rule: &QuadratureRule,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + ?Sized,
{
    if rule.kind() != QuadratureKind::GaussLegendre {
        return Err(Error::WrongRule {
            expected: "gauss-legendre",
        });
    }
    if d < 2 {
        return Err(Error::Domain {
            name: "d",
            value: d as f64,
            expected: "d >= 2 (the circle weight is singular at the end points)",
        });
    }
    if rule.len() < j + DEGREE_GUARD {
        return Err(Error::RuleTooCoarse {
            nodes: rule.len(),
            required: j + DEGREE_GUARD,
        });
    }
    let dim = sph_harm_dim(j, d)? as f64;
    let factor = dim * surface_area(d - 1)? / surface_area(d)?;
    let half_power = 0.5 * d as f64 - 1.0;
    let integral: f64 = rule
        .iter()
        .map(|(x, w)| {
            let weight = if d == 2 {
                1.0
            } else {
                (1.0 - x * x).powf(half_power)
            };
            w * psi(x, t) * gegenbauer_unchecked(j, d, x) * weight
        })
        .sum();
    Ok(factor * integral)
}

/// `alpha_k = int phi(u) H_k(u) dnu(u)` for `k = 0..=k_max`.
///
/// ```
/// use stgrf::spectra::hermite_coeffs;
/// use stgrf::specfun::{quadrature, QuadratureKind};
/// let rule = quadrature(QuadratureKind::GaussHermite, 16).unwrap();
/// let a = hermite_coeffs(&|u: f64| u * u, 4, &rule).unwrap();
/// assert!((a[0] - 1.0).abs() < 1e-12 && (a[2] - 2f64.sqrt()).abs() < 1e-12);
/// ```
pub fn hermite_coeffs<F>(phi: &F, k_max: usize, rule: &QuadratureRule) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    if rule.kind() != QuadratureKind::GaussHermite {
        return Err(Error::WrongRule {
            expected: "gauss-hermite",
        });
    }
    if rule.len() < k_max + 1 {
        return Err(Error::RuleTooCoarse {
            nodes: rule.len(),
            required: k_max + 1,
        });
    }
    let mut coeffs = vec![0.0; k_max + 1];
    let mut h = Vec::with_capacity(k_max + 1);
    for (u, w) in rule.iter() {
        let fw = w * phi(u);
        crate::specfun::hermite_all(k_max, u, &mut h);
        for (c, hk) in coeffs.iter_mut().zip(&h) {
            *c += fw * hk;
        }
    }
    Ok(coeffs)
}

/// Temporal representation of one Schoenberg function.
#[derive(Clone)]
pub enum SchoenbergFunction {
    Analytic(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// `sum_k c_k eps_k(u)` in a Fourier-type temporal basis.
    Fourier {
        basis: TemporalBasis,
        coeffs: Vec<f64>,
    },
    /// `sum_k c_k H_k(u)`.
    Hermite {
        coeffs: Vec<f64>,
    },
}

impl fmt::Debug for SchoenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchoenbergFunction::Analytic(_) => f.write_str("Analytic(..)"),
            SchoenbergFunction::Fourier { basis, coeffs } => f
                .debug_struct("Fourier")
                .field("basis", basis)
                .field("coeffs", coeffs)
                .finish(),
            SchoenbergFunction::Hermite { coeffs } => {
                f.debug_struct("Hermite").field("coeffs", coeffs).finish()
            }
        }
    }
}

impl SchoenbergFunction {
    pub fn analytic<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        SchoenbergFunction::Analytic(Arc::new(f))
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            SchoenbergFunction::Analytic(f) => f(u),
            SchoenbergFunction::Fourier { basis, coeffs } => coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * basis.covariance_factor(k, u))
                .sum(),
            SchoenbergFunction::Hermite { coeffs } => coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * hermite_h(k, u))
                .sum(),
        }
    }

    /// True when `phi(-u) = phi(u)` by construction.
    pub fn is_even(&self) -> bool {
        match self {
            SchoenbergFunction::Analytic(_) => false,
            SchoenbergFunction::Fourier { .. } => true,
            SchoenbergFunction::Hermite { coeffs } => {
                coeffs.iter().skip(1).step_by(2).all(|c| *c == 0.0)
            }
        }
    }
}

/// Schoenberg functions `phi_0, ..., phi_J` on `S^d`.
#[derive(Debug, Clone)]
pub struct SchoenbergFunctionSet {
    d: usize,
    functions: Vec<SchoenbergFunction>,
}

impl SchoenbergFunctionSet {
    pub fn new(d: usize, functions: Vec<SchoenbergFunction>) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::Spectrum("no Schoenberg functions".into()));
        }
        if d == 0 {
            return Err(Error::Domain {
                name: "d",
                value: 0.0,
                expected: "d >= 1",
            });
        }
        Ok(Self { d, functions })
    }

    /// `phi_j(u) = sum_{k <= k_max} a_{k,j} eps_k(u)` (angular) or
    /// `sum_k alpha_{k,j} H_k(u)` (Hermite), for `j <= j_max`.
    pub fn from_spectrum(
        spectrum: &PowerSpectrum,
        basis: TemporalBasis,
        j_max: usize,
        k_max: usize,
    ) -> Result<Self> {
        let functions = (0..=j_max)
            .map(|j| {
                let coeffs: Vec<f64> = (0..=k_max).map(|k| spectrum.coeff(k, j)).collect();
                match spectrum.kind() {
                    SpectrumKind::Angular => SchoenbergFunction::Fourier { basis, coeffs },
                    SpectrumKind::Hermite => SchoenbergFunction::Hermite { coeffs },
                }
            })
            .collect();
        Self::new(spectrum.d(), functions)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Highest degree `J`.
    pub fn max_degree(&self) -> usize {
        self.functions.len() - 1
    }

    pub fn get(&self, j: usize) -> Option<&SchoenbergFunction> {
        self.functions.get(j)
    }

    pub fn eval(&self, j: usize, u: f64) -> f64 {
        self.functions.get(j).map_or(0.0, |f| f.eval(u))
    }

    pub fn all_even(&self) -> bool {
        self.functions.iter().all(SchoenbergFunction::is_even)
    }

    /// `sum_j phi_j(0)`.
    pub fn total_variance(&self) -> f64 {
        self.functions.iter().map(|f| f.eval(0.0)).sum()
    }

    /// Checks `|phi_j(t)| <= phi_j(0) + slack` on the given lags; returns the
    /// first violating `(j, t)`.
    pub fn check_bounded(&self, lags: &[f64], slack: f64) -> Option<(usize, f64)> {
        for (j, f) in self.functions.iter().enumerate() {
            let at0 = f.eval(0.0);
            if let Some(&t) = lags.iter().find(|&&t| f.eval(t).abs() > at0 + slack) {
                return Some((j, t));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quadrature;
    use approx::assert_abs_diff_eq;

    #[test]
    fn projections_of_simple_kernels() {
        let rule = quadrature(QuadratureKind::GaussLegendre, 40).unwrap();
        let psi = |x: f64, t: f64| (-t * t).exp() * x;
        for j in 0..10 {
            let v = schoenberg_from_kernel(&psi, j, 2, 0.7, &rule).unwrap();
            let want = if j == 1 { (-0.49f64).exp() } else { 0.0 };
            assert_abs_diff_eq!(v, want, epsilon = 1e-12);
        }
        let one = |_: f64, _: f64| 1.0;
        assert_abs_diff_eq!(
            schoenberg_from_kernel(&one, 0, 2, 0.0, &rule).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            schoenberg_from_kernel(&one, 3, 2, 0.0, &rule).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn guards() {
        let rule = quadrature(QuadratureKind::GaussLegendre, 12).unwrap();
        let psi = |x: f64, _: f64| x;
        assert!(matches!(
            schoenberg_from_kernel(&psi, 5, 2, 0.0, &rule),
            Err(Error::RuleTooCoarse {
                nodes: 12,
                required: 13
            })
        ));
        let herm = quadrature(QuadratureKind::GaussHermite, 12).unwrap();
        assert!(schoenberg_from_kernel(&psi, 1, 2, 0.0, &herm).is_err());
        assert!(hermite_coeffs(&|u: f64| u, 3, &rule).is_err());
        assert!(hermite_coeffs(&|u: f64| u, 12, &herm).is_err());
    }

    #[test]
    fn higher_dimension_projection() {
        // on S^3, c_j(3, x) has phi_j = 1 for psi = c_j itself
        let rule = quadrature(QuadratureKind::GaussLegendre, 200).unwrap();
        let psi = |x: f64, _: f64| gegenbauer_unchecked(2, 3, x);
        let v = schoenberg_from_kernel(&psi, 2, 3, 0.0, &rule).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-4);
        // d = 4 has a polynomial weight: exact
        let rule = quadrature(QuadratureKind::GaussLegendre, 20).unwrap();
        let psi = |x: f64, _: f64| gegenbauer_unchecked(3, 4, x);
        assert_abs_diff_eq!(
            schoenberg_from_kernel(&psi, 3, 4, 0.0, &rule).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            schoenberg_from_kernel(&psi, 2, 4, 0.0, &rule).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn hermite_projection_examples() {
        let rule = quadrature(QuadratureKind::GaussHermite, 20).unwrap();
        let a = hermite_coeffs(&|u: f64| hermite_h(2, u), 6, &rule).unwrap();
        for (k, v) in a.iter().enumerate() {
            assert_abs_diff_eq!(*v, if k == 2 { 1.0 } else { 0.0 }, epsilon = 1e-12);
        }
        let a = hermite_coeffs(&|_: f64| 1.0, 6, &rule).unwrap();
        assert_abs_diff_eq!(a[0], 1.0, epsilon = 1e-13);
        assert!(a[1..].iter().all(|v| v.abs() < 1e-13));
    }
}
