use crate::error::{Error, Result};
use crate::specfun::{gegenbauer_all, hermite_all};
use crate::spectra::{CoefficientMatrix, PowerSpectrum, SchoenbergFunctionSet, SpectrumKind};
use crate::temporal::TemporalBasis;

/// What a [`KernelModel`] is built from.
#[derive(Debug, Clone)]
pub enum KernelContent {
    Schoenberg(SchoenbergFunctionSet),
    /// Angular spectrum with the temporal basis giving `eps_k(u)`.
    Angular {
        spectrum: PowerSpectrum,
        basis: TemporalBasis,
        table: CoefficientMatrix,
    },
    Hermite {
        spectrum: PowerSpectrum,
        table: CoefficientMatrix,
    },
}

/// A truncated kernel `psi(theta, u) = sum_{j <= J} phi_j(u) c_j(d, cos theta)`.
#[derive(Debug, Clone)]
pub struct KernelModel {
    d: usize,
    content: KernelContent,
    j_max: usize,
    k_max: usize,
}

impl KernelModel {
    /// Uses degrees up to `min(j_max, set.max_degree())`.
    pub fn from_schoenberg(set: SchoenbergFunctionSet, j_max: usize) -> Self {
        Self {
            d: set.d(),
            j_max: j_max.min(set.max_degree()),
            k_max: 0,
            content: KernelContent::Schoenberg(set),
        }
    }

    pub fn angular(
        spectrum: PowerSpectrum,
        basis: TemporalBasis,
        j_max: usize,
        k_max: usize,
    ) -> Result<Self> {
        if spectrum.kind() != SpectrumKind::Angular {
            return Err(Error::Spectrum(
                "an angular spectrum is required here".into(),
            ));
        }
        Ok(Self {
            d: spectrum.d(),
            j_max,
            k_max,
            content: KernelContent::Angular {
                table: spectrum.materialize(k_max, j_max),
                spectrum,
                basis,
            },
        })
    }

    pub fn hermite(spectrum: PowerSpectrum, j_max: usize, k_max: usize) -> Result<Self> {
        if spectrum.kind() != SpectrumKind::Hermite {
            return Err(Error::Spectrum(
                "a Hermite spectrum is required here".into(),
            ));
        }
        Ok(Self {
            d: spectrum.d(),
            j_max,
            k_max,
            content: KernelContent::Hermite {
                table: spectrum.materialize(k_max, j_max),
                spectrum,
            },
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn content(&self) -> &KernelContent {
        &self.content
    }

    /// The spectrum behind the model, if spectral.
    pub fn spectrum(&self) -> Option<&PowerSpectrum> {
        match &self.content {
            KernelContent::Schoenberg(_) => None,
            KernelContent::Angular { spectrum, .. } | KernelContent::Hermite { spectrum, .. } => {
                Some(spectrum)
            }
        }
    }

    /// True when `psi(theta, -u) = psi(theta, u)` by construction.
    pub fn is_even(&self) -> bool {
        match &self.content {
            KernelContent::Schoenberg(set) => set.all_even(),
            KernelContent::Angular { .. } => true,
            KernelContent::Hermite { table, .. } => (1..=table.k_max())
                .step_by(2)
                .all(|k| table.row(k).iter().all(|v| *v == 0.0)),
        }
    }

    /// `phi_j(u)` of the truncated model.
    pub fn schoenberg_value(&self, j: usize, u: f64) -> f64 {
        if j > self.j_max {
            return 0.0;
        }
        let mut factors = Vec::new();
        self.temporal_factors(u, &mut factors);
        self.phi(j, u, &factors)
    }

    fn temporal_factors(&self, u: f64, out: &mut Vec<f64>) {
        match &self.content {
            KernelContent::Schoenberg(_) => out.clear(),
            KernelContent::Angular { basis, .. } => {
                out.clear();
                out.extend((0..=self.k_max).map(|k| basis.covariance_factor(k, u)));
            }
            KernelContent::Hermite { .. } => hermite_all(self.k_max, u, out),
        }
    }

    #[inline]
    fn phi(&self, j: usize, u: f64, factors: &[f64]) -> f64 {
        match &self.content {
            KernelContent::Schoenberg(set) => set.eval(j, u),
            KernelContent::Angular { table, .. } | KernelContent::Hermite { table, .. } => factors
                .iter()
                .enumerate()
                .map(|(k, e)| table.get(k, j) * e)
                .sum(),
        }
    }

    /// `psi_I(x, u)` with `x = cos theta`, clamped to `[-1, 1]`.
    pub fn eval_inner(&self, x: f64, u: f64) -> f64 {
        let x = x.clamp(-1.0, 1.0);
        let mut poly = Vec::with_capacity(self.j_max + 1);
        gegenbauer_all(self.j_max, self.d, x, &mut poly);
        let mut factors = Vec::with_capacity(self.k_max + 1);
        self.temporal_factors(u, &mut factors);
        (0..=self.j_max)
            .map(|j| self.phi(j, u, &factors) * poly[j])
            .sum()
    }
}

/// `psi(theta, u)` of the truncated model.
///
/// ```
/// use stgrf::kernel::{kernel_eval, KernelModel};
/// use stgrf::spectra::family_polyproduct;
/// use stgrf::temporal::TemporalBasis;
/// let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
/// let m = KernelModel::angular(s.clone(), TemporalBasis::quarter_wave(1.0).unwrap(), 4, 4).unwrap();
/// let total: f64 = (0..=4).flat_map(|k| (0..=4).map(move |j| (k, j))).map(|(k, j)| s.coeff(k, j)).sum();
/// assert!((kernel_eval(&m, 0.0, 0.0) - total).abs() < 1e-14);
/// ```
pub fn kernel_eval(model: &KernelModel, theta: f64, u: f64) -> f64 {
    model.eval_inner(theta.cos(), u)
}

/// As [`kernel_eval`], restricted to Hermite models.
pub fn kernel_eval_hermite(model: &KernelModel, theta: f64, u: f64) -> Result<f64> {
    match model.content() {
        KernelContent::Hermite { .. } => Ok(kernel_eval(model, theta, u)),
        _ => Err(Error::Spectrum(
            "a Hermite kernel model is required here".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hermite_h, legendre_p};
    use crate::spectra::{family_polyproduct, SchoenbergFunction};
    use crate::temporal::BasisMode;
    use approx::assert_abs_diff_eq;

    fn single(k: usize, j: usize, kind: SpectrumKind) -> PowerSpectrum {
        let mut v = vec![0.0; (k + 1) * (j + 1)];
        v[k * (j + 1) + j] = 1.0;
        PowerSpectrum::explicit(CoefficientMatrix::new(k, j, v).unwrap()).with_kind(kind)
    }

    #[test]
    fn single_modes() {
        let m = KernelModel::hermite(single(0, 0, SpectrumKind::Hermite), 3, 3).unwrap();
        assert_eq!(kernel_eval_hermite(&m, 1.1, -0.4).unwrap(), 1.0);
        let m = KernelModel::hermite(single(2, 2, SpectrumKind::Hermite), 3, 3).unwrap();
        let (th, u) = (0.8f64, 0.6);
        assert_abs_diff_eq!(
            kernel_eval(&m, th, u),
            hermite_h(2, u) * legendre_p(2, th.cos()).unwrap(),
            epsilon = 1e-15
        );
        let set = SchoenbergFunctionSet::new(
            2,
            vec![
                SchoenbergFunction::analytic(|_| 0.0),
                SchoenbergFunction::analytic(|_| 0.0),
                SchoenbergFunction::analytic(|u: f64| (-u * u).exp()),
            ],
        )
        .unwrap();
        let m = KernelModel::from_schoenberg(set, 10);
        assert_abs_diff_eq!(
            kernel_eval(&m, th, u),
            (-u * u).exp() * legendre_p(2, th.cos()).unwrap(),
            epsilon = 1e-15
        );
        assert!(kernel_eval_hermite(&m, th, u).is_err());
    }

    #[test]
    fn brute_force_double_sum() {
        let values: Vec<f64> = (0..25).map(|i| ((i * 7919) % 13) as f64 / 13.0).collect();
        let s = PowerSpectrum::explicit(CoefficientMatrix::new(4, 4, values).unwrap());
        for mode in [BasisMode::QuarterWave, BasisMode::Orthonormal] {
            let basis = TemporalBasis::new(mode, 2.0).unwrap();
            let m = KernelModel::angular(s.clone(), basis, 4, 4).unwrap();
            for &(th, u) in &[(0.0, 0.0), (0.3, 0.7), (2.9, -1.4)] {
                let mut want = 0.0;
                for j in 0..=4 {
                    for k in 0..=4 {
                        want += s.coeff(k, j)
                            * basis.covariance_factor(k, u)
                            * legendre_p(j, f64::cos(th)).unwrap();
                    }
                }
                assert_abs_diff_eq!(kernel_eval(&m, th, u), want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bounded_by_variance() {
        let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
        let basis = TemporalBasis::quarter_wave(1.0).unwrap();
        let m = KernelModel::angular(s, basis, 15, 15).unwrap();
        let c0 = kernel_eval(&m, 0.0, 0.0);
        for a in 0..=100 {
            for b in 0..=100 {
                let th = std::f64::consts::PI * a as f64 / 100.0;
                let u = -1.0 + 2.0 * b as f64 / 100.0;
                assert!(kernel_eval(&m, th, u).abs() <= c0 + 1e-9);
            }
        }
        assert!(m.is_even());
    }
}
