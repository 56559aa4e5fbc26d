//! Holder and weighted-Sobolev diagnostics.
//!
//! Weighted sums use `max(i, 1)^p` for index weights, so the `i = 0` modes
//! carry weight one. Unspecified absolute constants are set to one and
//! recorded in each report.

use std::f64::consts::PI;

use super::model::{kernel_eval, KernelModel};
use crate::error::{Error, Result};
use crate::series::Bracketed;
use crate::specfun::{hermite_h, QuadratureRule};
use crate::spectra::sums::{converges, weighted_sum};
use crate::spectra::{
    check_delta, check_holder_hypothesis, hermite_coeffs, require_hermite, schoenberg_from_kernel,
    IndexRange, PowerSpectrum, Weight,
};

/// `C_delta = c * sum alpha_{k,j} sqrt(2j+1) k^{delta/8} (j(j+1))^{delta/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HolderConstant {
    pub delta: f64,
    /// `None` when the sum diverges.
    pub value: Option<Bracketed>,
    /// The absolute constant `c`, fixed to one.
    pub c: f64,
    pub hypothesis_pass: bool,
}

/// Evaluates `C_delta` with `c = 1`.
///
/// The `j`-weight grows like `j^{1/2 + delta}`, faster than the hypothesis
/// weight `j^{(1 + delta)/2}`, so the constant can diverge on spectra that
/// pass the hypothesis; that is reported as `value = None`.
pub fn holder_constant(spectrum: &PowerSpectrum, delta: f64) -> Result<HolderConstant> {
    let hypothesis = check_holder_hypothesis(spectrum, delta)?;
    let wj = Weight::HolderDegree(delta);
    let wk = Weight::IndexPow(delta / 8.0);
    let value = if hypothesis.pass && converges(spectrum, 1, wj, wk) {
        match weighted_sum(spectrum, 1, IndexRange::all(), IndexRange::all(), wj, wk) {
            Ok(b) => Some(b),
            Err(Error::Divergent(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(HolderConstant {
        delta,
        value,
        c: 1.0,
        hypothesis_pass: hypothesis.pass,
    })
}

/// Outcome of [`holder_kernel_bound_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct HolderBoundReport {
    pub delta: f64,
    /// Grid points examined, excluding the origin.
    pub samples: usize,
    /// `max |psi(0,0) - psi(theta,u)| / rho^delta`.
    pub max_ratio: f64,
    /// Where the maximum was attained.
    pub argmax: (f64, f64),
    /// `C_delta` with `c = 1`, when the model has a Hermite spectrum and the
    /// sum converges.
    pub constant: Option<f64>,
    pub c: f64,
    /// The ratio is finite on the grid.
    pub bounded: bool,
    /// `max_ratio <= C_delta`, when the constant is available.
    pub within_constant: Option<bool>,
}

/// Samples `(theta, u)` on an `n_theta x n_u` grid of `[0, pi] x [-1, 1]`.
pub fn holder_kernel_bound_check(
    model: &KernelModel,
    delta: f64,
    (n_theta, n_u): (usize, usize),
) -> Result<HolderBoundReport> {
    check_delta(delta)?;
    if n_theta < 2 || n_u < 2 {
        return Err(Error::Grid("need at least 2 samples per axis".into()));
    }
    let at0 = kernel_eval(model, 0.0, 0.0);
    let mut max_ratio = 0.0f64;
    let mut argmax = (0.0, 0.0);
    let mut samples = 0;
    for a in 0..n_theta {
        let theta = PI * a as f64 / (n_theta - 1) as f64;
        for b in 0..n_u {
            let u = -1.0 + 2.0 * b as f64 / (n_u - 1) as f64;
            let rho = theta.hypot(u);
            if rho == 0.0 {
                continue;
            }
            samples += 1;
            let ratio = (at0 - kernel_eval(model, theta, u)).abs() / rho.powf(delta);
            if ratio > max_ratio {
                max_ratio = ratio;
                argmax = (theta, u);
            }
        }
    }
    let constant = match model.spectrum() {
        Some(s) if require_hermite(s).is_ok() => holder_constant(s, delta)?.value.map(|b| b.value),
        _ => None,
    };
    Ok(HolderBoundReport {
        delta,
        samples,
        max_ratio,
        argmax,
        constant,
        c: 1.0,
        bounded: max_ratio.is_finite(),
        within_constant: constant.map(|c| max_ratio <= c * (1.0 + 1e-12)),
    })
}

/// Which weighted bi-sequence norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SobolevMode {
    /// `sum b^2 k^eta j^{2 eta}`.
    #[default]
    Hermite,
    /// `sum b^2 j^{2 eta}`: no smoothness asked in time.
    TimeFlat,
}

/// `sum b_{k,j}^2 w_k w_j`; `None` when divergent.
///
/// ```
/// use stgrf::kernel::{weighted_sobolev_norm, SobolevMode};
/// use stgrf::spectra::sequence_polyproduct;
/// let b = sequence_polyproduct(1.0, 1.0, 1.0).unwrap();
/// assert!(weighted_sobolev_norm(&b, 1.0, SobolevMode::Hermite).unwrap().is_none());
/// ```
pub fn weighted_sobolev_norm(
    b: &PowerSpectrum,
    eta: f64,
    mode: SobolevMode,
) -> Result<Option<Bracketed>> {
    if !(eta >= 0.0 && eta.is_finite()) {
        return Err(Error::Domain {
            name: "eta",
            value: eta,
            expected: ">= 0",
        });
    }
    let (wj, wk) = sobolev_weights(eta, mode);
    if !converges(b, 2, wj, wk) {
        return Ok(None);
    }
    match weighted_sum(b, 2, IndexRange::all(), IndexRange::all(), wj, wk) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Divergent(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn sobolev_weights(eta: f64, mode: SobolevMode) -> (Weight, Weight) {
    let wk = match mode {
        SobolevMode::Hermite => Weight::IndexPow(eta),
        SobolevMode::TimeFlat => Weight::One,
    };
    (Weight::IndexPow(2.0 * eta), wk)
}

/// Upper end of the smoothness search.
pub const SMOOTHNESS_CEILING: f64 = 20.0;

/// Estimated `sup { eta : ||b||_{W^eta} < inf }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothnessIndex {
    /// The supremum lies in `[lo, hi]`.
    Bracket { lo: f64, hi: f64 },
    /// Finite at [`SMOOTHNESS_CEILING`].
    AtLeast(f64),
}

/// Bisection on `eta` using the analytic convergence test.
///
/// ```
/// use stgrf::kernel::{smoothness_index, SmoothnessIndex};
/// use stgrf::spectra::family_polyproduct;
/// let b = family_polyproduct(1.0, 3.0, 2.0).unwrap();
/// let SmoothnessIndex::Bracket { lo, hi } = smoothness_index(&b) else { panic!() };
/// assert!(lo <= 2.5 && 2.5 <= hi && hi - lo <= 0.05);
/// ```
pub fn smoothness_index(b: &PowerSpectrum) -> SmoothnessIndex {
    let finite = |eta: f64| {
        let (wj, wk) = sobolev_weights(eta, SobolevMode::Hermite);
        converges(b, 2, wj, wk)
    };
    if finite(SMOOTHNESS_CEILING) {
        return SmoothnessIndex::AtLeast(SMOOTHNESS_CEILING);
    }
    if !finite(0.0) {
        return SmoothnessIndex::Bracket { lo: 0.0, hi: 0.0 };
    }
    let (mut lo, mut hi) = (0.0, SMOOTHNESS_CEILING);
    while hi - lo > 0.01 {
        let mid = 0.5 * (lo + hi);
        if finite(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    SmoothnessIndex::Bracket { lo, hi }
}

/// Signed coefficients `b_{k,j}` in the orthonormal Hermite x orthonormal
/// Legendre basis, `(k_max + 1) x (j_max + 1)` row-major in `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedCoefficients {
    k_max: usize,
    j_max: usize,
    values: Vec<f64>,
}

impl SignedCoefficients {
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.values[k * (self.j_max + 1) + j]
    }
}

/// Projects `f(x, t)` onto `H_k(t) p_j(x)`, `p_j = sqrt((2j+1)/2) P_j`, via
/// Schoenberg extraction in `x` and Hermite projection in `t`.
pub fn hermite_legendre_coefficients<F>(
    f: &F,
    j_max: usize,
    k_max: usize,
    legendre: &QuadratureRule,
    hermite: &QuadratureRule,
) -> Result<SignedCoefficients>
where
    F: Fn(f64, f64) -> f64,
{
    let mut values = vec![0.0; (k_max + 1) * (j_max + 1)];
    for j in 0..=j_max {
        let phi = |t: f64| schoenberg_from_kernel(f, j, 2, t, legendre).unwrap_or(f64::NAN);
        // surface the guard errors before projecting
        schoenberg_from_kernel(f, j, 2, 0.0, legendre)?;
        let alpha = hermite_coeffs(&phi, k_max, hermite)?;
        let to_orthonormal = (2.0 / (2 * j + 1) as f64).sqrt();
        for (k, a) in alpha.iter().enumerate() {
            values[k * (j_max + 1) + j] = a * to_orthonormal;
        }
    }
    Ok(SignedCoefficients {
        k_max,
        j_max,
        values,
    })
}

/// Weights of the order-`n` seminorm on the coefficient side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeminormWeights {
    /// `k!/(k-n)! * (j+n)!/(j-n)!`: the exact identity for the integral.
    Exact,
    /// `k^n j^{2n}`: the asymptotically equivalent weights of the norm
    /// equivalence.
    Literal,
}

fn falling(from: usize, n: usize) -> f64 {
    (0..n).map(|i| (from - i) as f64).product()
}

/// `sum_{k,j} b_{k,j}^2 w_k w_j` for the order-`n` seminorm.
pub fn seminorm_coefficient_sum(b: &SignedCoefficients, n: usize, weights: SeminormWeights) -> f64 {
    let mut total = 0.0;
    for k in 0..=b.k_max {
        for j in 0..=b.j_max {
            let w = match weights {
                SeminormWeights::Exact => {
                    if k < n || j < n {
                        0.0
                    } else {
                        falling(k, n) * falling(j + n, 2 * n)
                    }
                }
                SeminormWeights::Literal => {
                    (k as f64).powi(n as i32) * (j as f64).powi(2 * n as i32)
                }
            };
            total += b.get(k, j).powi(2) * w;
        }
    }
    total
}

/// Central difference `d^n/dh^n` of `g` at zero with step `h`.
fn central_difference<G: Fn(f64) -> f64>(g: G, n: usize, h: f64) -> f64 {
    let mut binom = 1.0;
    let mut total = 0.0;
    for i in 0..=n {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * binom * g((0.5 * n as f64 - i as f64) * h);
        binom = binom * (n - i) as f64 / (i + 1) as f64;
    }
    total / h.powi(n as i32)
}

/// `int_R int_{-1}^{1} (d_t^n d_x^n f)^2 (1 - x^2)^n dx dnu` by product
/// Gauss quadrature, with the mixed derivative from central differences.
pub fn seminorm_integral<F>(
    f: &F,
    n: usize,
    legendre: &QuadratureRule,
    hermite: &QuadratureRule,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    use crate::specfun::QuadratureKind;
    if legendre.kind() != QuadratureKind::GaussLegendre {
        return Err(Error::WrongRule {
            expected: "gauss-legendre",
        });
    }
    if hermite.kind() != QuadratureKind::GaussHermite {
        return Err(Error::WrongRule {
            expected: "gauss-hermite",
        });
    }
    let h = if n <= 1 { 1e-4 } else { 1e-2 };
    let mut total = 0.0;
    for (t, wt) in hermite.iter() {
        for (x, wx) in legendre.iter() {
            let d = central_difference(|dt| central_difference(|dx| f(x + dx, t + dt), n, h), n, h);
            total += wt * wx * d * d * (1.0 - x * x).powi(n as i32);
        }
    }
    Ok(total)
}

/// `sum_k b_k H_k(u)`: Hermite synthesis, used to check projections.
pub fn hermite_synthesis(coeffs: &[f64], u: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * hermite_h(k, u))
        .sum()
}
