use rayon::prelude::*;

use super::report::{Statistic, VerificationReport};
use crate::error::{Error, Result};
use crate::kernel::{kernel_eval, KernelModel};
use crate::simulator::rng::derive_seed;
use crate::simulator::{draw_coefficients, synthesize_serial, SphereTimeGrid};
use crate::specfun::{geodesic_distance, SphereTimePoint};
use crate::spectra::{check_holder_hypothesis, PowerSpectrum, SpectrumKind};
use crate::temporal::{BasisMode, TemporalBasis};

/// Settings shared by the Monte Carlo checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub j_max: usize,
    pub k_max: usize,
    pub n_reps: usize,
    /// Replication `r` uses `derive_seed(seed, r)`.
    pub seed: u64,
    pub mode: BasisMode,
    pub horizon: f64,
}

impl MonteCarlo {
    pub fn new(j_max: usize, k_max: usize, n_reps: usize, seed: u64) -> Self {
        Self {
            j_max,
            k_max,
            n_reps,
            seed,
            mode: BasisMode::QuarterWave,
            horizon: 1.0,
        }
    }

    pub(crate) fn truncated_kernel(&self, spectrum: &PowerSpectrum) -> Result<KernelModel> {
        let basis = TemporalBasis::new(self.mode, self.horizon)?;
        KernelModel::angular(spectrum.clone(), basis, self.j_max, self.k_max)
    }
}

/// Minimum replication count for covariance estimates.
pub const MIN_REPS: usize = 100;

/// Field values at `points` for each replication, `[rep][point]`.
///
/// Points are evaluated on the product of their distinct spatial locations
/// and distinct times.
pub fn sample_points(
    spectrum: &PowerSpectrum,
    points: &[SphereTimePoint],
    mc: &MonteCarlo,
) -> Result<Vec<Vec<f64>>> {
    let mut spatial: Vec<(f64, f64)> = Vec::new();
    let mut times: Vec<f64> = Vec::new();
    for p in points {
        let loc = (p.colatitude(), p.longitude());
        if !spatial.contains(&loc) {
            spatial.push(loc);
        }
        if !times.contains(&p.time()) {
            times.push(p.time());
        }
    }
    times.sort_by(f64::total_cmp);
    let n_sp = spatial.len();
    let index: Vec<usize> = points
        .iter()
        .map(|p| {
            let i = spatial
                .iter()
                .position(|&l| l == (p.colatitude(), p.longitude()))
                .unwrap();
            let t = times.iter().position(|&t| t == p.time()).unwrap();
            t * n_sp + i
        })
        .collect();
    let grid = SphereTimeGrid::points(spatial, times, mc.horizon)?;
    (0..mc.n_reps)
        .into_par_iter()
        .map(|rep| {
            let draw = draw_coefficients(
                spectrum,
                mc.j_max,
                mc.k_max,
                derive_seed(mc.seed, rep as u64),
            )?;
            let r = synthesize_serial(&draw, &grid, mc.mode)?;
            Ok(index.iter().map(|&i| r.values[i]).collect())
        })
        .collect()
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sample variance with `n - 1` in the denominator.
pub(crate) fn variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (x.len() - 1) as f64
}

/// Sample covariance and its standard error, from the spread of the centred
/// products.
pub(crate) fn covariance_with_se(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let (mx, my) = (mean(x), mean(y));
    let prods: Vec<f64> = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).collect();
    let cov = prods.iter().sum::<f64>() / (n - 1.0);
    (cov, (variance(&prods) / n).sqrt())
}

fn check_reps(n: usize) -> Result<()> {
    if n < MIN_REPS {
        return Err(Error::Config(format!(
            "n_reps = {n}: at least {MIN_REPS} required"
        )));
    }
    Ok(())
}

/// Sample covariance of `Z(p)` and `Z(q)` across replications for each pair,
/// against the truncated kernel at the pair's angle and lag. Each pair
/// passes within `n_se` standard errors; the report requires all of them
/// (adjust with [`VerificationReport::require`] on prefix `cov.`).
pub fn empirical_covariance(
    spectrum: &PowerSpectrum,
    pairs: &[(SphereTimePoint, SphereTimePoint)],
    mc: &MonteCarlo,
    n_se: f64,
) -> Result<VerificationReport> {
    check_reps(mc.n_reps)?;
    let model = mc.truncated_kernel(spectrum)?;
    let points: Vec<SphereTimePoint> = pairs.iter().flat_map(|&(p, q)| [p, q]).collect();
    let samples = sample_points(spectrum, &points, mc)?;
    let mut report = VerificationReport::new("empirical_covariance", mc.n_reps, vec![mc.seed]);
    for (i, (p, q)) in pairs.iter().enumerate() {
        let x: Vec<f64> = samples.iter().map(|s| s[2 * i]).collect();
        let y: Vec<f64> = samples.iter().map(|s| s[2 * i + 1]).collect();
        let (cov, se) = covariance_with_se(&x, &y);
        let d = geodesic_distance(p, q);
        let want = kernel_eval(&model, d.theta, p.time() - q.time());
        report.statistics.push(Statistic::within_se(
            format!("cov.{i}"),
            cov,
            want,
            se,
            n_se,
        ));
    }
    report.note("J", mc.j_max);
    report.note("K", mc.k_max);
    report.note("basis_mode", mc.mode);
    report.note("n_se", n_se);
    report.require("cov.", 1.0);
    Ok(report)
}

/// `(2p - 1)!!`, the `2p`-th moment of a standard normal.
fn double_factorial_odd(p: u32) -> f64 {
    (1..=p).map(|i| (2 * i - 1) as f64).product()
}

/// Pairs `((theta0, 0, t0), (theta0 + r/sqrt 2, 0, t0 + r/sqrt 2))` at
/// space-time distance `r` for each `r` in `rhos`.
pub fn holder_ladder(
    colatitude: f64,
    time: f64,
    rhos: &[f64],
) -> Result<Vec<(SphereTimePoint, SphereTimePoint)>> {
    rhos.iter()
        .map(|&r| {
            let h = r / std::f64::consts::SQRT_2;
            Ok((
                SphereTimePoint::new(colatitude, 0.0, time)?,
                SphereTimePoint::new(colatitude + h, 0.0, time + h)?,
            ))
        })
        .collect()
}

/// Estimates `E|Z(x,t) - Z(y,s)|^{2p}` along a ladder of pairs with
/// shrinking distance `rho` and compares each rung with the Gaussian value
/// `(2p-1)!! (2 (psi(0,0) - psi(theta,u)))^p` of the truncated kernel
/// (`n_se` standard errors). The log-log slope of the moments against `rho`
/// must reach `p delta - slope_slack`. For `p = 2` the ratio
/// `E d^4 / (E d^2)^2` is also compared with 3, within `ratio_n_se`.
///
/// The Holder hypothesis is checked on the coefficient array read as a
/// Hermite spectrum; failing it is a configuration error.
#[allow(clippy::too_many_arguments)]
pub fn holder_moment_check(
    spectrum: &PowerSpectrum,
    p: u32,
    delta: f64,
    ladder: &[(SphereTimePoint, SphereTimePoint)],
    mc: &MonteCarlo,
    n_se: f64,
    ratio_n_se: f64,
    slope_slack: f64,
) -> Result<VerificationReport> {
    check_reps(mc.n_reps)?;
    if p == 0 {
        return Err(Error::Config("moment order p must be at least 1".into()));
    }
    let hyp = check_holder_hypothesis(&spectrum.clone().with_kind(SpectrumKind::Hermite), delta)?;
    if !hyp.pass {
        return Err(Error::Config(format!(
            "Holder hypothesis fails for delta = {delta}"
        )));
    }
    let model = mc.truncated_kernel(spectrum)?;
    let psi0 = kernel_eval(&model, 0.0, 0.0);
    let points: Vec<SphereTimePoint> = ladder.iter().flat_map(|&(a, b)| [a, b]).collect();
    let samples = sample_points(spectrum, &points, mc)?;
    let mut report = VerificationReport::new("holder_moment_check", mc.n_reps, vec![mc.seed]);
    let (mut log_rho, mut log_m) = (Vec::new(), Vec::new());
    let mut degenerate = false;
    for (i, (a, b)) in ladder.iter().enumerate() {
        let dist = geodesic_distance(a, b);
        let diffs: Vec<f64> = samples.iter().map(|s| s[2 * i] - s[2 * i + 1]).collect();
        let pow: Vec<f64> = diffs.iter().map(|d| d.powi(2 * p as i32)).collect();
        let m = mean(&pow);
        let se = (variance(&pow) / pow.len() as f64).sqrt();
        let incr = 2.0 * (psi0 - kernel_eval(&model, dist.theta, a.time() - b.time()));
        let want = double_factorial_odd(p) * incr.max(0.0).powi(p as i32);
        let tag = format!("rho={}", dist.rho);
        if m == 0.0 && want.abs() < 1e-12 {
            // a constant field has no increments at all
            degenerate = true;
            report.statistics.push(Statistic::within_abs(
                format!("moment.{tag}"),
                m,
                want,
                1e-12,
            ));
            continue;
        }
        report.statistics.push(Statistic::within_se(
            format!("moment.{tag}"),
            m,
            want,
            se,
            n_se,
        ));
        log_rho.push(dist.rho.ln());
        log_m.push(m.ln());
        if p == 2 {
            let sq: Vec<f64> = diffs.iter().map(|d| d * d).collect();
            let (m2, m4) = (mean(&sq), m);
            let ratio = m4 / (m2 * m2);
            // delta method on (m4, m2)
            let (g4, g2) = (1.0 / (m2 * m2), -2.0 * m4 / (m2 * m2 * m2));
            let n = sq.len() as f64;
            let (c44, _) = covariance_with_se(&pow, &pow);
            let (c22, _) = covariance_with_se(&sq, &sq);
            let (c42, _) = covariance_with_se(&pow, &sq);
            let var = (g4 * g4 * c44 + g2 * g2 * c22 + 2.0 * g4 * g2 * c42) / n;
            report.statistics.push(Statistic::within_se(
                format!("ratio.{tag}"),
                ratio,
                3.0,
                var.sqrt(),
                ratio_n_se,
            ));
        }
    }
    if log_rho.len() >= 2 {
        let slope = ols_slope(&log_rho, &log_m);
        report.statistics.push(Statistic::at_least(
            "slope",
            slope,
            p as f64 * delta - slope_slack,
        ));
    }
    report.note("p", p);
    report.note("delta", delta);
    report.note("J", mc.j_max);
    report.note("K", mc.k_max);
    report.note("hypothesis_sum", hyp.sum.map_or(f64::INFINITY, |b| b.value));
    report.note("constant_field", degenerate);
    Ok(report)
}

fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
