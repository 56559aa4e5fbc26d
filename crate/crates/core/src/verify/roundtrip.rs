use super::report::{Statistic, VerificationReport};
use crate::error::Result;
use crate::kernel::KernelModel;
use crate::specfun::QuadratureRule;
use crate::spectra::{schoenberg_from_kernel, SchoenbergFunctionSet};

/// Absolute agreement required between a Schoenberg function and its
/// re-extraction.
pub const ROUNDTRIP_TOLERANCE: f64 = 1e-9;

/// Builds the kernel of `set` up to degree `j_max`, re-extracts every
/// `phi_j` at each lag in `lags` by Legendre quadrature, and compares.
pub fn schoenberg_roundtrip(
    set: &SchoenbergFunctionSet,
    j_max: usize,
    rule: &QuadratureRule,
    lags: &[f64],
) -> Result<VerificationReport> {
    let d = set.d();
    let model = KernelModel::from_schoenberg(set.clone(), j_max);
    let psi = |x: f64, u: f64| model.eval_inner(x, u);
    let mut report = VerificationReport::new("schoenberg_roundtrip", lags.len(), Vec::new());
    let mut worst = 0.0f64;
    for j in 0..=model.j_max() {
        for &u in lags {
            let got = schoenberg_from_kernel(&psi, j, d, u, rule)?;
            let want = set.eval(j, u);
            worst = worst.max((got - want).abs());
            report.statistics.push(Statistic::within_abs(
                format!("phi.{j}@{u}"),
                got,
                want,
                ROUNDTRIP_TOLERANCE,
            ));
        }
    }
    report.note("d", d);
    report.note("J", model.j_max());
    report.note("nodes", rule.len());
    report.note("max_abs_error", worst);
    Ok(report)
}
