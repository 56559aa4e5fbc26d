use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use super::montecarlo::{covariance_with_se, mean, sample_points, variance, MonteCarlo, MIN_REPS};
use super::report::{Statistic, VerificationReport};
use crate::error::{Error, Result};
use crate::kernel::kernel_eval;
use crate::simulator::rng::{derive_seed, splitmix64, BlockStream};
use crate::specfun::{geodesic_distance, SphereTimePoint};
use crate::spectra::PowerSpectrum;

/// Largest grid the dense oracle accepts.
pub const MAX_ORACLE_POINTS: usize = 60;

/// Most negative eigenvalue tolerated in the kernel matrix.
pub const PSD_FLOOR: f64 = -1e-10;

/// Share of entries that must agree within tolerance, per comparison.
pub const ENTRY_PASS_FRACTION: f64 = 0.95;

/// Truncated kernel matrix over `points`.
pub fn kernel_matrix(
    spectrum: &PowerSpectrum,
    points: &[SphereTimePoint],
    mc: &MonteCarlo,
) -> Result<DMatrix<f64>> {
    let model = mc.truncated_kernel(spectrum)?;
    let n = points.len();
    let mut c = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..=a {
            let d = geodesic_distance(&points[a], &points[b]);
            let v = kernel_eval(&model, d.theta, points[a].time() - points[b].time());
            c[(a, b)] = v;
            c[(b, a)] = v;
        }
    }
    Ok(c)
}

/// A factor `L` with `L L^T = C`: Cholesky after a small diagonal jitter,
/// or the symmetric square root when the matrix is only semidefinite.
fn factor(c: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    let eig = SymmetricEigen::new(c.clone());
    let min_eig = eig.eigenvalues.min();
    if min_eig < PSD_FLOOR {
        return Err(Error::Config(format!(
            "kernel matrix is not positive semidefinite: eigenvalue {min_eig:e} < {PSD_FLOOR:e}"
        )));
    }
    let n = c.nrows();
    let jitter = 1e-13 * c.trace().abs() / n as f64;
    let shifted = c + DMatrix::identity(n, n) * jitter;
    if let Some(ch) = shifted.cholesky() {
        return Ok((ch.l(), min_eig));
    }
    let root = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    Ok((&eig.eigenvectors * DMatrix::from_diagonal(&root), min_eig))
}

/// Compares the spectral sampler with a dense factorization sampler of the
/// truncated kernel matrix on up to [`MAX_ORACLE_POINTS`] points.
///
/// Statistic groups, each needing [`ENTRY_PASS_FRACTION`] within `n_se`:
/// `mean.` both samplers' means against zero, `diff.` spectral against dense
/// covariance entries, `spectral.` and `dense.` each against the kernel.
pub fn cholesky_oracle_check(
    spectrum: &PowerSpectrum,
    points: &[SphereTimePoint],
    mc: &MonteCarlo,
    n_se: f64,
) -> Result<VerificationReport> {
    if points.is_empty() || points.len() > MAX_ORACLE_POINTS {
        return Err(Error::Config(format!(
            "oracle grid has {} points; 1..={MAX_ORACLE_POINTS} allowed",
            points.len()
        )));
    }
    if mc.n_reps < MIN_REPS {
        return Err(Error::Config(format!(
            "n_reps = {}: at least {MIN_REPS} required",
            mc.n_reps
        )));
    }
    let n = points.len();
    let c = kernel_matrix(spectrum, points, mc)?;
    let (l, min_eig) = factor(&c)?;
    let dense_seed = splitmix64(mc.seed ^ 0x0d3e_5e00_c401_e5c1);
    let dense: Vec<Vec<f64>> = (0..mc.n_reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = BlockStream::new(derive_seed(dense_seed, rep as u64), 0, 0);
            let z = DVector::from_fn(n, |_, _| rng.normal());
            (&l * z).iter().copied().collect()
        })
        .collect();
    let spectral = sample_points(spectrum, points, mc)?;
    let column = |s: &[Vec<f64>], a: usize| -> Vec<f64> { s.iter().map(|r| r[a]).collect() };

    let mut report = VerificationReport::new(
        "cholesky_oracle_check",
        mc.n_reps,
        vec![mc.seed, dense_seed],
    );
    let sp_cols: Vec<Vec<f64>> = (0..n).map(|a| column(&spectral, a)).collect();
    let de_cols: Vec<Vec<f64>> = (0..n).map(|a| column(&dense, a)).collect();
    for a in 0..n {
        for (tag, col) in [("spectral", &sp_cols[a]), ("dense", &de_cols[a])] {
            let se = (variance(col) / col.len() as f64).sqrt();
            report.statistics.push(Statistic::within_se(
                format!("mean.{tag}.{a}"),
                mean(col),
                0.0,
                se,
                n_se,
            ));
        }
    }
    let mut frob = 0.0;
    for a in 0..n {
        for b in a..n {
            let (cs, ses) = covariance_with_se(&sp_cols[a], &sp_cols[b]);
            let (cd, sed) = covariance_with_se(&de_cols[a], &de_cols[b]);
            let w = if a == b { 1.0 } else { 2.0 };
            frob += w * (cs - cd) * (cs - cd);
            let at = format!("{a},{b}");
            report.statistics.push(Statistic::within_se(
                format!("diff.{at}"),
                cs,
                cd,
                ses.hypot(sed),
                n_se,
            ));
            report.statistics.push(Statistic::within_se(
                format!("spectral.{at}"),
                cs,
                c[(a, b)],
                ses,
                n_se,
            ));
            report.statistics.push(Statistic::within_se(
                format!("dense.{at}"),
                cd,
                c[(a, b)],
                sed,
                n_se,
            ));
        }
    }
    for g in ["mean.", "diff.", "spectral.", "dense."] {
        report.require(g, ENTRY_PASS_FRACTION);
    }
    report.note("points", n);
    report.note("J", mc.j_max);
    report.note("K", mc.k_max);
    report.note("min_eigenvalue", min_eig);
    report.note("frobenius_distance", frob.sqrt());
    report.note("n_se", n_se);
    Ok(report)
}
