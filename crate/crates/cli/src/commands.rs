//! One function per subcommand. Resolution of the configuration into
//! library objects fails with exit status 2; failures after that are
//! runtime errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use stgrf::bounds::{
    error_bound_with, error_table, write_error_table_csv, TableFamily, TableScenario, XiChoice,
};
use stgrf::kernel::{kernel_grid, write_kernel_grid_csv, KernelModel};
use stgrf::simulator::{simulate, write_binary, write_csv, write_provenance, SphereTimeGrid};
use stgrf::specfun::{default_legendre_nodes, quadrature, QuadratureKind, SphereTimePoint};
use stgrf::spectra::{
    normalize_unit_variance, PowerSpectrum, SchoenbergFunctionSet, SpectrumDocument,
    VarianceConvention,
};
use stgrf::temporal::TemporalBasis;
use stgrf::verify::{
    cholesky_oracle_check, empirical_covariance, holder_ladder, holder_moment_check,
    schoenberg_roundtrip, MonteCarlo, VerificationReport,
};

use crate::bench::{bench, fibonacci_points, write_bench_csv};
use crate::config::{Command, RunConfig, VerifyCheck};
use crate::output::{emit, write_atomic};
use crate::CliError;

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Turns library errors raised while resolving the configuration into
/// configuration errors.
fn resolving<T>(field: &str, r: stgrf::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Config(format!("`{field}`: {e}")))
}

/// The spectrum named by the configuration, rescaled when a convention is
/// set on the command line, in the file, or in the spectrum document.
pub fn resolve_spectrum(
    cfg: &RunConfig,
) -> Result<(PowerSpectrum, Option<VarianceConvention>), CliError> {
    let spec = cfg
        .spectrum
        .as_deref()
        .ok_or_else(|| CliError::Config("`spectrum` is required".into()))?;
    let doc = if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec)
            .map_err(|e| CliError::Config(format!("`spectrum`: {spec}: {e}")))?;
        resolving("spectrum", SpectrumDocument::from_text(&text))?
    } else {
        resolving("spectrum", SpectrumDocument::from_short(spec))?
    };
    match cfg.convention.or(doc.convention) {
        Some(c) => {
            let n = resolving("convention", normalize_unit_variance(&doc.spectrum, c))?;
            Ok((n.spectrum, Some(c)))
        }
        None => Ok((doc.spectrum, None)),
    }
}

fn read_points(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("`points_file`: {}: {e}", path.display())))?;
    let mut pts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("colatitude") {
            continue;
        }
        let bad = || {
            CliError::Config(format!(
                "`points_file` line {}: expected `colatitude,longitude`",
                i + 1
            ))
        };
        let (a, b) = line.split_once(',').ok_or_else(bad)?;
        pts.push((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ));
    }
    Ok(pts)
}

pub fn resolve_grid(cfg: &RunConfig) -> Result<SphereTimeGrid, CliError> {
    let horizon = cfg.horizon();
    let grid = match &cfg.points_file {
        Some(p) => SphereTimeGrid::points(read_points(p)?, cfg.times.clone(), horizon),
        None => SphereTimeGrid::lat_lon(
            cfg.n_lat,
            cfg.n_lon,
            cfg.colatitude_rule,
            cfg.times.clone(),
            horizon,
        ),
    };
    resolving("grid", grid)
}

/// `<path>` with `suffix` appended to the file name.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Runs the configured command and returns its one-line summary.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    let start = Instant::now();
    let what = match cfg.command {
        Command::Simulate => run_simulate(cfg)?,
        Command::Bound => run_bound(cfg)?,
        Command::Table => run_table(cfg)?,
        Command::Verify => run_verify(cfg)?,
        Command::Bench => run_bench(cfg)?,
        Command::KernelGrid => run_kernel_grid(cfg)?,
    };
    Ok(format!(
        "{}: {what} in {:.3} s",
        cfg.command,
        start.elapsed().as_secs_f64()
    ))
}

fn run_simulate(cfg: &RunConfig) -> Result<String, CliError> {
    let (spectrum, convention) = resolve_spectrum(cfg)?;
    let grid = resolve_grid(cfg)?;
    let (j, k) = (cfg.j_max()?, cfg.k_max()?);
    let output = cfg
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from("realization.csv"));
    let provenance = cfg
        .provenance
        .clone()
        .unwrap_or_else(|| sibling(&output, ".provenance"));

    let mut r = simulate(&spectrum, &grid, j, k, cfg.seed, cfg.basis)?;
    if let Some(c) = convention {
        r.provenance = r.provenance.with_convention(c);
    }
    write_atomic(&output, |w| Ok(write_csv(&r, w)?))?;
    write_atomic(&provenance, |w| {
        write_provenance(&r, w)?;
        writeln!(w, "[config]").map_err(io)?;
        w.write_all(cfg.to_flat_text().as_bytes()).map_err(io)
    })?;
    if let Some(b) = &cfg.binary {
        write_atomic(b, |w| Ok(write_binary(&r, w)?))?;
    }
    Ok(format!(
        "{} values (J={j}, K={k}, seed={}) -> {}",
        r.values.len(),
        cfg.seed,
        output.display()
    ))
}

fn run_bound(cfg: &RunConfig) -> Result<String, CliError> {
    let (spectrum, _) = resolve_spectrum(cfg)?;
    let (j, k) = (cfg.j_max()?, cfg.k_max()?);
    let b = error_bound_with(&spectrum, j, k, cfg.epsilon, cfg.tail)?;
    emit(cfg.output.as_deref(), |w| {
        let text = format!(
            "J = {}\nK = {}\ntail = {}\nepsilon = {}\nP = {}\nP_lo = {}\nP_hi = {}\nQ = {}\nQ_lo = {}\nQ_hi = {}\nbound_sq = {}\nbound = {}\nbracket_width = {}\nexceedance_probability = {}\n",
            b.j_max, b.k_max, b.tail, b.epsilon, b.p.value, b.p.lo, b.p.hi, b.q.value, b.q.lo, b.q.hi,
            b.bound_sq, b.bound, b.bracket_width(), b.exceedance_probability
        );
        w.write_all(text.as_bytes()).map_err(io)
    })?;
    Ok(format!(
        "bound {} at probability {}",
        b.bound, b.exceedance_probability
    ))
}

fn run_table(cfg: &RunConfig) -> Result<String, CliError> {
    let spec = cfg
        .spectrum
        .as_deref()
        .ok_or_else(|| CliError::Config("`spectrum` is required".into()))?;
    let family: TableFamily = resolving("spectrum", spec.parse())?;
    if cfg.scenarios.is_empty() {
        return Err(CliError::Config("`scenarios` is required".into()));
    }
    if let Some(f) = &cfg.fit {
        if f.targets.len() != cfg.scenarios.len() {
            return Err(CliError::Config(format!(
                "`fit`: {} targets for {} scenarios",
                f.targets.len(),
                cfg.scenarios.len()
            )));
        }
    }
    let scenarios = cfg
        .scenarios
        .iter()
        .enumerate()
        .map(|(i, text)| {
            let label = ((b'a' + (i % 26) as u8) as char).to_string();
            let xi = match &cfg.fit {
                Some(f) => XiChoice::Fitted {
                    j: f.j,
                    k: f.k,
                    target: f.targets[i],
                },
                None => XiChoice::Convention(cfg.convention.unwrap_or_default()),
            };
            resolving("scenarios", TableScenario::parse(&label, text, xi))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cells = error_table(family, &scenarios, &cfg.j, &cfg.k, cfg.epsilon, cfg.tail)?;
    emit(cfg.output.as_deref(), |w| {
        Ok(write_error_table_csv(&cells, w)?)
    })?;
    Ok(format!(
        "{} cells for {} scenarios",
        cells.len(),
        scenarios.len()
    ))
}

/// Twelve space-time pairs spanning small and large angles and lags.
pub fn default_pairs(horizon: f64) -> Result<Vec<(SphereTimePoint, SphereTimePoint)>, CliError> {
    let h = horizon;
    let raw = [
        ((0.5, 0.0, 0.0), (0.5, 0.0, 0.0)),
        ((1.2, 2.0, 0.5 * h), (1.2, 2.0, 0.5 * h)),
        ((0.5, 0.0, 0.0), (0.6, 0.1, 0.0)),
        ((0.5, 0.0, 0.0), (0.9, 0.4, 0.1 * h)),
        ((1.0, 1.0, 0.0), (1.3, 1.5, 0.3 * h)),
        ((2.0, 5.0, h), (1.0, 1.0, 0.2 * h)),
        ((0.3, 0.0, 0.0), (2.8, 3.1, 0.0)),
        ((1.5, 0.0, 0.25 * h), (1.5, 1.5, 0.25 * h)),
        ((0.1, 0.0, 0.0), (0.1, 0.0, h)),
        ((2.5, 4.0, 0.6 * h), (2.3, 4.2, 0.7 * h)),
        ((1.0, 3.0, 0.0), (1.1, 3.0, 0.05 * h)),
        ((3.0, 6.0, 0.9 * h), (0.2, 1.0, 0.4 * h)),
    ];
    raw.iter()
        .map(|&(a, b)| {
            Ok((
                resolving("grid", SphereTimePoint::new(a.0, a.1, a.2))?,
                resolving("grid", SphereTimePoint::new(b.0, b.1, b.2))?,
            ))
        })
        .collect()
}

/// Twenty Fibonacci points spread over two time slices.
pub fn default_oracle_points(horizon: f64) -> Result<Vec<SphereTimePoint>, CliError> {
    fibonacci_points(20)
        .into_iter()
        .enumerate()
        .map(|(i, (c, l))| {
            resolving(
                "grid",
                SphereTimePoint::new(c, l, if i % 2 == 0 { 0.0 } else { 0.5 * horizon }),
            )
        })
        .collect()
}

fn run_verify(cfg: &RunConfig) -> Result<String, CliError> {
    let (spectrum, _) = resolve_spectrum(cfg)?;
    let (j, k) = (cfg.j_max()?, cfg.k_max()?);
    let horizon = cfg.horizon();
    let mc = MonteCarlo {
        mode: cfg.basis,
        horizon,
        ..MonteCarlo::new(j, k, cfg.n_reps, cfg.seed)
    };
    let report: VerificationReport = match cfg.check {
        VerifyCheck::Covariance => {
            empirical_covariance(&spectrum, &default_pairs(horizon)?, &mc, 4.0)?
        }
        VerifyCheck::Cholesky => {
            cholesky_oracle_check(&spectrum, &default_oracle_points(horizon)?, &mc, 4.0)?
        }
        VerifyCheck::Holder => {
            let t0 = 0.0;
            let ladder = resolving("grid", holder_ladder(1.0, t0, &[0.5, 0.25, 0.125, 0.0625]))?;
            let mc = MonteCarlo {
                horizon: horizon.max(0.5),
                ..mc
            };
            holder_moment_check(&spectrum, 1, 1.0, &ladder, &mc, 4.0, 5.0, 0.3)?
        }
        VerifyCheck::Roundtrip => {
            let basis = TemporalBasis::new(cfg.basis, horizon)?;
            let set = SchoenbergFunctionSet::from_spectrum(&spectrum, basis, j, k)?;
            let rule = quadrature(QuadratureKind::GaussLegendre, default_legendre_nodes(j))?;
            schoenberg_roundtrip(&set, j, &rule, &cfg.times)?
        }
    };
    emit(cfg.output.as_deref(), |w| {
        w.write_all(report.to_key_value().as_bytes()).map_err(io)
    })?;
    if let Some(out) = &cfg.output {
        write_atomic(&sibling(out, ".csv"), |w| {
            w.write_all(report.to_csv().as_bytes()).map_err(io)
        })?;
    }
    let verdict = if report.pass() { "PASS" } else { "FAIL" };
    Ok(format!("{} {verdict}", report.test))
}

fn run_bench(cfg: &RunConfig) -> Result<String, CliError> {
    let spectrum = if cfg.spectrum.is_some() {
        resolve_spectrum(cfg)?.0
    } else {
        stgrf::spectra::family_polyproduct(1.0, 3.0, 2.0)?
    };
    let rows = bench(
        &spectrum,
        &cfg.sizes,
        cfg.j_max()?,
        cfg.k_max()?,
        cfg.repetitions,
        cfg.seed,
    )?;
    emit(cfg.output.as_deref(), |w| {
        write_bench_csv(&rows, w).map_err(io)
    })?;
    Ok(format!("{} sizes", rows.len()))
}

fn run_kernel_grid(cfg: &RunConfig) -> Result<String, CliError> {
    let (spectrum, _) = resolve_spectrum(cfg)?;
    if cfg.n_theta < 2 || cfg.n_u < 2 {
        return Err(CliError::Config(
            "`n_theta` and `n_u` must be at least 2".into(),
        ));
    }
    let basis = TemporalBasis::new(cfg.basis, cfg.horizon())?;
    let model = KernelModel::angular(spectrum, basis, cfg.j_max()?, cfg.k_max()?)?;
    let thetas: Vec<f64> = (0..cfg.n_theta)
        .map(|i| std::f64::consts::PI * i as f64 / (cfg.n_theta - 1) as f64)
        .collect();
    let lags: Vec<f64> = (0..cfg.n_u)
        .map(|i| cfg.max_lag * i as f64 / (cfg.n_u - 1) as f64)
        .collect();
    let rows = kernel_grid(&model, &thetas, &lags);
    emit(cfg.output.as_deref(), |w| {
        write_kernel_grid_csv(&rows, w).map_err(io)
    })?;
    Ok(format!("{} kernel values", rows.len()))
}
