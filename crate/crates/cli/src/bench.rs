//! Wall-clock scaling of simulation with the number of observations.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use stgrf::simulator::{simulate, SphereTimeGrid};
use stgrf::spectra::PowerSpectrum;
use stgrf::temporal::BasisMode;

use crate::CliError;

/// `n` nearly uniform points on the sphere: the Fibonacci lattice.
pub fn fibonacci_points(n: usize) -> Vec<(f64, f64)> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            (z.acos(), (golden * i as f64).rem_euclid(2.0 * PI))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n_points: usize,
    /// Median over repetitions.
    pub seconds: f64,
    /// `seconds / previous row's seconds`.
    pub ratio: Option<f64>,
}

/// Times `simulate` on `n` Fibonacci points at one time slice for each
/// size, reporting the median of `repetitions` runs.
pub fn bench(
    spectrum: &PowerSpectrum,
    sizes: &[usize],
    j_max: usize,
    k_max: usize,
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchRow>, CliError> {
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config(
            "`sizes` must be strictly ascending".into(),
        ));
    }
    if repetitions == 0 {
        return Err(CliError::Config("`repetitions` must be at least 1".into()));
    }
    let mut rows: Vec<BenchRow> = Vec::new();
    for &n in sizes {
        let grid = SphereTimeGrid::points(fibonacci_points(n), vec![1.0], 1.0)?;
        let mut times = Vec::with_capacity(repetitions);
        for rep in 0..repetitions {
            let start = Instant::now();
            let r = simulate(
                spectrum,
                &grid,
                j_max,
                k_max,
                seed.wrapping_add(rep as u64),
                BasisMode::QuarterWave,
            )?;
            times.push(start.elapsed().as_secs_f64());
            std::hint::black_box(r);
        }
        let seconds = median(&mut times);
        let ratio = rows.last().map(|p| seconds / p.seconds);
        rows.push(BenchRow {
            n_points: n,
            seconds,
            ratio,
        });
    }
    Ok(rows)
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Columns `n_points,median_seconds,ratio`; the first ratio is empty.
pub fn write_bench_csv(rows: &[BenchRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "n_points,median_seconds,ratio")?;
    for r in rows {
        let ratio = r.ratio.map(|x| x.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{}", r.n_points, r.seconds, ratio)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use stgrf::spectra::family_polyproduct;

    #[test]
    fn median_of_three_and_four() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn fibonacci_points_are_in_range() {
        let p = fibonacci_points(1000);
        assert!(p
            .iter()
            .all(|&(c, l)| (0.0..=PI).contains(&c) && (0.0..2.0 * PI).contains(&l)));
        let mean_z: f64 = p.iter().map(|(c, _)| c.cos()).sum::<f64>() / 1000.0;
        assert!(mean_z.abs() < 1e-12);
    }

    #[test]
    fn single_size_has_no_ratio() {
        let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
        let rows = bench(&s, &[50], 4, 4, 3, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].ratio, None);
        assert!(bench(&s, &[50, 40], 4, 4, 1, 1).is_err());
    }
}
