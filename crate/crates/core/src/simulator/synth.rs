use std::f64::consts::SQRT_2;
use std::time::Instant;

use rayon::prelude::*;

use super::draw::{a_index, b_index, draw_coefficients, CoefficientDraw};
use super::grid::{SpatialLayout, SphereTimeGrid};
use crate::error::Result;
use crate::specfun::ScaledLegendreTable;
use crate::spectra::{PowerSpectrum, SpectrumDocument, VarianceConvention};
use crate::temporal::{BasisMode, TemporalBasis};

/// Everything needed to reproduce a realization.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub seed: u64,
    pub j_max: usize,
    pub k_max: usize,
    pub spectrum: SpectrumDocument,
    pub basis_mode: BasisMode,
    pub horizon: f64,
    /// Wall-clock seconds of the producing call.
    pub duration_seconds: f64,
}

impl Provenance {
    /// Records the convention that produced the spectrum scale.
    pub fn with_convention(mut self, convention: VarianceConvention) -> Self {
        self.spectrum.convention = Some(convention);
        self
    }
}

/// Field values over a grid, laid out `[time][point]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub grid: SphereTimeGrid,
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl Realization {
    /// Value at spatial point `i` and time index `t`.
    pub fn value(&self, i: usize, t: usize) -> f64 {
        self.values[t * self.grid.n_points() + i]
    }

    /// The slice of values at time index `t`.
    pub fn at_time(&self, t: usize) -> &[f64] {
        let n = self.grid.n_points();
        &self.values[t * n..(t + 1) * n]
    }
}

/// Per-time mode sums `C_{j,m}(t)` and `S_{j,m}(t)`; `k` runs innermost.
struct ModeSums {
    c: Vec<f64>,
    s: Vec<f64>,
}

fn mode_sums(draw: &CoefficientDraw, basis: &TemporalBasis, t: f64) -> ModeSums {
    let (jm, km) = (draw.j_max(), draw.k_max());
    let sqrt_a: Vec<f64> = (0..=km)
        .flat_map(|k| (0..=jm).map(move |j| (k, j)))
        .map(|(k, j)| draw.spectrum().coeff(k, j).sqrt())
        .collect();
    let tau: Vec<(f64, f64)> = (0..=km).map(|k| basis.eval_unchecked(k, t)).collect();
    let mut c = vec![0.0; a_index(jm + 1, 0)];
    let mut s = vec![0.0; jm * (jm + 1) / 2];
    for j in 0..=jm {
        for m in 0..=j {
            let mut acc_c = 0.0;
            let mut acc_s = 0.0;
            for k in 0..=km {
                let w = sqrt_a[k * (jm + 1) + j];
                if w == 0.0 {
                    continue;
                }
                let (tc, ts) = tau[k];
                let (mut ca, mut sa) = (draw.a1(k, j, m) * tc, 0.0);
                if m >= 1 {
                    sa = draw.b1(k, j, m) * tc;
                }
                if k >= 1 {
                    ca += draw.a2(k, j, m) * ts;
                    if m >= 1 {
                        sa += draw.b2(k, j, m) * ts;
                    }
                }
                acc_c += w * ca;
                acc_s += w * sa;
            }
            c[a_index(j, m)] = acc_c;
            if m >= 1 {
                s[b_index(j, m)] = acc_s;
            }
        }
    }
    ModeSums { c, s }
}

/// `(cos m b, sin m b)` for `m = 0..=j_max`, by complex rotation.
fn trig_table(beta2: f64, j_max: usize, out: &mut Vec<(f64, f64)>) {
    out.clear();
    let (s1, c1) = beta2.sin_cos();
    let (mut c, mut s) = (1.0, 0.0);
    for m in 0..=j_max {
        if m > 0 && m % 32 == 0 {
            // restart to keep the recurrence error from growing with m
            let (sm, cm) = (m as f64 * beta2).sin_cos();
            c = cm;
            s = sm;
        }
        out.push((c, s));
        let next_c = c * c1 - s * s1;
        s = s * c1 + c * s1;
        c = next_c;
    }
}

fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Field value at one point from its Legendre table and trig factors.
fn point_value(
    table: &ScaledLegendreTable,
    trig: &[(f64, f64)],
    sums: &ModeSums,
    partials: &mut Vec<f64>,
) -> f64 {
    let j_max = table.max_degree();
    partials.clear();
    for j in 0..=j_max {
        let row = table.row(j);
        let mut inner = 0.0;
        for m in 1..=j {
            let (cm, sm) = trig[m];
            inner += row[m] * (cm * sums.c[a_index(j, m)] + sm * sums.s[b_index(j, m)]);
        }
        partials.push(row[0] * sums.c[a_index(j, 0)] + SQRT_2 * inner);
    }
    pairwise_sum(partials)
}

/// Points handled per parallel task in point-list layouts.
const POINT_CHUNK: usize = 64;

fn synthesize_values(
    draw: &CoefficientDraw,
    grid: &SphereTimeGrid,
    basis: &TemporalBasis,
    parallel: bool,
) -> Result<Vec<f64>> {
    let j_max = draw.j_max();
    let n = grid.n_points();
    let sums: Vec<ModeSums> = grid
        .times()
        .iter()
        .map(|&t| mode_sums(draw, basis, t))
        .collect();
    let mut values = vec![0.0; n * grid.times().len()];
    match grid.layout() {
        SpatialLayout::LatLon {
            colatitudes, n_lon, ..
        } => {
            let n_lat = colatitudes.len();
            let trig: Vec<Vec<(f64, f64)>> = (0..*n_lon)
                .map(|l| {
                    let mut v = Vec::new();
                    trig_table(grid.point(l).1, j_max, &mut v);
                    v
                })
                .collect();
            let ring = |(c, out): (usize, &mut [f64])| -> Result<()> {
                let (t, r) = (c / n_lat, c % n_lat);
                let table = ScaledLegendreTable::new(j_max, colatitudes[r].cos())?;
                let mut partials = Vec::with_capacity(j_max + 1);
                for (l, v) in out.iter_mut().enumerate() {
                    *v = point_value(&table, &trig[l], &sums[t], &mut partials);
                }
                Ok(())
            };
            if parallel {
                values
                    .par_chunks_mut(*n_lon)
                    .enumerate()
                    .try_for_each(ring)?;
            } else {
                values.chunks_mut(*n_lon).enumerate().try_for_each(ring)?;
            }
        }
        SpatialLayout::Points(points) => {
            let chunks_per_time = n.div_ceil(POINT_CHUNK);
            let chunk = |(c, out): (usize, &mut [f64])| -> Result<()> {
                let (t, first) = (c / chunks_per_time, (c % chunks_per_time) * POINT_CHUNK);
                let mut trig = Vec::with_capacity(j_max + 1);
                let mut partials = Vec::with_capacity(j_max + 1);
                for (i, v) in out.iter_mut().enumerate() {
                    let (b1, b2) = points[first + i];
                    let table = ScaledLegendreTable::new(j_max, b1.cos())?;
                    trig_table(b2, j_max, &mut trig);
                    *v = point_value(&table, &trig, &sums[t], &mut partials);
                }
                Ok(())
            };
            // chunk boundaries must not straddle time slices
            let mut slices: Vec<&mut [f64]> = Vec::new();
            for time_slice in values.chunks_mut(n) {
                slices.extend(time_slice.chunks_mut(POINT_CHUNK));
            }
            if parallel {
                slices.into_par_iter().enumerate().try_for_each(chunk)?;
            } else {
                slices.into_iter().enumerate().try_for_each(chunk)?;
            }
        }
    }
    Ok(values)
}

fn realize(
    draw: &CoefficientDraw,
    grid: &SphereTimeGrid,
    mode: BasisMode,
    parallel: bool,
) -> Result<Realization> {
    let start = Instant::now();
    let basis = TemporalBasis::new(mode, grid.horizon())?;
    let values = synthesize_values(draw, grid, &basis, parallel)?;
    Ok(Realization {
        grid: grid.clone(),
        values,
        provenance: Provenance {
            seed: draw.seed(),
            j_max: draw.j_max(),
            k_max: draw.k_max(),
            spectrum: SpectrumDocument::new(draw.spectrum().clone()),
            basis_mode: mode,
            horizon: grid.horizon(),
            duration_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

/// Evaluates the truncated expansion of `draw` on `grid`, in parallel over
/// rings or point chunks. The result is bit-identical to
/// [`synthesize_serial`].
pub fn synthesize(
    draw: &CoefficientDraw,
    grid: &SphereTimeGrid,
    mode: BasisMode,
) -> Result<Realization> {
    realize(draw, grid, mode, true)
}

/// Single-threaded [`synthesize`].
pub fn synthesize_serial(
    draw: &CoefficientDraw,
    grid: &SphereTimeGrid,
    mode: BasisMode,
) -> Result<Realization> {
    realize(draw, grid, mode, false)
}

/// [`draw_coefficients`] followed by [`synthesize`]; the recorded duration
/// covers both.
///
/// ```
/// use stgrf::simulator::{simulate, SphereTimeGrid, ColatitudeRule};
/// use stgrf::spectra::family_polyproduct;
/// use stgrf::temporal::BasisMode;
/// let s = family_polyproduct(0.3, 3.0, 2.0).unwrap();
/// let g = SphereTimeGrid::lat_lon(8, 16, ColatitudeRule::Gauss, vec![0.0, 1.0], 1.0).unwrap();
/// let r = simulate(&s, &g, 10, 10, 7, BasisMode::QuarterWave).unwrap();
/// assert_eq!(r.values.len(), 8 * 16 * 2);
/// ```
pub fn simulate(
    spectrum: &PowerSpectrum,
    grid: &SphereTimeGrid,
    j_max: usize,
    k_max: usize,
    seed: u64,
    mode: BasisMode,
) -> Result<Realization> {
    let start = Instant::now();
    let draw = draw_coefficients(spectrum, j_max, k_max, seed)?;
    let mut r = synthesize(&draw, grid, mode)?;
    r.provenance.duration_seconds = start.elapsed().as_secs_f64();
    Ok(r)
}
