//! Weighted double sums `sum w_j(j) v_k(k) a_{k,j}^p` over index ranges.
//!
//! Product families separate into two 1D sums (Hurwitz zeta when
//! unweighted). Sum families go through the 2D bracket engine. Explicit
//! tables are summed directly.

use std::f64::consts::PI;

use super::spectrum::{PowerSpectrum, SpectrumSource};
use crate::error::{Error, Result};
use crate::series::{hurwitz_zeta, sum_1d, sum_2d, Bracketed, Convexity};

/// Per-index weight. Index-zero conventions use `max(i, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    One,
    /// `max(i, 1)^p`.
    IndexPow(f64),
    /// `2i + 1`.
    ModeCount,
    /// `c_i^2 = 4 pi / (2i + 1)`.
    LegendreNorm,
    /// `sqrt(2i + 1) * max(i (i + 1), 1)^{delta / 2}`.
    HolderDegree(f64),
    /// `first` at `i = 0` and `rest` elsewhere.
    Split {
        first: f64,
        rest: f64,
    },
}

impl Weight {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Weight::One => 1.0,
            Weight::IndexPow(p) => {
                if p == 0.0 {
                    1.0
                } else {
                    x.max(1.0).powf(p)
                }
            }
            Weight::ModeCount => 2.0 * x + 1.0,
            Weight::LegendreNorm => 4.0 * PI / (2.0 * x + 1.0),
            Weight::HolderDegree(delta) => {
                (2.0 * x + 1.0).sqrt() * (x * (x + 1.0)).max(1.0).powf(0.5 * delta)
            }
            Weight::Split { first, rest } => {
                if x < 0.5 {
                    first
                } else {
                    rest
                }
            }
        }
    }

    /// Exponent `g` with `w(i) ~ i^g` as `i -> inf`.
    pub fn growth(&self) -> f64 {
        match *self {
            Weight::One | Weight::Split { .. } => 0.0,
            Weight::IndexPow(p) => p,
            Weight::ModeCount => 1.0,
            Weight::LegendreNorm => -1.0,
            Weight::HolderDegree(delta) => 0.5 + delta,
        }
    }
}

/// Inclusive index range, possibly unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub start: usize,
    pub end: Option<usize>,
}

impl IndexRange {
    pub fn from(start: usize) -> Self {
        Self { start, end: None }
    }

    pub fn all() -> Self {
        Self::from(0)
    }

    /// `start..=end`; empty when `start > end`.
    pub fn between(start: usize, end: usize) -> Self {
        Self {
            start,
            end: Some(end),
        }
    }

    fn is_empty(&self) -> bool {
        matches!(self.end, Some(e) if e < self.start)
    }

    fn clip(&self, last: usize) -> Option<(usize, usize)> {
        let end = self.end.map_or(last, |e| e.min(last));
        (self.start <= end).then_some((self.start, end))
    }
}

/// Box edge used by the 2D engine beyond the range start.
const BOX: usize = 256;

/// Pure power-law in one index times a weight, for the product family.
fn product_axis(
    exponent: f64,
    range: IndexRange,
    weight: Weight,
    axis: &'static str,
) -> Result<Bracketed> {
    if range.is_empty() {
        return Ok(Bracketed::exact(0.0));
    }
    let f = |x: f64| weight.eval(x) * (1.0 + x).powf(-exponent);
    if let Some(end) = range.end {
        let v: f64 = (range.start..=end).rev().map(|i| f(i as f64)).sum();
        return Ok(Bracketed::exact(v));
    }
    let g = weight.growth();
    if exponent - g <= 1.0 {
        return Err(Error::Divergent(format!(
            "{axis}-sum with decay exponent {exponent} against weight growth {g}"
        )));
    }
    if let Weight::Split { first, rest } = weight {
        let tail = IndexRange::from(range.start.max(1));
        let mut total = product_axis(exponent, tail, Weight::One, axis)?.scale(rest);
        if range.start == 0 {
            total = total + Bracketed::exact(first);
        }
        return Ok(total);
    }
    if weight == Weight::One {
        return Ok(Bracketed::exact(hurwitz_zeta(
            exponent,
            1.0 + range.start as f64,
        )?));
    }
    // past this point x^g (1+x)^{-s} is decreasing and convex
    let margin = 8.0 * (g.abs() + exponent) / (exponent - g);
    let head = range.start.max(64).max(margin.ceil() as usize) + 64;
    sum_1d(&f, range.start, head, true)
}

struct SumFamilyConvexity {
    nu1: f64,
    nu2: f64,
    tau: f64,
    unweighted: bool,
}

impl Convexity for SumFamilyConvexity {
    // x -> (c + x^a)^{-t} is convex where x^a >= (a - 1) c / (t a + 1)
    fn in_j(&self, k: usize, from: usize) -> bool {
        let c = 1.0 + (k as f64).powf(self.nu2);
        let x = from as f64 - 0.5;
        self.unweighted && x.powf(self.nu1) >= (self.nu1 - 1.0) * c / (self.tau * self.nu1 + 1.0)
    }

    fn in_k(&self, j: usize, from: usize) -> bool {
        let c = 1.0 + (j as f64).powf(self.nu1);
        let y = from as f64 - 0.5;
        self.unweighted && y.powf(self.nu2) >= (self.nu2 - 1.0) * c / (self.tau * self.nu2 + 1.0)
    }
}

/// `sum_{k in kr, j in jr} wk(k) wj(j) a_{k,j}^power`, bracketed.
pub(crate) fn weighted_sum(
    spectrum: &PowerSpectrum,
    power: i32,
    jr: IndexRange,
    kr: IndexRange,
    wj: Weight,
    wk: Weight,
) -> Result<Bracketed> {
    let p = power as f64;
    let scale = spectrum.scale().powi(power);
    if jr.is_empty() || kr.is_empty() {
        return Ok(Bracketed::exact(0.0));
    }
    let raw = match spectrum.source() {
        SpectrumSource::Explicit(m) => {
            let (Some((j0, j1)), Some((k0, k1))) = (jr.clip(m.j_max()), kr.clip(m.k_max())) else {
                return Ok(Bracketed::exact(0.0));
            };
            let mut total = 0.0;
            for k in k0..=k1 {
                let vk = wk.eval(k as f64);
                let row = m.row(k);
                let s: f64 = (j0..=j1)
                    .map(|j| wj.eval(j as f64) * row[j].powi(power))
                    .sum();
                total += vk * s;
            }
            Bracketed::exact(total)
        }
        SpectrumSource::ProductFamily { nu1, nu2 } => {
            let sj = product_axis(p * nu1, jr, wj, "j")?;
            let sk = product_axis(p * nu2, kr, wk, "k")?;
            Bracketed {
                value: sj.value * sk.value,
                lo: sj.lo * sk.lo,
                hi: sj.hi * sk.hi,
            }
        }
        &SpectrumSource::SumFamily { nu1, nu2, tau } => {
            let t = p * tau;
            let f = |k: f64, j: f64| {
                wk.eval(k) * wj.eval(j) * (1.0 + j.powf(nu1) + k.powf(nu2)).powf(-t)
            };
            let conv = SumFamilyConvexity {
                nu1,
                nu2,
                tau: t,
                unweighted: wj == Weight::One && wk == Weight::One,
            };
            let (gj, gk) = (wj.growth(), wk.growth());
            match (jr.end, kr.end) {
                (Some(j1), Some(k1)) => {
                    let mut total = 0.0;
                    for k in kr.start..=k1 {
                        for j in jr.start..=j1 {
                            total += f(k as f64, j as f64);
                        }
                    }
                    Bracketed::exact(total)
                }
                (None, Some(k1)) => {
                    if t * nu1 - gj <= 1.0 {
                        return Err(Error::Divergent(format!(
                            "j-sum of the sum family with decay {} against weight growth {gj}",
                            t * nu1
                        )));
                    }
                    let head = jr.start + BOX;
                    let mut total = Bracketed::exact(0.0);
                    for k in kr.start..=k1 {
                        let kf = k as f64;
                        total = total + sum_1d(&|j| f(kf, j), jr.start, head, conv.in_j(k, head))?;
                    }
                    total
                }
                (Some(j1), None) => {
                    if t * nu2 - gk <= 1.0 {
                        return Err(Error::Divergent(format!(
                            "k-sum of the sum family with decay {} against weight growth {gk}",
                            t * nu2
                        )));
                    }
                    let head = kr.start + BOX;
                    let mut total = Bracketed::exact(0.0);
                    for j in jr.start..=j1 {
                        let jf = j as f64;
                        total = total + sum_1d(&|k| f(k, jf), kr.start, head, conv.in_k(j, head))?;
                    }
                    total
                }
                (None, None) => {
                    if !sum_family_converges(nu1, nu2, t, gj, gk) {
                        return Err(Error::Divergent(format!(
                            "sum family: (gj + 1)/nu1 + (gk + 1)/nu2 = {} is not below {t}",
                            (gj + 1.0) / nu1 + (gk + 1.0) / nu2
                        )));
                    }
                    sum_2d(
                        &f,
                        (kr.start, jr.start),
                        (kr.start + BOX, jr.start + BOX),
                        &conv,
                    )?
                }
            }
        }
    };
    Ok(raw.scale(scale))
}

/// `sum_{j,k >= 0} j^gj k^gk (1 + j^a + k^b)^{-t}` converges iff
/// `(gj + 1)/a + (gk + 1)/b < t`, for `gj, gk > -1`.
fn sum_family_converges(nu1: f64, nu2: f64, t: f64, gj: f64, gk: f64) -> bool {
    (gj.max(-1.0) + 1.0) / nu1 + (gk.max(-1.0) + 1.0) / nu2 < t
}

/// Analytic convergence test for the full double sum, without evaluating it.
pub(crate) fn converges(spectrum: &PowerSpectrum, power: i32, wj: Weight, wk: Weight) -> bool {
    let p = power as f64;
    let (gj, gk) = (wj.growth(), wk.growth());
    match spectrum.source() {
        SpectrumSource::Explicit(_) => true,
        SpectrumSource::ProductFamily { nu1, nu2 } => p * nu1 - gj > 1.0 && p * nu2 - gk > 1.0,
        &SpectrumSource::SumFamily { nu1, nu2, tau } => {
            sum_family_converges(nu1, nu2, p * tau, gj, gk)
        }
    }
}
