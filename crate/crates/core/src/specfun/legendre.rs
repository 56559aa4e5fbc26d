//! Legendre, Gegenbauer and associated Legendre functions.
//!
//! Everything is evaluated by three-term recurrences. The associated functions
//! are carried in the scaled form `N_{j,m} = sqrt((j-m)!/(j+m)!) P_{j,m}`,
//! which stays O(1) for any degree, and only rescaled at the very end.

use std::f64::consts::PI;

use crate::error::{check_domain, Error, Result};

/// Slack admitted on `|x| <= 1` before an argument is rejected.
pub const DOMAIN_SLACK: f64 = 1e-12;

pub(crate) fn unit_interval(name: &'static str, x: f64) -> Result<f64> {
    check_domain(
        name,
        x,
        x.is_finite() && x.abs() <= 1.0 + DOMAIN_SLACK,
        "[-1, 1]",
    )?;
    Ok(x.clamp(-1.0, 1.0))
}

/// Classical Legendre polynomial `P_j(x)` with `P_j(1) = 1`.
pub fn legendre_p(j: usize, x: f64) -> Result<f64> {
    let x = unit_interval("x", x)?;
    Ok(legendre_unchecked(j, x))
}

pub(crate) fn legendre_unchecked(j: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if j == 0 {
        return prev;
    }
    for n in 1..j {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * cur - nf * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// All Legendre values `P_0(x) ..= P_J(x)`.
pub(crate) fn legendre_all(max_degree: usize, x: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    if max_degree == 0 {
        return;
    }
    out.push(x);
    for n in 1..max_degree {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * out[n] - nf * out[n - 1]) / (nf + 1.0);
        out.push(next);
    }
}

/// Standardized Gegenbauer polynomial `c_j(d, x) = C_j^{(d-1)/2}(x) / C_j^{(d-1)/2}(1)`.
///
/// For `d = 2` this is the Legendre polynomial; `d = 1` is the Chebyshev limit
/// `T_j`. The recurrence runs directly on the standardized values:
/// `c_{j+1} = (2 (j + l) x c_j - j c_{j-1}) / (j + 2 l)` with `l = (d-1)/2`.
pub fn gegenbauer_c(j: usize, d: usize, x: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain {
            name: "d",
            value: 0.0,
            expected: "sphere dimension >= 1",
        });
    }
    let x = unit_interval("x", x)?;
    Ok(gegenbauer_unchecked(j, d, x))
}

pub(crate) fn gegenbauer_unchecked(j: usize, d: usize, x: f64) -> f64 {
    if d == 2 {
        return legendre_unchecked(j, x);
    }
    let lambda = (d as f64 - 1.0) / 2.0;
    let (mut prev, mut cur) = (1.0, x);
    if j == 0 {
        return prev;
    }
    for n in 1..j {
        let nf = n as f64;
        let next = (2.0 * (nf + lambda) * x * cur - nf * prev) / (nf + 2.0 * lambda);
        prev = cur;
        cur = next;
    }
    cur
}

pub(crate) fn gegenbauer_all(max_degree: usize, d: usize, x: f64, out: &mut Vec<f64>) {
    if d == 2 {
        return legendre_all(max_degree, x, out);
    }
    let lambda = (d as f64 - 1.0) / 2.0;
    out.clear();
    out.push(1.0);
    if max_degree == 0 {
        return;
    }
    out.push(x);
    for n in 1..max_degree {
        let nf = n as f64;
        let next = (2.0 * (nf + lambda) * x * out[n] - nf * out[n - 1]) / (nf + 2.0 * lambda);
        out.push(next);
    }
}

fn check_order(j: usize, m: usize) -> Result<()> {
    if m > j {
        return Err(Error::OrderOutOfRange {
            degree: j,
            order: m as i64,
        });
    }
    Ok(())
}

/// `ln((j+m)! / (j-m)!)` as a plain sum of logarithms.
fn ln_factorial_ratio(j: usize, m: usize) -> f64 {
    ((j - m + 1)..=(j + m)).map(|i| (i as f64).ln()).sum()
}

/// Associated Legendre function `P_{j,m}(mu)` including the Condon-Shortley
/// phase `(-1)^m`.
///
/// Overflows to infinity once `(j+m)!/(j-m)!` exceeds the double range
/// (around `j = m = 150` near the equator); use [`norm_assoc_legendre`] for
/// high degrees.
pub fn assoc_legendre(j: usize, m: usize, mu: f64) -> Result<f64> {
    check_order(j, m)?;
    let mu = unit_interval("mu", mu)?;
    let scaled = scaled_assoc_legendre(j, m, mu);
    if m == 0 {
        return Ok(scaled);
    }
    Ok(scaled * (0.5 * ln_factorial_ratio(j, m)).exp())
}

/// Normalized Legendre function
/// `sqrt(4 pi / (2j+1) * (j-m)!/(j+m)!) P_{j,m}(mu)`.
pub fn norm_assoc_legendre(j: usize, m: usize, mu: f64) -> Result<f64> {
    check_order(j, m)?;
    let mu = unit_interval("mu", mu)?;
    Ok((4.0 * PI / (2 * j + 1) as f64).sqrt() * scaled_assoc_legendre(j, m, mu))
}

/// `sqrt((j-m)!/(j+m)!) P_{j,m}(mu)` by the upward recurrence in `m`, then `j`.
pub(crate) fn scaled_assoc_legendre(j: usize, m: usize, mu: f64) -> f64 {
    let s = (1.0 - mu * mu).max(0.0).sqrt();
    let mut diag = 1.0;
    for i in 1..=m {
        let fi = i as f64;
        diag *= -s * ((2.0 * fi - 1.0) / (2.0 * fi)).sqrt();
    }
    if j == m {
        return diag;
    }
    let mf = m as f64;
    let mut prev = diag;
    let mut cur = mu * (2.0 * mf + 1.0).sqrt() * diag;
    for n in (m + 2)..=j {
        let nf = n as f64;
        let next = ((2.0 * nf - 1.0) * mu * cur
            - ((nf + mf - 1.0) * (nf - mf - 1.0)).sqrt() * prev)
            / ((nf - mf) * (nf + mf)).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// Table of the scaled functions `N_{j,m}(mu) = sqrt((j-m)!/(j+m)!) P_{j,m}(mu)`
/// for `0 <= m <= j <= max_degree`, stored row by row in `j`.
///
/// `N_{j,m}` relates to the real spherical harmonics by
/// `Y_{j,m} = sqrt((2j+1)/(4 pi)) * N_{j,|m|} * (1 | sqrt2 cos | sqrt2 sin)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledLegendreTable {
    max_degree: usize,
    values: Vec<f64>,
}

impl ScaledLegendreTable {
    pub fn new(max_degree: usize, mu: f64) -> Result<Self> {
        let mu = unit_interval("mu", mu)?;
        let mut table = Self {
            max_degree,
            values: vec![0.0; (max_degree + 1) * (max_degree + 2) / 2],
        };
        table.fill(mu);
        Ok(table)
    }

    #[inline]
    pub fn index(j: usize, m: usize) -> usize {
        j * (j + 1) / 2 + m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn get(&self, j: usize, m: usize) -> f64 {
        self.values[Self::index(j, m)]
    }

    /// Row `j` as a slice over `m = 0..=j`.
    #[inline]
    pub fn row(&self, j: usize) -> &[f64] {
        let start = Self::index(j, 0);
        &self.values[start..start + j + 1]
    }

    fn fill(&mut self, mu: f64) {
        let s = (1.0 - mu * mu).max(0.0).sqrt();
        let mut diag = 1.0;
        for m in 0..=self.max_degree {
            if m > 0 {
                let fm = m as f64;
                diag *= -s * ((2.0 * fm - 1.0) / (2.0 * fm)).sqrt();
            }
            self.values[Self::index(m, m)] = diag;
            if m == self.max_degree {
                break;
            }
            let mf = m as f64;
            let mut prev = diag;
            let mut cur = mu * (2.0 * mf + 1.0).sqrt() * diag;
            self.values[Self::index(m + 1, m)] = cur;
            for n in (m + 2)..=self.max_degree {
                let nf = n as f64;
                let next = ((2.0 * nf - 1.0) * mu * cur
                    - ((nf + mf - 1.0) * (nf - mf - 1.0)).sqrt() * prev)
                    / ((nf - mf) * (nf + mf)).sqrt();
                prev = cur;
                cur = next;
                self.values[Self::index(n, m)] = cur;
            }
        }
    }
}
