//! Infinite sums of positive coefficients with certified brackets.
//!
//! Closed-form families go through the Hurwitz zeta function. Everything else
//! is summed explicitly over a finite box and the remainder is enclosed by
//! integral comparison:
//!
//! - decreasing `f`: `int_N f <= sum_{n>=N} f(n) <= int_{N-1} f`;
//! - decreasing and convex on `[N - 1/2, inf)`:
//!   `int_N f + f(N)/2 <= sum_{n>=N} f(n) <= int_{N-1/2} f`.
//!
//! Integrals over `[a, inf)` substitute `y = a e^v` and run composite
//! Gauss-Legendre panels in `v` until the panels become negligible.

use std::ops::Add;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::specfun::{quadrature, QuadratureKind};

/// A value with a guaranteed enclosure `lo <= true value <= hi`, up to
/// floating-point rounding in the bracket ends themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracketed {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Bracketed {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            lo: value,
            hi: value,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Multiplies by `c >= 0`.
    pub fn scale(self, c: f64) -> Self {
        debug_assert!(c >= 0.0);
        Self {
            value: self.value * c,
            lo: self.lo * c,
            hi: self.hi * c,
        }
    }

    /// Square root of a nonnegative bracket.
    pub fn sqrt(self) -> Self {
        Self {
            value: self.value.max(0.0).sqrt(),
            lo: self.lo.max(0.0).sqrt(),
            hi: self.hi.max(0.0).sqrt(),
        }
    }
}

impl Add for Bracketed {
    type Output = Bracketed;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl std::iter::Sum for Bracketed {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Bracketed::exact(0.0), |a, b| a + b)
    }
}

/// `B_{2k} / (2k)!` for `k = 1..=10`.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
];

/// Hurwitz zeta `sum_{n>=0} (n + a)^{-s}` for `s > 1`, `a > 0`, by
/// Euler-Maclaurin with ten Bernoulli corrections after a short direct sum.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::Domain {
            name: "s",
            value: s,
            expected: "s > 1",
        });
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain {
            name: "a",
            value: a,
            expected: "a > 0",
        });
    }
    let n = 16usize;
    let mut head = 0.0;
    for i in (0..n).rev() {
        head += (i as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising product s (s+1) ... (s+2k-2) times x^{-s-2k+1}
    let mut factor = s * x.powf(-s - 1.0);
    for (k, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = b * factor;
        tail += term;
        if term.abs() <= 1e-17 * tail.abs() {
            break;
        }
        let k2 = 2.0 * (k as f64 + 1.0);
        factor *= (s + k2 - 1.0) * (s + k2) / (x * x);
    }
    Ok(head + tail)
}

fn panel_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        quadrature(QuadratureKind::GaussLegendre, 20)
            .expect("20-node rule")
            .mapped(0.0, 1.0)
    })
}

fn integrate_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let h = b - a;
    panel_rule()
        .iter()
        .map(|&(x, w)| w * f(a + h * x))
        .sum::<f64>()
        * h
}

const MAX_PANELS: usize = 20_000;

/// `int_a^inf f(y) dy` for a positive integrable `f`.
///
/// Below `y = 1` unit panels are used directly; above, `y = max(a,1) e^v`.
pub(crate) fn integral_tail<F: Fn(f64) -> f64>(f: &F, a: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut start = a;
    if a < 1.0 {
        let mut lo = a;
        while lo < 1.0 {
            let hi = (lo + 1.0).min(1.0);
            total += integrate_panel(f, lo, hi);
            lo = hi;
        }
        start = 1.0;
    }
    let g = |v: f64| {
        let y = start * v.exp();
        y * f(y)
    };
    // Power-law tails become geometric in `v`; once the panel ratio is
    // steady the remainder is summed as a geometric series.
    let mut last = f64::INFINITY;
    let mut last_ratio = f64::NAN;
    for p in 0..MAX_PANELS {
        if !(start * (p as f64 + 1.0).exp()).is_finite() {
            break;
        }
        let piece = integrate_panel(&g, p as f64, p as f64 + 1.0);
        total += piece;
        if !total.is_finite() {
            break;
        }
        if piece == 0.0 {
            return Ok(total);
        }
        let ratio = piece / last;
        if ratio < 1.0 && (ratio - last_ratio).abs() <= 1e-6 {
            let remainder = piece * ratio / (1.0 - ratio);
            if remainder <= 1e-17 * total || p > 64 {
                return Ok(total + remainder);
            }
        }
        last = piece;
        last_ratio = ratio;
    }
    Err(Error::Divergent(format!(
        "tail integral from {a} did not settle within {MAX_PANELS} panels"
    )))
}

/// Encloses `sum_{n >= n0} f(n)` for `f` positive and decreasing on
/// `[n0 - 1, inf)`; `convex` promises convexity on `[n0 - 1/2, inf)`.
pub(crate) fn tail_1d<F: Fn(f64) -> f64>(f: &F, n0: usize, convex: bool) -> Result<Bracketed> {
    let n = n0 as f64;
    let from_n = integral_tail(f, n)?;
    let mid = from_n + integrate_panel(f, n - 0.5, n);
    if convex {
        let lo = from_n + 0.5 * f(n);
        let hi = mid;
        // first Euler-Maclaurin correction cancels in this combination
        let value = ((lo + 2.0 * hi) / 3.0).clamp(lo, hi);
        Ok(Bracketed { value, lo, hi })
    } else {
        let hi = if n0 == 0 {
            f64::INFINITY
        } else {
            mid + integrate_panel(f, n - 1.0, n - 0.5)
        };
        Ok(Bracketed {
            value: mid.clamp(from_n, hi),
            lo: from_n,
            hi,
        })
    }
}

/// Encloses `sum_{n >= start} f(n)`: explicit up to `explicit_end`, then
/// [`tail_1d`].
pub(crate) fn sum_1d<F: Fn(f64) -> f64>(
    f: &F,
    start: usize,
    explicit_end: usize,
    convex: bool,
) -> Result<Bracketed> {
    let end = explicit_end.max(start).max(1);
    let head: f64 = (start..end).rev().map(|i| f(i as f64)).sum();
    Ok(Bracketed::exact(head) + tail_1d(f, end, convex)?)
}

/// `int_{a}^inf int_{b}^inf f(k, j) dj dk`.
fn integral_tail_2d<F: Fn(f64, f64) -> f64>(f: &F, ka: f64, jb: f64) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let outer = |k: f64| {
        integral_tail(&|j| f(k, j), jb).unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            0.0
        })
    };
    let total = integral_tail(&outer, ka)?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Which 1D tails of a two-index sum may use the convex bracket.
pub(crate) trait Convexity {
    /// Is `j -> f(k, j)` convex on `[from - 1/2, inf)`?
    fn in_j(&self, k: usize, from: usize) -> bool;
    /// Is `k -> f(k, j)` convex on `[from - 1/2, inf)`?
    fn in_k(&self, j: usize, from: usize) -> bool;
}

/// Every section convex.
#[cfg(test)]
pub(crate) struct AlwaysConvex;

#[cfg(test)]
impl Convexity for AlwaysConvex {
    fn in_j(&self, _: usize, _: usize) -> bool {
        true
    }
    fn in_k(&self, _: usize, _: usize) -> bool {
        true
    }
}

/// Encloses `sum_{k >= k0, j >= j0} f(k, j)` for `f` positive and decreasing
/// in each argument. The box `[k0, mk) x [j0, mj)` is summed explicitly, the
/// two strips by [`tail_1d`] and the corner by double integrals over
/// `[mk, inf) x [mj, inf)` and `[mk - 1, inf) x [mj - 1, inf)`.
pub(crate) fn sum_2d<F, C>(
    f: &F,
    (k0, j0): (usize, usize),
    (mk, mj): (usize, usize),
    convexity: &C,
) -> Result<Bracketed>
where
    F: Fn(f64, f64) -> f64,
    C: Convexity,
{
    let mk = mk.max(k0).max(1);
    let mj = mj.max(j0).max(1);
    let mut total = Bracketed::exact(0.0);
    for k in k0..mk {
        let kf = k as f64;
        let row: f64 = (j0..mj).rev().map(|j| f(kf, j as f64)).sum();
        total = total + Bracketed::exact(row);
        total = total + tail_1d(&|j| f(kf, j), mj, convexity.in_j(k, mj))?;
    }
    for j in j0..mj {
        let jf = j as f64;
        total = total + tail_1d(&|k| f(k, jf), mk, convexity.in_k(j, mk))?;
    }
    let (kf, jf) = (mk as f64, mj as f64);
    let lo = integral_tail_2d(f, kf, jf)?;
    let mid = integral_tail_2d(f, kf - 0.5, jf - 0.5)?;
    let hi = integral_tail_2d(f, kf - 1.0, jf - 1.0)?;
    Ok(total + Bracketed { value: mid, lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn brute(s: f64, a: f64) -> f64 {
        // direct sum to 1e6 plus the integral remainder
        let n = 1_000_000;
        let head: f64 = (0..n).rev().map(|i| (i as f64 + a).powf(-s)).sum();
        let x = n as f64 + a;
        head + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
    }

    #[test]
    fn zeta_known_values() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(
            hurwitz_zeta(2.0, 1.0).unwrap(),
            pi * pi / 6.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            hurwitz_zeta(4.0, 1.0).unwrap(),
            pi.powi(4) / 90.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            hurwitz_zeta(2.0, 0.5).unwrap(),
            pi * pi / 2.0,
            max_relative = 1e-14
        );
        for &(s, a) in &[(1.5, 3.0), (3.0, 52.0), (1.1, 1.0), (6.0, 201.0)] {
            assert_relative_eq!(
                hurwitz_zeta(s, a).unwrap(),
                brute(s, a),
                max_relative = 1e-10
            );
        }
        assert!(hurwitz_zeta(1.0, 1.0).is_err());
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }

    #[test]
    fn tail_brackets_contain_truth() {
        for &(nu, n0) in &[(2.0, 1usize), (3.0, 51), (1.5, 10), (4.0, 200)] {
            let f = |x: f64| (1.0 + x).powf(-nu);
            let truth = hurwitz_zeta(nu, 1.0 + n0 as f64).unwrap();
            for convex in [true, false] {
                let b = tail_1d(&f, n0, convex).unwrap();
                assert!(b.lo <= truth && truth <= b.hi, "{nu} {n0} {convex} {b:?}");
            }
            if n0 >= 10 {
                let b = tail_1d(&f, n0, true).unwrap();
                assert_relative_eq!(b.value, truth, max_relative = 1e-4);
            }
            let b = sum_1d(&f, n0, n0 + 400, true).unwrap();
            assert_relative_eq!(b.value, truth, max_relative = 1e-10);
        }
    }

    #[test]
    fn two_dimensional_product_matches_closed_form() {
        let f = |k: f64, j: f64| (1.0 + j).powf(-3.0) * (1.0 + k).powf(-2.0);
        let truth = hurwitz_zeta(3.0, 1.0).unwrap() * hurwitz_zeta(2.0, 3.0).unwrap();
        let b = sum_2d(&f, (2, 0), (60, 60), &AlwaysConvex).unwrap();
        assert!(b.contains(truth), "{b:?} vs {truth}");
        assert_relative_eq!(b.value, truth, max_relative = 1e-6);
    }

    #[test]
    fn integral_of_power_law() {
        let f = |x: f64| x.powf(-1.05);
        assert_relative_eq!(
            integral_tail(&f, 2.0).unwrap(),
            2f64.powf(-0.05) / 0.05,
            max_relative = 1e-12
        );
        let g = |x: f64| (1.0 + x).powi(-2);
        assert_relative_eq!(integral_tail(&g, 0.0).unwrap(), 1.0, max_relative = 1e-13);
    }
}
