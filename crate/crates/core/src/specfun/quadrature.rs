//! Gauss-Legendre and Gauss-Hermite rules.
//!
//! Legendre nodes come from Newton iteration on `P_n` started at the usual
//! cosine guesses. Hermite nodes are the eigenvalues of the Jacobi matrix of
//! the orthonormal family, polished by Newton on `H_n`; the weights use the
//! Christoffel formula `w = 1 / sum_{k<n} H_k(x)^2`, which stays accurate in
//! relative terms even where the weight is tiny.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureKind {
    /// `int_{-1}^{1} f(x) dx`.
    GaussLegendre,
    /// `int f(u) exp(-u^2/2) / sqrt(2 pi) du`: weights sum to one.
    GaussHermite,
}

impl fmt::Display for QuadratureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadratureKind::GaussLegendre => "gauss-legendre",
            QuadratureKind::GaussHermite => "gauss-hermite",
        })
    }
}

impl FromStr for QuadratureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gauss-legendre" | "legendre" => Ok(QuadratureKind::GaussLegendre),
            "gauss-hermite" | "hermite" => Ok(QuadratureKind::GaussHermite),
            other => Err(Error::Unknown {
                what: "quadrature kind",
                value: other.to_string(),
            }),
        }
    }
}

/// A Gauss rule: ascending nodes with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Maps a Gauss-Legendre rule from `[-1, 1]` to `[a, b]`, returning
    /// `(nodes, weights)`.
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.iter()
            .map(|(x, w)| (mid + half * x, half * w))
            .collect()
    }
}

/// Default Legendre node count for projections up to degree `max_degree`.
pub fn default_legendre_nodes(max_degree: usize) -> usize {
    (2 * max_degree + 16).max(64)
}

/// Default Hermite node count for projections up to degree `max_degree`.
pub fn default_hermite_nodes(max_degree: usize) -> usize {
    (2 * max_degree + 16).max(64)
}

/// Builds the `n`-node rule of the given kind.
pub fn quadrature(kind: QuadratureKind, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::RuleTooCoarse {
            nodes: 0,
            required: 1,
        });
    }
    let (nodes, weights) = match kind {
        QuadratureKind::GaussLegendre => gauss_legendre(n),
        QuadratureKind::GaussHermite => gauss_hermite(n),
    };
    Ok(QuadratureRule {
        kind,
        nodes,
        weights,
    })
}

/// `(P_n(x), P_n'(x))`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let nf = n as f64;
    let deriv = nf * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut deriv = 1.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            deriv = dp;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                let (_, dp) = legendre_with_derivative(n, x);
                deriv = dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Runs the orthonormal Hermite recurrence up to degree `n`, rescaling to
/// stay in range. Returns `(H_n, H_{n-1}, sum_{k<n} H_k^2)` all divided by a
/// common factor, plus `log` of that factor (squared for the sum).
fn hermite_scaled_state(n: usize, x: f64) -> (f64, f64, f64, f64) {
    const BIG: f64 = 1e120;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum_sq = 0.0;
    let mut log_scale = 0.0;
    for k in 0..n {
        sum_sq += cur * cur;
        let kf = k as f64;
        let next = (x * cur - kf.sqrt() * prev) / (kf + 1.0).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            sum_sq /= BIG * BIG;
            log_scale += BIG.ln();
        }
    }
    (cur, prev, sum_sq, log_scale)
}

fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    if n == 1 {
        return (vec![0.0], vec![1.0]);
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    nodes.sort_by(|a, b| a.total_cmp(b));
    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let (hn, hn1, _, _) = hermite_scaled_state(n, *x);
            let dx = hn / (nf.sqrt() * hn1);
            *x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, _, sum_sq, log_scale) = hermite_scaled_state(n, *x);
        weights.push((-(sum_sq.ln() + 2.0 * log_scale)).exp());
    }
    // symmetrise against rounding
    for i in 0..n / 2 {
        let x = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[n - 1 - i]);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hermite_h;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_node_legendre() {
        let r = quadrature(QuadratureKind::GaussLegendre, 1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_eq!(r.weights(), &[2.0]);
    }

    #[test]
    fn legendre_monomial_exactness() {
        for n in [2usize, 5, 17, 32, 64] {
            let r = quadrature(QuadratureKind::GaussLegendre, n).unwrap();
            assert!(r.weights().iter().all(|&w| w > 0.0));
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
            for deg in 0..=(2 * n - 1).min(60) {
                let got = r.integrate(|x| x.powi(deg as i32));
                let want = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                assert_abs_diff_eq!(got, want, epsilon = 1e-12);
            }
        }
        let r = quadrature(QuadratureKind::GaussLegendre, 32).unwrap();
        assert_abs_diff_eq!(r.integrate(|x| x.powi(10)), 2.0 / 11.0, epsilon = 1e-12);
    }

    #[test]
    fn hermite_moments() {
        let r = quadrature(QuadratureKind::GaussHermite, 20).unwrap();
        assert_abs_diff_eq!(r.integrate(|u| u * u), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.integrate(|u| u.powi(4)), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.weights().iter().sum::<f64>(), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn hermite_orthonormal() {
        let n = 40;
        let r = quadrature(QuadratureKind::GaussHermite, n).unwrap();
        for a in 0..n {
            for b in 0..n {
                if a + b > 2 * n - 1 {
                    continue;
                }
                let got = r.integrate(|u| hermite_h(a, u) * hermite_h(b, u));
                let want = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(got, want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn large_hermite_rule_is_finite() {
        let r = quadrature(QuadratureKind::GaussHermite, 320).unwrap();
        assert!(r.weights().iter().all(|w| w.is_finite() && *w >= 0.0));
        assert_abs_diff_eq!(r.weights().iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.integrate(|u| u * u), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!(
            "gauss-hermite".parse::<QuadratureKind>().unwrap(),
            QuadratureKind::GaussHermite
        );
        assert!("gauss-laguerre".parse::<QuadratureKind>().is_err());
        assert!(quadrature(QuadratureKind::GaussLegendre, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let a = quadrature(QuadratureKind::GaussHermite, 33).unwrap();
        let b = quadrature(QuadratureKind::GaussHermite, 33).unwrap();
        assert_eq!(a, b);
    }
}
