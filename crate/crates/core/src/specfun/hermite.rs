//! Orthonormal probabilists' Hermite polynomials.

use std::f64::consts::PI;

/// Normalisation of the Hermite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HermiteScaling {
    /// `He_k / sqrt(k!)`: orthonormal under the standard Gaussian probability
    /// measure and satisfying `H_k' = sqrt(k) H_{k-1}`.
    #[default]
    GaussianMeasure,
    /// `He_k / sqrt(k! sqrt(2 pi))`: the variant with `sqrt(2 pi)` inside the
    /// normaliser, orthonormal against the un-normalised weight `exp(-u^2/2)`
    /// only up to a factor `sqrt(2 pi)`.
    SqrtTwoPi,
}

impl HermiteScaling {
    fn factor(self) -> f64 {
        match self {
            HermiteScaling::GaussianMeasure => 1.0,
            HermiteScaling::SqrtTwoPi => (2.0 * PI).sqrt().sqrt().recip(),
        }
    }
}

/// Orthonormal Hermite polynomial `H_k(u) = He_k(u) / sqrt(k!)`.
///
/// Uses `H_{k+1} = (u H_k - sqrt(k) H_{k-1}) / sqrt(k+1)`.
pub fn hermite_h(k: usize, u: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..k {
        let nf = n as f64;
        let next = (u * cur - nf.sqrt() * prev) / (nf + 1.0).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_k(u)` in the requested scaling.
pub fn hermite_h_scaled(k: usize, u: f64, scaling: HermiteScaling) -> f64 {
    hermite_h(k, u) * scaling.factor()
}

/// All values `H_0(u) ..= H_K(u)` written into `out`.
pub fn hermite_all(max_degree: usize, u: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    let mut prev = 0.0;
    for n in 0..max_degree {
        let nf = n as f64;
        let cur = out[n];
        let next = (u * cur - nf.sqrt() * prev) / (nf + 1.0).sqrt();
        prev = cur;
        out.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn base_cases() {
        assert_eq!(hermite_h(0, 3.3), 1.0);
        assert_eq!(hermite_h(1, -0.7), -0.7);
        assert_abs_diff_eq!(hermite_h(2, 0.0), -1.0 / 2f64.sqrt(), epsilon = 1e-15);
        // He_3 = u^3 - 3u
        let u: f64 = 1.3;
        assert_abs_diff_eq!(
            hermite_h(3, u),
            (u.powi(3) - 3.0 * u) / 6f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn derivative_identity() {
        let h = 1e-5;
        for k in 1..25 {
            for &u in &[-2.0, -0.5, 0.0, 0.8, 1.9] {
                let fd = (hermite_h(k, u + h) - hermite_h(k, u - h)) / (2.0 * h);
                let exact = (k as f64).sqrt() * hermite_h(k - 1, u);
                assert!(
                    (fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                    "k={k} u={u}"
                );
            }
        }
    }

    #[test]
    fn all_matches_single() {
        let mut v = Vec::new();
        hermite_all(30, 0.42, &mut v);
        assert_eq!(v.len(), 31);
        for (k, &x) in v.iter().enumerate() {
            assert_abs_diff_eq!(x, hermite_h(k, 0.42), epsilon = 1e-14);
        }
        hermite_all(0, 1.0, &mut v);
        assert_eq!(v, vec![1.0]);
    }

    #[test]
    fn alternate_scaling() {
        let r = hermite_h_scaled(4, 0.3, HermiteScaling::SqrtTwoPi) / hermite_h(4, 0.3);
        assert_abs_diff_eq!(r, (2.0 * PI).powf(-0.25), epsilon = 1e-15);
    }
}
