//! Temporal basis functions of the truncated expansion.
//!
//! Each time mode `k` contributes a cosine and a sine part to the field. The
//! covariance then only sees `eps_k(u) = cos_k(t) cos_k(s) + sin_k(t) sin_k(s)`,
//! which depends on `u = t - s` alone, so the kernel stays stationary.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_domain, Error, Result};

/// Which temporal functions multiply the Gaussian coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BasisMode {
    /// `1` for `k = 0`, `(cos, sin)(pi k t / (2T))` otherwise.
    #[default]
    QuarterWave,
    /// `1/sqrt(T)` for `k = 0`, `sqrt(2/T) (cos, sin)(2 pi k t / T)` otherwise:
    /// orthonormal on `[0, T]`.
    Orthonormal,
}

impl fmt::Display for BasisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisMode::QuarterWave => "quarter-wave",
            BasisMode::Orthonormal => "orthonormal",
        })
    }
}

impl FromStr for BasisMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quarter-wave" => Ok(BasisMode::QuarterWave),
            "orthonormal" => Ok(BasisMode::Orthonormal),
            other => Err(Error::Unknown {
                what: "basis mode",
                value: other.to_string(),
            }),
        }
    }
}

/// A basis mode together with its horizon `T > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalBasis {
    mode: BasisMode,
    horizon: f64,
}

impl TemporalBasis {
    pub fn new(mode: BasisMode, horizon: f64) -> Result<Self> {
        check_domain(
            "T",
            horizon,
            horizon.is_finite() && horizon > 0.0,
            "a positive horizon",
        )?;
        Ok(Self { mode, horizon })
    }

    pub fn quarter_wave(horizon: f64) -> Result<Self> {
        Self::new(BasisMode::QuarterWave, horizon)
    }

    pub fn mode(&self) -> BasisMode {
        self.mode
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    fn frequency(&self, k: usize) -> f64 {
        match self.mode {
            BasisMode::QuarterWave => PI * k as f64 / (2.0 * self.horizon),
            BasisMode::Orthonormal => 2.0 * PI * k as f64 / self.horizon,
        }
    }

    fn amplitude(&self, k: usize) -> f64 {
        match (self.mode, k) {
            (BasisMode::QuarterWave, _) => 1.0,
            (BasisMode::Orthonormal, 0) => self.horizon.recip().sqrt(),
            (BasisMode::Orthonormal, _) => (2.0 / self.horizon).sqrt(),
        }
    }

    /// `(cos-part, sin-part)` of mode `k` at `t`, without the range check.
    #[inline]
    pub fn eval_unchecked(&self, k: usize, t: f64) -> (f64, f64) {
        if k == 0 {
            return (self.amplitude(0), 0.0);
        }
        let (s, c) = (self.frequency(k) * t).sin_cos();
        let a = self.amplitude(k);
        (a * c, a * s)
    }

    /// Covariance factor `eps_k(u)` at lag `u`.
    #[inline]
    pub fn covariance_factor(&self, k: usize, u: f64) -> f64 {
        let a = self.amplitude(k);
        if k == 0 {
            a * a
        } else {
            a * a * (self.frequency(k) * u).cos()
        }
    }

    /// `sup_u |eps_k(u)|`.
    pub fn sup_factor(&self, k: usize) -> f64 {
        let a = self.amplitude(k);
        a * a
    }
}

/// `(cos-part, sin-part)` of temporal mode `k` at time `t` in `[0, T]`.
///
/// ```
/// use stgrf::temporal::{temporal_basis_eval, BasisMode};
/// let (c, s) = temporal_basis_eval(1, 2.0, 2.0, BasisMode::QuarterWave).unwrap();
/// assert!(c.abs() < 1e-15 && (s - 1.0).abs() < 1e-15);
/// ```
pub fn temporal_basis_eval(k: usize, t: f64, horizon: f64, mode: BasisMode) -> Result<(f64, f64)> {
    let basis = TemporalBasis::new(mode, horizon)?;
    check_domain("t", t, (0.0..=horizon).contains(&t), "[0, T]")?;
    Ok(basis.eval_unchecked(k, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{quadrature, QuadratureKind};
    use approx::assert_abs_diff_eq;

    #[test]
    fn quarter_wave_values() {
        assert_eq!(
            temporal_basis_eval(0, 0.7, 1.0, BasisMode::QuarterWave).unwrap(),
            (1.0, 0.0)
        );
        let (c, s) = temporal_basis_eval(1, 3.0, 3.0, BasisMode::QuarterWave).unwrap();
        assert_abs_diff_eq!(c, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-15);
        assert!(temporal_basis_eval(1, 3.5, 3.0, BasisMode::QuarterWave).is_err());
        assert!(temporal_basis_eval(1, 0.5, 0.0, BasisMode::QuarterWave).is_err());
    }

    #[test]
    fn orthonormal_mode_is_orthonormal() {
        let horizon = 2.5;
        let rule = quadrature(QuadratureKind::GaussLegendre, 80)
            .unwrap()
            .mapped(0.0, horizon);
        let b = TemporalBasis::new(BasisMode::Orthonormal, horizon).unwrap();
        let mut fns: Vec<Box<dyn Fn(f64) -> f64>> =
            vec![Box::new(move |t| b.eval_unchecked(0, t).0)];
        for k in 1..5 {
            fns.push(Box::new(move |t| b.eval_unchecked(k, t).0));
            fns.push(Box::new(move |t| b.eval_unchecked(k, t).1));
        }
        for (i, f) in fns.iter().enumerate() {
            for (l, g) in fns.iter().enumerate() {
                let ip: f64 = rule.iter().map(|&(t, w)| w * f(t) * g(t)).sum();
                assert_abs_diff_eq!(ip, if i == l { 1.0 } else { 0.0 }, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn covariance_factor_is_stationary() {
        for mode in [BasisMode::QuarterWave, BasisMode::Orthonormal] {
            let b = TemporalBasis::new(mode, 1.7).unwrap();
            for k in 0..6 {
                let (t, s) = (1.3, 0.4);
                let (ct, st) = b.eval_unchecked(k, t);
                let (cs, ss) = b.eval_unchecked(k, s);
                assert_abs_diff_eq!(
                    ct * cs + st * ss,
                    b.covariance_factor(k, t - s),
                    epsilon = 1e-14
                );
            }
        }
    }
}
