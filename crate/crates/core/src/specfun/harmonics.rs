//! Real spherical harmonics on the two-sphere.

use std::f64::consts::{PI, SQRT_2};

use super::legendre::{scaled_assoc_legendre, unit_interval};
use crate::error::{check_domain, Error, Result};

/// Real spherical harmonic `Y_{j,m}(beta1, beta2)`, unit-normalised on `S^2`.
///
/// `m > 0` carries `sqrt2 cos(m beta2)`, `m < 0` carries `sqrt2 sin(|m| beta2)`,
/// both with the Legendre factor of order `|m|`.
///
/// ```
/// use stgrf::specfun::sph_harm_real;
/// let y = sph_harm_real(0, 0, 1.0, 2.0).unwrap();
/// assert!((y - 1.0 / (4.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
/// ```
pub fn sph_harm_real(j: usize, m: i64, beta1: f64, beta2: f64) -> Result<f64> {
    let am = m.unsigned_abs() as usize;
    if am > j {
        return Err(Error::OrderOutOfRange {
            degree: j,
            order: m,
        });
    }
    check_domain(
        "beta1",
        beta1,
        beta1.is_finite() && (-1e-12..=PI + 1e-12).contains(&beta1),
        "[0, pi]",
    )?;
    check_domain("beta2", beta2, beta2.is_finite(), "a finite angle")?;
    let mu = unit_interval("cos(beta1)", beta1.cos())?;
    let base = ((2 * j + 1) as f64 / (4.0 * PI)).sqrt() * scaled_assoc_legendre(j, am, mu);
    Ok(match m.signum() {
        0 => base,
        1 => SQRT_2 * base * (am as f64 * beta2).cos(),
        _ => SQRT_2 * base * (am as f64 * beta2).sin(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_degrees() {
        let b1: f64 = 0.7;
        assert_abs_diff_eq!(
            sph_harm_real(1, 0, b1, 0.3).unwrap(),
            (3.0 / (4.0 * PI)).sqrt() * b1.cos(),
            epsilon = 1e-15
        );
        // Y_{1,1} = -sqrt(3/4pi) sin b1 cos b2 with the Condon-Shortley phase
        assert_abs_diff_eq!(
            sph_harm_real(1, 1, b1, 0.3).unwrap(),
            -(3.0 / (4.0 * PI)).sqrt() * b1.sin() * 0.3f64.cos(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            sph_harm_real(1, -1, b1, 0.3).unwrap(),
            -(3.0 / (4.0 * PI)).sqrt() * b1.sin() * 0.3f64.sin(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn order_checked() {
        assert!(matches!(
            sph_harm_real(2, -3, 0.1, 0.1),
            Err(Error::OrderOutOfRange {
                degree: 2,
                order: -3
            })
        ));
        assert!(sph_harm_real(2, 1, 4.0, 0.1).is_err());
    }
}
