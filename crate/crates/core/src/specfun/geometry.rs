//! Points of the sphere cross time, distances and dimension counts.

use std::f64::consts::PI;

use crate::error::{check_domain, Error, Result};

/// A point `(beta1, beta2, t)`: colatitude, longitude and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereTimePoint {
    colatitude: f64,
    longitude: f64,
    time: f64,
}

impl SphereTimePoint {
    /// Requires `beta1` in `[0, pi]`, `beta2` in `[0, 2 pi)` and a finite time.
    pub fn new(colatitude: f64, longitude: f64, time: f64) -> Result<Self> {
        check_domain(
            "colatitude",
            colatitude,
            (0.0..=PI).contains(&colatitude),
            "[0, pi]",
        )?;
        check_domain(
            "longitude",
            longitude,
            (0.0..2.0 * PI).contains(&longitude),
            "[0, 2 pi)",
        )?;
        check_domain("time", time, time.is_finite(), "a finite real")?;
        Ok(Self {
            colatitude,
            longitude,
            time,
        })
    }

    /// Wraps the longitude into `[0, 2 pi)` before validating.
    pub fn wrapped(colatitude: f64, longitude: f64, time: f64) -> Result<Self> {
        let mut lon = longitude.rem_euclid(2.0 * PI);
        if lon >= 2.0 * PI {
            lon = 0.0;
        }
        Self::new(colatitude, lon, time)
    }

    pub fn colatitude(&self) -> f64 {
        self.colatitude
    }

    pub fn longitude(&self) -> f64 {
        self.longitude
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Cartesian unit vector of the spatial part.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (s1, c1) = self.colatitude.sin_cos();
        let (s2, c2) = self.longitude.sin_cos();
        [s1 * c2, s1 * s2, c1]
    }
}

/// Great-circle distance `theta` and the space-time distance
/// `rho = sqrt(theta^2 + (t - s)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distance {
    pub theta: f64,
    pub rho: f64,
}

/// Cosine of the angle between two spatial positions, clamped to `[-1, 1]`.
pub fn cos_angle(p: &SphereTimePoint, q: &SphereTimePoint) -> f64 {
    let (a, b) = (p.unit_vector(), q.unit_vector());
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0)
}

pub fn geodesic_distance(p: &SphereTimePoint, q: &SphereTimePoint) -> Distance {
    let theta = if p.colatitude == q.colatitude && p.longitude == q.longitude {
        0.0
    } else {
        cos_angle(p, q).acos()
    };
    let lag = p.time - q.time;
    Distance {
        theta,
        rho: theta.hypot(lag),
    }
}

/// Area of the unit sphere `S^d`: `2 pi^{(d+1)/2} / Gamma((d+1)/2)`.
pub fn surface_area(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain {
            name: "d",
            value: 0.0,
            expected: "d >= 1",
        });
    }
    // Gamma((d+1)/2) at an integer or half-integer, by the product formula
    let n = d + 1;
    let gamma = if n.is_multiple_of(2) {
        (1..n / 2).map(|i| i as f64).product::<f64>()
    } else {
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x < (n as f64) / 2.0 - 0.25 {
            g *= x;
            x += 1.0;
        }
        g
    };
    Ok(2.0 * PI.powf(n as f64 / 2.0) / gamma)
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Dimension of the degree-`j` spherical harmonics on `S^d`, exact.
pub fn sph_harm_dim(j: usize, d: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::Domain {
            name: "d",
            value: 0.0,
            expected: "d >= 1",
        });
    }
    if j == 0 {
        return Ok(1);
    }
    let overflow = Error::Overflow { what: "dim H_j^d" };
    let (j, d) = (j as u64, d as u64);
    // C(j+d-1, d-1) + C(j+d-2, d-1)
    let a = j
        .checked_add(d - 1)
        .and_then(|n| binomial(n, d - 1))
        .ok_or(overflow.clone())?;
    let b = binomial(j + d - 2, d - 1).ok_or(overflow.clone())?;
    a.checked_add(b).ok_or(overflow)
}
