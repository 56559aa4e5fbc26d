use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{quadrature, QuadratureKind, SphereTimePoint};

/// How colatitudes of a lat-lon grid are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColatitudeRule {
    /// `arccos` of Gauss-Legendre nodes.
    Gauss,
    /// Cell centres `pi (i + 1/2) / n`.
    #[default]
    Equiangular,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpatialLayout {
    /// `n_lat` colatitude rings of `n_lon` equispaced longitudes, ring-major.
    LatLon {
        colatitudes: Vec<f64>,
        n_lon: usize,
        rule: ColatitudeRule,
    },
    /// Arbitrary `(colatitude, longitude)` pairs.
    Points(Vec<(f64, f64)>),
}

/// Spatial points times a nondecreasing list of times in `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereTimeGrid {
    layout: SpatialLayout,
    times: Vec<f64>,
    horizon: f64,
}

fn check_times(times: &[f64], horizon: f64) -> Result<()> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::Grid(format!(
            "horizon T = {horizon} must be positive"
        )));
    }
    if times.is_empty() {
        return Err(Error::Grid("no times".into()));
    }
    if let Some(t) = times.iter().find(|t| !(0.0..=horizon).contains(*t)) {
        return Err(Error::Grid(format!("time {t} outside [0, {horizon}]")));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Grid("times must be nondecreasing".into()));
    }
    Ok(())
}

impl SphereTimeGrid {
    pub fn lat_lon(
        n_lat: usize,
        n_lon: usize,
        rule: ColatitudeRule,
        times: Vec<f64>,
        horizon: f64,
    ) -> Result<Self> {
        if n_lat == 0 || n_lon == 0 {
            return Err(Error::Grid(format!("empty {n_lat} x {n_lon} lat-lon grid")));
        }
        check_times(&times, horizon)?;
        let colatitudes = match rule {
            ColatitudeRule::Equiangular => (0..n_lat)
                .map(|i| PI * (i as f64 + 0.5) / n_lat as f64)
                .collect(),
            ColatitudeRule::Gauss => {
                let r = quadrature(QuadratureKind::GaussLegendre, n_lat)?;
                r.nodes()
                    .iter()
                    .rev()
                    .map(|x| x.clamp(-1.0, 1.0).acos())
                    .collect()
            }
        };
        Ok(Self {
            layout: SpatialLayout::LatLon {
                colatitudes,
                n_lon,
                rule,
            },
            times,
            horizon,
        })
    }

    pub fn points(points: Vec<(f64, f64)>, times: Vec<f64>, horizon: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Grid("no spatial points".into()));
        }
        for &(b1, b2) in &points {
            SphereTimePoint::new(b1, b2, 0.0)
                .map_err(|e| Error::Grid(format!("point ({b1}, {b2}): {e}")))?;
        }
        check_times(&times, horizon)?;
        Ok(Self {
            layout: SpatialLayout::Points(points),
            times,
            horizon,
        })
    }

    pub fn layout(&self) -> &SpatialLayout {
        &self.layout
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn n_points(&self) -> usize {
        match &self.layout {
            SpatialLayout::LatLon {
                colatitudes, n_lon, ..
            } => colatitudes.len() * n_lon,
            SpatialLayout::Points(p) => p.len(),
        }
    }

    /// `(rows, columns)` of the spatial layout: `(n_lat, n_lon)` or
    /// `(n_points, 1)`.
    pub fn spatial_shape(&self) -> (usize, usize) {
        match &self.layout {
            SpatialLayout::LatLon {
                colatitudes, n_lon, ..
            } => (colatitudes.len(), *n_lon),
            SpatialLayout::Points(p) => (p.len(), 1),
        }
    }

    /// `(colatitude, longitude)` of spatial point `i`.
    pub fn point(&self, i: usize) -> (f64, f64) {
        match &self.layout {
            SpatialLayout::LatLon {
                colatitudes, n_lon, ..
            } => (
                colatitudes[i / n_lon],
                2.0 * PI * (i % n_lon) as f64 / *n_lon as f64,
            ),
            SpatialLayout::Points(p) => p[i],
        }
    }

    pub fn spatial_points(&self) -> Vec<(f64, f64)> {
        (0..self.n_points()).map(|i| self.point(i)).collect()
    }
}
