//! CSV, provenance and binary serialisation of realizations.
//!
//! The binary layout is a 64-byte little-endian header
//! `magic[8] n_times n_lat n_lon J K seed` (all `u64`) then `T` (`f64`),
//! followed by the values as `f64`, row-major over `(time, lat, lon)`.
//! Point-list grids are written with `n_lat = n_points`, `n_lon = 1`.

use std::io::{Read, Write};

use super::grid::{SpatialLayout, SphereTimeGrid};
use super::synth::Realization;
use crate::error::{Error, Result};

pub const BINARY_MAGIC: [u8; 8] = *b"STGRF\0v1";
pub const BINARY_HEADER_LEN: usize = 64;

/// Writes `colatitude_rad,longitude_rad,time,value`, time-major. Floats use
/// the shortest round-trip representation.
pub fn write_csv<W: Write + ?Sized>(r: &Realization, out: &mut W) -> Result<()> {
    let pts = r.grid.spatial_points();
    writeln!(out, "colatitude_rad,longitude_rad,time,value")?;
    for (t_idx, &t) in r.grid.times().iter().enumerate() {
        for (i, (b1, b2)) in pts.iter().enumerate() {
            writeln!(out, "{b1},{b2},{t},{}", r.value(i, t_idx))?;
        }
    }
    Ok(())
}

/// Writes the provenance as `key = value` lines followed by a `[spectrum]`
/// section holding the spectrum document.
pub fn write_provenance<W: Write + ?Sized>(r: &Realization, out: &mut W) -> Result<()> {
    let p = &r.provenance;
    let (n_lat, n_lon) = r.grid.spatial_shape();
    writeln!(out, "seed = {}", p.seed)?;
    writeln!(out, "J = {}", p.j_max)?;
    writeln!(out, "K = {}", p.k_max)?;
    writeln!(out, "basis_mode = {}", p.basis_mode)?;
    writeln!(out, "horizon = {}", p.horizon)?;
    match p.spectrum.convention {
        Some(c) => writeln!(out, "convention = {c}")?,
        None => writeln!(out, "convention = none")?,
    }
    writeln!(out, "n_lat = {n_lat}")?;
    writeln!(out, "n_lon = {n_lon}")?;
    writeln!(out, "n_times = {}", r.grid.times().len())?;
    writeln!(out, "duration_seconds = {}", p.duration_seconds)?;
    writeln!(out, "[spectrum]")?;
    out.write_all(p.spectrum.to_text().as_bytes())?;
    Ok(())
}

pub fn write_binary<W: Write + ?Sized>(r: &Realization, out: &mut W) -> Result<()> {
    let (n_lat, n_lon) = r.grid.spatial_shape();
    let p = &r.provenance;
    let mut header = Vec::with_capacity(BINARY_HEADER_LEN);
    header.extend_from_slice(&BINARY_MAGIC);
    for v in [
        r.grid.times().len() as u64,
        n_lat as u64,
        n_lon as u64,
        p.j_max as u64,
        p.k_max as u64,
        p.seed,
    ] {
        header.extend_from_slice(&v.to_le_bytes());
    }
    header.extend_from_slice(&p.horizon.to_le_bytes());
    debug_assert_eq!(header.len(), BINARY_HEADER_LEN);
    out.write_all(&header)?;
    let mut buf = Vec::with_capacity(8 * r.values.len());
    for v in &r.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

/// Decoded binary file: header fields and the value array.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryField {
    pub n_times: usize,
    pub n_lat: usize,
    pub n_lon: usize,
    pub j_max: usize,
    pub k_max: usize,
    pub seed: u64,
    pub horizon: f64,
    pub values: Vec<f64>,
}

pub fn read_binary<R: Read>(input: &mut R) -> Result<BinaryField> {
    let mut header = [0u8; BINARY_HEADER_LEN];
    input.read_exact(&mut header)?;
    if header[..8] != BINARY_MAGIC {
        return Err(Error::Parse {
            line: 0,
            message: "bad magic in binary realization".into(),
        });
    }
    let word = |i: usize| u64::from_le_bytes(header[8 * i..8 * i + 8].try_into().unwrap());
    let (n_times, n_lat, n_lon) = (word(1) as usize, word(2) as usize, word(3) as usize);
    let mut body = Vec::new();
    input.read_to_end(&mut body)?;
    let n = n_times
        .checked_mul(n_lat)
        .and_then(|v| v.checked_mul(n_lon))
        .ok_or_else(|| Error::Shape("binary header dimensions overflow".into()))?;
    if body.len() != 8 * n {
        return Err(Error::Shape(format!(
            "binary body holds {} bytes, header implies {}",
            body.len(),
            8 * n
        )));
    }
    Ok(BinaryField {
        n_times,
        n_lat,
        n_lon,
        j_max: word(4) as usize,
        k_max: word(5) as usize,
        seed: word(6),
        horizon: f64::from_le_bytes(header[56..64].try_into().unwrap()),
        values: body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect(),
    })
}

impl SphereTimeGrid {
    /// True for lat-lon layouts, whose binary export is a full `(lat, lon)`
    /// raster.
    pub fn is_raster(&self) -> bool {
        matches!(self.layout(), SpatialLayout::LatLon { .. })
    }
}
