use rayon::prelude::*;

use super::rng::BlockStream;
use crate::error::{Error, Result};
use crate::spectra::{PowerSpectrum, SpectrumKind};

/// Offset of `(j, m)`, `0 <= m <= j`, inside one `k` block of the `A` arrays.
#[inline]
pub(crate) fn a_index(j: usize, m: usize) -> usize {
    j * (j + 1) / 2 + m
}

/// Offset of `(j, m)`, `1 <= m <= j`, inside one `k` block of the `B` arrays.
#[inline]
pub(crate) fn b_index(j: usize, m: usize) -> usize {
    j * (j - 1) / 2 + m - 1
}

/// Standard Gaussian coefficients of a `(J, K)` truncation.
///
/// `A1` and `B1` cover `k = 0..=K`; `A2` and `B2` multiply the sine parts
/// and cover `k = 1..=K` only.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientDraw {
    j_max: usize,
    k_max: usize,
    seed: u64,
    spectrum: PowerSpectrum,
    a1: Vec<f64>,
    b1: Vec<f64>,
    a2: Vec<f64>,
    b2: Vec<f64>,
}

impl CoefficientDraw {
    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn spectrum(&self) -> &PowerSpectrum {
        &self.spectrum
    }

    fn a_block(&self) -> usize {
        a_index(self.j_max + 1, 0)
    }

    fn b_block(&self) -> usize {
        self.j_max * (self.j_max + 1) / 2
    }

    pub fn a1_values(&self) -> &[f64] {
        &self.a1
    }

    pub fn b1_values(&self) -> &[f64] {
        &self.b1
    }

    pub fn a2_values(&self) -> &[f64] {
        &self.a2
    }

    pub fn b2_values(&self) -> &[f64] {
        &self.b2
    }

    #[inline]
    pub fn a1(&self, k: usize, j: usize, m: usize) -> f64 {
        self.a1[k * self.a_block() + a_index(j, m)]
    }

    #[inline]
    pub fn b1(&self, k: usize, j: usize, m: usize) -> f64 {
        self.b1[k * self.b_block() + b_index(j, m)]
    }

    /// Requires `k >= 1`.
    #[inline]
    pub fn a2(&self, k: usize, j: usize, m: usize) -> f64 {
        self.a2[(k - 1) * self.a_block() + a_index(j, m)]
    }

    /// Requires `k >= 1`.
    #[inline]
    pub fn b2(&self, k: usize, j: usize, m: usize) -> f64 {
        self.b2[(k - 1) * self.b_block() + b_index(j, m)]
    }
}

struct KBlock {
    a1: Vec<f64>,
    b1: Vec<f64>,
    a2: Vec<f64>,
    b2: Vec<f64>,
}

/// Within block `(k, j)` the stream yields `A1[m=0..=j]`, `B1[m=1..=j]`, then
/// for `k >= 1` `A2[m=0..=j]`, `B2[m=1..=j]`.
fn draw_k_block(seed: u64, k: usize, j_max: usize) -> KBlock {
    let a_len = a_index(j_max + 1, 0);
    let b_len = j_max * (j_max + 1) / 2;
    let second = k >= 1;
    let mut block = KBlock {
        a1: Vec::with_capacity(a_len),
        b1: Vec::with_capacity(b_len),
        a2: Vec::with_capacity(if second { a_len } else { 0 }),
        b2: Vec::with_capacity(if second { b_len } else { 0 }),
    };
    for j in 0..=j_max {
        let mut s = BlockStream::new(seed, k, j);
        block.a1.extend((0..=j).map(|_| s.normal()));
        block.b1.extend((1..=j).map(|_| s.normal()));
        if second {
            block.a2.extend((0..=j).map(|_| s.normal()));
            block.b2.extend((1..=j).map(|_| s.normal()));
        }
    }
    block
}

/// Fills the Gaussian arrays for `k <= K`, `j <= J` from the keyed streams.
///
/// ```
/// use stgrf::simulator::draw_coefficients;
/// use stgrf::spectra::family_polyproduct;
/// let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
/// let a = draw_coefficients(&s, 4, 2, 9).unwrap();
/// let b = draw_coefficients(&s, 4, 2, 9).unwrap();
/// assert_eq!(a, b);
/// ```
pub fn draw_coefficients(
    spectrum: &PowerSpectrum,
    j_max: usize,
    k_max: usize,
    seed: u64,
) -> Result<CoefficientDraw> {
    if spectrum.kind() != SpectrumKind::Angular {
        return Err(Error::Spectrum(
            "simulation needs an angular spectrum".into(),
        ));
    }
    if spectrum.d() != 2 {
        return Err(Error::Spectrum(format!(
            "simulation is implemented on the 2-sphere only, got d = {}",
            spectrum.d()
        )));
    }
    let blocks: Vec<KBlock> = (0..=k_max)
        .into_par_iter()
        .map(|k| draw_k_block(seed, k, j_max))
        .collect();
    let mut draw = CoefficientDraw {
        j_max,
        k_max,
        seed,
        spectrum: spectrum.clone(),
        a1: Vec::new(),
        b1: Vec::new(),
        a2: Vec::new(),
        b2: Vec::new(),
    };
    for b in blocks {
        draw.a1.extend(b.a1);
        draw.b1.extend(b.b1);
        draw.a2.extend(b.a2);
        draw.b2.extend(b.b2);
    }
    Ok(draw)
}
