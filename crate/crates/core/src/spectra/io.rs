//! Plain-text spectrum documents.
//!
//! ```text
//! kind = angular
//! family = coef        # coef | coef2 | explicit
//! xi = 1
//! nu1 = 3
//! nu2 = 2
//! convention = mean-field
//! [coefficients]       # explicit only: one row per k, j across
//! 1, 0.5
//! 0.25, 0.125
//! ```
//!
//! The short form `coef:nu1=3,nu2=2` or `coef2:nu1=2,nu2=2,tau=1.5` carries
//! the same keys.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::normalize::VarianceConvention;
use super::spectrum::{
    family_polyproduct, family_polysum, CoefficientMatrix, PowerSpectrum, SpectrumKind,
    SpectrumSource,
};
use crate::error::{Error, Result};

/// A spectrum plus the variance convention it is meant to be normalised
/// with, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDocument {
    pub spectrum: PowerSpectrum,
    pub convention: Option<VarianceConvention>,
}

impl SpectrumDocument {
    pub fn new(spectrum: PowerSpectrum) -> Self {
        Self {
            spectrum,
            convention: None,
        }
    }

    pub fn to_text(&self) -> String {
        let s = &self.spectrum;
        let mut out = String::new();
        let _ = writeln!(out, "kind = {}", s.kind());
        match s.source() {
            SpectrumSource::ProductFamily { nu1, nu2 } => {
                let _ = writeln!(out, "family = coef\nnu1 = {nu1}\nnu2 = {nu2}");
            }
            SpectrumSource::SumFamily { nu1, nu2, tau } => {
                let _ = writeln!(out, "family = coef2\nnu1 = {nu1}\nnu2 = {nu2}\ntau = {tau}");
            }
            SpectrumSource::Explicit(_) => out.push_str("family = explicit\n"),
        }
        let _ = writeln!(out, "xi = {}\nd = {}", s.scale(), s.d());
        if let Some(c) = self.convention {
            let _ = writeln!(out, "convention = {c}");
        }
        if let SpectrumSource::Explicit(m) = s.source() {
            out.push_str("[coefficients]\n");
            for k in 0..=m.k_max() {
                let row: Vec<String> = m.row(k).iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(", "));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut keys: Vec<(usize, String, String)> = Vec::new();
        let mut rows = Vec::new();
        let mut in_table = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                if line != "[coefficients]" {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("unknown section {line}"),
                    });
                }
                in_table = true;
                continue;
            }
            if in_table {
                let row = line
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Parse {
                        line: line_no,
                        message: format!("bad coefficient: {e}"),
                    })?;
                rows.push(row);
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            keys.push((line_no, k.trim().to_ascii_lowercase(), v.trim().to_string()));
        }
        build(&keys, rows)
    }

    /// Parses the short form `family:key=value,...`.
    ///
    /// ```
    /// use stgrf::spectra::SpectrumDocument;
    /// let doc = SpectrumDocument::from_short("coef:nu1=3,nu2=2").unwrap();
    /// assert_eq!(doc.spectrum.coeff(0, 1), 1.0 / 8.0);
    /// ```
    pub fn from_short(spec: &str) -> Result<Self> {
        let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut keys = vec![(1, "family".to_string(), family.trim().to_string())];
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected `key=value`, found `{part}`"),
            })?;
            keys.push((1, k.trim().to_ascii_lowercase(), v.trim().to_string()));
        }
        build(&keys, Vec::new())
    }
}

fn build(keys: &[(usize, String, String)], rows: Vec<Vec<f64>>) -> Result<SpectrumDocument> {
    let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (line, k, v) in keys {
        const KNOWN: [&str; 8] = [
            "kind",
            "family",
            "xi",
            "nu1",
            "nu2",
            "tau",
            "d",
            "convention",
        ];
        if !KNOWN.contains(&k.as_str()) {
            return Err(Error::Parse {
                line: *line,
                message: format!("unknown key `{k}`"),
            });
        }
        if map.insert(k.as_str(), (*line, v.as_str())).is_some() {
            return Err(Error::Parse {
                line: *line,
                message: format!("duplicate key `{k}`"),
            });
        }
    }
    let number = |key: &'static str| -> Result<Option<f64>> {
        map.get(key)
            .map(|(line, v)| {
                v.parse::<f64>().map_err(|_| Error::Parse {
                    line: *line,
                    message: format!("`{key}` must be a number, found `{v}`"),
                })
            })
            .transpose()
    };
    let required = |key: &'static str| -> Result<f64> {
        number(key)?.ok_or_else(|| Error::Config(format!("spectrum is missing `{key}`")))
    };
    let family = map.get("family").map(|(_, v)| *v).unwrap_or("explicit");
    let xi = number("xi")?.unwrap_or(1.0);
    let mut spectrum = match family {
        "coef" => family_polyproduct(xi, required("nu1")?, required("nu2")?)?,
        "coef2" => family_polysum(xi, required("nu1")?, required("nu2")?, required("tau")?)?,
        "explicit" => {
            if rows.is_empty() {
                return Err(Error::Config(
                    "explicit spectrum without [coefficients]".into(),
                ));
            }
            PowerSpectrum::explicit(CoefficientMatrix::from_rows(&rows)?).with_scale(xi)?
        }
        other => {
            return Err(Error::Unknown {
                what: "spectrum family",
                value: other.to_string(),
            })
        }
    };
    if family != "explicit" && !rows.is_empty() {
        return Err(Error::Config(format!(
            "family `{family}` takes no coefficient table"
        )));
    }
    if let Some((line, kind)) = map.get("kind") {
        spectrum = spectrum.with_kind(match *kind {
            "angular" => SpectrumKind::Angular,
            "hermite" => SpectrumKind::Hermite,
            other => {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("unknown kind `{other}`"),
                })
            }
        });
    }
    if let Some(d) = number("d")? {
        if d.fract() != 0.0 || d < 1.0 {
            return Err(Error::Config(format!(
                "`d` must be a positive integer, found {d}"
            )));
        }
        spectrum = spectrum.with_dimension(d as usize)?;
    }
    let convention = map
        .get("convention")
        .map(|(_, v)| v.parse::<VarianceConvention>())
        .transpose()?;
    Ok(SpectrumDocument {
        spectrum,
        convention,
    })
}
