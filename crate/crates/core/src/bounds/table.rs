//! Grids of `P + eps Q` over truncation levels, with the overall scale
//! either fixed, set by a variance convention or fitted to one cell.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::{error_bound_with, TailMode};
use crate::error::{Error, Result};
use crate::series::Bracketed;
use crate::spectra::{family_polyproduct, family_polysum, PowerSpectrum, VarianceConvention};

/// Exponent of the sum family when none is given.
pub const DEFAULT_TAU: f64 = 1.5;

/// Which spectral family a table is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TableFamily {
    /// `(1 + j)^-nu1 (1 + k)^-nu2`, short name `coef`.
    Product,
    /// `(1 + j^nu1 + k^nu2)^-tau`, short name `coef2`.
    Sum { tau: f64 },
}

impl TableFamily {
    pub fn spectrum(&self, xi: f64, nu1: f64, nu2: f64) -> Result<PowerSpectrum> {
        match *self {
            TableFamily::Product => family_polyproduct(xi, nu1, nu2),
            TableFamily::Sum { tau } => family_polysum(xi, nu1, nu2, tau),
        }
    }
}

impl fmt::Display for TableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableFamily::Product => f.write_str("coef"),
            TableFamily::Sum { tau } => write!(f, "coef2:tau={tau}"),
        }
    }
}

impl FromStr for TableFamily {
    type Err = Error;

    /// `coef`, `coef2` or `coef2:tau=<value>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::Unknown {
            what: "table family",
            value: s.clone(),
        };
        match s.as_str() {
            "coef" => Ok(TableFamily::Product),
            "coef2" => Ok(TableFamily::Sum { tau: DEFAULT_TAU }),
            _ => {
                let tau = s
                    .strip_prefix("coef2:tau=")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(bad)?;
                Ok(TableFamily::Sum { tau })
            }
        }
    }
}

/// Whether a reference value is `P + eps Q` or its square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableValue {
    BoundSquared,
    Bound,
}

impl TableValue {
    fn of(self, bound_sq: f64) -> f64 {
        match self {
            TableValue::BoundSquared => bound_sq,
            TableValue::Bound => bound_sq.sqrt(),
        }
    }
}

impl fmt::Display for TableValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableValue::BoundSquared => "P+eQ",
            TableValue::Bound => "sqrt(P+eQ)",
        })
    }
}

/// How the scale `xi` of a scenario is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiChoice {
    Fixed(f64),
    /// `xi` making the convention's variance sum one.
    Convention(VarianceConvention),
    /// `xi` making `P + eps Q` at `(j, k)` equal `target`.
    Fitted {
        j: usize,
        k: usize,
        target: f64,
    },
}

/// One `(nu1, nu2)` column block of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableScenario {
    pub label: String,
    pub nu1: f64,
    pub nu2: f64,
    pub xi: XiChoice,
}

impl TableScenario {
    /// Parses `nu1:nu2` with the given label and scale choice.
    pub fn parse(label: &str, text: &str, xi: XiChoice) -> Result<Self> {
        let bad = || Error::Unknown {
            what: "scenario",
            value: text.to_string(),
        };
        let (a, b) = text.split_once(':').ok_or_else(bad)?;
        Ok(Self {
            label: label.to_string(),
            nu1: a.trim().parse().map_err(|_| bad())?,
            nu2: b.trim().parse().map_err(|_| bad())?,
            xi,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub scenario: String,
    pub j_max: usize,
    pub k_max: usize,
    pub xi: f64,
    pub p: Bracketed,
    pub q: Bracketed,
    pub epsilon: f64,
    pub bound_sq: f64,
    pub bracket_width: f64,
}

/// `(P, Q)` at unit scale for every `(J, K)`, in parallel.
fn unit_cells(
    family: TableFamily,
    nu1: f64,
    nu2: f64,
    cells: &[(usize, usize)],
    epsilon: f64,
    tail: TailMode,
) -> Result<Vec<(Bracketed, Bracketed)>> {
    let unit = family.spectrum(1.0, nu1, nu2)?;
    cells
        .par_iter()
        .map(|&(j, k)| error_bound_with(&unit, j, k, epsilon, tail).map(|b| (b.p, b.q)))
        .collect()
}

fn convention_xi(family: TableFamily, nu1: f64, nu2: f64, c: VarianceConvention) -> Result<f64> {
    let v = c.variance(&family.spectrum(1.0, nu1, nu2)?)?;
    if !(v.value > 0.0 && v.value.is_finite()) {
        return Err(Error::Spectrum(format!(
            "variance sum under {c} is {}",
            v.value
        )));
    }
    Ok(1.0 / v.value)
}

/// `P + eps Q` for every scenario and every `(J, K)` in `js x ks`, rows
/// ordered scenario, then `J`, then `K`.
///
/// Both `P` and `Q` are linear in `xi`, so cells are computed at unit scale
/// and multiplied by the scenario's `xi`.
pub fn error_table(
    family: TableFamily,
    scenarios: &[TableScenario],
    js: &[usize],
    ks: &[usize],
    epsilon: f64,
    tail: TailMode,
) -> Result<Vec<TableCell>> {
    let mut out = Vec::new();
    for sc in scenarios {
        let mut cells: Vec<(usize, usize)> = js
            .iter()
            .flat_map(|&j| ks.iter().map(move |&k| (j, k)))
            .collect();
        let n_grid = cells.len();
        if let XiChoice::Fitted { j, k, .. } = sc.xi {
            cells.push((j, k));
        }
        let unit = unit_cells(family, sc.nu1, sc.nu2, &cells, epsilon, tail)?;
        let xi = match sc.xi {
            XiChoice::Fixed(xi) => xi,
            XiChoice::Convention(c) => convention_xi(family, sc.nu1, sc.nu2, c)?,
            XiChoice::Fitted { target, .. } => {
                let (p, q) = unit[n_grid];
                target / (p.value + epsilon * q.value)
            }
        };
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Spectrum(format!(
                "scenario {}: scale xi = {xi}",
                sc.label
            )));
        }
        for (&(j, k), &(p, q)) in cells.iter().zip(&unit).take(n_grid) {
            let (p, q) = (p.scale(xi), q.scale(xi));
            out.push(TableCell {
                scenario: sc.label.clone(),
                j_max: j,
                k_max: k,
                xi,
                p,
                q,
                epsilon,
                bound_sq: p.value + epsilon * q.value,
                bracket_width: p.width() + epsilon * q.width(),
            });
        }
    }
    Ok(out)
}

/// Columns `scenario,J,K,P,Q,epsilon,bound_sq,bracket_width`.
pub fn write_error_table_csv<W: Write + ?Sized>(cells: &[TableCell], out: &mut W) -> Result<()> {
    writeln!(out, "scenario,J,K,P,Q,epsilon,bound_sq,bracket_width")?;
    for c in cells {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            c.scenario,
            c.j_max,
            c.k_max,
            c.p.value,
            c.q.value,
            c.epsilon,
            c.bound_sq,
            c.bracket_width
        )?;
    }
    Ok(())
}

/// Where a hypothesis takes its scale from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiSource {
    /// Exact solve on the designated cell; that cell is then excluded from
    /// the error.
    Fitted,
    Convention(VarianceConvention),
}

impl fmt::Display for XiSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XiSource::Fitted => f.write_str("fitted"),
            XiSource::Convention(c) => write!(f, "{c}"),
        }
    }
}

/// How well one `(tail, value form, scale source)` combination reproduces a
/// set of reference cells.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisFit {
    pub tail: TailMode,
    pub value: TableValue,
    pub xi_source: XiSource,
    pub xi: f64,
    /// `(J, K, predicted, reference, relative error)` for each scored cell.
    pub cells: Vec<(usize, usize, f64, f64, f64)>,
    pub max_rel_error: f64,
}

/// Scores every combination of tail mode, value form (`P + eps Q` or its
/// root) and scale source (fitted on `fit_cell`, mean-field, mode-sum)
/// against `reference` cells `(J, K, value)`. Sorted best first; a
/// convention whose variance sum diverges scores an infinite error.
pub fn fit_diagnostic(
    family: TableFamily,
    nu1: f64,
    nu2: f64,
    reference: &[(usize, usize, f64)],
    fit_cell: (usize, usize),
    epsilon: f64,
    tails: &[TailMode],
) -> Result<Vec<HypothesisFit>> {
    let fit_target = reference
        .iter()
        .find(|r| (r.0, r.1) == fit_cell)
        .map(|r| r.2)
        .ok_or_else(|| Error::Config(format!("fit cell {fit_cell:?} has no reference value")))?;
    let cells: Vec<(usize, usize)> = reference.iter().map(|r| (r.0, r.1)).collect();
    let sources = [
        XiSource::Fitted,
        XiSource::Convention(VarianceConvention::mean_field()),
        XiSource::Convention(VarianceConvention::mode_sum()),
    ];
    let mut fits = Vec::new();
    for &tail in tails {
        let unit = unit_cells(family, nu1, nu2, &cells, epsilon, tail)?;
        let unit_sq: Vec<f64> = unit
            .iter()
            .map(|(p, q)| p.value + epsilon * q.value)
            .collect();
        let fit_idx = cells.iter().position(|&c| c == fit_cell).unwrap_or(0);
        for value in [TableValue::BoundSquared, TableValue::Bound] {
            for source in sources {
                let xi = match (source, value) {
                    (XiSource::Fitted, TableValue::BoundSquared) => fit_target / unit_sq[fit_idx],
                    (XiSource::Fitted, TableValue::Bound) => {
                        fit_target * fit_target / unit_sq[fit_idx]
                    }
                    (XiSource::Convention(c), _) => match convention_xi(family, nu1, nu2, c) {
                        Ok(xi) => xi,
                        // the convention does not apply to this spectrum
                        Err(Error::Divergent(_)) => {
                            fits.push(HypothesisFit {
                                tail,
                                value,
                                xi_source: source,
                                xi: f64::NAN,
                                cells: Vec::new(),
                                max_rel_error: f64::INFINITY,
                            });
                            continue;
                        }
                        Err(e) => return Err(e),
                    },
                };
                let scored: Vec<_> = reference
                    .iter()
                    .zip(&unit_sq)
                    .filter(|(r, _)| source != XiSource::Fitted || (r.0, r.1) != fit_cell)
                    .map(|(r, u)| {
                        let pred = value.of(xi * u);
                        (r.0, r.1, pred, r.2, (pred - r.2).abs() / r.2.abs())
                    })
                    .collect();
                let max_rel_error = scored.iter().map(|c| c.4).fold(0.0, f64::max);
                fits.push(HypothesisFit {
                    tail,
                    value,
                    xi_source: source,
                    xi,
                    cells: scored,
                    max_rel_error,
                });
            }
        }
    }
    fits.sort_by(|a, b| a.max_rel_error.total_cmp(&b.max_rel_error));
    Ok(fits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(xi: XiChoice) -> TableScenario {
        TableScenario::parse("a", "3:2", xi).unwrap()
    }

    #[test]
    fn cells_scale_with_xi() {
        let one = error_table(
            TableFamily::Product,
            &[scenario(XiChoice::Fixed(1.0))],
            &[10, 20],
            &[10],
            8.2,
            TailMode::Infinite,
        )
        .unwrap();
        let two = error_table(
            TableFamily::Product,
            &[scenario(XiChoice::Fixed(0.3))],
            &[10, 20],
            &[10],
            8.2,
            TailMode::Infinite,
        )
        .unwrap();
        for (a, b) in one.iter().zip(&two) {
            assert!((0.3 * a.bound_sq - b.bound_sq).abs() <= 1e-12 * b.bound_sq);
        }
    }

    #[test]
    fn fitted_cell_reproduces_target() {
        let xi = XiChoice::Fitted {
            j: 20,
            k: 10,
            target: 0.125,
        };
        let t = error_table(
            TableFamily::Sum { tau: 1.5 },
            &[scenario(xi)],
            &[20],
            &[10],
            8.2,
            TailMode::Capped(200),
        )
        .unwrap();
        assert!((t[0].bound_sq - 0.125).abs() < 1e-15);
    }

    #[test]
    fn diagnostic_recovers_a_synthetic_table() {
        // reference cells generated as sqrt(P + eps Q) under mode-sum scaling
        let fam = TableFamily::Product;
        let xi = convention_xi(fam, 3.0, 2.0, VarianceConvention::mode_sum()).unwrap();
        let s = fam.spectrum(xi, 3.0, 2.0).unwrap();
        let reference: Vec<_> = [(10, 10), (20, 10), (10, 20)]
            .iter()
            .map(|&(j, k)| {
                (
                    j,
                    k,
                    error_bound_with(&s, j, k, 2.0, TailMode::Infinite)
                        .unwrap()
                        .bound,
                )
            })
            .collect();
        let fits = fit_diagnostic(
            fam,
            3.0,
            2.0,
            &reference,
            (10, 10),
            2.0,
            &[TailMode::Infinite, TailMode::Capped(50)],
        )
        .unwrap();
        assert_eq!(fits.len(), 12);
        assert!(fits[0].max_rel_error < 1e-12);
        assert_eq!(fits[0].value, TableValue::Bound);
    }

    #[test]
    fn family_text() {
        for f in [TableFamily::Product, TableFamily::Sum { tau: 2.5 }] {
            assert_eq!(f.to_string().parse::<TableFamily>().unwrap(), f);
        }
        assert_eq!(
            "coef2".parse::<TableFamily>().unwrap(),
            TableFamily::Sum { tau: 1.5 }
        );
        assert!("coef3".parse::<TableFamily>().is_err());
    }
}
