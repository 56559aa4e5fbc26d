use std::io::{self, Write};

use rayon::prelude::*;

use super::model::{kernel_eval, KernelModel};

/// One row of a kernel grid export.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelGridRow {
    pub theta: f64,
    pub lag: f64,
    pub value: f64,
}

/// `psi(theta, lag)` over the Cartesian product, `theta` outermost.
pub fn kernel_grid(model: &KernelModel, thetas: &[f64], lags: &[f64]) -> Vec<KernelGridRow> {
    thetas
        .par_iter()
        .flat_map_iter(|&theta| {
            lags.iter().map(move |&lag| KernelGridRow {
                theta,
                lag,
                value: kernel_eval(model, theta, lag),
            })
        })
        .collect()
}

/// CSV with header `theta,lag,value`.
pub fn write_kernel_grid_csv<W: Write>(rows: &[KernelGridRow], mut out: W) -> io::Result<()> {
    writeln!(out, "theta,lag,value")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.theta, r.lag, r.value)?;
    }
    out.flush()
}
