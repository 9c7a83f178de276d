//! Data behind the two bound comparison plots: the K remainder at ν = 2+i,
//! |z| = 15, arg z ∈ [0, π], against the closed-form complex-order bound
//! and Olver's bound, all scaled by `|z|^N / |a_N(ν)|`.

use std::f64::consts::PI;

use crate::bounds::{olver_bound, simplified_complex_bound, Family};
use crate::error::{domain, Result};
use crate::expansions::family_remainder_from_oracle;
use crate::scalar::cabs;
use crate::surface::{Order, SurfaceComplex};

pub const FIGURE_NU: Order = Order { re: 2.0, im: 1.0 };
pub const FIGURE_MODULUS: f64 = 15.0;
pub const FIGURE_ROWS: usize = 200;
pub const FIGURE_HEADER: &str = "arg_z,scaled_remainder,paper_bound,olver_bound";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FigureRow {
    pub arg_z: f64,
    pub scaled_remainder: f64,
    pub paper_bound: f64,
    pub olver_bound: f64,
}

/// Truncation index of each figure.
pub fn figure_terms(id: u32) -> Result<usize> {
    match id {
        1 => Ok(10),
        2 => Ok(30),
        _ => Err(domain(format!("figure id must be 1 or 2, got {id}"))),
    }
}

pub fn figure_row(arg: f64, n: usize) -> Result<FigureRow> {
    let z = SurfaceComplex::new(FIGURE_MODULUS, arg)?;
    let scale = (n as f64 * FIGURE_MODULUS.ln()).exp() / Family::K.coefficient(FIGURE_NU, n).norm();
    let r = cabs(family_remainder_from_oracle(Family::K, z, FIGURE_NU, n)?.value);
    Ok(FigureRow {
        arg_z: arg,
        scaled_remainder: r * scale,
        paper_bound: simplified_complex_bound(z, FIGURE_NU, n)?.total * scale,
        olver_bound: olver_bound(z, FIGURE_NU, n)?.total * scale,
    })
}

/// `FIGURE_ROWS` equally spaced arguments from 0 to π inclusive.
pub fn figure_rows(id: u32) -> Result<Vec<FigureRow>> {
    let n = figure_terms(id)?;
    (0..FIGURE_ROWS)
        .map(|i| figure_row(PI * i as f64 / (FIGURE_ROWS - 1) as f64, n))
        .collect()
}

/// One CSV line, 17 significant digits per field.
pub fn csv_line(r: &FigureRow) -> String {
    format!(
        "{:.16e},{:.16e},{:.16e},{:.16e}",
        r.arg_z, r.scaled_remainder, r.paper_bound, r.olver_bound
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_included() {
        assert!(figure_terms(3).is_err());
        let r = figure_row(PI, 10).unwrap();
        assert!(r.scaled_remainder <= r.paper_bound);
        assert_eq!(
            csv_line(&FigureRow {
                arg_z: 0.0,
                scaled_remainder: 1.0,
                paper_bound: 2.0,
                olver_bound: 0.5
            }),
            "0.0000000000000000e0,1.0000000000000000e0,2.0000000000000000e0,5.0000000000000000e-1"
        );
    }
}
