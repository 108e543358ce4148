use std::collections::HashSet;

use rayon::prelude::*;

use super::regression::{dyadic_range, least_squares, Scale, ScalingFit};
use crate::error::{Error, Result};

/// Number of grid cells of side `eps` containing at least one point.
pub fn occupied_boxes<const D: usize>(points: &[[f64; D]], eps: f64) -> usize {
    let cells: HashSet<[i64; D]> = points
        .iter()
        .map(|p| std::array::from_fn(|i| (p[i] / eps).floor() as i64))
        .collect();
    cells.len()
}

/// Box-counting dimension of a point cloud.
///
/// Counts occupied dyadic grid cells of side `eps = 2^-k` for every
/// `k = k_min ..= k_max` and regresses `log N` on `-log eps`. Choosing
/// `2^k_max` close to the number of points biases the slope towards 0.
pub fn box_counting_dimension<const D: usize>(points: &[[f64; D]], k_min: u32, k_max: u32) -> Result<ScalingFit> {
    if points.is_empty() {
        return Err(Error::EmptyInput("box counting needs at least one point"));
    }
    let ks = dyadic_range(k_min, k_max)?;
    let scales: Vec<Scale> = ks
        .par_iter()
        .map(|&k| {
            let eps = (-(k as f64)).exp2();
            Scale {
                eps,
                value: occupied_boxes(points, eps) as f64,
            }
        })
        .collect();
    let xs: Vec<f64> = scales.iter().map(|s| -s.eps.ln()).collect();
    let ys: Vec<f64> = scales.iter().map(|s| s.value.ln()).collect();
    let (slope, intercept, stderr) = least_squares(&xs, &ys)?;
    Ok(ScalingFit {
        slope,
        intercept,
        stderr,
        scales,
        k_range: (k_min, k_max),
    })
}
