use rayon::prelude::*;
use serde::Serialize;

use super::regression::{dyadic_range, least_squares, Scale, ScalingFit};
use crate::error::{Error, Result};

/// Per-query local dimension fits and their aggregate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalDimension {
    /// One entry per query, `None` where the query was dropped.
    pub fits: Vec<Option<ScalingFit>>,
    pub mean: f64,
    pub median: f64,
    pub used: usize,
    pub dropped: usize,
}

/// Pointwise dimension of the empirical measure of `samples` at each query.
///
/// For every query `x` the mass `mu(B(x, eps))` of the sup-norm ball is the
/// fraction of samples within `eps = 2^-k`, `k = k_min ..= k_max`, and the
/// slope of `log mu` against `log eps` is reported. Queries whose ball at
/// the smallest scale is empty are dropped.
pub fn local_dimension<const D: usize>(
    samples: &[[f64; D]],
    queries: &[[f64; D]],
    k_min: u32,
    k_max: u32,
) -> Result<LocalDimension> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("local dimension needs samples"));
    }
    if queries.is_empty() {
        return Err(Error::EmptyInput("local dimension needs queries"));
    }
    let ks = dyadic_range(k_min, k_max)?;
    let radii: Vec<f64> = ks.iter().map(|&k| (-(k as f64)).exp2()).collect();
    let total = samples.len() as f64;

    let fits: Vec<Option<ScalingFit>> = queries
        .par_iter()
        .map(|q| {
            let mut counts = vec![0usize; radii.len()];
            for s in samples {
                let dist = (0..D).map(|i| (s[i] - q[i]).abs()).fold(0.0, f64::max);
                // radii decrease, so the balls containing `s` form a prefix
                for (c, &r) in counts.iter_mut().zip(&radii) {
                    if dist > r {
                        break;
                    }
                    *c += 1;
                }
            }
            if counts.last().copied().unwrap_or(0) == 0 {
                return None;
            }
            let scales: Vec<Scale> = radii
                .iter()
                .zip(&counts)
                .map(|(&eps, &c)| Scale {
                    eps,
                    value: c as f64 / total,
                })
                .collect();
            let xs: Vec<f64> = scales.iter().map(|s| s.eps.ln()).collect();
            let ys: Vec<f64> = scales.iter().map(|s| s.value.ln()).collect();
            let (slope, intercept, stderr) = least_squares(&xs, &ys).ok()?;
            Some(ScalingFit {
                slope,
                intercept,
                stderr,
                scales,
                k_range: (k_min, k_max),
            })
        })
        .collect();

    let mut slopes: Vec<f64> = fits.iter().flatten().map(|f| f.slope).collect();
    let dropped = fits.len() - slopes.len();
    if slopes.is_empty() {
        return Err(Error::AllQueriesDegenerate { dropped });
    }
    slopes.sort_by(f64::total_cmp);
    let used = slopes.len();
    let mean = slopes.iter().sum::<f64>() / used as f64;
    let median = if used % 2 == 1 {
        slopes[used / 2]
    } else {
        0.5 * (slopes[used / 2 - 1] + slopes[used / 2])
    };
    Ok(LocalDimension {
        fits,
        mean,
        median,
        used,
        dropped,
    })
}
