use serde::Serialize;

use crate::error::{Error, Result};

/// One scale of a log-log fit: the radius or box side `eps` and the
/// observed count or mass at that scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scale {
    pub eps: f64,
    pub value: f64,
}

/// Least-squares scaling exponent over dyadic scales `eps = 2^-k`,
/// `k = k_range.0 ..= k_range.1`. `scales` is ordered by decreasing `eps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub scales: Vec<Scale>,
    pub k_range: (u32, u32),
}

impl ScalingFit {
    /// Column names matching [`ScalingFit::csv_row`].
    pub const CSV_HEADER: &'static str = "slope,intercept,stderr,k_min,k_max,n_scales";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.slope,
            self.intercept,
            self.stderr,
            self.k_range.0,
            self.k_range.1,
            self.scales.len()
        )
    }
}

/// Ordinary least squares `y = intercept + slope * x`, returning
/// `(slope, intercept, stderr of slope)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    let n = xs.len();
    if n < 3 || ys.len() != n {
        return Err(Error::DegenerateRange(n.min(ys.len())));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateRange(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = (ssr / (nf - 2.0) / sxx).sqrt();
    Ok((slope, intercept, stderr))
}

pub(crate) fn dyadic_range(k_min: u32, k_max: u32) -> Result<Vec<u32>> {
    if k_max < k_min || k_max - k_min + 1 < 3 {
        let n = if k_max >= k_min {
            (k_max - k_min + 1) as usize
        } else {
            0
        };
        return Err(Error::DegenerateRange(n));
    }
    Ok((k_min..=k_max).collect())
}
