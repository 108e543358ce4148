use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{derivative_at, ParamVector, Point3};
use crate::seed;
use crate::symbolic::BernoulliSpec;

/// Symbols kept in the rolling dyadic expansion of the expanding coordinate.
const PAST_BITS: usize = 53;

/// Which stable axis contracts less.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StableAxis {
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentStderr {
    pub unstable: f64,
    pub beta: f64,
    pub tau: f64,
}

/// Birkhoff averages of the log-derivative along sampled orbits, in nats
/// per iterate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub unstable: f64,
    pub weak_stable: f64,
    pub strong_stable: f64,
    /// Exponent along `y` (average of `log beta`).
    pub beta_exponent: f64,
    /// Exponent along `z` (average of `log tau`).
    pub tau_exponent: f64,
    pub weak_axis: StableAxis,
    pub stderr: ExponentStderr,
    pub n_iterates: usize,
    pub n_orbits: usize,
}

impl LyapunovEstimate {
    pub const CSV_HEADER: &'static str = "unstable,weak_stable,strong_stable,beta_exponent,tau_exponent,\
stderr_unstable,stderr_beta,stderr_tau,n_iterates,n_orbits";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.unstable,
            self.weak_stable,
            self.strong_stable,
            self.beta_exponent,
            self.tau_exponent,
            self.stderr.unstable,
            self.stderr.beta,
            self.stderr.tau,
            self.n_iterates,
            self.n_orbits
        )
    }
}

/// Average of `log |D f|` along one orbit of `n` iterates.
///
/// The orbit is driven symbolically: the expanding coordinate of the
/// current point is the dyadic expansion of the next 53 past symbols, and
/// the Jacobian is taken at that point.
fn orbit_average(v: &ParamVector, spec: &BernoulliSpec, n: usize, seed: u64) -> [f64; 3] {
    let mut rng = seed::rng(seed);
    let symbols: Vec<i8> = (0..n + PAST_BITS).map(|_| spec.draw(&mut rng)).collect();
    let mut sums = [0.0; 3];
    let mut first_value = None;
    let mut constant = [true; 3];
    for k in 0..n {
        let x = symbols[k..k + PAST_BITS]
            .iter()
            .rev()
            .fold(0.0, |acc, &s| 0.5 * (acc + f64::from(s)));
        let d = derivative_at(v, Point3::new(x, 0.0, 0.0)).expect("dyadic values of +-1 symbols are never 0");
        let logs = d.diag.map(f64::ln);
        match first_value {
            None => first_value = Some(logs),
            Some(first) => {
                for i in 0..3 {
                    constant[i] &= logs[i] == first[i];
                }
            }
        }
        for i in 0..3 {
            sums[i] += logs[i];
        }
    }
    let first = first_value.unwrap_or([0.0; 3]);
    // the average of a constant sequence is that constant, without round-off
    std::array::from_fn(|i| if constant[i] { first[i] } else { sums[i] / n as f64 })
}

/// Lyapunov exponents of the push-forward of `b^p`.
///
/// Orbit `j` uses the sub-stream `seed::derive_seed(seed, j)`. The standard
/// error of each exponent is the across-orbit standard deviation over
/// `sqrt(n_orbits)`; with a single orbit it is reported as 0.
pub fn lyapunov_birkhoff(
    v: &ParamVector,
    spec: &BernoulliSpec,
    n_iterates: usize,
    n_orbits: usize,
    seed: u64,
) -> Result<LyapunovEstimate> {
    if n_iterates == 0 || n_orbits == 0 {
        return Err(Error::EmptyInput(
            "lyapunov estimation needs at least one iterate and one orbit",
        ));
    }
    let averages: Vec<[f64; 3]> = (0..n_orbits as u64)
        .into_par_iter()
        .map(|j| orbit_average(v, spec, n_iterates, seed::derive_seed(seed, j)))
        .collect();

    let stats = |i: usize| {
        let values: Vec<f64> = averages.iter().map(|a| a[i]).collect();
        let mean = if values.iter().all(|&x| x == values[0]) {
            values[0]
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        };
        let stderr = if values.len() > 1 {
            let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
            (var / values.len() as f64).sqrt()
        } else {
            0.0
        };
        (mean, stderr)
    };
    let (unstable, se_u) = stats(0);
    let (beta_exponent, se_b) = stats(1);
    let (tau_exponent, se_t) = stats(2);
    let (weak_axis, weak_stable, strong_stable) = if beta_exponent >= tau_exponent {
        (StableAxis::Y, beta_exponent, tau_exponent)
    } else {
        (StableAxis::Z, tau_exponent, beta_exponent)
    };
    Ok(LyapunovEstimate {
        unstable,
        weak_stable,
        strong_stable,
        beta_exponent,
        tau_exponent,
        weak_axis,
        stderr: ExponentStderr {
            unstable: se_u,
            beta: se_b,
            tau: se_t,
        },
        n_iterates,
        n_orbits,
    })
}
