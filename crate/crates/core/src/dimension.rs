//! Closed-form dimension theory.
//!
//! Attractor dimensions come from Moran-type equations: with `d` the root of
//! `beta1^d + beta2^d = 1` the attractor has dimension `d + 1` when
//! `beta1 + beta2 < 1` (the cylinders are disjoint in `y`); when
//! `beta1 + beta2 >= 1` and `d` solves `beta1*tau1^d + beta2*tau2^d = 1` the
//! box dimension is `d + 2`.
//!
//! For the push-forward of a Bernoulli measure `b^p` the dimension splits
//! into an unstable part `h / log 2` and a stable part given by the
//! Ledrappier-Young formula
//!
//! ```text
//! stable = h / -xi_strong + (1 - xi_weak / xi_strong) * dim(transversal projection)
//! ```
//!
//! where `xi_gamma = p log gamma1 + (1 - p) log gamma2` are the stable
//! Lyapunov exponents and `h` is the binary entropy of `p`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::ParamVector;
use crate::symbolic::BernoulliSpec;

/// Upper bound on `beta1, beta2` under which the overlapping-regime results
/// hold for almost every parameter.
pub const GENERICITY_BOUND: f64 = 0.649;

/// Tolerance for the equalities tested by [`full_dimension_verdict`].
pub const VERDICT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoranEquation {
    /// `beta1^d + beta2^d = 1`
    Beta,
    /// `beta1*tau1^d + beta2*tau2^d = 1`
    BetaTau,
    /// `gamma1^d + gamma2^d = 1` for an arbitrary pair.
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MoranRoot {
    pub d: f64,
    pub equation: MoranEquation,
    pub residual: f64,
}

/// Root of the decreasing function `d -> sum_i weight_i * ratio_i^d - 1`.
///
/// The bracket starts at `[0, 1]` and doubles its upper end (at most 64
/// times) until the sum drops below 1, then bisects to machine precision.
fn moran_bisect(weights: [f64; 2], ratios: [f64; 2]) -> (f64, f64) {
    let f = |d: f64| weights[0] * ratios[0].powf(d) + weights[1] * ratios[1].powf(d) - 1.0;
    if f(0.0) <= 0.0 {
        return (0.0, f(0.0));
    }
    let mut hi = 1.0;
    for _ in 0..64 {
        if f(hi) < 0.0 {
            break;
        }
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    (d, f(d))
}

/// Root of `gamma1^d + gamma2^d = 1` for ratios in `(0, 1)`.
pub fn solve_moran_pair(gamma1: f64, gamma2: f64) -> MoranRoot {
    let (d, residual) = moran_bisect([1.0, 1.0], [gamma1, gamma2]);
    MoranRoot {
        d,
        equation: MoranEquation::Pair,
        residual,
    }
}

pub fn solve_moran_beta(v: &ParamVector) -> MoranRoot {
    MoranRoot {
        equation: MoranEquation::Beta,
        ..solve_moran_pair(v.beta1(), v.beta2())
    }
}

/// Root of `beta1*tau1^d + beta2*tau2^d = 1`; needs `beta1 + beta2 >= 1`.
pub fn solve_moran_beta_tau(v: &ParamVector) -> Result<MoranRoot> {
    let sum = v.beta1() + v.beta2();
    if sum < 1.0 {
        return Err(Error::WrongRegime { sum });
    }
    let (d, residual) = moran_bisect([v.beta1(), v.beta2()], [v.tau1(), v.tau2()]);
    Ok(MoranRoot {
        d,
        equation: MoranEquation::BetaTau,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `beta1 + beta2 < 1`
    Disjoint,
    /// `beta1 + beta2 >= 1`
    Overlapping,
}

impl Regime {
    pub fn of(v: &ParamVector) -> Regime {
        if v.beta1() + v.beta2() < 1.0 {
            Regime::Disjoint
        } else {
            Regime::Overlapping
        }
    }
}

/// Hausdorff dimension of the attractor. Exact where it is proven for the
/// given parameters; otherwise only a generic (almost-every) statement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HausdorffDim {
    Exact { value: f64 },
    Generic { value: Option<f64> },
}

impl HausdorffDim {
    pub fn value(&self) -> Option<f64> {
        match *self {
            HausdorffDim::Exact { value } => Some(value),
            HausdorffDim::Generic { value } => value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionReport {
    pub box_dim: f64,
    pub hausdorff_dim: HausdorffDim,
    pub regime: Regime,
    pub moran: MoranRoot,
    pub caveats: Vec<String>,
    pub formulas: Vec<&'static str>,
}

pub fn attractor_dimension(v: &ParamVector) -> Result<DimensionReport> {
    v.require_moran_valid()?;
    let regime = Regime::of(v);
    let mut caveats = Vec::new();
    match regime {
        Regime::Disjoint => {
            let moran = solve_moran_beta(v);
            let dim = moran.d + 1.0;
            let tau_root = solve_moran_pair(v.tau1(), v.tau2()).d;
            if tau_root > moran.d {
                caveats.push(format!(
                    "the tau Moran root {tau_root:.6} exceeds the beta root {:.6}; the z-projection alone \
                     is larger than the closed form, which is therefore only a lower bound",
                    moran.d
                ));
            }
            Ok(DimensionReport {
                box_dim: dim,
                hausdorff_dim: HausdorffDim::Exact { value: dim },
                regime,
                moran,
                caveats,
                formulas: vec!["moran-beta", "product-with-interval"],
            })
        }
        Regime::Overlapping => {
            let moran = solve_moran_beta_tau(v)?;
            let dim = moran.d + 2.0;
            let hausdorff_dim = if v.beta1() < GENERICITY_BOUND && v.beta2() < GENERICITY_BOUND {
                caveats.push(format!(
                    "Hausdorff dimension equals the box dimension for almost every beta1, beta2 < {GENERICITY_BOUND}; \
                     exceptional parameters are not detected"
                ));
                HausdorffDim::Generic { value: Some(dim) }
            } else {
                caveats.push(format!(
                    "Hausdorff dimension unknown: beta1 or beta2 >= {GENERICITY_BOUND} is outside the proven range"
                ));
                HausdorffDim::Generic { value: None }
            };
            Ok(DimensionReport {
                box_dim: dim,
                hausdorff_dim,
                regime,
                moran,
                caveats,
                formulas: vec!["moran-beta-tau", "product-with-interval"],
            })
        }
    }
}

/// Binary entropy of `b^p` in nats, with `0 log 0 = 0`.
pub fn entropy(spec: &BernoulliSpec) -> f64 {
    let p = spec.p();
    let term = |q: f64| if q > 0.0 { -q * q.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// `p log gamma1 + (1 - p) log gamma2`: the average log-contraction of the
/// pair under `b^p`.
pub fn xi_exponent(spec: &BernoulliSpec, gamma1: f64, gamma2: f64) -> f64 {
    let p = spec.p();
    // skip zero-weight terms so p in {0, 1} gives exactly log gamma_i
    let mut xi = 0.0;
    if p > 0.0 {
        xi += p * gamma1.ln();
    }
    if p < 1.0 {
        xi += (1.0 - p) * gamma2.ln();
    }
    xi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionSource {
    ClosedForm,
    GenericHeuristic,
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectedDim {
    pub value: f64,
    pub source: ProjectionSource,
    pub caveat: Option<String>,
}

/// Dimension of the self-similar measure obtained by projecting `b^p` through
/// the pair `(gamma1, gamma2)`.
///
/// With `gamma1 + gamma2 < 1` the images are disjoint and the dimension is
/// `h / -xi`, capped by the Moran root. Otherwise only almost-every results
/// exist: `override_dim` is returned if given, else the heuristic
/// `min(1, h / -xi)`.
pub fn projected_measure_dimension(
    spec: &BernoulliSpec,
    gamma1: f64,
    gamma2: f64,
    override_dim: Option<f64>,
) -> ProjectedDim {
    let h = entropy(spec);
    let ratio = h / -xi_exponent(spec, gamma1, gamma2);
    if gamma1 + gamma2 < 1.0 {
        let d = solve_moran_pair(gamma1, gamma2).d;
        return ProjectedDim {
            value: ratio.min(d),
            source: ProjectionSource::ClosedForm,
            caveat: None,
        };
    }
    match override_dim {
        Some(value) => ProjectedDim {
            value,
            source: ProjectionSource::UserSupplied,
            caveat: None,
        },
        None => ProjectedDim {
            value: ratio.min(1.0),
            source: ProjectionSource::GenericHeuristic,
            caveat: Some(
                "overlapping pair: min(1, h / -xi) holds only for almost every parameter and is an upper bound in general"
                    .into(),
            ),
        },
    }
}

/// Which stable direction contracts less on average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StableBranch {
    /// `xi_beta >= xi_tau`: `y` is the weak stable direction.
    WeakStableDominant,
    /// `xi_beta < xi_tau`: `z` is the weak stable direction.
    StrongStableDominant,
}

/// Ledrappier-Young dimension along the stable plane.
///
/// `xi_weak >= xi_strong` are the two (negative) stable exponents and
/// `transversal` the dimension of the measure projected onto the weak
/// direction.
pub fn ledrappier_young_stable(h: f64, xi_weak: f64, xi_strong: f64, transversal: f64) -> f64 {
    h / -xi_strong + (1.0 - xi_weak / xi_strong) * transversal
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureDimensionReport {
    pub p: f64,
    pub total: f64,
    pub unstable: f64,
    pub stable: f64,
    pub branch: StableBranch,
    pub entropy: f64,
    pub xi_beta: f64,
    pub xi_tau: f64,
    pub projected: ProjectedDim,
    pub formulas: Vec<&'static str>,
}

/// Dimension of the push-forward of `b^p` onto the attractor.
///
/// `override_dim` replaces the projected dimension when the weak-direction
/// pair overlaps. For `p` in `{0, 1}` the measure is a point mass at a fixed
/// point and every component is 0.
pub fn measure_dimension(v: &ParamVector, spec: &BernoulliSpec, override_dim: Option<f64>) -> MeasureDimensionReport {
    let h = entropy(spec);
    let xi_beta = xi_exponent(spec, v.beta1(), v.beta2());
    let xi_tau = xi_exponent(spec, v.tau1(), v.tau2());
    let branch = if xi_beta >= xi_tau {
        StableBranch::WeakStableDominant
    } else {
        StableBranch::StrongStableDominant
    };

    if spec.is_degenerate() {
        return MeasureDimensionReport {
            p: spec.p(),
            total: 0.0,
            unstable: 0.0,
            stable: 0.0,
            branch,
            entropy: 0.0,
            xi_beta,
            xi_tau,
            projected: ProjectedDim {
                value: 0.0,
                source: ProjectionSource::ClosedForm,
                caveat: None,
            },
            formulas: vec!["point-mass"],
        };
    }

    let unstable = h / LN_2;
    let (projected, stable) = match branch {
        StableBranch::WeakStableDominant => {
            let proj = projected_measure_dimension(spec, v.beta1(), v.beta2(), override_dim);
            let stable = ledrappier_young_stable(h, xi_beta, xi_tau, proj.value);
            (proj, stable)
        }
        StableBranch::StrongStableDominant => {
            let proj = projected_measure_dimension(spec, v.tau1(), v.tau2(), override_dim);
            let stable = ledrappier_young_stable(h, xi_tau, xi_beta, proj.value);
            (proj, stable)
        }
    };
    MeasureDimensionReport {
        p: spec.p(),
        total: unstable + stable,
        unstable,
        stable,
        branch,
        entropy: h,
        xi_beta,
        xi_tau,
        projected,
        formulas: vec![
            "binary-entropy",
            "unstable-entropy-over-log2",
            "ledrappier-young-stable",
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    FullDimension,
    StrictGap,
    NotCovered,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullDimVerdict {
    pub verdict: Verdict,
    pub witness: Option<BernoulliSpec>,
    pub measure_dim: f64,
    pub attractor_dim: f64,
    pub caveats: Vec<String>,
}

/// Decides whether the balanced Bernoulli measure has the full dimension of
/// the attractor.
///
/// Disjoint regime: full dimension iff `beta1 = beta2`. Overlapping regime
/// with both betas below [`GENERICITY_BOUND`]: full dimension iff
/// `log(2 beta1) / log tau1 = log(2 beta2) / log tau2`, equivalently
/// `beta_i tau_i^d = 1/2` for the root `d`; the balanced projection is taken
/// to have its generic dimension 1. Otherwise the verdict is `NotCovered`.
pub fn full_dimension_verdict(v: &ParamVector) -> Result<FullDimVerdict> {
    let attractor = attractor_dimension(v)?;
    let half = BernoulliSpec::half();
    let mut caveats = Vec::new();
    let (verdict, measure) = match attractor.regime {
        Regime::Disjoint => {
            let measure = measure_dimension(v, &half, None);
            let verdict = if (v.beta1() - v.beta2()).abs() <= VERDICT_TOLERANCE {
                Verdict::FullDimension
            } else {
                Verdict::StrictGap
            };
            (verdict, measure)
        }
        Regime::Overlapping => {
            let measure = measure_dimension(v, &half, Some(1.0));
            if v.beta1() < GENERICITY_BOUND && v.beta2() < GENERICITY_BOUND {
                caveats.push(format!(
                    "holds for almost every beta1, beta2 < {GENERICITY_BOUND}; the balanced beta-projection is \
                     assumed to have its generic dimension 1"
                ));
                let lhs = (2.0 * v.beta1()).ln() / v.tau1().ln();
                let rhs = (2.0 * v.beta2()).ln() / v.tau2().ln();
                let verdict = if (lhs - rhs).abs() <= VERDICT_TOLERANCE {
                    Verdict::FullDimension
                } else {
                    Verdict::StrictGap
                };
                (verdict, measure)
            } else {
                caveats.push(format!("beta1 or beta2 >= {GENERICITY_BOUND}: no result available"));
                (Verdict::NotCovered, measure)
            }
        }
    };
    caveats.extend(attractor.caveats.iter().cloned());
    Ok(FullDimVerdict {
        verdict,
        witness: (verdict == Verdict::FullDimension).then_some(half),
        measure_dim: measure.total,
        attractor_dim: attractor.box_dim,
        caveats,
    })
}
