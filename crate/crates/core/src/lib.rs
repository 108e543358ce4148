//! Dimension theory of linear solenoids.
//!
//! A linear solenoid is the piecewise-affine map of the cube `[-1, 1]^3`
//! that doubles `x` and contracts `(y, z)` by `(beta_i, tau_i)` on each half
//! `x >= 0` / `x < 0`. This crate provides
//!
//! * the map itself, its inverse branches and Jacobians ([`map`]),
//! * the symbolic coding by two-sided `+-1` sequences and Bernoulli
//!   sampling ([`symbolic`]),
//! * the planar IFS whose attractor is the stable cross-section ([`ifs`]),
//! * closed-form dimensions of the attractor and of Bernoulli measures,
//!   and the full-dimension verdict for the balanced measure ([`dimension`]),
//! * box-counting, local-dimension and Lyapunov estimators that check the
//!   closed forms numerically ([`estimators`]).
//!
//! ```
//! use solenoid_dim::{attractor_dimension, measure_dimension, BernoulliSpec, ParamVector};
//!
//! let v = ParamVector::new(0.4, 0.4, 0.2, 0.2)?;
//! let set = attractor_dimension(&v)?;
//! let mu = measure_dimension(&v, &BernoulliSpec::half(), None);
//! assert!((set.box_dim - mu.total).abs() < 1e-12);
//! # Ok::<(), solenoid_dim::Error>(())
//! ```
//!
//! The `book/` directory at the repository root walks through the theory;
//! its code listings are compiled and run as doc-tests of this crate.

pub mod dimension;
mod error;
pub mod estimators;
pub mod ifs;
pub mod map;
pub mod seed;
pub mod symbolic;

pub use dimension::{
    attractor_dimension, entropy, full_dimension_verdict, measure_dimension, projected_measure_dimension,
    solve_moran_beta, solve_moran_beta_tau, xi_exponent, DimensionReport, FullDimVerdict, HausdorffDim,
    MeasureDimensionReport, MoranRoot, Regime, Verdict,
};
pub use error::{Error, Result};
pub use estimators::{box_counting_dimension, local_dimension, lyapunov_birkhoff, LyapunovEstimate, ScalingFit};
pub use ifs::{attractor_cloud_3d, chaos_game, cylinder_cover, CylinderCover, PointCloud2};
pub use map::{apply_inverse, apply_map, derivative_at, orbit, validate_params, Branch, ParamVector, Point3};
pub use symbolic::{coding_map, dyadic_expansion, gamma_projection, sample_bernoulli, BernoulliSpec, SymbolWindow};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/the-map.md")]
    mod the_map {}
    #[doc = include_str!("../../../book/src/symbolic-coding.md")]
    mod symbolic_coding {}
    #[doc = include_str!("../../../book/src/cross-section.md")]
    mod cross_section {}
    #[doc = include_str!("../../../book/src/attractor-dimension.md")]
    mod attractor_dimension {}
    #[doc = include_str!("../../../book/src/measure-dimension.md")]
    mod measure_dimension {}
    #[doc = include_str!("../../../book/src/full-dimension.md")]
    mod full_dimension {}
    #[doc = include_str!("../../../book/src/estimators.md")]
    mod estimators {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
