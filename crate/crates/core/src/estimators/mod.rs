//! Numerical estimators used to check the closed forms: box-counting
//! dimension of point clouds, local dimension of sampled measures and
//! Birkhoff averages of the log-derivative. All limits are replaced by
//! least-squares fits over a caller-chosen dyadic range.

mod box_count;
mod local;
mod lyapunov;
mod regression;

pub use box_count::{box_counting_dimension, occupied_boxes};
pub use local::{local_dimension, LocalDimension};
pub use lyapunov::{lyapunov_birkhoff, ExponentStderr, LyapunovEstimate, StableAxis};
pub use regression::{least_squares, Scale, ScalingFit};
