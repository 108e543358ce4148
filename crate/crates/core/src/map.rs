//! The linear solenoid map on the cube `[-1, 1]^3`.
//!
//! For `v = (beta1, beta2, tau1, tau2)` the map doubles `x` and contracts
//! `(y, z)` towards `(1, 1)` or `(-1, -1)` depending on the sign of `x`:
//!
//! ```text
//! f(x, y, z) = (2x - 1, beta1*y + (1 - beta1), tau1*z + (1 - tau1))   if x >= 0
//! f(x, y, z) = (2x + 1, beta2*y - (1 - beta2), tau2*z - (1 - tau2))   if x <  0
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed when checking that a computed point stays inside the cube.
pub const CUBE_TOLERANCE: f64 = 1e-14;

/// Validated solenoid parameters.
///
/// All four ratios lie in `(0, 1)` and `tau1 + tau2 < 1`. Whether the
/// attractor dimension formulas apply (`beta1 + beta2 > tau1 + tau2`) is
/// recorded separately in [`ParamVector::moran_valid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamVector {
    beta1: f64,
    beta2: f64,
    tau1: f64,
    tau2: f64,
    moran_valid: bool,
}

impl ParamVector {
    pub fn new(beta1: f64, beta2: f64, tau1: f64, tau2: f64) -> Result<Self> {
        validate_params([beta1, beta2, tau1, tau2])
    }

    pub fn beta1(&self) -> f64 {
        self.beta1
    }
    pub fn beta2(&self) -> f64 {
        self.beta2
    }
    pub fn tau1(&self) -> f64 {
        self.tau1
    }
    pub fn tau2(&self) -> f64 {
        self.tau2
    }

    /// `beta1 + beta2 > tau1 + tau2`.
    pub fn moran_valid(&self) -> bool {
        self.moran_valid
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.beta1, self.beta2, self.tau1, self.tau2]
    }

    /// `(beta, tau)` contraction ratios of a branch.
    pub fn ratios(&self, branch: Branch) -> (f64, f64) {
        match branch {
            Branch::First => (self.beta1, self.tau1),
            Branch::Second => (self.beta2, self.tau2),
        }
    }

    pub(crate) fn require_moran_valid(&self) -> Result<()> {
        if self.moran_valid {
            Ok(())
        } else {
            Err(Error::HypothesisViolated {
                beta_sum: self.beta1 + self.beta2,
                tau_sum: self.tau1 + self.tau2,
            })
        }
    }
}

impl<'de> Deserialize<'de> for ParamVector {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            beta1: f64,
            beta2: f64,
            tau1: f64,
            tau2: f64,
        }
        let raw = Raw::deserialize(de)?;
        ParamVector::new(raw.beta1, raw.beta2, raw.tau1, raw.tau2).map_err(serde::de::Error::custom)
    }
}

/// Checks `(beta1, beta2, tau1, tau2)` and builds a [`ParamVector`].
pub fn validate_params(raw: [f64; 4]) -> Result<ParamVector> {
    const NAMES: [&str; 4] = ["beta1", "beta2", "tau1", "tau2"];
    for (name, &value) in NAMES.iter().zip(raw.iter()) {
        // NaN fails both comparisons
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::OutOfRange { name, value });
        }
    }
    let [beta1, beta2, tau1, tau2] = raw;
    let sum = tau1 + tau2;
    if sum >= 1.0 {
        return Err(Error::TauSumTooLarge { sum });
    }
    Ok(ParamVector {
        beta1,
        beta2,
        tau1,
        tau2,
        moran_valid: beta1 + beta2 > tau1 + tau2,
    })
}

/// A point of the cube `[-1, 1]^3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn in_cube(&self, tol: f64) -> bool {
        [self.x, self.y, self.z].iter().all(|c| c.abs() <= 1.0 + tol)
    }

    pub fn max_dist(&self, other: &Point3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// The two affine pieces of the map. `First` acts on `x >= 0` and corresponds
/// to the symbol `+1`; `Second` acts on `x < 0` and corresponds to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn of_x(x: f64) -> Branch {
        if x >= 0.0 {
            Branch::First
        } else {
            Branch::Second
        }
    }

    pub fn from_symbol(s: i8) -> Branch {
        if s > 0 {
            Branch::First
        } else {
            Branch::Second
        }
    }

    pub fn symbol(self) -> i8 {
        match self {
            Branch::First => 1,
            Branch::Second => -1,
        }
    }

    /// 1 or 2, as used in error messages and on the command line.
    pub fn index(self) -> u8 {
        match self {
            Branch::First => 1,
            Branch::Second => 2,
        }
    }
}

/// Diagonal Jacobian `diag(2, beta_i, tau_i)` of one branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeMatrix {
    pub diag: [f64; 3],
    pub branch: Branch,
}

impl DerivativeMatrix {
    pub fn for_branch(v: &ParamVector, branch: Branch) -> Self {
        let (beta, tau) = v.ratios(branch);
        DerivativeMatrix {
            diag: [2.0, beta, tau],
            branch,
        }
    }
}

/// Affine contraction of `[-1, 1]` with ratio `gamma` fixing `+1` (symbol
/// `+1`) or `-1` (symbol `-1`).
#[inline]
pub(crate) fn contract(t: f64, gamma: f64, symbol: i8) -> f64 {
    if symbol > 0 {
        gamma * t + (1.0 - gamma)
    } else {
        gamma * t - (1.0 - gamma)
    }
}

/// Applies the solenoid map. Points with `x = 0` take the `x >= 0` branch.
///
/// Panics if round-off pushes the image more than [`CUBE_TOLERANCE`]
/// outside the cube; results are never clamped.
pub fn apply_map(v: &ParamVector, p: Point3) -> Point3 {
    let branch = Branch::of_x(p.x);
    let (beta, tau) = v.ratios(branch);
    let s = branch.symbol();
    let out = Point3 {
        x: 2.0 * p.x - f64::from(s),
        y: contract(p.y, beta, s),
        z: contract(p.z, tau, s),
    };
    assert!(
        !p.in_cube(CUBE_TOLERANCE) || out.in_cube(CUBE_TOLERANCE),
        "solenoid map left the cube: {p:?} -> {out:?} for {v:?}"
    );
    out
}

/// Inverse of one branch of the map.
///
/// Branch 1 has image `[-1, 1] x [1 - 2*beta1, 1] x [1 - 2*tau1, 1]`,
/// branch 2 has image `[-1, 1) x [-1, 2*beta2 - 1] x [-1, 2*tau2 - 1]`.
/// (`x = 1` is excluded from branch 2 because its preimage `x = 0` belongs
/// to branch 1.)
pub fn apply_inverse(v: &ParamVector, p: Point3, branch: Branch) -> Result<Point3> {
    let (beta, tau) = v.ratios(branch);
    let s = f64::from(branch.symbol());
    let y = (p.y - s * (1.0 - beta)) / beta;
    let z = (p.z - s * (1.0 - tau)) / tau;
    let x = (p.x + s) / 2.0;
    let tol = 1e-12;
    let in_image = y.abs() <= 1.0 + tol && z.abs() <= 1.0 + tol && p.x.abs() <= 1.0 + tol && Branch::of_x(x) == branch;
    if !in_image {
        return Err(Error::NotInBranchImage {
            branch: branch.index(),
            y: p.y,
            z: p.z,
        });
    }
    Ok(Point3 { x, y, z })
}

/// Jacobian of the map at `p`; undefined on the plane `x = 0`.
pub fn derivative_at(v: &ParamVector, p: Point3) -> Result<DerivativeMatrix> {
    if p.x == 0.0 {
        return Err(Error::OnSingularity);
    }
    Ok(DerivativeMatrix::for_branch(v, Branch::of_x(p.x)))
}

/// `(p0, f(p0), ..., f^n(p0))`.
pub fn orbit(v: &ParamVector, p0: Point3, n: usize) -> Vec<Point3> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(p0);
    let mut p = p0;
    for _ in 0..n {
        p = apply_map(v, p);
        out.push(p);
    }
    out
}
