//! The stable cross-section of the attractor.
//!
//! The attractor is `[-1, 1] x K` where `K` is the attractor of the planar
//! contractions
//!
//! ```text
//! T1(y, z) = (beta1*y + (1 - beta1), tau1*z + (1 - tau1))   fixes (1, 1)
//! T2(y, z) = (beta2*y - (1 - beta2), tau2*z - (1 - tau2))   fixes (-1, -1)
//! ```
//!
//! `K` is sampled by the chaos game and covered exactly by cylinder
//! rectangles `T_{s1} o ... o T_{sn}([-1, 1]^2)`.

use std::io::{self, Write};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{contract, Branch, ParamVector, Point3};
use crate::seed;
use crate::symbolic::BernoulliSpec;

/// Default number of discarded chaos-game iterates. The walk starts at the
/// fixed point of `T1`, which already lies on the attractor, so burn-in only
/// affects the distribution, by at most `max(beta, tau)^burn_in`.
pub const DEFAULT_BURN_IN: usize = 64;

/// Largest supported cylinder depth.
pub const MAX_CYLINDER_DEPTH: u32 = 24;

/// The planar pair `(T1, T2)` stored as affine coefficients
/// `(y, z) -> (a*y + b, c*z + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanarMapPair {
    pub maps: [[f64; 4]; 2],
}

impl PlanarMapPair {
    pub fn new(v: &ParamVector) -> Self {
        let coeffs = |branch: Branch| {
            let (beta, tau) = v.ratios(branch);
            let s = f64::from(branch.symbol());
            [beta, s * (1.0 - beta), tau, s * (1.0 - tau)]
        };
        PlanarMapPair {
            maps: [coeffs(Branch::First), coeffs(Branch::Second)],
        }
    }

    #[inline]
    pub fn apply(&self, branch: Branch, yz: [f64; 2]) -> [f64; 2] {
        let [a, b, c, d] = self.maps[usize::from(branch.index() - 1)];
        [a * yz[0] + b, c * yz[1] + d]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudMeta {
    pub seed: u64,
    pub samples: usize,
    pub burn_in: usize,
    pub p: f64,
}

/// Sampled points `(y, z)` of the cross-section.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCloud2 {
    pub points: Vec<[f64; 2]>,
    pub meta: CloudMeta,
}

impl PointCloud2 {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.points.iter().map(|p| p[0]).collect()
    }

    /// Writes a `y,z` header followed by one row per point.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "y,z")?;
        for [y, z] in &self.points {
            writeln!(out, "{y},{z}")?;
        }
        Ok(())
    }
}

/// Writes an `x,y,z` header followed by one row per point.
pub fn write_points3_csv<W: Write>(points: &[Point3], mut out: W) -> io::Result<()> {
    writeln!(out, "x,y,z")?;
    for p in points {
        writeln!(out, "{},{},{}", p.x, p.y, p.z)?;
    }
    Ok(())
}

/// Random iteration of `(T1, T2)`, choosing `T1` with probability `p`.
///
/// Starts at `(1, 1)`, discards `burn_in` iterates and returns the next `n`.
/// The empirical distribution approximates the projection of the Bernoulli
/// measure `b^p` onto the cross-section.
pub fn chaos_game(v: &ParamVector, p: f64, n: usize, burn_in: usize, seed: u64) -> Result<PointCloud2> {
    chaos_game_from(v, p, [1.0, 1.0], n, burn_in, seed)
}

pub fn chaos_game_from(
    v: &ParamVector,
    p: f64,
    start: [f64; 2],
    n: usize,
    burn_in: usize,
    seed: u64,
) -> Result<PointCloud2> {
    let spec = BernoulliSpec::new(p)?;
    if n == 0 {
        return Err(Error::EmptyInput("chaos game needs at least one point"));
    }
    let maps = PlanarMapPair::new(v);
    let mut rng = seed::rng(seed);
    let mut yz = start;
    for _ in 0..burn_in {
        yz = maps.apply(Branch::from_symbol(spec.draw(&mut rng)), yz);
    }
    let points = (0..n)
        .map(|_| {
            yz = maps.apply(Branch::from_symbol(spec.draw(&mut rng)), yz);
            yz
        })
        .collect();
    Ok(PointCloud2 {
        points,
        meta: CloudMeta {
            seed,
            samples: n,
            burn_in,
            p,
        },
    })
}

/// Axis-aligned rectangle `center +- half`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub center: [f64; 2],
    pub half: [f64; 2],
}

impl Rect {
    pub const UNIT: Rect = Rect {
        center: [0.0, 0.0],
        half: [1.0, 1.0],
    };

    pub fn contains(&self, yz: [f64; 2], tol: f64) -> bool {
        (0..2).all(|i| (yz[i] - self.center[i]).abs() <= self.half[i] + tol)
    }

    pub fn contains_rect(&self, other: &Rect, tol: f64) -> bool {
        (0..2).all(|i| (other.center[i] - self.center[i]).abs() + other.half[i] <= self.half[i] + tol)
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.center[0] - self.half[0], self.center[0] + self.half[0])
    }
}

/// All `2^depth` cylinder rectangles of a given depth, in lexicographic
/// order of their words (symbol `T1` before `T2`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CylinderCover {
    pub depth: u32,
    pub rects: Vec<Rect>,
}

impl CylinderCover {
    pub fn contains(&self, yz: [f64; 2], tol: f64) -> bool {
        self.rects.iter().any(|r| r.contains(yz, tol))
    }
}

pub fn cylinder_cover(v: &ParamVector, depth: u32) -> Result<CylinderCover> {
    if depth > MAX_CYLINDER_DEPTH {
        return Err(Error::DepthTooLarge(depth));
    }
    let mut rects = vec![Rect::UNIT];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(rects.len() * 2);
        for branch in [Branch::First, Branch::Second] {
            let (beta, tau) = v.ratios(branch);
            let s = branch.symbol();
            next.extend(rects.iter().map(|r| Rect {
                center: [contract(r.center[0], beta, s), contract(r.center[1], tau, s)],
                half: [beta * r.half[0], tau * r.half[1]],
            }));
        }
        rects = next;
    }
    Ok(CylinderCover { depth, rects })
}

/// `n` points of the attractor: uniform `x` paired with chaos-game `(y, z)`
/// driven by the balanced measure.
pub fn attractor_cloud_3d(v: &ParamVector, n: usize, seed: u64) -> Result<Vec<Point3>> {
    attractor_cloud_3d_with(v, &BernoulliSpec::half(), n, seed)
}

/// Like [`attractor_cloud_3d`] but sampling the product measure of a general
/// Bernoulli spec: `x` is the dyadic value of 53 i.i.d. symbols and `(y, z)`
/// comes from the chaos game with the same `p`. Uses two sub-streams of
/// `seed`.
pub fn attractor_cloud_3d_with(v: &ParamVector, spec: &BernoulliSpec, n: usize, seed: u64) -> Result<Vec<Point3>> {
    let cloud = chaos_game(v, spec.p(), n, DEFAULT_BURN_IN, seed::derive_seed(seed, 0))?;
    let mut rng = seed::sub_rng(seed, 1);
    let balanced = spec.p() == 0.5;
    Ok(cloud
        .points
        .iter()
        .map(|&[y, z]| {
            let x = if balanced {
                rng.gen_range(-1.0..=1.0)
            } else {
                (1..=53).fold(0.0, |acc, k| acc + f64::from(spec.draw(&mut rng)) * 0.5f64.powi(k))
            };
            Point3::new(x, y, z)
        })
        .collect())
}
