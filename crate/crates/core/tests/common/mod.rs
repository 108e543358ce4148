//! Test-only oracles, kept independent of the library code paths they check.
#![allow(dead_code)]

use solenoid_dim::symbolic::ShiftDirection;
use solenoid_dim::{apply_map, coding_map, ParamVector, Point3, SymbolWindow};

pub fn params(b1: f64, b2: f64, t1: f64, t2: f64) -> ParamVector {
    ParamVector::new(b1, b2, t1, t2).unwrap()
}

/// One-sample Kolmogorov-Smirnov statistic against the uniform law on `[a, b]`.
pub fn ks_uniform(values: &[f64], a: f64, b: f64) -> f64 {
    let mut xs = values.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = ((x - a) / (b - a)).clamp(0.0, 1.0);
            (cdf - i as f64 / n).abs().max(((i + 1) as f64 / n - cdf).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

pub fn sup_dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// Brute-force sup-norm distance from `p` to the nearest point of `set`,
/// skipping index `skip`.
pub fn nearest2(p: [f64; 2], set: &[[f64; 2]], skip: Option<usize>) -> f64 {
    set.iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, q)| sup_dist2(p, *q))
        .fold(f64::INFINITY, f64::min)
}

pub fn nearest3(p: &Point3, set: &[Point3]) -> f64 {
    set.iter().map(|q| p.max_dist(q)).fold(f64::INFINITY, f64::min)
}

/// Largest nearest-neighbour distance inside a cloud.
pub fn nn_resolution(cloud: &[[f64; 2]]) -> f64 {
    (0..cloud.len())
        .map(|i| nearest2(cloud[i], cloud, Some(i)))
        .fold(0.0, f64::max)
}

/// Directed Hausdorff distance `sup_{a in from} dist(a, to)`.
pub fn directed_hausdorff(from: &[[f64; 2]], to: &[[f64; 2]]) -> f64 {
    from.iter().map(|&a| nearest2(a, to, None)).fold(0.0, f64::max)
}

pub fn hausdorff(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Root of a decreasing function on `[lo, hi]` by plain bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Middle-third Cantor set sampled by its own two-map IFS.
pub fn cantor_samples(n: usize, seed: u64) -> Vec<[f64; 1]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.0;
    for _ in 0..64 {
        x = if rng.gen::<bool>() {
            x / 3.0
        } else {
            x / 3.0 + 2.0 / 3.0
        };
    }
    (0..n)
        .map(|_| {
            x = if rng.gen::<bool>() {
                x / 3.0
            } else {
                x / 3.0 + 2.0 / 3.0
            };
            [x]
        })
        .collect()
}

/// Largest amount by which `|pi(sigma^-1 s) - f(pi(s))|` exceeds its truncation bound.
///
/// Truncation errors of `pi(s)` are pushed through `f`: doubled in `x`,
/// contracted by the largest ratio in `y` and `z`.
pub fn conjugacy_excess(v: &ParamVector, w: &SymbolWindow) -> f64 {
    let here = coding_map(v, w).unwrap();
    let there = coding_map(v, &w.shift(ShiftDirection::Backward).unwrap()).unwrap();
    let image = apply_map(v, here.point);
    let beta = v.beta1().max(v.beta2());
    let tau = v.tau1().max(v.tau2());
    let bound = [
        there.bounds[0] + 2.0 * here.bounds[0],
        there.bounds[1] + beta * here.bounds[1],
        there.bounds[2] + tau * here.bounds[2],
    ];
    let diff = [
        (there.point.x - image.x).abs(),
        (there.point.y - image.y).abs(),
        (there.point.z - image.z).abs(),
    ];
    (0..3).map(|i| diff[i] - bound[i]).fold(f64::NEG_INFINITY, f64::max)
}
