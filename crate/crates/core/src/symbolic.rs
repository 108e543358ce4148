//! Symbolic coding of the solenoid.
//!
//! Points of the attractor are coded by two-sided sequences over `{-1, +1}`.
//! The past `s_{-1}, s_{-2}, ...` fixes the expanding coordinate through a
//! signed dyadic expansion, the future `s_0, s_1, ...` fixes the two
//! contracting coordinates through an address map of the planar IFS. Only
//! finite windows of a sequence are ever held, so every coordinate comes with
//! an explicit truncation bound.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{contract, ParamVector, Point3};
use crate::seed;

/// A finite window `s_lo ..= s_hi` of a two-sided sequence, `lo <= 0 <= hi`.
///
/// Serialized as `lo:hi:` followed by one `+` or `-` per symbol, for example
/// `-2:1:+--+` holds `s_-2 = +1, s_-1 = -1, s_0 = -1, s_1 = +1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolWindow {
    lo: i64,
    symbols: Vec<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `(sigma s)_k = s_{k+1}`.
    Forward,
    /// `(sigma^-1 s)_k = s_{k-1}`.
    Backward,
}

impl SymbolWindow {
    pub fn new(lo: i64, symbols: Vec<i8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidWindow("no symbols".into()));
        }
        if let Some(bad) = symbols.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::InvalidWindow(format!("symbol {bad} is not -1 or +1")));
        }
        let hi = lo + symbols.len() as i64 - 1;
        if lo > 0 || hi < 0 {
            return Err(Error::InvalidWindow(format!("[{lo}, {hi}] does not cover index 0")));
        }
        Ok(SymbolWindow { lo, symbols })
    }

    /// Window of a constant sequence.
    pub fn constant(lo: i64, hi: i64, symbol: i8) -> Result<Self> {
        let len =
            usize::try_from(hi - lo + 1).map_err(|_| Error::InvalidWindow(format!("empty range [{lo}, {hi}]")))?;
        SymbolWindow::new(lo, vec![symbol; len])
    }

    /// Builds a window from a generator `k -> s_k`.
    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> i8) -> Result<Self> {
        SymbolWindow::new(lo, (lo..=hi).map(f).collect())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.symbols.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// `s_k`, if `k` is inside the window.
    pub fn get(&self, k: i64) -> Option<i8> {
        let idx = usize::try_from(k - self.lo).ok()?;
        self.symbols.get(idx).copied()
    }

    pub fn symbols(&self) -> &[i8] {
        &self.symbols
    }

    /// `s_0, s_1, ..., s_hi`.
    pub fn future(&self) -> &[i8] {
        &self.symbols[(-self.lo) as usize..]
    }

    /// `s_-1, s_-2, ..., s_lo` (in that order).
    pub fn past(&self) -> impl Iterator<Item = i8> + '_ {
        self.symbols[..(-self.lo) as usize].iter().rev().copied()
    }

    /// Re-indexes the window. The stored symbols are unchanged; forward
    /// moves both bounds down by one, backward moves them up by one.
    pub fn shift(&self, direction: ShiftDirection) -> Result<Self> {
        let delta = match direction {
            ShiftDirection::Forward => -1,
            ShiftDirection::Backward => 1,
        };
        let lo = self.lo + delta;
        let hi = self.hi() + delta;
        if lo > 0 || hi < 0 {
            return Err(Error::WindowExhausted { lo, hi });
        }
        Ok(SymbolWindow {
            lo,
            symbols: self.symbols.clone(),
        })
    }
}

impl fmt::Display for SymbolWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.lo, self.hi())?;
        for &s in &self.symbols {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SymbolWindow {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidWindow(format!("{why} in {text:?}"));
        let mut parts = text.trim().splitn(3, ':');
        let lo: i64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad lower bound"))?;
        let hi: i64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad upper bound"))?;
        let body = parts.next().ok_or_else(|| bad("missing symbols"))?;
        let symbols = body
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(bad("unexpected character")),
            })
            .collect::<Result<Vec<i8>>>()?;
        if hi - lo + 1 != symbols.len() as i64 {
            return Err(bad("length does not match bounds"));
        }
        SymbolWindow::new(lo, symbols)
    }
}

/// A truncated value together with a bound on its distance to the limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncated {
    pub value: f64,
    pub bound: f64,
}

/// `sum_{k=1}^{-lo} s_{-k} 2^{-k}`, with tail bound `2^lo`.
pub fn dyadic_expansion(w: &SymbolWindow) -> Result<Truncated> {
    if w.lo() > -1 {
        return Err(Error::InvalidWindow("dyadic expansion needs lo <= -1".into()));
    }
    let mut value = 0.0;
    let mut weight = 1.0;
    for s in w.past() {
        weight *= 0.5;
        value += f64::from(s) * weight;
    }
    Ok(Truncated { value, bound: weight })
}

/// Normalized projection of the future `s_0 ..= s_hi` onto `[-1, 1]`.
///
/// Evaluated as the address map `A_{s_0} o A_{s_1} o ... o A_{s_hi} (0)` with
/// `A_{+1}(t) = g1*t + (1 - g1)` and `A_{-1}(t) = g2*t - (1 - g2)`. The bound
/// is `max(g1, g2)^(hi + 1)`.
pub fn gamma_projection(w: &SymbolWindow, gamma1: f64, gamma2: f64) -> Result<Truncated> {
    check_ratio(gamma1)?;
    check_ratio(gamma2)?;
    Ok(address_value(w.future(), gamma1, gamma2))
}

fn address_value(word: &[i8], gamma1: f64, gamma2: f64) -> Truncated {
    let t = word.iter().rev().fold(0.0, |t, &s| {
        let g = if s > 0 { gamma1 } else { gamma2 };
        contract(t, g, s)
    });
    let bound = gamma1.max(gamma2).powi(word.len() as i32);
    Truncated { value: t, bound }
}

/// The interval `A_{w_0} o ... o A_{w_{n-1}} ([-1, 1])` addressed by a finite
/// forward word.
pub fn cylinder_interval(word: &[i8], gamma1: f64, gamma2: f64) -> (f64, f64) {
    let image = |t0: f64| {
        word.iter().rev().fold(t0, |t, &s| {
            let g = if s > 0 { gamma1 } else { gamma2 };
            contract(t, g, s)
        })
    };
    (image(-1.0), image(1.0))
}

fn check_ratio(g: f64) -> Result<()> {
    if g > 0.0 && g < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "gamma",
            value: g,
        })
    }
}

/// Image of a window under the coding map, with per-coordinate bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CodedPoint {
    pub point: Point3,
    pub bounds: [f64; 3],
}

/// `(dyadic expansion of the past, beta projection, tau projection)`.
pub fn coding_map(v: &ParamVector, w: &SymbolWindow) -> Result<CodedPoint> {
    let x = dyadic_expansion(w)?;
    let y = gamma_projection(w, v.beta1(), v.beta2())?;
    let z = gamma_projection(w, v.tau1(), v.tau2())?;
    Ok(CodedPoint {
        point: Point3::new(x.value, y.value, z.value),
        bounds: [x.bound, y.bound, z.bound],
    })
}

/// Bernoulli measure on the two-sided shift: each symbol is `+1` with
/// probability `p`, independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BernoulliSpec {
    p: f64,
}

impl BernoulliSpec {
    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(BernoulliSpec { p })
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn half() -> Self {
        BernoulliSpec { p: 0.5 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `p` is 0 or 1, so the measure is a point mass.
    pub fn is_degenerate(&self) -> bool {
        self.p == 0.0 || self.p == 1.0
    }

    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> i8 {
        if rng.gen::<f64>() < self.p {
            1
        } else {
            -1
        }
    }
}

impl<'de> Deserialize<'de> for BernoulliSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: f64,
        }
        BernoulliSpec::new(Raw::deserialize(de)?.p).map_err(serde::de::Error::custom)
    }
}

/// I.i.d. window `s_lo ..= s_hi` drawn from `spec`, deterministic in `seed`.
pub fn sample_bernoulli(spec: &BernoulliSpec, lo: i64, hi: i64, seed: u64) -> Result<SymbolWindow> {
    let mut rng = seed::rng(seed);
    SymbolWindow::from_fn(lo, hi, |_| spec.draw(&mut rng))
}

/// Smallest window half-length `n` with `max(2^-1, gamma...)^n < tol`, so
/// that a window `-n ..= n-1` codes every coordinate to within `tol`.
pub fn half_length_for(v: &ParamVector, tol: f64) -> i64 {
    let rate = [0.5, v.beta1(), v.beta2(), v.tau1(), v.tau2()]
        .into_iter()
        .fold(0.0_f64, f64::max);
    ((tol.ln() / rate.ln()).floor() as i64 + 1).max(1)
}

/// `n` points of the attractor distributed (up to truncation `tol`) as the
/// push-forward of the Bernoulli measure under the coding map.
///
/// Sample `i` uses the sub-stream `seed::derive_seed(seed, i)`.
pub fn sample_coded_points(v: &ParamVector, spec: &BernoulliSpec, n: usize, seed: u64, tol: f64) -> Vec<Point3> {
    use rayon::prelude::*;
    let half = half_length_for(v, tol);
    (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let w = sample_bernoulli(spec, -half, half - 1, seed::derive_seed(seed, i)).expect("window covers 0");
            coding_map(v, &w).expect("window has a past and a future").point
        })
        .collect()
}
