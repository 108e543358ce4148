use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use solenoid_dim::{attractor_dimension, full_dimension_verdict, measure_dimension, validate_params, BernoulliSpec};

use crate::args::SweepArgs;
use crate::UsageError;

/// Frozen column order of sweep CSV output.
pub const CSV_HEADER: &str = "index,beta1,beta2,tau1,tau2,p,regime,box_dim,hausdorff_dim,measure_dim,\
measure_unstable,measure_stable,stable_branch,verdict,error";

/// Axis values of a sweep. A tied axis holds one list used for both
/// components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub tau1: Vec<f64>,
    pub tau2: Vec<f64>,
    pub p: Vec<f64>,
    pub tie_beta: bool,
    pub tie_tau: bool,
}

impl Grid {
    /// Grid points in row order: `beta1` outermost, `p` innermost.
    pub fn points(&self) -> Vec<[f64; 5]> {
        let mut out = Vec::new();
        for &b1 in &self.beta1 {
            let b2s = if self.tie_beta { vec![b1] } else { self.beta2.clone() };
            for &b2 in &b2s {
                for &t1 in &self.tau1 {
                    let t2s = if self.tie_tau { vec![t1] } else { self.tau2.clone() };
                    for &t2 in &t2s {
                        for &p in &self.p {
                            out.push([b1, b2, t1, t2, p]);
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub index: usize,
    pub beta1: f64,
    pub beta2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub p: f64,
    pub regime: Option<String>,
    pub box_dim: Option<f64>,
    pub hausdorff_dim: Option<f64>,
    pub measure_dim: Option<f64>,
    pub measure_unstable: Option<f64>,
    pub measure_stable: Option<f64>,
    pub stable_branch: Option<String>,
    pub verdict: Option<String>,
    pub error: Option<String>,
}

impl Row {
    pub fn csv(&self) -> String {
        fn num(x: Option<f64>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.index,
            self.beta1,
            self.beta2,
            self.tau1,
            self.tau2,
            self.p,
            self.regime.as_deref().unwrap_or(""),
            num(self.box_dim),
            num(self.hausdorff_dim),
            num(self.measure_dim),
            num(self.measure_unstable),
            num(self.measure_stable),
            self.stable_branch.as_deref().unwrap_or(""),
            self.verdict.as_deref().unwrap_or(""),
            self.error.as_deref().unwrap_or(""),
        )
    }
}

/// Serialized name of a unit enum variant, e.g. `"full-dimension"`.
pub fn tag<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

/// Evaluates one grid point. Domain errors become the row's `error` column.
pub fn evaluate(index: usize, point: [f64; 5], override_dim: Option<f64>) -> Row {
    let [beta1, beta2, tau1, tau2, p] = point;
    let mut row = Row {
        index,
        beta1,
        beta2,
        tau1,
        tau2,
        p,
        regime: None,
        box_dim: None,
        hausdorff_dim: None,
        measure_dim: None,
        measure_unstable: None,
        measure_stable: None,
        stable_branch: None,
        verdict: None,
        error: None,
    };
    let result = (|| {
        let v = validate_params([beta1, beta2, tau1, tau2])?;
        let spec = BernoulliSpec::new(p)?;
        let set = attractor_dimension(&v)?;
        let verdict = full_dimension_verdict(&v)?;
        Ok::<_, solenoid_dim::Error>((set, measure_dimension(&v, &spec, override_dim), verdict))
    })();
    match result {
        Ok((set, mu, verdict)) => {
            row.regime = Some(tag(&set.regime));
            row.box_dim = Some(set.box_dim);
            row.hausdorff_dim = set.hausdorff_dim.value();
            row.measure_dim = Some(mu.total);
            row.measure_unstable = Some(mu.unstable);
            row.measure_stable = Some(mu.stable);
            row.stable_branch = Some(tag(&mu.branch));
            row.verdict = Some(tag(&verdict.verdict));
        }
        Err(e) => row.error = Some(e.kind().to_owned()),
    }
    row
}

/// Rows in grid order, computed in parallel.
pub fn run(grid: &Grid, override_dim: Option<f64>) -> Vec<Row> {
    grid.points()
        .into_par_iter()
        .enumerate()
        .map(|(i, point)| evaluate(i, point, override_dim))
        .collect()
}

/// Parses `a,b,c` or an inclusive `start:stop:step` range.
pub fn parse_values(s: &str) -> Result<Vec<f64>, UsageError> {
    let bad = |msg: String| UsageError(format!("grid values {s:?}: {msg}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| bad(format!("{t:?}: {e}")));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step.is_nan() || step <= 0.0 || stop < start {
                return Err(bad("need step > 0 and start <= stop".into()));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            // rounding keeps 0.1 + 2 * 0.05 printing as 0.2
            Ok((0..count)
                .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        _ => Err(bad("expected a,b,c or start:stop:step".into())),
    }
}

/// `key = value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
        let key = key.trim();
        if !["beta1", "beta2", "tau1", "tau2", "beta", "tau", "p", "override"].contains(&key) {
            return Err(UsageError(format!("{}:{}: unknown key {key:?}", path.display(), n + 1)));
        }
        map.insert(key.to_owned(), value.trim().to_owned());
    }
    Ok(map)
}

/// Merges the optional config file with flags (flags win) into a grid and
/// the projected-dimension override.
pub fn resolve(args: &SweepArgs) -> Result<(Grid, Option<f64>), UsageError> {
    let mut keys = match &args.config {
        Some(path) => read_config(path)?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("beta1", &args.beta1),
        ("beta2", &args.beta2),
        ("tau1", &args.tau1),
        ("tau2", &args.tau2),
        ("beta", &args.beta),
        ("tau", &args.tau),
        ("p", &args.p),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            keys.insert(key.to_owned(), v.clone());
            // a flag for one form of an axis replaces the other form from the file
            let others: &[&str] = match key {
                "beta" => &["beta1", "beta2"],
                "beta1" | "beta2" => &["beta"],
                "tau" => &["tau1", "tau2"],
                "tau1" | "tau2" => &["tau"],
                _ => &[],
            };
            for o in others {
                keys.remove(*o);
            }
        }
    }
    if let Some(o) = args.override_dim {
        keys.insert("override".into(), o.to_string());
    }

    let list = |key: &str| keys.get(key).map(|s| parse_values(s)).transpose();
    let axis = |tied: &str, a: &str, b: &str| -> Result<(Vec<f64>, Vec<f64>, bool), UsageError> {
        if let Some(values) = list(tied)? {
            if keys.contains_key(a) || keys.contains_key(b) {
                return Err(UsageError(format!("{tied} cannot be combined with {a} or {b}")));
            }
            return Ok((values, Vec::new(), true));
        }
        match (list(a)?, list(b)?) {
            (Some(x), Some(y)) => Ok((x, y, false)),
            _ => Err(UsageError(format!("sweep needs values for {a} and {b}, or {tied}"))),
        }
    };
    let (beta1, beta2, tie_beta) = axis("beta", "beta1", "beta2")?;
    let (tau1, tau2, tie_tau) = axis("tau", "tau1", "tau2")?;
    let p = list("p")?.unwrap_or_else(|| vec![0.5]);
    let override_dim = keys
        .get("override")
        .map(|s| s.parse::<f64>().map_err(|e| UsageError(format!("override {s:?}: {e}"))))
        .transpose()?;
    Ok((
        Grid {
            beta1,
            beta2,
            tau1,
            tau2,
            p,
            tie_beta,
            tie_tau,
        },
        override_dim,
    ))
}
