use std::f64::consts::LN_2;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use solenoid_dim::estimators::LocalDimension;
use solenoid_dim::ifs::{attractor_cloud_3d_with, write_points3_csv};
use solenoid_dim::{
    attractor_dimension, box_counting_dimension, chaos_game, full_dimension_verdict, local_dimension,
    lyapunov_birkhoff, measure_dimension, validate_params, xi_exponent, BernoulliSpec, DimensionReport, FullDimVerdict,
    LyapunovEstimate, MeasureDimensionReport, ScalingFit,
};

use crate::args::{AttractorArgs, BoxArgs, DimsArgs, Format, LocalArgs, LyapunovArgs, Space, SweepArgs};
use crate::output::{self, RunConfig};
use crate::sweep;
use crate::UsageError;

#[derive(Serialize)]
struct DimsBody {
    attractor: DimensionReport,
    measure: Option<MeasureDimensionReport>,
    verdict: FullDimVerdict,
}

pub fn dims(args: &DimsArgs) -> Result<()> {
    let config = RunConfig {
        v: Some(args.v),
        p: args.p,
        override_dim: args.override_dim,
        format: Some(args.format),
        ..RunConfig::new("dims")
    };
    let out = args.output.out.as_deref();
    let v = validate_params(args.v)?;
    let attractor = attractor_dimension(&v)?;
    let measure = match args.p {
        Some(p) => Some(measure_dimension(&v, &BernoulliSpec::new(p)?, args.override_dim)),
        None => None,
    };
    let verdict = full_dimension_verdict(&v)?;
    match args.format {
        Format::Json => output::write_json(
            out,
            &config,
            &DimsBody {
                attractor,
                measure,
                verdict,
            },
        ),
        Format::Csv => {
            let [b1, b2, t1, t2] = args.v;
            let row = sweep::evaluate(0, [b1, b2, t1, t2, args.p.unwrap_or(0.5)], args.override_dim);
            output::write_csv(out, &config, sweep::CSV_HEADER, &[row.csv()])
        }
    }
}

pub fn attractor(args: &AttractorArgs) -> Result<()> {
    let v = validate_params(args.v)?;
    let mut config = RunConfig {
        v: Some(args.v),
        p: Some(args.p),
        seed: Some(args.seed),
        n: Some(args.n),
        ..RunConfig::new("attractor")
    };
    let mut out = output::open(args.output.out.as_deref())?;
    match args.dim {
        Space::Planar => {
            config.dim = Some(2);
            config.burn_in = Some(args.burn_in);
            let cloud = chaos_game(&v, args.p, args.n, args.burn_in, args.seed)?;
            writeln!(out, "{}", config.csv_comment())?;
            cloud.write_csv(&mut out)?;
        }
        Space::Solid => {
            config.dim = Some(3);
            let points = attractor_cloud_3d_with(&v, &BernoulliSpec::new(args.p)?, args.n, args.seed)?;
            writeln!(out, "{}", config.csv_comment())?;
            write_points3_csv(&points, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct BoxBody {
    fit: ScalingFit,
    /// Closed-form box dimension of the cross-section, when the hypothesis holds.
    theory: Option<f64>,
}

pub fn estimate_box(args: &BoxArgs) -> Result<()> {
    let v = validate_params(args.v)?;
    let config = RunConfig {
        v: Some(args.v),
        p: Some(args.p),
        seed: Some(args.seed),
        n: Some(args.n),
        burn_in: Some(args.burn_in),
        k: Some(args.k),
        format: Some(args.format),
        ..RunConfig::new("estimate box")
    };
    let cloud = chaos_game(&v, args.p, args.n, args.burn_in, args.seed)?;
    let fit = box_counting_dimension(&cloud.points, args.k.0, args.k.1)?;
    let out = args.output.out.as_deref();
    match args.format {
        Format::Json => {
            let theory = attractor_dimension(&v).ok().map(|r| r.box_dim - 1.0);
            output::write_json(out, &config, &BoxBody { fit, theory })
        }
        Format::Csv => output::write_csv(out, &config, ScalingFit::CSV_HEADER, &[fit.csv_row()]),
    }
}

/// Points from a CSV file: `#` lines and a non-numeric header are skipped;
/// every row must have the same number of columns.
fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = line.split(',').map(|t| t.trim().parse::<f64>()).collect();
        match parsed {
            Ok(row) => {
                if let Some(first) = rows.first() {
                    anyhow::ensure!(
                        first.len() == row.len(),
                        "{}:{}: expected {} columns",
                        path.display(),
                        n + 1,
                        first.len()
                    );
                }
                rows.push(row);
            }
            Err(_) if rows.is_empty() => continue,
            Err(e) => anyhow::bail!("{}:{}: {e}", path.display(), n + 1),
        }
    }
    Ok(rows)
}

fn to_arrays<const D: usize>(rows: &[Vec<f64>]) -> Vec<[f64; D]> {
    rows.iter().map(|r| std::array::from_fn(|i| r[i])).collect()
}

fn local_from_rows(samples: &[Vec<f64>], queries: &[Vec<f64>], k: (u32, u32)) -> Result<LocalDimension> {
    let dim = samples.first().map(Vec::len).unwrap_or(0);
    if let Some(q) = queries.first() {
        anyhow::ensure!(q.len() == dim, "queries have {} columns, samples {dim}", q.len());
    }
    Ok(match dim {
        0 => local_dimension::<1>(&[], &[], k.0, k.1)?,
        1 => local_dimension(&to_arrays::<1>(samples), &to_arrays::<1>(queries), k.0, k.1)?,
        2 => local_dimension(&to_arrays::<2>(samples), &to_arrays::<2>(queries), k.0, k.1)?,
        3 => local_dimension(&to_arrays::<3>(samples), &to_arrays::<3>(queries), k.0, k.1)?,
        d => anyhow::bail!("points must have 1 to 3 coordinates, got {d}"),
    })
}

#[derive(Serialize)]
struct LocalBody {
    estimate: LocalDimension,
    /// Closed-form measure dimension, for generated samples.
    theory: Option<f64>,
}

pub fn estimate_local(args: &LocalArgs) -> Result<()> {
    let mut config = RunConfig {
        k: Some(args.k),
        format: Some(args.format),
        ..RunConfig::new("estimate local")
    };
    let (estimate, theory) = match &args.samples {
        Some(path) => {
            config.samples = Some(path.display().to_string());
            let samples = read_points(path)?;
            let queries = match &args.queries_file {
                Some(q) => {
                    config.queries_file = Some(q.display().to_string());
                    read_points(q)?
                }
                None => {
                    config.queries = Some(args.queries);
                    samples[..args.queries.min(samples.len())].to_vec()
                }
            };
            (local_from_rows(&samples, &queries, args.k)?, None)
        }
        None => {
            let raw = args
                .v
                .ok_or_else(|| UsageError("--v or --samples is required".into()))?;
            config.v = Some(raw);
            config.p = Some(args.p);
            config.seed = Some(args.seed);
            config.n = Some(args.n);
            config.queries = Some(args.queries);
            let v = validate_params(raw)?;
            let spec = BernoulliSpec::new(args.p)?;
            let samples: Vec<[f64; 3]> = attractor_cloud_3d_with(&v, &spec, args.n, args.seed)?
                .iter()
                .map(|p| [p.x, p.y, p.z])
                .collect();
            let queries = &samples[..args.queries.min(samples.len())];
            let estimate = local_dimension(&samples, queries, args.k.0, args.k.1)?;
            (estimate, Some(measure_dimension(&v, &spec, None).total))
        }
    };
    let out = args.output.out.as_deref();
    match args.format {
        Format::Json => output::write_json(out, &config, &LocalBody { estimate, theory }),
        Format::Csv => output::write_csv(
            out,
            &config,
            "mean,median,used,dropped",
            &[format!(
                "{},{},{},{}",
                estimate.mean, estimate.median, estimate.used, estimate.dropped
            )],
        ),
    }
}

#[derive(Serialize)]
struct ExponentTheory {
    unstable: f64,
    xi_beta: f64,
    xi_tau: f64,
}

#[derive(Serialize)]
struct LyapunovBody {
    estimate: LyapunovEstimate,
    theory: ExponentTheory,
}

pub fn estimate_lyapunov(args: &LyapunovArgs) -> Result<()> {
    let v = validate_params(args.v)?;
    let spec = BernoulliSpec::new(args.p)?;
    let config = RunConfig {
        v: Some(args.v),
        p: Some(args.p),
        seed: Some(args.seed),
        n: Some(args.n),
        orbits: Some(args.orbits),
        format: Some(args.format),
        ..RunConfig::new("estimate lyapunov")
    };
    let estimate = lyapunov_birkhoff(&v, &spec, args.n, args.orbits, args.seed)?;
    let out = args.output.out.as_deref();
    match args.format {
        Format::Json => {
            let theory = ExponentTheory {
                unstable: LN_2,
                xi_beta: xi_exponent(&spec, v.beta1(), v.beta2()),
                xi_tau: xi_exponent(&spec, v.tau1(), v.tau2()),
            };
            output::write_json(out, &config, &LyapunovBody { estimate, theory })
        }
        Format::Csv => output::write_csv(out, &config, LyapunovEstimate::CSV_HEADER, &[estimate.csv_row()]),
    }
}

#[derive(Serialize)]
struct SweepBody {
    rows: Vec<sweep::Row>,
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let (grid, override_dim) = sweep::resolve(args)?;
    let rows = sweep::run(&grid, override_dim);
    let config = RunConfig {
        grid: Some(grid),
        override_dim,
        format: Some(args.format),
        ..RunConfig::new("sweep")
    };
    let out = args.output.out.as_deref();
    match args.format {
        Format::Json => output::write_json(out, &config, &SweepBody { rows }),
        Format::Csv => {
            let lines: Vec<String> = rows.iter().map(sweep::Row::csv).collect();
            output::write_csv(out, &config, sweep::CSV_HEADER, &lines)
        }
    }
}
