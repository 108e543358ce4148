//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line with its measured value and wall time, and exits non-zero if any
//! fails. Run with `cargo test -p solenoid-dim --test acceptance`.

mod common;

use std::f64::consts::LN_2;
use std::time::{Duration, Instant};

use common::{cantor_samples, conjugacy_excess, hausdorff, nn_resolution, params};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solenoid_dim::ifs::PlanarMapPair;
use solenoid_dim::{
    apply_inverse, apply_map, attractor_cloud_3d, attractor_dimension, box_counting_dimension, chaos_game,
    cylinder_cover, full_dimension_verdict, local_dimension, lyapunov_birkhoff, measure_dimension, sample_bernoulli,
    solve_moran_beta, solve_moran_beta_tau, xi_exponent, BernoulliSpec, Branch, ParamVector, Point3, Verdict,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn moran_roots() -> Outcome {
    let unit = solve_moran_beta(&params(0.5, 0.5, 0.2, 0.2)).d;
    let overlap = solve_moran_beta_tau(&params(0.6, 0.6, 0.3, 0.3))
        .map_err(|e| e.to_string())?
        .d;
    let expected = 1.2f64.ln() / -(0.3f64.ln());
    let mut worst = 0.0f64;
    for i in 1..=20 {
        for j in 1..=20 {
            let (b1, b2) = (i as f64 / 21.0, j as f64 / 21.0);
            let v = params(b1, b2, 0.3 * b1, 0.3 * b2);
            worst = worst.max(solve_moran_beta(&v).residual);
            if b1 + b2 >= 1.0 {
                worst = worst.max(solve_moran_beta_tau(&v).map_err(|e| e.to_string())?.residual);
            }
        }
    }
    ensure(
        (unit - 1.0).abs() <= 1e-10 && (overlap - expected).abs() <= 1e-10 && worst <= 1e-12,
        format!("d(0.5,0.5) = {unit:.12}, d_tau = {overlap:.12}, max residual {worst:.1e}"),
    )
}

fn closure_disjoint() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let half = BernoulliSpec::half();
    let mut worst_sym = 0.0f64;
    for _ in 0..50 {
        let b = rng.gen_range(0.02..0.49);
        let v = params(b, b, rng.gen_range(0.01..0.99) * b, rng.gen_range(0.01..0.99) * b);
        let set = attractor_dimension(&v).map_err(|e| e.to_string())?.box_dim;
        worst_sym = worst_sym.max((measure_dimension(&v, &half, None).total - set).abs());
    }
    let mut min_gap = f64::INFINITY;
    let mut n = 0;
    while n < 50 {
        let (b1, b2): (f64, f64) = (rng.gen_range(0.02..0.97), rng.gen_range(0.02..0.97));
        if b1 + b2 >= 0.99 || (b1 - b2).abs() < 0.01 {
            continue;
        }
        let v = params(b1, b2, rng.gen_range(0.01..0.99) * b1, rng.gen_range(0.01..0.99) * b2);
        let report = full_dimension_verdict(&v).map_err(|e| e.to_string())?;
        if report.verdict != Verdict::StrictGap {
            return Err(format!("{v:?} not reported as a strict gap"));
        }
        min_gap = min_gap.min(report.attractor_dim - report.measure_dim);
        n += 1;
    }
    ensure(
        worst_sym <= 1e-9 && min_gap > 1e-9,
        format!("symmetric max |gap| {worst_sym:.1e}, asymmetric min gap {min_gap:.3e}"),
    )
}

fn closure_overlapping() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for b1 in [0.51f64, 0.55, 0.6, 0.64] {
        for b2 in [0.51f64, 0.57, 0.62, 0.648] {
            for t1 in [0.05f64, 0.15, 0.3] {
                let d = -(2.0 * b1).ln() / t1.ln();
                let t2 = (0.5 / b2).powf(1.0 / d);
                if t1 + t2 >= 1.0 {
                    continue;
                }
                let v = params(b1, b2, t1, t2);
                let root = solve_moran_beta_tau(&v).map_err(|e| e.to_string())?.d;
                let mu = measure_dimension(&v, &BernoulliSpec::half(), Some(1.0)).total;
                worst = worst.max((mu - (root + 2.0)).abs());
                count += 1;
            }
        }
    }
    ensure(
        worst <= 1e-9 && count > 0,
        format!("{count} parameter sets, max |mu - (d + 2)| {worst:.1e}"),
    )
}

fn conjugacy() -> Outcome {
    let grid = [
        params(0.3, 0.3, 0.2, 0.2),
        params(0.3, 0.4, 0.1, 0.2),
        params(0.6, 0.6, 0.3, 0.3),
        params(0.9, 0.05, 0.5, 0.45),
        params(0.45, 0.7, 0.2, 0.4),
    ];
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..500u64 {
        let v = &grid[seed as usize % grid.len()];
        let p = [0.5, 0.1, 0.35, 0.8][seed as usize % 4];
        let w = sample_bernoulli(&BernoulliSpec::new(p).unwrap(), -60, 59, seed).map_err(|e| e.to_string())?;
        worst = worst.max(conjugacy_excess(v, &w));
    }
    ensure(
        worst <= 1e-10,
        format!("500 windows, max excess over truncation bound {worst:.1e}"),
    )
}

fn box_counting() -> Outcome {
    let v = params(0.3, 0.3, 0.2, 0.2);
    let cloud = chaos_game(&v, 0.5, 100_000, 64, 5).map_err(|e| e.to_string())?;
    let slope = box_counting_dimension(&cloud.points, 2, 8)
        .map_err(|e| e.to_string())?
        .slope;
    let theory = attractor_dimension(&v).map_err(|e| e.to_string())?.box_dim - 1.0;
    let cantor = box_counting_dimension(&cantor_samples(100_000, 5), 2, 12)
        .map_err(|e| e.to_string())?
        .slope;
    let cantor_theory = 2f64.ln() / 3f64.ln();
    ensure(
        (slope - theory).abs() <= 0.1 && (cantor - cantor_theory).abs() <= 0.05,
        format!("cross-section {slope:.4} vs {theory:.4}, Cantor {cantor:.4} vs {cantor_theory:.4}"),
    )
}

fn lyapunov() -> Outcome {
    let v = params(0.3, 0.4, 0.1, 0.2);
    let spec = BernoulliSpec::half();
    let est = lyapunov_birkhoff(&v, &spec, 10_000, 32, 6).map_err(|e| e.to_string())?;
    let xb = xi_exponent(&spec, v.beta1(), v.beta2());
    let xt = xi_exponent(&spec, v.tau1(), v.tau2());
    let zb = (est.beta_exponent - xb).abs() / est.stderr.beta;
    let zt = (est.tau_exponent - xt).abs() / est.stderr.tau;
    ensure(
        est.unstable == LN_2 && zb <= 3.0 && zt <= 3.0,
        format!(
            "unstable {:.15}, beta {:.2} stderr off, tau {:.2} stderr off",
            est.unstable, zb, zt
        ),
    )
}

fn local_dim() -> Outcome {
    let v = params(0.4, 0.4, 0.2, 0.2);
    let cloud = attractor_cloud_3d(&v, 200_000, 7).map_err(|e| e.to_string())?;
    let samples: Vec<[f64; 3]> = cloud.iter().map(|p| [p.x, p.y, p.z]).collect();
    let est = local_dimension(&samples, &samples[..200], 2, 6).map_err(|e| e.to_string())?;
    let theory = measure_dimension(&v, &BernoulliSpec::half(), None).total;
    ensure(
        (est.median - theory).abs() <= 0.15,
        format!(
            "median {:.4} vs {theory:.4} ({} used, {} dropped)",
            est.median, est.used, est.dropped
        ),
    )
}

fn self_affinity(v: &ParamVector) -> Result<(), String> {
    let cloud = chaos_game(v, 0.5, 3000, 64, 8).map_err(|e| e.to_string())?.points;
    let maps = PlanarMapPair::new(v);
    let image: Vec<[f64; 2]> = [Branch::First, Branch::Second]
        .iter()
        .flat_map(|&b| cloud.iter().map(move |&p| maps.apply(b, p)))
        .collect();
    let (h, res) = (hausdorff(&cloud, &image), nn_resolution(&cloud));
    if h <= 2.0 * res {
        Ok(())
    } else {
        Err(format!("self-affinity {v:?}: {h} > 2 x {res}"))
    }
}

fn cylinder_nesting(v: &ParamVector) -> Result<(), String> {
    let mut prev = cylinder_cover(v, 0).map_err(|e| e.to_string())?;
    for depth in 1..=10 {
        let next = cylinder_cover(v, depth).map_err(|e| e.to_string())?;
        if !next
            .rects
            .iter()
            .all(|r| prev.rects.iter().any(|q| q.contains_rect(r, 1e-12)))
        {
            return Err(format!("nesting {v:?} at depth {depth}"));
        }
        prev = next;
    }
    Ok(())
}

fn round_trips(v: &ParamVector, rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..10_000 {
        let p = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let back = apply_inverse(v, apply_map(v, p), Branch::of_x(p.x)).map_err(|e| e.to_string())?;
        if back.max_dist(&p) > 1e-12 {
            return Err(format!("round trip {v:?} at {p:?}"));
        }
    }
    Ok(())
}

fn branch_continuity() -> Result<(), String> {
    for (b1, b2, t1) in [(0.3f64, 0.4f64, 0.25f64), (0.2, 0.25, 0.3), (0.45, 0.3, 0.35)] {
        for p in [0.2, 0.5, 0.7] {
            let t2 = ((p * b1.ln() + (1.0 - p) * b2.ln() - p * t1.ln()) / (1.0 - p)).exp();
            let v = params(b1, b2, t1, t2);
            let lo = measure_dimension(&v, &BernoulliSpec::new(p - 1e-8).unwrap(), None);
            let hi = measure_dimension(&v, &BernoulliSpec::new(p + 1e-8).unwrap(), None);
            if lo.branch == hi.branch || (lo.total - hi.total).abs() > 1e-6 {
                return Err(format!("branch continuity {v:?} at p {p}"));
            }
        }
    }
    Ok(())
}

fn determinism(v: &ParamVector) -> Result<(), String> {
    let a = attractor_cloud_3d(v, 2000, 9).map_err(|e| e.to_string())?;
    let b = attractor_cloud_3d(v, 2000, 9).map_err(|e| e.to_string())?;
    let spec = BernoulliSpec::new(0.3).unwrap();
    let la = lyapunov_birkhoff(v, &spec, 200, 4, 9).map_err(|e| e.to_string())?;
    let lb = lyapunov_birkhoff(v, &spec, 200, 4, 9).map_err(|e| e.to_string())?;
    if a == b && la == lb {
        Ok(())
    } else {
        Err(format!("determinism {v:?}"))
    }
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grid = [
        params(0.3, 0.3, 0.2, 0.2),
        params(0.45, 0.35, 0.3, 0.1),
        params(0.6, 0.55, 0.3, 0.2),
        params(0.9, 0.3, 0.5, 0.2),
    ];
    for v in &grid {
        self_affinity(v)?;
        cylinder_nesting(v)?;
        round_trips(v, &mut rng)?;
        determinism(v)?;
    }
    branch_continuity()?;
    Ok(format!(
        "{} parameter sets: self-affinity, nesting to depth 10, round trips, determinism; branch continuity",
        grid.len()
    ))
}

const CRITERIA: [Criterion; 8] = [
    Criterion {
        id: 1,
        name: "moran roots",
        budget: Duration::from_secs(1),
        run: moran_roots,
    },
    Criterion {
        id: 2,
        name: "full-dimension closure, disjoint",
        budget: Duration::from_secs(1),
        run: closure_disjoint,
    },
    Criterion {
        id: 3,
        name: "full-dimension closure, overlapping",
        budget: Duration::from_secs(1),
        run: closure_overlapping,
    },
    Criterion {
        id: 4,
        name: "coding conjugacy",
        budget: Duration::from_secs(5),
        run: conjugacy,
    },
    Criterion {
        id: 5,
        name: "box counting",
        budget: Duration::from_secs(30),
        run: box_counting,
    },
    Criterion {
        id: 6,
        name: "lyapunov exponents",
        budget: Duration::from_secs(10),
        run: lyapunov,
    },
    Criterion {
        id: 7,
        name: "local dimension",
        budget: Duration::from_secs(60),
        run: local_dim,
    },
    Criterion {
        id: 8,
        name: "property suite",
        budget: Duration::from_secs(60),
        run: properties,
    },
];

fn main() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {:?}", c.budget)),
            Err(d) => (false, d),
        };
        println!(
            "{} [{}] {}: {} ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
