mod common;

use common::{directed_hausdorff, hausdorff, ks_uniform, nearest2, nearest3, nn_resolution, params};
use solenoid_dim::ifs::{attractor_cloud_3d, chaos_game, cylinder_cover, PlanarMapPair};
use solenoid_dim::{apply_map, orbit, Branch, Point3};

#[test]
fn balanced_half_ratios_give_uniform_y_marginal() {
    let v = params(0.5, 0.5, 0.25, 0.25);
    let cloud = chaos_game(&v, 0.5, 100_000, 64, 4).unwrap();
    let ks = ks_uniform(&cloud.ys(), -1.0, 1.0);
    assert!(ks <= 0.02, "{ks}");
}

#[test]
fn cloud_is_close_to_its_own_image() {
    for v in [
        params(0.3, 0.3, 0.2, 0.2),
        params(0.45, 0.35, 0.3, 0.1),
        params(0.6, 0.55, 0.3, 0.2),
    ] {
        let cloud = chaos_game(&v, 0.5, 4000, 64, 9).unwrap().points;
        let maps = PlanarMapPair::new(&v);
        let image: Vec<[f64; 2]> = [Branch::First, Branch::Second]
            .iter()
            .flat_map(|&b| cloud.iter().map(move |&p| maps.apply(b, p)))
            .collect();
        let res = nn_resolution(&cloud);
        let h = hausdorff(&cloud, &image);
        assert!(h <= 2.0 * res, "{v:?}: Hausdorff {h} vs resolution {res}");
    }
}

#[test]
fn chaos_points_lie_in_every_cylinder_cover() {
    let v = params(0.45, 0.35, 0.3, 0.1);
    let cloud = chaos_game(&v, 0.4, 3000, 64, 2).unwrap();
    for depth in 0..=10 {
        let cover = cylinder_cover(&v, depth).unwrap();
        for &p in &cloud.points {
            assert!(cover.contains(p, 1e-12), "depth {depth}: {p:?}");
        }
    }
}

#[test]
fn disjoint_regime_cylinders_have_disjoint_y_projections() {
    let v = params(0.45, 0.5, 0.3, 0.2);
    for depth in 1..=12 {
        let mut ys: Vec<(f64, f64)> = cylinder_cover(&v, depth)
            .unwrap()
            .rects
            .iter()
            .map(|r| r.y_range())
            .collect();
        ys.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!(ys.windows(2).all(|w| w[0].1 < w[1].0), "depth {depth}");
    }
}

#[test]
fn three_dimensional_cloud_is_invariant_and_uniform_in_x() {
    let v = params(0.4, 0.3, 0.2, 0.1);
    let big = attractor_cloud_3d(&v, 100_000, 8).unwrap();
    let xs: Vec<f64> = big.iter().map(|p| p.x).collect();
    assert!(ks_uniform(&xs, -1.0, 1.0) <= 0.02);

    let cloud = attractor_cloud_3d(&v, 4000, 5).unwrap();
    let res = cloud
        .iter()
        .enumerate()
        .map(|(i, p)| {
            cloud
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| p.max_dist(q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let worst = cloud
        .iter()
        .map(|&p| nearest3(&apply_map(&v, p), &cloud))
        .fold(0.0, f64::max);
    assert!(worst <= 2.0 * res, "image distance {worst} vs resolution {res}");
}

#[test]
fn orbits_approach_the_cross_section() {
    let v = params(0.4, 0.35, 0.3, 0.2);
    let cloud = chaos_game(&v, 0.5, 20_000, 64, 6).unwrap().points;
    let res = directed_hausdorff(&cloud[..2000], &cloud[2000..]);
    let rate: f64 = 0.4;
    let start = Point3::new(0.123, -0.9, 0.77);
    for (k, p) in orbit(&v, start, 40).iter().enumerate() {
        let dist = nearest2([p.y, p.z], &cloud, None);
        assert!(dist <= 2.0 * rate.powi(k as i32) + res, "step {k}: {dist}");
    }
}
