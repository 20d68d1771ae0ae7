//! Direction-net coverage, projection contraction, and the guarantees
//! of the projection-based methods against the exact oracle.

mod common;

use common::{sphere_shell, uniform_cube, SplitMix64};
use diam_core::directional::{
    agarwal_diameter, chan_recursive_diameter, planar_angle_net, project_extent,
    sphere_direction_net, two_approx_baseline, UNIT_NORM_SLACK,
};
use diam_core::exact::brute_force_diameter;
use diam_core::geometry::distance_sq;

fn angle_to_net(net: &diam_core::directional::DirectionNet, u: &[f64]) -> f64 {
    net.iter()
        .map(|d| {
            let dot: f64 = d.iter().zip(u).map(|(a, b)| a * b).sum();
            dot.clamp(-1.0, 1.0).abs().acos()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn net_covering_monte_carlo() {
    // every random unit vector in R^3 is within sqrt(2 * 0.04) of a net
    // direction or its antipode
    let eps = 0.04;
    let net = sphere_direction_net(3, eps).unwrap();
    let bound = (2.0 * eps).sqrt();
    assert!((net.max_angle() - bound).abs() < 1e-15);
    let mut rng = SplitMix64::new(5);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let mut v = [rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()];
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-9 {
            continue;
        }
        for c in &mut v {
            *c /= norm;
        }
        worst = worst.max(angle_to_net(&net, &v));
    }
    assert!(
        worst <= bound + 1e-9,
        "covering angle {worst} exceeds {bound}"
    );
}

#[test]
fn net_norms_within_tolerance() {
    for (dim, eps) in [(2, 0.7), (3, 0.2), (4, 0.5), (5, 0.9)] {
        let net = sphere_direction_net(dim, eps).unwrap();
        for dir in net.iter() {
            let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= UNIT_NORM_SLACK);
        }
    }
}

#[test]
fn projection_width_never_exceeds_diameter() {
    let s = uniform_cube(400, 4, 2.0, 31);
    let (d_sq, _) = brute_force_diameter(&s).unwrap();
    let diam = d_sq.sqrt();
    let net = sphere_direction_net(4, 0.3).unwrap();
    for dir in net.iter() {
        let ext = project_extent(&s, dir).unwrap();
        assert!(ext.width() <= diam * (1.0 + 1e-12));
    }
}

#[test]
fn agarwal_guarantee_on_sphere_shell() {
    // 2000 shell points, eps = 0.05: estimate within [D/1.05, D]
    let s = sphere_shell(2000, 3, 9);
    let (d_sq, _) = brute_force_diameter(&s).unwrap();
    let exact = d_sq.sqrt();
    let est = agarwal_diameter(&s, 0.05).unwrap();
    assert!(est.value <= exact * (1.0 + 1e-12));
    assert!(
        est.value >= exact / 1.05,
        "estimate {} below {}",
        est.value,
        exact / 1.05
    );
}

#[test]
fn agarwal_monotone_in_the_net() {
    // appending directions to the sweep never lowers the estimate
    let s = uniform_cube(300, 3, 1.0, 55);
    let net = sphere_direction_net(3, 0.5).unwrap();
    let mut running = 0.0f64;
    let mut last = 0.0f64;
    for k in 1..=net.len() {
        let dirs: Vec<&[f64]> = (0..k).map(|i| net.direction(i)).collect();
        let mut best = 0.0f64;
        for dir in dirs {
            let ext = project_extent(&s, dir).unwrap();
            if ext.argmin != ext.argmax {
                let d = distance_sq(s.coords(ext.argmin), s.coords(ext.argmax));
                best = best.max(d);
            }
        }
        assert!(best >= running, "estimate shrank when adding direction {k}");
        running = running.max(best);
        last = best;
    }
    // the full sweep agrees with agarwal_diameter's certified value
    let est = agarwal_diameter(&s, 0.5).unwrap();
    assert_eq!(est.value_sq, last);
}

#[test]
fn chan_mapping_contracts_distances() {
    // the planar rotation map never increases pairwise distances
    let s = uniform_cube(120, 4, 1.5, 8);
    for theta in planar_angle_net(0.25).unwrap() {
        let (sin, cos) = theta.sin_cos();
        let mapped: Vec<Vec<f64>> = s
            .iter()
            .map(|p| {
                let mut m = vec![p[0] * cos + p[1] * sin];
                m.extend_from_slice(&p[2..]);
                m
            })
            .collect();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let dm = distance_sq(&mapped[i], &mapped[j]);
                let d = distance_sq(s.coords(i), s.coords(j));
                assert!(dm <= d * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn chan_guarantee_on_random_clouds() {
    // estimate within [D/(1+3 eps), D] with the estimate equal to the
    // true distance of the returned candidate
    for (n, d, eps, seed) in [
        (600usize, 2usize, 0.25f64, 21u64),
        (600, 3, 0.25, 22),
        (400, 4, 0.1, 23),
        (800, 5, 0.25, 24),
    ] {
        let s = uniform_cube(n, d, 1.0, seed);
        let pts: Vec<(Vec<f64>, usize)> =
            s.iter().enumerate().map(|(i, p)| (p.to_vec(), i)).collect();
        let (est_sq, cand) = chan_recursive_diameter(&s, &pts, d, eps).unwrap();
        assert_eq!(est_sq, cand.distance_sq_in(&s));
        let (d_sq, _) = brute_force_diameter(&s).unwrap();
        assert!(est_sq <= d_sq * (1.0 + 1e-12));
        let ratio = (d_sq / est_sq).sqrt();
        assert!(
            ratio <= 1.0 + 3.0 * eps,
            "n={n} d={d} eps={eps}: ratio {ratio}"
        );
    }
}

#[test]
fn two_approx_guarantee_on_large_cloud() {
    let s = uniform_cube(10_000, 3, 1.0, 400);
    let est = two_approx_baseline(&s).unwrap();
    let (d_sq, _) = brute_force_diameter(&s).unwrap();
    let exact = d_sq.sqrt();
    assert!(est.value <= exact * (1.0 + 1e-12));
    assert!(est.value >= exact / 2.0);
}

#[test]
fn lower_bound_family_on_mixed_instances() {
    for seed in [1u64, 2, 3] {
        let s = uniform_cube(500, 4, 1.0, 600 + seed);
        let (d_sq, _) = brute_force_diameter(&s).unwrap();
        let two = two_approx_baseline(&s).unwrap();
        let aga = agarwal_diameter(&s, 0.25).unwrap();
        let pts: Vec<(Vec<f64>, usize)> =
            s.iter().enumerate().map(|(i, p)| (p.to_vec(), i)).collect();
        let (chan_sq, _) = chan_recursive_diameter(&s, &pts, 4, 0.25).unwrap();
        assert!(two.value_sq <= d_sq);
        assert!(aga.value_sq <= d_sq);
        assert!(chan_sq <= d_sq);
    }
}
