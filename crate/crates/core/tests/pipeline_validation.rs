//! End-to-end checks of the grid-rounding pipeline against the exact
//! oracle, plus the refinement-stage displacement arithmetic.

mod common;

use common::{uniform_cube, SplitMix64};
use diam_core::exact::brute_force_diameter;
use diam_core::geometry::{distance_sq, PointSet};
use diam_core::pipeline::{approximate_diameter, rounding_phases};

fn unit_ball(n: usize, d: usize, seed: u64) -> PointSet {
    let mut rng = SplitMix64::new(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| loop {
            let v: Vec<f64> = (0..d).map(|_| rng.next_gaussian()).collect();
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-12 {
                let radius = rng.next_f64().powf(1.0 / d as f64);
                return v.iter().map(|c| c / norm * radius).collect();
            }
        })
        .collect();
    PointSet::from_rows(&rows).unwrap()
}

#[test]
fn cube_corners_stay_within_envelope() {
    let corners: Vec<Vec<f64>> = (0..8)
        .map(|k| vec![(k & 1) as f64, ((k >> 1) & 1) as f64, ((k >> 2) & 1) as f64])
        .collect();
    let s = PointSet::from_rows(&corners).unwrap();
    let exact = 3.0f64.sqrt();
    let eps = 0.5;
    let (est, stats) = approximate_diameter(&s, eps, 64).unwrap();
    assert!(est.value <= exact * (1.0 + 1e-12));
    assert!(est.value >= exact / (1.0 + 4.0 * eps));
    assert!(stats.counts_within_bounds());
    // corner representatives survive the whole chain here
    assert_eq!(est.value, exact);
}

#[test]
fn large_ball_instance_meets_envelope() {
    let s = unit_ball(10_000, 6, 123);
    let eps = 0.1;
    let (d_sq, _) = brute_force_diameter(&s).unwrap();
    let exact = d_sq.sqrt();
    let (est, stats) = approximate_diameter(&s, eps, 4096).unwrap();
    assert!(est.value_sq <= d_sq);
    assert!(
        exact <= (1.0 + 4.0 * eps) * est.value,
        "ratio {} above envelope",
        exact / est.value
    );
    assert!(stats.counts_within_bounds());
    assert!(stats.n_coarse_lattice <= stats.n_mid_lattice);
    assert!(stats.n_mid_lattice <= stats.n_cell_centers);
    assert!(stats.n_cell_centers <= stats.n_input);
}

#[test]
fn estimate_never_below_coarse_seed_distance() {
    // the final value dominates the true distance of the best coarse
    // pair's representatives, since candidates only accumulate
    let s = uniform_cube(3000, 4, 1.0, 321);
    let eps = 0.25;
    let phases = rounding_phases(&s, eps).unwrap().unwrap();
    let list =
        diam_core::exact::diametrical_pairs(&phases.coarse_pruned, 4096).unwrap();
    let mut coarse_best = 0.0f64;
    for &(i, j) in &list.pairs {
        let a = phases.coarse_pruned.points()[i].rep;
        let b = phases.coarse_pruned.points()[j].rep;
        coarse_best = coarse_best.max(distance_sq(s.coords(a), s.coords(b)));
    }
    let (est, _) = approximate_diameter(&s, eps, 4096).unwrap();
    assert!(est.value_sq >= coarse_best);
}

#[test]
fn mid_refinement_dominates_coarse_minus_displacement() {
    // the mid-level maximum, scaled to real units, is at least the
    // coarse-level one minus twice the coarse rounding displacement
    let s = uniform_cube(10_000, 3, 1.0, 77);
    let eps = 0.25;
    let phases = rounding_phases(&s, eps).unwrap().unwrap();
    let coarse_list =
        diam_core::exact::diametrical_pairs(&phases.coarse_pruned, 4096).unwrap();
    let coarse_real = (coarse_list.dist_sq_lattice as f64).sqrt() * phases.sizes.coarse;

    let mid_out = diam_core::pipeline::refine_level(
        &s,
        &phases.coarse_pruned,
        &coarse_list.pairs,
        &phases.mid,
        2.0 * phases.sizes.coarse,
        diam_core::pipeline::RefineSolver::BruteForce,
        4096,
    )
    .unwrap();
    let mid_real = (mid_out.best_lattice_sq.unwrap() as f64).sqrt() * phases.sizes.mid;
    let displacement = phases.sizes.coarse * (3.0f64).sqrt() / 2.0;
    assert!(
        mid_real >= coarse_real - 2.0 * displacement - 1e-9,
        "mid {mid_real} vs coarse {coarse_real}"
    );
}

#[test]
fn pipeline_is_deterministic() {
    let s = uniform_cube(2000, 5, 1.0, 99);
    let (a, sa) = approximate_diameter(&s, 0.25, 4096).unwrap();
    let (b, sb) = approximate_diameter(&s, 0.25, 4096).unwrap();
    assert_eq!(a, b);
    // everything except wall times matches
    assert_eq!(sa.n_cell_centers, sb.n_cell_centers);
    assert_eq!(sa.pairs_coarse, sb.pairs_coarse);
    assert_eq!(sa.pairs_mid, sb.pairs_mid);
    assert_eq!(
        (sa.max_cube_mid_first, sa.max_cube_fine_first),
        (sb.max_cube_mid_first, sb.max_cube_fine_first)
    );
}

#[test]
fn truncation_flag_propagates_on_symmetric_grids() {
    // a dense integer grid has many coarse ties; a tiny cap must set the
    // flag and still return a valid lower bound
    let mut rows = Vec::new();
    for x in 0..6 {
        for y in 0..6 {
            rows.push(vec![x as f64, y as f64]);
        }
    }
    let s = PointSet::from_rows(&rows).unwrap();
    let (d_sq, _) = brute_force_diameter(&s).unwrap();
    let (est, stats) = approximate_diameter(&s, 1.0, 1).unwrap();
    assert!(est.value_sq <= d_sq);
    assert!(stats.pairs_coarse <= 1);
    // with cap 1 either level may truncate; the run must still finish
    let (est_big, _) = approximate_diameter(&s, 1.0, 4096).unwrap();
    assert!(est_big.value_sq <= d_sq);
    assert!(est_big.value_sq >= est.value_sq);
}
