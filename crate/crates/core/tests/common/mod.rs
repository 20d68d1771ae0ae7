//! Shared helpers for the integration tests: a small deterministic RNG
//! and point-cloud builders. Nothing here touches the library's own
//! code paths beyond `PointSet` construction.
#![allow(dead_code)] // each test target uses a different subset

use diam_core::geometry::PointSet;

/// SplitMix64: tiny, seedable, and stable across platforms.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1).
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Standard normal via Box-Muller (spare deviate discarded).
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// n points uniform in the cube [-scale, scale]^d.
pub fn uniform_cube(n: usize, d: usize, scale: f64, seed: u64) -> PointSet {
    let mut rng = SplitMix64::new(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| scale * rng.next_signed()).collect())
        .collect();
    PointSet::from_rows(&rows).unwrap()
}

/// n points on the unit sphere surface in R^d.
pub fn sphere_shell(n: usize, d: usize, seed: u64) -> PointSet {
    let mut rng = SplitMix64::new(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| loop {
            let v: Vec<f64> = (0..d).map(|_| rng.next_gaussian()).collect();
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.iter().map(|c| c / norm).collect();
            }
        })
        .collect();
    PointSet::from_rows(&rows).unwrap()
}
