//! Deterministic point-cloud generators.
//!
//! Everything is driven by one `u64` seed through a SplitMix64 stream;
//! there are no hidden entropy sources, so a (kind, n, d, seed) tuple
//! always produces the same coordinates, bit for bit, on any platform.

use diam_core::geometry::PointSet;

use crate::error::HarnessError;

/// SplitMix64 with a Box-Muller gaussian on top.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    spare_gaussian: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed,
            spare_gaussian: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1), 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in 0..bound (bound > 0). The modulo bias is
    /// irrelevant for test-data generation.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Standard normal deviate (Box-Muller, spare cached).
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        let u1 = 1.0 - self.next_f64(); // (0, 1], keeps ln finite
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_gaussian = Some(r * sin);
        r * cos
    }

    fn unit_vector(&mut self, d: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| self.next_gaussian()).collect();
            let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.iter().map(|c| c / norm).collect();
            }
        }
    }
}

/// The supported point-cloud shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Uniform in the unit ball.
    UniformBall,
    /// Uniform on the unit sphere surface.
    SphereShell,
    /// Three gaussian blobs with centers in [-1, 1]^d.
    GaussianClusters,
    /// Integer coordinates in a small box; heavy on exact ties.
    GridAligned,
    /// Points on one random line through dyadic arithmetic, so they are
    /// collinear exactly, not just to round-off.
    Collinear,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::UniformBall,
        Kind::SphereShell,
        Kind::GaussianClusters,
        Kind::GridAligned,
        Kind::Collinear,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Kind::UniformBall => "uniform-ball",
            Kind::SphereShell => "sphere-shell",
            Kind::GaussianClusters => "gaussian-clusters",
            Kind::GridAligned => "grid-aligned",
            Kind::Collinear => "collinear",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Generates `n` points in `R^d` of the given kind, deterministically in
/// `(kind, n, d, seed)`.
pub fn generate(kind: Kind, n: usize, d: usize, seed: u64) -> Result<PointSet, HarnessError> {
    if n == 0 {
        return Err(HarnessError::Usage("point count must be at least 1".into()));
    }
    if d == 0 {
        return Err(HarnessError::Usage("dimension must be at least 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let rows: Vec<Vec<f64>> = match kind {
        Kind::UniformBall => (0..n)
            .map(|_| {
                let u = rng.unit_vector(d);
                let radius = rng.next_f64().powf(1.0 / d as f64);
                u.iter().map(|c| c * radius).collect()
            })
            .collect(),
        Kind::SphereShell => (0..n).map(|_| rng.unit_vector(d)).collect(),
        Kind::GaussianClusters => {
            let centers: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..d).map(|_| 2.0 * rng.next_f64() - 1.0).collect())
                .collect();
            (0..n)
                .map(|_| {
                    let c = &centers[rng.next_below(3) as usize];
                    c.iter().map(|&m| m + 0.1 * rng.next_gaussian()).collect()
                })
                .collect()
        }
        Kind::GridAligned => {
            let levels = (n as f64).powf(1.0 / d as f64).ceil().max(1.0) as u64 + 1;
            (0..n)
                .map(|_| (0..d).map(|_| rng.next_below(levels) as f64).collect())
                .collect()
        }
        Kind::Collinear => {
            // p_i = base + t_i * dir with every factor a multiple of
            // 2^-10 and products below 2^53, so coordinates are exact
            let scale = 2.0f64.powi(-20);
            let base: Vec<i64> = (0..d)
                .map(|_| rng.next_below(2049) as i64 - 1024)
                .collect();
            let dir: Vec<i64> = loop {
                let v: Vec<i64> = (0..d)
                    .map(|_| rng.next_below(2049) as i64 - 1024)
                    .collect();
                if v.iter().any(|&c| c != 0) {
                    break v;
                }
            };
            (0..n)
                .map(|_| {
                    let t = rng.next_below(1025) as i64;
                    (0..d)
                        .map(|a| ((base[a] << 10) + t * dir[a]) as f64 * scale)
                        .collect()
                })
                .collect()
        }
    };
    Ok(PointSet::from_rows(&rows).expect("generated rows are finite and rectangular"))
}
