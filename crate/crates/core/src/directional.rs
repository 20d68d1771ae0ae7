//! Direction nets, projections, and the projection-based diameter
//! methods: the direction-net sweep, the recursive planar reduction, and
//! the farthest-from-first 2-approximation.
//!
//! Every method reports the true distance of a concrete witness pair of
//! original indices, never a projected length, so all estimates are
//! certified lower bounds on the diameter.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{distance_sq, PointSet};
use crate::pipeline::{DiameterEstimate, Method};

/// Unit-norm tolerance for net directions (2^-40).
pub const UNIT_NORM_SLACK: f64 = 9.094947017729282e-13;

/// Hard ceiling on direction-net size; nets grow like
/// `(d/eps)^((d-1)/2)` and small eps in high dimension is better served
/// by the grid pipeline.
const MAX_NET_DIRECTIONS: u128 = 4_000_000;

/// A finite set of unit vectors covering the sphere of directions: every
/// unit vector is within `max_angle` of some net direction or its
/// antipode.
#[derive(Debug, Clone)]
pub struct DirectionNet {
    dim: usize,
    // flat, dim-strided
    directions: Vec<f64>,
    max_angle: f64,
}

impl DirectionNet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Guaranteed covering angle, in radians.
    pub fn max_angle(&self) -> f64 {
        self.max_angle
    }

    pub fn direction(&self, k: usize) -> &[f64] {
        &self.directions[k * self.dim..(k + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.directions.chunks_exact(self.dim)
    }
}

/// Grid values on one facet axis of the cube `[-1, 1]^d`: multiples of
/// `step` plus both endpoints, so adjacent values are at most `step`
/// apart and the facet center is always included.
fn facet_axis_values(step: f64, kmax: i64) -> Vec<f64> {
    let mut vals: Vec<f64> = Vec::with_capacity(2 * kmax as usize + 3);
    vals.push(-1.0);
    for k in -kmax..=kmax {
        vals.push(k as f64 * step);
    }
    vals.push(1.0);
    vals.dedup();
    vals
}

/// Builds a direction net by gridding each of the `2d` facets of the
/// cube `[-1, 1]^d` with step `2 tan(sqrt(2 eps)) / sqrt(d - 1)` (clamped
/// to 2), normalizing every node onto the unit sphere, and deduplicating
/// antipodes. The covering angle is `sqrt(2 eps)`.
pub fn sphere_direction_net(dim: usize, eps: f64) -> Result<DirectionNet> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { needed: 2, got: dim });
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    let phi = (2.0 * eps).sqrt();
    let step = (2.0 * phi.tan() / ((dim - 1) as f64).sqrt()).min(2.0);

    // size the net before allocating anything
    let kmax = (1.0 / step).ceil() as i64 - 1;
    let per_axis = (2 * kmax + 3) as u128;
    let estimated = per_axis
        .saturating_pow((dim - 1) as u32)
        .saturating_mul(2 * dim as u128);
    if estimated > MAX_NET_DIRECTIONS {
        return Err(Error::NetTooLarge {
            estimated,
            limit: MAX_NET_DIRECTIONS,
        });
    }
    let vals = facet_axis_values(step, kmax);

    // key on exact bit patterns after canonicalization; identical facet
    // nodes (cube edges and corners shared between facets) agree bitwise
    let mut seen: BTreeMap<Vec<u64>, Vec<f64>> = BTreeMap::new();
    let mut node = vec![0usize; dim - 1];
    for axis in 0..dim {
        for sign in [1.0f64, -1.0] {
            loop {
                let mut v = Vec::with_capacity(dim);
                let mut it = node.iter();
                for a in 0..dim {
                    if a == axis {
                        v.push(sign);
                    } else {
                        v.push(vals[*it.next().unwrap()]);
                    }
                }
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                for c in &mut v {
                    *c /= norm;
                }
                // canonical antipode: first nonzero coordinate positive,
                // and no negative zeros so the bit keys below can match
                if let Some(&first) = v.iter().find(|&&c| c != 0.0) {
                    if first < 0.0 {
                        for c in &mut v {
                            *c = -*c;
                        }
                    }
                }
                for c in &mut v {
                    if *c == 0.0 {
                        *c = 0.0;
                    }
                }
                let key: Vec<u64> = v.iter().map(|c| c.to_bits()).collect();
                seen.entry(key).or_insert(v);

                // odometer over the d-1 facet coordinates
                let mut carry = true;
                for slot in node.iter_mut() {
                    *slot += 1;
                    if *slot < vals.len() {
                        carry = false;
                        break;
                    }
                    *slot = 0;
                }
                if carry {
                    break;
                }
            }
        }
    }

    let mut directions = Vec::with_capacity(seen.len() * dim);
    for v in seen.into_values() {
        directions.extend_from_slice(&v);
    }
    Ok(DirectionNet {
        dim,
        directions,
        max_angle: phi,
    })
}

/// Extent of a point set projected onto a direction: the extreme inner
/// products and the indices attaining them (first attainer on ties).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extent {
    pub lo: f64,
    pub hi: f64,
    pub argmin: usize,
    pub argmax: usize,
}

impl Extent {
    /// Directional width `hi - lo`; never exceeds the set's diameter.
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

pub fn project_extent(s: &PointSet, dir: &[f64]) -> Result<Extent> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if dir.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: dir.len(),
        });
    }
    let dot = |p: &[f64]| p.iter().zip(dir).map(|(a, b)| a * b).sum::<f64>();
    let mut ext = Extent {
        lo: f64::INFINITY,
        hi: f64::NEG_INFINITY,
        argmin: 0,
        argmax: 0,
    };
    for (i, p) in s.iter().enumerate() {
        let t = dot(p);
        if t < ext.lo {
            ext.lo = t;
            ext.argmin = i;
        }
        if t > ext.hi {
            ext.hi = t;
            ext.argmax = i;
        }
    }
    Ok(ext)
}

/// Best witness pair over an explicit direction list: for each direction
/// the projection extremes form a candidate pair, and the pair whose
/// true distance is largest wins (lexicographic pair on ties). Adding
/// directions can only improve the result.
pub(crate) fn best_over_directions<'a>(
    s: &PointSet,
    dirs: impl Iterator<Item = &'a [f64]>,
) -> Result<(f64, (usize, usize))> {
    if s.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: s.len(),
        });
    }
    let mut best = 0.0f64;
    let mut witness = (0, 1);
    for dir in dirs {
        let ext = project_extent(s, dir)?;
        if ext.argmin == ext.argmax {
            continue;
        }
        let pair = (
            ext.argmin.min(ext.argmax),
            ext.argmin.max(ext.argmax),
        );
        let d = distance_sq(s.coords(pair.0), s.coords(pair.1));
        if d > best || (d == best && pair < witness) {
            best = d;
            witness = pair;
        }
    }
    Ok((best, witness))
}

/// Direction-net diameter estimate: projects the set onto every net
/// direction and certifies the best extreme pair by its true distance.
///
/// The estimate `e` satisfies `D / (1 + eps) <= e <= D` where `D` is the
/// true diameter: some net direction is within angle `sqrt(2 eps)` of
/// the diametrical direction, its width is at least `D cos(sqrt(2 eps))`,
/// and the certified distance is at least that width.
pub fn agarwal_diameter(s: &PointSet, eps: f64) -> Result<DiameterEstimate> {
    if s.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: s.len(),
        });
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    let (_, witness) = if s.dim() == 1 {
        // a single direction is exact in one dimension
        let axis = [1.0];
        best_over_directions(s, std::iter::once(&axis[..]))?
    } else {
        let net = sphere_direction_net(s.dim(), eps)?;
        best_over_directions(s, net.iter())?
    };
    Ok(DiameterEstimate::from_witness(
        s,
        witness.0,
        witness.1,
        Method::Agarwal,
        Some(eps),
    ))
}

/// Angles `i * sqrt(2 eps)` covering `[0, pi)` with gap at most
/// `sqrt(2 eps)`; the planar analogue of [`sphere_direction_net`].
pub fn planar_angle_net(eps: f64) -> Result<Vec<f64>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    let dtheta = (2.0 * eps).sqrt();
    let count = (std::f64::consts::PI / dtheta).ceil() as usize;
    Ok((0..count).map(|i| i as f64 * dtheta).collect())
}

/// A candidate diametrical pair of original indices, tagged with the
/// recursion branch or direction that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePair {
    pub i: usize,
    pub j: usize,
    pub source: String,
}

impl CandidatePair {
    pub fn new(i: usize, j: usize, source: impl Into<String>) -> Self {
        Self {
            i: i.min(j),
            j: i.max(j),
            source: source.into(),
        }
    }

    /// True squared distance of the pair in the original point set.
    pub fn distance_sq_in(&self, original: &PointSet) -> f64 {
        distance_sq(original.coords(self.i), original.coords(self.j))
    }
}

/// One point of a recursion level: a working position plus the original
/// index it represents.
type TaggedPoint = (Vec<f64>, usize);

/// Recursive planar-reduction diameter.
///
/// In one dimension the extent endpoints are exact. Otherwise each angle
/// of [`planar_angle_net`] rotates the first two coordinates onto a line,
/// producing a (dim-1)-dimensional subproblem that is snapped to a grid
/// of cell `eps * L / (2 sqrt(dim - 1))` (skipped when the mapped set is
/// degenerate) before recursing. The winning candidate is the one whose
/// true original-space distance is largest, so the estimate never
/// exceeds the diameter of the represented points.
pub fn chan_recursive_diameter(
    original: &PointSet,
    pts: &[TaggedPoint],
    dim: usize,
    eps: f64,
) -> Result<(f64, CandidatePair)> {
    if pts.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    if dim == 0 {
        return Err(Error::DimensionTooSmall { needed: 1, got: 0 });
    }
    debug_assert!(pts.iter().all(|(x, _)| x.len() == dim));

    if dim == 1 {
        let mut lo = 0usize;
        let mut hi = 0usize;
        for (k, (x, _)) in pts.iter().enumerate() {
            if x[0] < pts[lo].0[0] {
                lo = k;
            }
            if x[0] > pts[hi].0[0] {
                hi = k;
            }
        }
        let cand = CandidatePair::new(pts[lo].1, pts[hi].1, "extent");
        let d = cand.distance_sq_in(original);
        return Ok((d, cand));
    }

    let mut best: Option<(f64, CandidatePair)> = None;
    for (k, theta) in planar_angle_net(eps)?.iter().enumerate() {
        let (sin, cos) = theta.sin_cos();
        let mapped: Vec<TaggedPoint> = pts
            .iter()
            .map(|(x, rep)| {
                let mut m = Vec::with_capacity(dim - 1);
                m.push(x[0] * cos + x[1] * sin);
                m.extend_from_slice(&x[2..]);
                (m, *rep)
            })
            .collect();
        let snapped = snap_to_level_grid(mapped, dim - 1, eps);
        let (d, child) = chan_recursive_diameter(original, &snapped, dim - 1, eps)?;
        let cand = CandidatePair::new(child.i, child.j, format!("theta{k}/{}", child.source));
        let better = match &best {
            None => true,
            Some((bd, bc)) => d > *bd || (d == *bd && (cand.i, cand.j) < (bc.i, bc.j)),
        };
        if better {
            best = Some((d, cand));
        }
    }
    Ok(best.expect("angle net is never empty"))
}

/// Snaps a working set to a nearest-vertex grid sized from its own
/// bounding box, merging points that share a cell (lowest original
/// index wins). Degenerate sets pass through unchanged.
fn snap_to_level_grid(pts: Vec<TaggedPoint>, dim: usize, eps: f64) -> Vec<TaggedPoint> {
    let mut lo = pts[0].0.clone();
    let mut hi = pts[0].0.clone();
    for (x, _) in &pts[1..] {
        for a in 0..dim {
            if x[a] < lo[a] {
                lo[a] = x[a];
            }
            if x[a] > hi[a] {
                hi[a] = x[a];
            }
        }
    }
    let largest = (0..dim).map(|a| hi[a] - lo[a]).fold(0.0f64, f64::max);
    if largest <= 0.0 {
        return pts;
    }
    let cell = eps * largest / (2.0 * (dim as f64).sqrt());
    if cell <= 0.0 || !cell.is_finite() {
        return pts;
    }
    let mut cells: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (x, rep) in &pts {
        let key: Vec<i64> = x
            .iter()
            .zip(&lo)
            .map(|(&c, &o)| ((c - o) / cell + 0.5).floor() as i64)
            .collect();
        cells
            .entry(key)
            .and_modify(|r| *r = (*r).min(*rep))
            .or_insert(*rep);
    }
    cells
        .into_iter()
        .map(|(key, rep)| {
            let pos = key
                .iter()
                .zip(&lo)
                .map(|(&k, &o)| o + k as f64 * cell)
                .collect();
            (pos, rep)
        })
        .collect()
}

/// Farthest point from the first point: a 2-approximation of the
/// diameter in linear time.
pub fn two_approx_baseline(s: &PointSet) -> Result<DiameterEstimate> {
    if s.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: s.len(),
        });
    }
    let p0 = s.coords(0);
    let mut best = f64::NEG_INFINITY;
    let mut arg = 1;
    for j in 1..s.len() {
        let d = distance_sq(p0, s.coords(j));
        if d > best {
            best = d;
            arg = j;
        }
    }
    Ok(DiameterEstimate::from_witness(
        s,
        0,
        arg,
        Method::TwoApprox,
        None,
    ))
}
