//! Grid construction and point rounding with provenance.
//!
//! Three nested grids drive the approximation pipeline: a fine grid whose
//! cells absorb points onto cell centers, then two successively coarser
//! lattices that snap positions to their nearest grid vertex. Every grid
//! point remembers one representative index into the original point set,
//! so any distance measured between grid points can be re-certified on
//! the original data.
//!
//! Lattice coordinates are signed 64-bit integers. Squared distances
//! between points of the same grid are computed in integer lattice units,
//! which makes tie detection exact.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Relative slack used for inclusive cube-membership tests (2^-40).
///
/// Cell-size ratios between grid levels are irrational in general, so
/// membership must be tested in floating point; the slack keeps boundary
/// candidates from being dropped. Extra candidates cost work, never
/// correctness.
pub const BOUNDARY_SLACK: f64 = 9.094947017729282e-13;

/// How points land on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingMode {
    /// Point goes to the center of the cell containing it:
    /// `origin + (k + 1/2) * cell` with `k = floor((x - origin)/cell)`.
    CellCenter,
    /// Point goes to the nearest lattice vertex `origin + k * cell`,
    /// ties on the half-cell boundary rounding toward +infinity.
    LatticePoint,
}

impl RoundingMode {
    fn name(self) -> &'static str {
        match self {
            RoundingMode::CellCenter => "cell-center",
            RoundingMode::LatticePoint => "lattice-point",
        }
    }
}

/// A grid: an origin corner, a positive cell side, and a rounding mode.
///
/// All grids of one pipeline run share the bounding box's low corner as
/// origin, which keeps the lattices comparable and runs reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    origin: Vec<f64>,
    cell: f64,
    mode: RoundingMode,
}

impl GridSpec {
    pub fn new(origin: Vec<f64>, cell: f64, mode: RoundingMode) -> Result<Self> {
        if origin.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some(axis) = origin.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { axis });
        }
        if cell <= 0.0 || !cell.is_finite() {
            return Err(Error::InvalidCell { cell });
        }
        Ok(Self { origin, cell, mode })
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn mode(&self) -> RoundingMode {
        self.mode
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    /// Integer lattice coordinates of a real position under this grid.
    pub fn lattice_of(&self, x: &[f64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        self.lattice_into(x, &mut out);
        out
    }

    /// Allocation-free form of [`Self::lattice_of`] for hot loops.
    pub fn lattice_into(&self, x: &[f64], out: &mut [i64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        for (slot, (&c, &o)) in out.iter_mut().zip(x.iter().zip(&self.origin)) {
            let t = (c - o) / self.cell;
            *slot = match self.mode {
                RoundingMode::CellCenter => t.floor() as i64,
                // floor(t + 1/2) rounds the exact half up, unlike
                // f64::round which rounds halves away from zero.
                RoundingMode::LatticePoint => (t + 0.5).floor() as i64,
            };
        }
    }

    /// Real position of a lattice tuple under this grid.
    pub fn position_of(&self, lattice: &[i64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.position_into(lattice, &mut out);
        out
    }

    /// Allocation-free form of [`Self::position_of`] for hot loops.
    pub fn position_into(&self, lattice: &[i64], out: &mut [f64]) {
        debug_assert_eq!(lattice.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        let offset = match self.mode {
            RoundingMode::CellCenter => 0.5,
            RoundingMode::LatticePoint => 0.0,
        };
        for (slot, (&k, &o)) in out.iter_mut().zip(lattice.iter().zip(&self.origin)) {
            *slot = o + (k as f64 + offset) * self.cell;
        }
    }
}

/// One occupied grid location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    /// Integer cell indices, one per axis.
    pub lattice: Vec<i64>,
    /// Index of one original point whose rounding chain lands here; the
    /// lowest original index among everything merged into this location.
    pub rep: usize,
    /// Number of parent points merged into this location.
    pub mult: usize,
}

/// A deduplicated set of grid points at one resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundedSet {
    spec: GridSpec,
    points: Vec<GridPoint>,
    parent_count: usize,
}

impl RoundedSet {
    /// Assembles a set from explicit grid points, deduplicating nothing.
    /// Points are sorted by lattice tuple to give a canonical order.
    pub fn from_points(spec: GridSpec, mut points: Vec<GridPoint>, parent_count: usize) -> Self {
        points.sort_unstable_by(|a, b| a.lattice.cmp(&b.lattice));
        Self {
            spec,
            points,
            parent_count,
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Cardinality of the set this one was rounded from. For a set built
    /// by pruning, this still refers to the pruning *source*'s parent.
    pub fn parent_count(&self) -> usize {
        self.parent_count
    }

    /// Real position of grid point `idx`.
    pub fn position(&self, idx: usize) -> Vec<f64> {
        self.spec.position_of(&self.points[idx].lattice)
    }

    /// Exact squared distance between two grid points, in lattice units.
    pub fn lattice_distance_sq(&self, a: usize, b: usize) -> u128 {
        lattice_distance_sq(&self.points[a].lattice, &self.points[b].lattice)
    }
}

/// Exact integer squared distance between two lattice tuples.
pub fn lattice_distance_sq(a: &[i64], b: &[i64]) -> u128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = (x as i128 - y as i128).unsigned_abs();
            d * d
        })
        .sum()
}

/// The three cell sides used by the rounding pipeline, derived from the
/// box's largest side `ell` and the accuracy parameter `eps`.
///
/// `fine = eps * ell / (2 sqrt(d))`, and the mid and coarse sides replace
/// `eps` by its square root and fourth root, so
/// `fine <= mid <= coarse` and `fine * coarse = mid^2` up to round-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSizes {
    pub fine: f64,
    pub mid: f64,
    pub coarse: f64,
}

pub fn cell_sizes(ell: f64, eps: f64, dim: usize) -> Result<CellSizes> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    if ell <= 0.0 || !ell.is_finite() {
        return Err(Error::InvalidExtent { extent: ell });
    }
    if dim == 0 {
        return Err(Error::DimensionTooSmall { needed: 1, got: 0 });
    }
    let denom = 2.0 * (dim as f64).sqrt();
    // sqrt chains are correctly rounded, unlike powf in general.
    let root = eps.sqrt();
    Ok(CellSizes {
        fine: eps * ell / denom,
        mid: root * ell / denom,
        coarse: root.sqrt() * ell / denom,
    })
}

/// Rounds every point of `s` to the center of its grid cell, merging
/// duplicates. The representative of a merged location is the lowest
/// original index; multiplicities sum to `s.len()`.
pub fn round_to_cell_centers(s: &PointSet, spec: &GridSpec) -> Result<RoundedSet> {
    if spec.mode() != RoundingMode::CellCenter {
        return Err(Error::WrongGridMode {
            expected: RoundingMode::CellCenter.name(),
            got: spec.mode().name(),
        });
    }
    if spec.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: spec.dim(),
        });
    }
    let mut cells: HashMap<Vec<i64>, (usize, usize)> = HashMap::with_capacity(s.len());
    let mut key = vec![0i64; spec.dim()];
    for (i, p) in s.iter().enumerate() {
        spec.lattice_into(p, &mut key);
        // Ascending index order makes the first insert the lowest rep.
        match cells.get_mut(key.as_slice()) {
            Some((_, mult)) => *mult += 1,
            None => {
                cells.insert(key.clone(), (i, 1));
            }
        }
    }
    let points = cells
        .into_iter()
        .map(|(lattice, (rep, mult))| GridPoint { lattice, rep, mult })
        .collect();
    Ok(RoundedSet::from_points(spec.clone(), points, s.len()))
}

/// Rounds every grid point of `r` to its nearest vertex of a coarser
/// lattice. Each input grid point counts once toward the multiplicity of
/// the location it lands on; representatives chain through to original
/// indices, keeping the lowest on a merge.
pub fn round_to_lattice(r: &RoundedSet, spec: &GridSpec) -> Result<RoundedSet> {
    if spec.mode() != RoundingMode::LatticePoint {
        return Err(Error::WrongGridMode {
            expected: RoundingMode::LatticePoint.name(),
            got: spec.mode().name(),
        });
    }
    if spec.dim() != r.spec().dim() {
        return Err(Error::DimensionMismatch {
            expected: r.spec().dim(),
            got: spec.dim(),
        });
    }
    // eps = 1 collapses all three pipeline cell sizes to the same value,
    // so equality must be allowed here.
    if spec.cell() < r.spec().cell() {
        return Err(Error::CellNotCoarser {
            cell: spec.cell(),
            parent_cell: r.spec().cell(),
        });
    }
    let mut cells: HashMap<Vec<i64>, (usize, usize)> = HashMap::with_capacity(r.len());
    let mut pos = vec![0.0f64; spec.dim()];
    let mut key = vec![0i64; spec.dim()];
    for gp in r.points() {
        r.spec().position_into(&gp.lattice, &mut pos);
        spec.lattice_into(&pos, &mut key);
        match cells.get_mut(key.as_slice()) {
            Some((rep, mult)) => {
                *rep = (*rep).min(gp.rep);
                *mult += 1;
            }
            None => {
                cells.insert(key.clone(), (gp.rep, 1));
            }
        }
    }
    let points = cells
        .into_iter()
        .map(|(lattice, (rep, mult))| GridPoint { lattice, rep, mult })
        .collect();
    Ok(RoundedSet::from_points(spec.clone(), points, r.len()))
}

/// Keeps, within every group of grid points that agree on all lattice
/// coordinates except `axis`, only the lowest and highest point along
/// `axis`. The diameter of the set is unchanged: for a fixed partner,
/// the squared distance is monotone in the along-axis separation, so
/// some extreme point always attains the maximum.
pub fn prune_interior(r: &RoundedSet, axis: usize) -> RoundedSet {
    let all: Vec<usize> = (0..r.len()).collect();
    let keep = prune_indices(r, &all, axis);
    let points = keep.iter().map(|&i| r.points()[i].clone()).collect();
    RoundedSet {
        spec: r.spec().clone(),
        points,
        parent_count: r.parent_count(),
    }
}

/// Index-level form of [`prune_interior`] restricted to a subset of `r`.
/// Returns the surviving indices in ascending order.
pub fn prune_indices(r: &RoundedSet, indices: &[usize], axis: usize) -> Vec<usize> {
    assert!(
        axis < r.spec().dim(),
        "prune axis {axis} out of range for dimension {}",
        r.spec().dim()
    );
    // column key = lattice tuple with `axis` removed
    let mut columns: HashMap<Vec<i64>, (usize, usize)> = HashMap::new();
    for &i in indices {
        let lattice = &r.points()[i].lattice;
        let mut key = Vec::with_capacity(lattice.len() - 1);
        key.extend_from_slice(&lattice[..axis]);
        key.extend_from_slice(&lattice[axis + 1..]);
        let v = lattice[axis];
        columns
            .entry(key)
            .and_modify(|(lo, hi)| {
                if v < r.points()[*lo].lattice[axis] {
                    *lo = i;
                }
                if v > r.points()[*hi].lattice[axis] {
                    *hi = i;
                }
            })
            .or_insert((i, i));
    }
    let mut keep: Vec<usize> = Vec::with_capacity(columns.len() * 2);
    for &(lo, hi) in columns.values() {
        keep.push(lo);
        if hi != lo {
            keep.push(hi);
        }
    }
    keep.sort_unstable();
    keep
}

/// Indices of all grid points of `r` whose real position lies in the
/// closed axis-aligned cube of the given side around `center`, with
/// relative slack [`BOUNDARY_SLACK`] per axis.
pub fn points_in_cube(r: &RoundedSet, center: &[f64], side: f64) -> Vec<usize> {
    assert!(side > 0.0, "cube side must be positive");
    assert_eq!(center.len(), r.spec().dim(), "cube center dimension");
    let half = side * 0.5 + side * BOUNDARY_SLACK;
    let mut pos = vec![0.0f64; r.spec().dim()];
    (0..r.len())
        .filter(|&i| {
            r.spec().position_into(&r.points()[i].lattice, &mut pos);
            pos.iter().zip(center).all(|(&x, &c)| (x - c).abs() <= half)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance_sq;

    fn set_1d(xs: &[f64]) -> PointSet {
        PointSet::from_rows(&xs.iter().map(|&x| vec![x]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cell_sizes_collapse_at_eps_one() {
        for dim in 1..=8usize {
            let ell = 2.0 * (dim as f64).sqrt();
            let cs = cell_sizes(ell, 1.0, dim).unwrap();
            assert_eq!(cs.fine, 1.0);
            assert_eq!(cs.mid, 1.0);
            assert_eq!(cs.coarse, 1.0);
        }
    }

    #[test]
    fn cell_sizes_dyadic_example() {
        // eps = 1/16 makes all three roots exact dyadics.
        let cs = cell_sizes(4.0, 0.0625, 4).unwrap();
        assert_eq!(cs.fine, 0.0625);
        assert_eq!(cs.mid, 0.25);
        assert_eq!(cs.coarse, 0.5);
    }

    #[test]
    fn cell_sizes_rejects_bad_eps() {
        assert!(cell_sizes(1.0, 0.0, 2).is_err());
        assert!(cell_sizes(1.0, 1.5, 2).is_err());
        assert!(cell_sizes(1.0, -0.1, 2).is_err());
        assert!(cell_sizes(0.0, 0.5, 2).is_err());
    }

    #[test]
    fn cell_center_rounding_basic() {
        let s = set_1d(&[0.3]);
        let spec = GridSpec::new(vec![0.0], 0.5, RoundingMode::CellCenter).unwrap();
        let r = round_to_cell_centers(&s, &spec).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.points()[0].lattice, vec![0]);
        assert_eq!(r.position(0), vec![0.25]);
    }

    #[test]
    fn cell_center_rounding_merges_and_keeps_lowest_rep() {
        let s = set_1d(&[0.1, 0.4]);
        let spec = GridSpec::new(vec![0.0], 0.5, RoundingMode::CellCenter).unwrap();
        let r = round_to_cell_centers(&s, &spec).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.points()[0].mult, 2);
        assert_eq!(r.points()[0].rep, 0);
        assert_eq!(r.parent_count(), 2);
    }

    #[test]
    fn lattice_rounding_nearest() {
        let s = set_1d(&[0.74]);
        let fine = GridSpec::new(vec![0.0], 0.01, RoundingMode::CellCenter).unwrap();
        let r = round_to_cell_centers(&s, &fine).unwrap();
        // 0.745 / 0.5 = 1.49 -> lattice 1 -> position 0.5
        let coarse = GridSpec::new(vec![0.0], 0.5, RoundingMode::LatticePoint).unwrap();
        let r2 = round_to_lattice(&r, &coarse).unwrap();
        assert_eq!(r2.points()[0].lattice, vec![1]);
        assert_eq!(r2.position(0), vec![0.5]);
    }

    #[test]
    fn lattice_rounding_half_cell_tie_goes_up() {
        let spec = GridSpec::new(vec![0.0], 1.0, RoundingMode::LatticePoint).unwrap();
        assert_eq!(spec.lattice_of(&[2.5]), vec![3]);
        assert_eq!(spec.lattice_of(&[-2.5]), vec![-2]);
        assert_eq!(spec.lattice_of(&[-0.5]), vec![0]);
    }

    #[test]
    fn lattice_rounding_rejects_finer_target() {
        let s = set_1d(&[0.0, 1.0]);
        let fine = GridSpec::new(vec![0.0], 0.5, RoundingMode::CellCenter).unwrap();
        let r = round_to_cell_centers(&s, &fine).unwrap();
        let finer = GridSpec::new(vec![0.0], 0.25, RoundingMode::LatticePoint).unwrap();
        assert!(matches!(
            round_to_lattice(&r, &finer),
            Err(Error::CellNotCoarser { .. })
        ));
        // equal cell size is allowed
        let equal = GridSpec::new(vec![0.0], 0.5, RoundingMode::LatticePoint).unwrap();
        assert!(round_to_lattice(&r, &equal).is_ok());
    }

    #[test]
    fn prune_keeps_column_extremes() {
        let spec = GridSpec::new(vec![0.0, 0.0], 1.0, RoundingMode::LatticePoint).unwrap();
        let points = (0..4)
            .map(|k| GridPoint {
                lattice: vec![0, k],
                rep: k as usize,
                mult: 1,
            })
            .collect();
        let r = RoundedSet::from_points(spec, points, 4);
        let pruned = prune_interior(&r, 1);
        let kept: Vec<i64> = pruned.points().iter().map(|g| g.lattice[1]).collect();
        assert_eq!(kept, vec![0, 3]);
    }

    #[test]
    fn prune_is_identity_on_thin_columns() {
        let spec = GridSpec::new(vec![0.0, 0.0], 1.0, RoundingMode::LatticePoint).unwrap();
        let points: Vec<GridPoint> = [(0, 0), (0, 5), (1, 2)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| GridPoint {
                lattice: vec![x, y],
                rep: i,
                mult: 1,
            })
            .collect();
        let r = RoundedSet::from_points(spec, points.clone(), 3);
        let pruned = prune_interior(&r, 1);
        assert_eq!(pruned.points(), r.points());
    }

    #[test]
    fn cube_contains_its_own_center_point() {
        let s = set_1d(&[0.3, 0.9]);
        let spec = GridSpec::new(vec![0.0], 0.5, RoundingMode::CellCenter).unwrap();
        let r = round_to_cell_centers(&s, &spec).unwrap();
        for idx in 0..r.len() {
            let hits = points_in_cube(&r, &r.position(idx), 1e-6);
            assert!(hits.contains(&idx));
        }
    }

    #[test]
    fn cell_center_displacement_is_bounded() {
        // every original point is within cell * sqrt(d) / 2 of its center
        let rows: Vec<Vec<f64>> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.017;
                vec![t.sin(), (2.0 * t).cos(), t.fract()]
            })
            .collect();
        let s = PointSet::from_rows(&rows).unwrap();
        let spec = GridSpec::new(vec![-1.0, -1.0, -1.0], 0.3, RoundingMode::CellCenter).unwrap();
        let r = round_to_cell_centers(&s, &spec).unwrap();
        let bound = 0.3 * 3.0f64.sqrt() / 2.0;
        for (i, p) in s.iter().enumerate() {
            let lattice = spec.lattice_of(p);
            let pos = spec.position_of(&lattice);
            assert!(distance_sq(p, &pos).sqrt() <= bound * (1.0 + 1e-12));
            // and that cell is present in the rounded set
            assert!(r.points().iter().any(|g| g.lattice == lattice && g.rep <= i));
        }
    }

    #[test]
    fn lattice_distance_is_exact() {
        assert_eq!(lattice_distance_sq(&[0, 0], &[3, 4]), 25);
        assert_eq!(lattice_distance_sq(&[-2], &[5]), 49);
    }
}
