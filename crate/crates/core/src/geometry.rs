//! Points, point sets, bounding boxes, and the squared-distance primitive.
//!
//! Coordinates are plain `f64`. Non-finite values are rejected when data
//! enters the library, so the hot loops never have to re-check. Squared
//! distances are used everywhere internally; square roots are taken only
//! when a result is reported.

use crate::error::{Error, Result};

/// A single point in d-dimensional Euclidean space.
///
/// All coordinates are finite and `d >= 1`; both are checked on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some(axis) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { axis });
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// An immutable set of `n` points in `R^d` with stable indices `0..n-1`.
///
/// Storage is one flat row-major buffer, so iterating neighbours in the
/// pairwise kernels walks memory linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    data: Vec<f64>,
}

impl PointSet {
    /// Builds a set from owned points, checking that every point has the
    /// stated dimension.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { needed: 1, got: 0 });
        }
        let mut data = Vec::with_capacity(points.len() * dim);
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            data.extend_from_slice(p.coords());
        }
        Ok(Self { dim, data })
    }

    /// Builds a set from raw rows; the dimension is taken from the first row.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::EmptyPointSet);
        }
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            if let Some(axis) = row.iter().position(|c| !c.is_finite()) {
                return Err(Error::NonFinite { axis });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// Builds a set from a flat row-major buffer of length `n * dim`.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { needed: 1, got: 0 });
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: data.len() % dim,
            });
        }
        if let Some(i) = data.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { axis: i % dim });
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Coordinates of point `i`.
    pub fn coords(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Iterates over point rows in index order.
    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }
}

/// Squared Euclidean distance between two coordinate slices.
///
/// Exactly symmetric in its arguments: `(a-b)^2` and `(b-a)^2` are the
/// same IEEE value, and the summation order is fixed.
///
/// Panics if the slices have different lengths; that is a programming
/// error, not a data error.
pub fn distance_sq(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(
        p.len(),
        q.len(),
        "distance_sq: dimension mismatch ({} vs {})",
        p.len(),
        q.len()
    );
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

/// Axis-parallel bounding box given by per-axis minima and maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundingBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoundingBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::EmptyPoint);
        }
        for axis in 0..lo.len() {
            if !lo[axis].is_finite() || !hi[axis].is_finite() {
                return Err(Error::NonFinite { axis });
            }
            if lo[axis] > hi[axis] {
                return Err(Error::InvalidExtent {
                    extent: hi[axis] - lo[axis],
                });
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    /// Side length along one axis.
    pub fn side(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    /// Length of the largest side; zero for a degenerate (single-point) box.
    pub fn largest_side(&self) -> f64 {
        (0..self.dim())
            .map(|a| self.side(a))
            .fold(0.0f64, f64::max)
    }
}

/// Exact coordinate-wise min/max over a non-empty point set.
pub fn bounding_box(s: &PointSet) -> Result<BoundingBox> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut lo = s.coords(0).to_vec();
    let mut hi = lo.clone();
    for p in s.iter().skip(1) {
        for (axis, &c) in p.iter().enumerate() {
            if c < lo[axis] {
                lo[axis] = c;
            }
            if c > hi[axis] {
                hi[axis] = c;
            }
        }
    }
    BoundingBox::new(lo, hi)
}
