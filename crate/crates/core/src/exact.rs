//! Exact brute-force diameter and diametrical-pair enumeration.
//!
//! The real-coordinate version is the oracle every approximate method is
//! validated against. The lattice version runs on rounded sets, where
//! squared distances are integers and ties are detected exactly.

use crate::error::{Error, Result};
use crate::geometry::{distance_sq, PointSet};
use crate::grid::{lattice_distance_sq, RoundedSet};

/// Exact maximum squared distance over all unordered pairs, with the
/// lexicographically lowest witness pair among the maxima.
///
/// A single point yields `(0.0, (0, 0))`.
pub fn brute_force_diameter(s: &PointSet) -> Result<(f64, (usize, usize))> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if s.len() == 1 {
        return Ok((0.0, (0, 0)));
    }
    let mut best = f64::NEG_INFINITY;
    let mut witness = (0, 0);
    for i in 0..s.len() - 1 {
        let pi = s.coords(i);
        for j in i + 1..s.len() {
            let d = distance_sq(pi, s.coords(j));
            // pairs are visited in lexicographic order, so a strict
            // comparison keeps the lowest witness among ties
            if d > best {
                best = d;
                witness = (i, j);
            }
        }
    }
    Ok((best, witness))
}

/// All pairs attaining the exact maximum squared lattice distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiametricalPairList {
    /// Squared diameter in integer lattice units.
    pub dist_sq_lattice: u128,
    /// Attaining pairs `(i, j)` with `i < j`, sorted lexicographically.
    /// Indices refer to the queried rounded set's point order.
    pub pairs: Vec<(usize, usize)>,
    /// True when the cap cut the list short; the retained pairs still
    /// all attain `dist_sq_lattice`.
    pub truncated: bool,
}

/// Enumerates the diametrical pairs of a whole rounded set. See
/// [`diametrical_pairs_among`].
pub fn diametrical_pairs(r: &RoundedSet, cap: usize) -> Result<DiametricalPairList> {
    let all: Vec<usize> = (0..r.len()).collect();
    diametrical_pairs_among(r, &all, cap)
}

/// Enumerates, over the given subset of grid-point indices, every pair
/// attaining the exact integer maximum squared lattice distance. The
/// list is truncated at `cap` pairs with the flag set.
///
/// `indices` must be sorted ascending so the emitted pair list comes out
/// lexicographically sorted by construction. A singleton subset yields
/// distance 0 and no pairs.
pub fn diametrical_pairs_among(
    r: &RoundedSet,
    indices: &[usize],
    cap: usize,
) -> Result<DiametricalPairList> {
    if indices.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
    let mut best: u128 = 0;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut truncated = false;
    for (a, &i) in indices.iter().enumerate() {
        let li = &r.points()[i].lattice;
        for &j in &indices[a + 1..] {
            let d = lattice_distance_sq(li, &r.points()[j].lattice);
            if d > best || pairs.is_empty() {
                best = d;
                pairs.clear();
                pairs.push((i, j));
                truncated = false;
            } else if d == best {
                if pairs.len() < cap {
                    pairs.push((i, j));
                } else {
                    truncated = true;
                }
            }
        }
    }
    Ok(DiametricalPairList {
        dist_sq_lattice: best,
        pairs,
        truncated,
    })
}
