//! The three-phase grid-rounding diameter pipeline.
//!
//! The input is rounded three times: onto cell centers of a fine grid,
//! then onto the vertices of a mid and a coarse lattice. The coarse set
//! is small enough to scan quadratically; its diametrical pairs seed a
//! cube-restricted search on the mid lattice, whose diametrical pairs in
//! turn seed a cube-restricted recursive-projection search on the fine
//! set. Every stage contributes witness candidates, and the reported
//! value is the largest true original-pair distance among all of them,
//! which makes the result a certified lower bound on the diameter.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::directional::{chan_recursive_diameter, CandidatePair};
use crate::error::{Error, Result};
use crate::exact::{brute_force_diameter, diametrical_pairs, diametrical_pairs_among};
use crate::geometry::{bounding_box, distance_sq, BoundingBox, PointSet};
use crate::grid::{
    cell_sizes, points_in_cube, prune_indices, prune_interior, round_to_cell_centers,
    round_to_lattice, CellSizes, GridSpec, RoundedSet, RoundingMode,
};

/// Which diameter method produced an estimate. The tags are the method
/// names accepted by the command-line harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Exact,
    TwoApprox,
    Agarwal,
    Chan,
    Paper,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Exact,
        Method::TwoApprox,
        Method::Agarwal,
        Method::Chan,
        Method::Paper,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::TwoApprox => "two-approx",
            Method::Agarwal => "agarwal",
            Method::Chan => "chan",
            Method::Paper => "paper",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.tag() == tag)
    }

    /// Whether the method takes an accuracy parameter.
    pub fn uses_eps(self) -> bool {
        !matches!(self, Method::Exact | Method::TwoApprox)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// A diameter estimate certified by a witness pair of original indices.
///
/// `value_sq` is always the bit-exact squared distance of the witness
/// pair in the original point set; `value` is its square root, taken
/// once at this reporting boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct DiameterEstimate {
    pub value: f64,
    pub value_sq: f64,
    pub witness: (usize, usize),
    pub method: Method,
    pub eps: Option<f64>,
}

impl DiameterEstimate {
    pub fn from_witness(
        s: &PointSet,
        i: usize,
        j: usize,
        method: Method,
        eps: Option<f64>,
    ) -> Self {
        let witness = (i.min(j), i.max(j));
        let value_sq = distance_sq(s.coords(witness.0), s.coords(witness.1));
        Self {
            value: value_sq.sqrt(),
            value_sq,
            witness,
            method,
            eps,
        }
    }
}

/// Wall-clock timings of the pipeline stages, in milliseconds. Kept
/// apart from the counters so reports can mask them for byte-level
/// comparison.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTiming {
    /// Bounding box, cell sizes, all three roundings, and the prune.
    pub rounding_ms: f64,
    /// Quadratic scan and pair enumeration on the coarse set.
    pub coarse_scan_ms: f64,
    /// Cube gathering and brute-force refinement on the mid lattice.
    pub refine_mid_ms: f64,
    /// Cube gathering and recursive-projection refinement on the fine set.
    pub refine_fine_ms: f64,
    pub total_ms: f64,
}

/// Per-phase counters of one pipeline run, with the a-priori occupancy
/// bounds they are checked against.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhaseStats {
    pub n_input: usize,
    /// Distinct fine-grid cell centers.
    pub n_cell_centers: usize,
    /// Distinct mid-lattice vertices.
    pub n_mid_lattice: usize,
    /// Distinct coarse-lattice vertices (before pruning).
    pub n_coarse_lattice: usize,
    /// Coarse vertices left after interior pruning.
    pub n_coarse_pruned: usize,
    /// Diametrical pairs found on the pruned coarse set.
    pub pairs_coarse: usize,
    /// Diametrical pairs found at the mid refinement level.
    pub pairs_mid: usize,
    pub truncated_coarse: bool,
    pub truncated_mid: bool,
    /// Largest cube-query results around the first and second member of
    /// the coarse pairs (mid lattice) and the mid pairs (fine grid).
    pub max_cube_mid_first: usize,
    pub max_cube_mid_second: usize,
    pub max_cube_fine_first: usize,
    pub max_cube_fine_second: usize,
    /// `(2 sqrt(d)/eps^(1/4) + 1)^d`: cap on the pruned coarse working
    /// set the quadratic scan runs on.
    pub bound_coarse_count: f64,
    /// `(2 sqrt(d)/eps^(1/4) + 2.5)^d`: cap on raw coarse occupancy.
    /// Nearest-vertex rounding can claim one boundary vertex beyond the
    /// box per axis, plus up to half a cell of drift inherited from the
    /// two earlier roundings, so the raw count needs the wider constant.
    pub bound_coarse_raw: f64,
    /// `(2/eps^(1/4) + 1)^d`: cap on any mid-lattice cube query.
    pub bound_cube_mid: f64,
    /// `(2/eps^(1/2) + 1)^d`: cap on any fine-grid cube query.
    pub bound_cube_fine: f64,
    pub timing: PhaseTiming,
}

impl PhaseStats {
    /// Checks the occupancy counters against their a-priori bounds.
    pub fn counts_within_bounds(&self) -> bool {
        self.n_coarse_pruned as f64 <= self.bound_coarse_count
            && self.n_coarse_lattice as f64 <= self.bound_coarse_raw
            && self.max_cube_mid_first as f64 <= self.bound_cube_mid
            && self.max_cube_mid_second as f64 <= self.bound_cube_mid
            && self.max_cube_fine_first as f64 <= self.bound_cube_fine
            && self.max_cube_fine_second as f64 <= self.bound_cube_fine
    }

    fn degenerate(n_input: usize) -> Self {
        PhaseStats {
            n_input,
            bound_coarse_count: f64::INFINITY,
            bound_coarse_raw: f64::INFINITY,
            bound_cube_mid: f64::INFINITY,
            bound_cube_fine: f64::INFINITY,
            ..PhaseStats::default()
        }
    }
}

/// Output of the rounding front end (everything before any pair scan).
#[derive(Debug, Clone)]
pub struct RoundingPhases {
    pub bbox: BoundingBox,
    pub largest_side: f64,
    pub sizes: CellSizes,
    pub cell_centers: RoundedSet,
    pub mid: RoundedSet,
    pub coarse: RoundedSet,
    pub coarse_pruned: RoundedSet,
}

/// Runs the linear-time front end: bounding box, cell sizes, the three
/// roundings, and interior pruning of the coarse set. Returns `None`
/// for degenerate inputs (a single point, or all points identical),
/// which the full pipeline short-circuits.
pub fn rounding_phases(s: &PointSet, eps: f64) -> Result<Option<RoundingPhases>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let bbox = bounding_box(s)?;
    let ell = bbox.largest_side();
    if s.len() == 1 || ell == 0.0 {
        return Ok(None);
    }
    let dim = s.dim();
    let sizes = cell_sizes(ell, eps, dim)?;
    let origin = bbox.lo().to_vec();
    let fine_spec = GridSpec::new(origin.clone(), sizes.fine, RoundingMode::CellCenter)?;
    let cell_centers = round_to_cell_centers(s, &fine_spec)?;
    let mid_spec = GridSpec::new(origin.clone(), sizes.mid, RoundingMode::LatticePoint)?;
    let mid = round_to_lattice(&cell_centers, &mid_spec)?;
    let coarse_spec = GridSpec::new(origin, sizes.coarse, RoundingMode::LatticePoint)?;
    let coarse = round_to_lattice(&mid, &coarse_spec)?;
    let coarse_pruned = prune_interior(&coarse, dim - 1);
    Ok(Some(RoundingPhases {
        bbox,
        largest_side: ell,
        sizes,
        cell_centers,
        mid,
        coarse,
        coarse_pruned,
    }))
}

/// How one refinement level computes the diameter of its cube unions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefineSolver {
    /// Exact quadratic scan in integer lattice units.
    BruteForce,
    /// Recursive planar-projection reduction on real positions.
    Recursive { eps: f64 },
}

/// Result of refining one level: the level's maximum, its exact-tie pair
/// list (brute-force solver only), and every witness candidate met on
/// the way.
#[derive(Debug, Clone)]
pub struct RefineOutcome {
    /// Exact squared level maximum in lattice units of `finer`
    /// (brute-force solver only).
    pub best_lattice_sq: Option<u128>,
    /// Largest true original-pair squared distance among `candidates`.
    pub best_true_sq: f64,
    /// Pairs of `finer` indices attaining the exact level maximum,
    /// merged across all coarse parents, sorted, capped.
    pub pairs: Vec<(usize, usize)>,
    pub truncated: bool,
    /// One certified candidate per coarse parent (the true-distance best
    /// among that parent's tie pairs), in parent order.
    pub candidates: Vec<CandidatePair>,
    pub max_cube_first: usize,
    pub max_cube_second: usize,
}

fn merged_cube_union(
    finer: &RoundedSet,
    center_a: &[f64],
    center_b: &[f64],
    side: f64,
    prune_axis: usize,
) -> (Vec<usize>, usize, usize) {
    let cube_a = points_in_cube(finer, center_a, side);
    let cube_b = points_in_cube(finer, center_b, side);
    let (raw_a, raw_b) = (cube_a.len(), cube_b.len());
    let mut union = prune_indices(finer, &cube_a, prune_axis);
    union.extend(prune_indices(finer, &cube_b, prune_axis));
    union.sort_unstable();
    union.dedup();
    (union, raw_a, raw_b)
}

/// For every coarse diametrical pair, gathers the finer-level points
/// inside the two cubes of the given side around the pair's positions,
/// prunes interior points, and solves the union's diameter with the
/// requested solver. An empty cube means rounding provenance is broken
/// and is reported as a hard error.
pub fn refine_level(
    original: &PointSet,
    coarse: &RoundedSet,
    pairs: &[(usize, usize)],
    finer: &RoundedSet,
    side: f64,
    solver: RefineSolver,
    cap: usize,
) -> Result<RefineOutcome> {
    if pairs.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    let prune_axis = finer.spec().dim() - 1;
    let mut out = RefineOutcome {
        best_lattice_sq: None,
        best_true_sq: 0.0,
        pairs: Vec::new(),
        truncated: false,
        candidates: Vec::new(),
        max_cube_first: 0,
        max_cube_second: 0,
    };
    let mut best_true: Option<(f64, (usize, usize))> = None;
    let mut tie_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut best_lattice: u128 = 0;
    let mut lattice_truncated = false;

    for &(ci, cj) in pairs {
        let (union, raw_a, raw_b) = merged_cube_union(
            finer,
            &coarse.position(ci),
            &coarse.position(cj),
            side,
            prune_axis,
        );
        out.max_cube_first = out.max_cube_first.max(raw_a);
        out.max_cube_second = out.max_cube_second.max(raw_b);
        if raw_a == 0 {
            return Err(Error::EmptyRefinementCube { index: ci });
        }
        if raw_b == 0 {
            return Err(Error::EmptyRefinementCube { index: cj });
        }

        match solver {
            RefineSolver::BruteForce => {
                let local = diametrical_pairs_among(finer, &union, cap)?;
                // certify the tie pair with the largest true distance
                let mut parent_best: Option<(f64, (usize, usize))> = None;
                for &(i, j) in &local.pairs {
                    let reps = (finer.points()[i].rep, finer.points()[j].rep);
                    let pair = (reps.0.min(reps.1), reps.0.max(reps.1));
                    let d = distance_sq(original.coords(pair.0), original.coords(pair.1));
                    let better = match parent_best {
                        None => true,
                        Some((bd, bp)) => d > bd || (d == bd && pair < bp),
                    };
                    if better {
                        parent_best = Some((d, pair));
                    }
                }
                if let Some((d, pair)) = parent_best {
                    out.candidates
                        .push(CandidatePair::new(pair.0, pair.1, "refine-brute"));
                    let better = match best_true {
                        None => true,
                        Some((bd, bp)) => d > bd || (d == bd && pair < bp),
                    };
                    if better {
                        best_true = Some((d, pair));
                    }
                }
                // merge exact lattice ties across parents
                if local.dist_sq_lattice > best_lattice || tie_set.is_empty() {
                    best_lattice = local.dist_sq_lattice;
                    tie_set.clear();
                    tie_set.extend(local.pairs.iter().copied());
                    lattice_truncated = local.truncated;
                } else if local.dist_sq_lattice == best_lattice {
                    tie_set.extend(local.pairs.iter().copied());
                    lattice_truncated |= local.truncated;
                }
            }
            RefineSolver::Recursive { eps } => {
                let pts: Vec<(Vec<f64>, usize)> = union
                    .iter()
                    .map(|&i| (finer.position(i), finer.points()[i].rep))
                    .collect();
                let (d, cand) =
                    chan_recursive_diameter(original, &pts, finer.spec().dim(), eps)?;
                let pair = (cand.i, cand.j);
                out.candidates.push(cand);
                let better = match best_true {
                    None => true,
                    Some((bd, bp)) => d > bd || (d == bd && pair < bp),
                };
                if better {
                    best_true = Some((d, pair));
                }
            }
        }
    }

    if let Some((d, _)) = best_true {
        out.best_true_sq = d;
    }
    match solver {
        RefineSolver::BruteForce => {
            out.best_lattice_sq = Some(best_lattice);
            out.pairs = tie_set.into_iter().collect();
            if out.pairs.len() > cap {
                out.pairs.truncate(cap);
                lattice_truncated = true;
            }
            out.truncated = lattice_truncated;
        }
        RefineSolver::Recursive { .. } => {
            // exact ties of the level maximum, as original-index pairs
            let ties: BTreeSet<(usize, usize)> = out
                .candidates
                .iter()
                .filter(|c| c.distance_sq_in(original) == out.best_true_sq)
                .map(|c| (c.i, c.j))
                .collect();
            out.pairs = ties.into_iter().take(cap).collect();
        }
    }
    Ok(out)
}

/// Runs the full pipeline and reports the best certified witness pair
/// found anywhere in it, together with the per-phase audit counters.
pub fn approximate_diameter(
    s: &PointSet,
    eps: f64,
    cap: usize,
) -> Result<(DiameterEstimate, PhaseStats)> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    let t_total = Instant::now();
    let t_round = Instant::now();
    let phases = match rounding_phases(s, eps)? {
        Some(p) => p,
        None => {
            // single point or all points identical
            let witness_j = if s.len() > 1 { 1 } else { 0 };
            let est = DiameterEstimate::from_witness(s, 0, witness_j, Method::Paper, Some(eps));
            let mut stats = PhaseStats::degenerate(s.len());
            stats.timing.total_ms = t_total.elapsed().as_secs_f64() * 1e3;
            return Ok((est, stats));
        }
    };
    let dim = s.dim();
    let mut stats = PhaseStats {
        n_input: s.len(),
        n_cell_centers: phases.cell_centers.len(),
        n_mid_lattice: phases.mid.len(),
        n_coarse_lattice: phases.coarse.len(),
        n_coarse_pruned: phases.coarse_pruned.len(),
        ..PhaseStats::default()
    };
    let quarter_root = eps.sqrt().sqrt();
    let d = dim as f64;
    stats.bound_coarse_count = (2.0 * d.sqrt() / quarter_root + 1.0).powi(dim as i32);
    stats.bound_coarse_raw = (2.0 * d.sqrt() / quarter_root + 2.5).powi(dim as i32);
    stats.bound_cube_mid = (2.0 / quarter_root + 1.0).powi(dim as i32);
    stats.bound_cube_fine = (2.0 / eps.sqrt() + 1.0).powi(dim as i32);
    stats.timing.rounding_ms = t_round.elapsed().as_secs_f64() * 1e3;

    // quadratic seed scan on the pruned coarse set
    let t_scan = Instant::now();
    let coarse_list = diametrical_pairs(&phases.coarse_pruned, cap)?;
    stats.pairs_coarse = coarse_list.pairs.len();
    stats.truncated_coarse = coarse_list.truncated;
    stats.timing.coarse_scan_ms = t_scan.elapsed().as_secs_f64() * 1e3;

    let mut candidates: Vec<CandidatePair> = Vec::new();
    for &(i, j) in &coarse_list.pairs {
        candidates.push(CandidatePair::new(
            phases.coarse_pruned.points()[i].rep,
            phases.coarse_pruned.points()[j].rep,
            "coarse",
        ));
    }

    // mid level: cubes of side 2 * coarse cell, brute force in lattice units
    let t_mid = Instant::now();
    let mid_out = refine_level(
        s,
        &phases.coarse_pruned,
        &coarse_list.pairs,
        &phases.mid,
        2.0 * phases.sizes.coarse,
        RefineSolver::BruteForce,
        cap,
    )?;
    stats.max_cube_mid_first = mid_out.max_cube_first;
    stats.max_cube_mid_second = mid_out.max_cube_second;
    stats.pairs_mid = mid_out.pairs.len();
    stats.truncated_mid = mid_out.truncated;
    stats.timing.refine_mid_ms = t_mid.elapsed().as_secs_f64() * 1e3;
    for &(i, j) in &mid_out.pairs {
        candidates.push(CandidatePair::new(
            phases.mid.points()[i].rep,
            phases.mid.points()[j].rep,
            "mid",
        ));
    }
    candidates.extend(mid_out.candidates);

    // fine level: cubes of side 2 * mid cell, recursive projection solver
    let t_fine = Instant::now();
    let fine_out = refine_level(
        s,
        &phases.mid,
        &mid_out.pairs,
        &phases.cell_centers,
        2.0 * phases.sizes.mid,
        RefineSolver::Recursive { eps },
        cap,
    )?;
    stats.max_cube_fine_first = fine_out.max_cube_first;
    stats.max_cube_fine_second = fine_out.max_cube_second;
    stats.timing.refine_fine_ms = t_fine.elapsed().as_secs_f64() * 1e3;
    candidates.extend(fine_out.candidates);

    // the answer is the best true original-pair distance over everything
    let mut best = (0.0f64, (0usize, 1usize));
    let mut have = false;
    for c in &candidates {
        let d = c.distance_sq_in(s);
        let pair = (c.i, c.j);
        if !have || d > best.0 || (d == best.0 && pair < best.1) {
            best = (d, pair);
            have = true;
        }
    }
    let est = DiameterEstimate::from_witness(s, best.1 .0, best.1 .1, Method::Paper, Some(eps));
    stats.timing.total_ms = t_total.elapsed().as_secs_f64() * 1e3;
    debug_assert!(
        stats.counts_within_bounds(),
        "occupancy bound violated: pruned {} <= {}, raw {} <= {}, mid cubes {}/{} <= {}, fine cubes {}/{} <= {}",
        stats.n_coarse_pruned,
        stats.bound_coarse_count,
        stats.n_coarse_lattice,
        stats.bound_coarse_raw,
        stats.max_cube_mid_first,
        stats.max_cube_mid_second,
        stats.bound_cube_mid,
        stats.max_cube_fine_first,
        stats.max_cube_fine_second,
        stats.bound_cube_fine,
    );
    Ok((est, stats))
}

/// Exact diameter as a [`DiameterEstimate`], for use as the oracle
/// method of the harness.
pub fn exact_diameter(s: &PointSet) -> Result<DiameterEstimate> {
    let (_, witness) = brute_force_diameter(s)?;
    Ok(DiameterEstimate::from_witness(
        s,
        witness.0,
        witness.1,
        Method::Exact,
        None,
    ))
}
