//! Diameter of a finite point set in d-dimensional Euclidean space.
//!
//! The centerpiece is a three-phase grid-rounding pipeline
//! ([`pipeline::approximate_diameter`]) that computes a certified
//! `(1 + O(eps))` lower-bound estimate of the diameter in time linear in
//! the number of points for fixed dimension. Alongside it live an exact
//! quadratic oracle ([`exact::brute_force_diameter`]) and two classical
//! baselines: projection onto a direction net
//! ([`directional::agarwal_diameter`]) and a recursive planar-projection
//! reduction ([`directional::chan_recursive_diameter`]), plus the
//! linear-time farthest-from-first 2-approximation.
//!
//! Every approximate method reports a witness pair of input indices whose
//! true distance equals the reported value, so estimates never exceed
//! the true diameter and can be re-checked bit-exactly.

pub mod directional;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod grid;
pub mod pipeline;

pub use error::{Error, Result};
pub use geometry::{bounding_box, distance_sq, BoundingBox, Point, PointSet};
pub use pipeline::{approximate_diameter, DiameterEstimate, Method, PhaseStats};
