//! Compatible triangulations of labelled polygonal regions.
//!
//! Exact rational geometry, region visibility, a zero-Steiner decision procedure,
//! and an end-to-end reduction from monotone rectilinear planar 3-SAT to the
//! problem of compatibly triangulating two regions with few Steiner points.
//!
//! # Coordinate size
//!
//! Every coordinate the reduction emits fits in [`reduction::bit_length_budget`] bits:
//! `16 * ceil(log2(|U| * |C|)) + 64` for `|U|` variables and `|C|` clauses. Drawing
//! coordinates grow linearly with the instance and the gadget constants have fixed
//! denominators, so integer parts need logarithmically many bits and fractions a
//! constant number. Ladders with one to eight clauses stay between 35 and 51 bits.

pub mod certificates;
pub mod geometry;
pub mod reduction;
pub mod regions;
pub mod satmodel;
pub mod triangulation;
pub mod zero_steiner;

pub use geometry::{Orientation, Point, Rational, Segment};
pub use regions::{Dent, DentKind, LabelledPolygon, PolygonalRegion, Vertex, VisibilityRegion};
pub use triangulation::{CompatiblePair, Triangulation, Violation, ViolationKind};
