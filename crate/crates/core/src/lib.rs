//! Exact-arithmetic toolkit for tolerance and multitolerance graphs:
//! shadow representations in the plane, adjacency and hovering oracles,
//! polynomial dominating-set solvers for the tolerance case, and the
//! set-cover gadgetry for the multitolerance case.
//!
//! Everything semantic runs on arbitrary-precision rationals; floating
//! point appears only in the SVG renderer.

pub mod bounded_ds;
pub mod dominating_ds;
pub mod formats;
pub mod generate;
pub mod geometry;
pub mod hardness;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod restricted_ds;
pub mod svg;
