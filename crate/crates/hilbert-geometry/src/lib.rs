//! A two-dimensional Hilbert-geometry toolkit.
//!
//! The Hilbert distance between two points of a bounded convex planar domain
//! is the log of the cross-ratio they form with the two boundary points cut by
//! their line. This crate computes that metric on polygons, ellipses, and
//! superellipses, probes geodesic structure, and classifies sampled maps
//! between domains as projective isometries, non-projective isometries, or
//! non-isometries. The triangle is the one planar shape whose Hilbert geometry
//! admits non-projective isometries: it is isometric to a normed plane with a
//! hexagonal unit ball, and the [`simplex`] module realizes that isometry
//! explicitly.

pub mod config;
pub mod domain;
pub mod error;
pub mod families;
pub mod metric;
pub mod projective;
pub mod simplex;
pub mod webs;

pub use config::{RunConfig, Tolerances};
pub use domain::{Chord, ConvexDomain, ExtremePoints, Region, ShapeClass};
pub use error::{Error, Result};
pub use metric::{distance, metric_ball, segment_additivity, unique_geodesic_probe, GeodesicReport};
pub use projective::{
    collinearity_defect, cross_ratio, fit_projective, HomPoint, ProjLine, ProjMap, ProjectiveFit,
};
pub use simplex::{hex_symmetries, reciprocal_map, BarycentricPoint, HexVector, TriangleFrame};
pub use webs::{
    classify_map, five_pole_check, pencil_lines, quadrilateral_patch_check, web_image_check,
    ClassificationReport, Pencil, QuadPatchReport, SampledMap, Verdict, Web,
};
