//! Shared numeric defaults and run configuration.
//!
//! All thresholds live here so they can be inspected and overridden in one
//! place. Geometric tolerances are stated for domains of unit diameter;
//! operations that work on a concrete domain scale them by the domain's
//! bounding-box diagonal where noted.

/// Maximum perpendicular spread (chart units) four points may have and still
/// count as collinear for cross-ratio evaluation.
pub const COLLINEARITY_TOL: f64 = 1e-9;

/// Distances below this are treated as degenerate denominators in the
/// cross-ratio; the corresponding log-distance would exceed ~30 nats.
pub const DEGENERATE_EPS: f64 = 1e-13;

/// Relative half-width of the boundary classification band, scaled by the
/// domain's bounding-box diagonal.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Relative singular-value threshold below which the DLT design matrix is
/// considered rank-deficient (ambiguous fit).
pub const DLT_RANK_TOL: f64 = 1e-9;

/// Additivity defect below which the geodesic probe certifies non-uniqueness.
pub const GEODESIC_DEFECT_TOL: f64 = 1e-9;

/// Grid points closer than this (chart units) to the probed segment are not
/// counted as off-segment witnesses.
pub const OFF_SEGMENT_MARGIN: f64 = 1e-3;

/// Relative depth inside the domain required of randomly sampled pool points;
/// keeps chord constructions well away from the boundary band.
pub const POOL_MARGIN: f64 = 1e-3;

/// Homogeneous coordinates whose normalized last component is below this are
/// treated as points at infinity.
pub const AT_INFINITY_EPS: f64 = 1e-12;

/// Bisection iterations for boundary intersections along a line.
pub const BOUNDARY_BISECT_ITERS: usize = 80;

/// Bisection iterations for solving `d(center, p) = radius` along a ray.
pub const BALL_BISECT_ITERS: usize = 60;

/// Classification thresholds. Defaults pass exact double-precision projective
/// isometries with at least two orders of margin and reject 1e-2-perturbed
/// maps with at least two orders of margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max distance distortion allowed for an isometry verdict (nats).
    pub isometry: f64,
    /// Max projective-fit transfer error allowed for a projective verdict.
    pub residual: f64,
    /// Max image-straightness defect allowed for a projective verdict.
    pub collineation: f64,
    /// Collinearity gate for cross-ratio inputs.
    pub collinearity: f64,
    /// Non-uniqueness certificate threshold for the geodesic probe.
    pub geodesic_defect: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            isometry: 1e-7,
            residual: 1e-7,
            collineation: 1e-7,
            collinearity: COLLINEARITY_TOL,
            geodesic_defect: GEODESIC_DEFECT_TOL,
        }
    }
}

/// Reproducible run configuration: one seed drives every random choice, so
/// identical configs yield bit-identical sampling, reports, and files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Number of point pairs used for the isometry-defect estimate.
    pub pair_budget: usize,
    /// Lines generated per pencil pole.
    pub lines_per_pole: usize,
    /// Points sampled on each pencil line.
    pub samples_per_line: usize,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            pair_budget: 500,
            lines_per_pole: 8,
            samples_per_line: 8,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        RunConfig {
            seed,
            ..RunConfig::default()
        }
    }
}
