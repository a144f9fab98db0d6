//! The Hilbert distance and its geodesic structure.
//!
//! `distance` is the log cross-ratio of two interior points with their chord
//! endpoints. Straight chords are always geodesics (the distance is additive
//! along them); they are the *unique* geodesics when a chord endpoint is an
//! extreme point of the domain, which is what `unique_geodesic_probe` looks
//! for numerically. Distances are in nats (natural log), with no extra
//! normalization factor.

use nalgebra::{Point2, Vector2};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::config::{BALL_BISECT_ITERS, COLLINEARITY_TOL, DEGENERATE_EPS, OFF_SEGMENT_MARGIN};
use crate::domain::{ConvexDomain, Region};
use crate::error::{Error, Result};
use crate::projective::{cross_ratio_with_tol, HomPoint};

/// Hilbert distance between two interior points, in nats.
///
/// Exactly zero for coincident points; rejects points on or outside the
/// boundary band with `NotInterior` rather than returning huge finite values.
pub fn distance(domain: &ConvexDomain, x: Point2<f64>, y: Point2<f64>) -> Result<f64> {
    if domain.contains(x) != Region::Interior || domain.contains(y) != Region::Interior {
        return Err(Error::NotInterior);
    }
    if (y - x).norm() <= DEGENERATE_EPS * domain.scale().max(1.0) {
        return Ok(0.0);
    }
    let chord = domain.chord_endpoints(x, y)?;
    let cr = cross_ratio_with_tol(
        &HomPoint::from_affine(x),
        &HomPoint::from_affine(y),
        &HomPoint::from_affine(chord.xbar),
        &HomPoint::from_affine(chord.ybar),
        COLLINEARITY_TOL * domain.scale().max(1.0),
    )?;
    Ok(cr.ln())
}

/// Additivity defect `d(x,z) + d(z,y) - d(x,y)`.
///
/// Nonnegative up to rounding by the triangle inequality; zero whenever `z`
/// lies on the segment `[x, y]`.
pub fn segment_additivity(
    domain: &ConvexDomain,
    x: Point2<f64>,
    z: Point2<f64>,
    y: Point2<f64>,
) -> Result<f64> {
    Ok(distance(domain, x, z)? + distance(domain, z, y)? - distance(domain, x, y)?)
}

/// Outcome of a grid search for off-segment points achieving distance
/// additivity between two fixed endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicReport {
    /// Smallest additivity defect found among off-segment grid points.
    pub additivity_defect: f64,
    /// The minimizing grid point, when any candidate existed.
    pub witness: Option<Point2<f64>>,
}

impl Serialize for GeodesicReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GeodesicReport", 2)?;
        st.serialize_field("additivity_defect", &self.additivity_defect)?;
        st.serialize_field("witness", &self.witness.map(|w| [w.x, w.y]))?;
        st.end()
    }
}

/// Scans a `resolution x resolution` grid of interior points for witnesses of
/// geodesic non-uniqueness between `x` and `y`.
///
/// Only points farther than [`OFF_SEGMENT_MARGIN`] from the segment `[x, y]`
/// count. A defect below the configured threshold certifies NON-uniqueness
/// (some off-segment point is metrically between `x` and `y`, as happens
/// between parallel flat boundary pieces of a polygon); a defect bounded away
/// from zero is evidence — not proof — of uniqueness, since the search is
/// finite.
pub fn unique_geodesic_probe(
    domain: &ConvexDomain,
    x: Point2<f64>,
    y: Point2<f64>,
    resolution: usize,
) -> Result<GeodesicReport> {
    if domain.contains(x) != Region::Interior || domain.contains(y) != Region::Interior {
        return Err(Error::NotInterior);
    }
    if (y - x).norm() <= DEGENERATE_EPS * domain.scale().max(1.0) {
        return Err(Error::CoincidentPoints);
    }
    if resolution < 2 {
        return Err(Error::InvalidParameter(
            "grid resolution must be at least 2".into(),
        ));
    }
    let d_xy = distance(domain, x, y)?;
    let (lo, hi) = domain.bbox();
    let span = hi - lo;
    let mut best = f64::INFINITY;
    let mut witness = None;
    let last = (resolution - 1) as f64;
    for i in 0..resolution {
        for j in 0..resolution {
            let p = Point2::new(
                lo.x + span.x * i as f64 / last,
                lo.y + span.y * j as f64 / last,
            );
            if domain.contains(p) != Region::Interior {
                continue;
            }
            if point_segment_distance(p, x, y) <= OFF_SEGMENT_MARGIN {
                continue;
            }
            let defect = distance(domain, x, p)? + distance(domain, p, y)? - d_xy;
            if defect < best {
                best = defect;
                witness = Some(p);
            }
        }
    }
    Ok(GeodesicReport {
        additivity_defect: best,
        witness,
    })
}

/// Euclidean distance from `p` to the segment `[a, b]`.
fn point_segment_distance(p: Point2<f64>, a: Point2<f64>, b: Point2<f64>) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Hilbert metric sphere of the given radius around `center`, approximated by
/// one bisection solve per direction. Returns the closed polyline of the
/// `n_directions` solutions in direction order.
pub fn metric_ball(
    domain: &ConvexDomain,
    center: Point2<f64>,
    radius: f64,
    n_directions: usize,
) -> Result<Vec<Point2<f64>>> {
    if domain.contains(center) != Region::Interior {
        return Err(Error::NotInterior);
    }
    if radius < 0.0 || !radius.is_finite() {
        return Err(Error::InvalidParameter("radius must be >= 0".into()));
    }
    if n_directions < 8 {
        return Err(Error::InvalidParameter(
            "metric ball needs at least 8 directions".into(),
        ));
    }
    let mut out = Vec::with_capacity(n_directions);
    for k in 0..n_directions {
        let theta = std::f64::consts::TAU * k as f64 / n_directions as f64;
        let dir = Vector2::new(theta.cos(), theta.sin());
        let (t_back, t_fwd) = domain.clip_from_interior(center, dir);
        // d(center, center + s*dir) = ln( (t_fwd/(t_fwd-s)) * ((s-t_back)/(-t_back)) ),
        // strictly increasing in s on (0, t_fwd)
        let dist_at = |s: f64| -> f64 {
            if s >= t_fwd {
                return f64::INFINITY;
            }
            ((t_fwd / (t_fwd - s)) * ((s - t_back) / (-t_back))).ln()
        };
        let mut lo = 0.0;
        let mut hi = t_fwd;
        for _ in 0..BALL_BISECT_ITERS {
            let mid = 0.5 * (lo + hi);
            if dist_at(mid) < radius {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(center + dir * (0.5 * (lo + hi)));
    }
    Ok(out)
}
