//! The triangle exception: the open triangle with its Hilbert metric is
//! isometric to a two-dimensional normed plane whose unit ball is a hexagon,
//! so it admits isometries that are not projective.
//!
//! The isometry used here is `Φ(t1:t2:t3) = (ln(t1/t3), ln(t2/t3))` on
//! barycentric coordinates, with the norm `‖(u,w)‖ = max(u,w,0) - min(u,w,0)`
//! whose unit ball is the hexagon with vertices (±1,0), (0,±1), (1,1),
//! (-1,-1) — an affine image of a regular hexagon, which changes nothing
//! metrically. The coordinate reciprocal `(t1:t2:t3) ↦ (1/t1:1/t2:1/t3)`
//! conjugates under Φ to `v ↦ -v`: a norm isometry induced by no projective
//! map, the concrete witness that the triangle case is special.

use nalgebra::{Matrix2, Point2, Vector2};

use crate::domain::{ConvexDomain, ExtremePoints, ShapeClass};
use crate::error::{Error, Result};
use crate::metric::distance;

/// Components below this are treated as boundary contact.
const BARY_EPS: f64 = 1e-15;

/// Strictly interior barycentric coordinates: positive components summing
/// to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarycentricPoint {
    t: [f64; 3],
}

impl BarycentricPoint {
    /// Normalizes positive weights to sum one.
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        let sum = t1 + t2 + t3;
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(Error::BoundaryPoint);
        }
        let t = [t1 / sum, t2 / sum, t3 / sum];
        if t.iter().any(|c| *c <= BARY_EPS) {
            return Err(Error::BoundaryPoint);
        }
        Ok(BarycentricPoint { t })
    }

    pub fn barycenter() -> Self {
        BarycentricPoint {
            t: [1.0 / 3.0; 3],
        }
    }

    pub fn components(&self) -> [f64; 3] {
        self.t
    }

    /// Hexagonal-plane image `Φ(t) = (ln(t1/t3), ln(t2/t3))`.
    ///
    /// Φ is a bijection from the open triangle onto the whole plane and an
    /// isometry onto the hex-normed plane.
    pub fn to_hex(&self) -> Result<HexVector> {
        if self.t.iter().any(|c| *c <= BARY_EPS) {
            return Err(Error::BoundaryPoint);
        }
        Ok(HexVector {
            u: (self.t[0] / self.t[2]).ln(),
            w: (self.t[1] / self.t[2]).ln(),
        })
    }

    /// Inverse of [`BarycentricPoint::to_hex`].
    pub fn from_hex(v: HexVector) -> Self {
        // subtract the max exponent before exponentiating to avoid overflow
        let m = v.u.max(v.w).max(0.0);
        let e = [(v.u - m).exp(), (v.w - m).exp(), (-m).exp()];
        let sum = e[0] + e[1] + e[2];
        BarycentricPoint {
            t: [e[0] / sum, e[1] / sum, e[2] / sum],
        }
    }
}

/// Vector of the quotient plane carrying the hexagonal norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexVector {
    pub u: f64,
    pub w: f64,
}

impl HexVector {
    pub fn new(u: f64, w: f64) -> Self {
        HexVector { u, w }
    }

    /// The hexagonal norm `max(u, w, 0) - min(u, w, 0)`.
    pub fn norm(&self) -> f64 {
        let max = self.u.max(self.w).max(0.0);
        let min = self.u.min(self.w).min(0.0);
        max - min
    }

    pub fn sub(&self, other: &HexVector) -> HexVector {
        HexVector {
            u: self.u - other.u,
            w: self.w - other.w,
        }
    }

    pub fn transform(&self, m: &Matrix2<f64>) -> HexVector {
        let v = m * Vector2::new(self.u, self.w);
        HexVector { u: v.x, w: v.y }
    }
}

/// Affine frame of a triangle domain: its three extreme points in
/// counterclockwise order, fixing the barycentric coordinate system.
#[derive(Debug, Clone, Copy)]
pub struct TriangleFrame {
    v: [Point2<f64>; 3],
}

impl TriangleFrame {
    pub fn from_domain(domain: &ConvexDomain) -> Result<Self> {
        if domain.classify() != ShapeClass::Triangle {
            return Err(Error::InvalidParameter(
                "domain is not a triangle".into(),
            ));
        }
        let ExtremePoints::Finite(e) = domain.extreme_points() else {
            unreachable!("triangle classification implies finite extreme points");
        };
        Ok(TriangleFrame { v: [e[0], e[1], e[2]] })
    }

    pub fn vertices(&self) -> [Point2<f64>; 3] {
        self.v
    }

    fn doubled_area(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>) -> f64 {
        (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    }

    /// Barycentric coordinates of an interior point via signed areas.
    pub fn barycentric(&self, p: Point2<f64>) -> Result<BarycentricPoint> {
        let total = Self::doubled_area(self.v[0], self.v[1], self.v[2]);
        let t1 = Self::doubled_area(p, self.v[1], self.v[2]) / total;
        let t2 = Self::doubled_area(self.v[0], p, self.v[2]) / total;
        let t3 = 1.0 - t1 - t2;
        BarycentricPoint::new(t1, t2, t3)
    }

    pub fn to_affine(&self, b: &BarycentricPoint) -> Point2<f64> {
        let [t1, t2, t3] = b.components();
        Point2::new(
            t1 * self.v[0].x + t2 * self.v[1].x + t3 * self.v[2].x,
            t1 * self.v[0].y + t2 * self.v[1].y + t3 * self.v[2].y,
        )
    }
}

/// `|d_Hilbert(x, y) - ‖Φx - Φy‖_hex|` for two interior points of a triangle
/// domain. Near zero everywhere: Φ is a global isometry, in any triangle.
pub fn isometry_defect_triangle(
    x: &BarycentricPoint,
    y: &BarycentricPoint,
    triangle: &ConvexDomain,
) -> Result<f64> {
    let frame = TriangleFrame::from_domain(triangle)?;
    let d_hilbert = distance(triangle, frame.to_affine(x), frame.to_affine(y))?;
    let d_hex = x.to_hex()?.sub(&y.to_hex()?).norm();
    Ok((d_hilbert - d_hex).abs())
}

/// The coordinate reciprocal `(t1:t2:t3) ↦ (1/t1:1/t2:1/t3)`, renormalized.
///
/// An involution of the open triangle and a Hilbert isometry (it conjugates
/// to `v ↦ -v` under Φ) that is not a collineation: generic straight segments
/// bend under it.
pub fn reciprocal_map(p: &BarycentricPoint) -> BarycentricPoint {
    let [t1, t2, t3] = p.components();
    BarycentricPoint::new(1.0 / t1, 1.0 / t2, 1.0 / t3)
        .expect("reciprocal of an interior point is interior")
}

/// Affine-chart version of [`reciprocal_map`] on a triangle domain.
pub fn reciprocal_map_affine(triangle: &ConvexDomain, p: Point2<f64>) -> Result<Point2<f64>> {
    let frame = TriangleFrame::from_domain(triangle)?;
    Ok(frame.to_affine(&reciprocal_map(&frame.barycentric(p)?)))
}

/// The 12 linear symmetries of the hexagonal unit ball, each preserving the
/// hex norm exactly.
///
/// The first six are induced by barycentric coordinate permutations and pull
/// back through Φ to projective maps of the triangle (vertex permutations);
/// the last six are the first six composed with `v ↦ -v` and pull back to
/// non-projective isometries.
pub fn hex_symmetries() -> Vec<Matrix2<f64>> {
    let permutation_induced = [
        Matrix2::new(1.0, 0.0, 0.0, 1.0),   // identity
        Matrix2::new(0.0, 1.0, 1.0, 0.0),   // swap t1, t2
        Matrix2::new(1.0, -1.0, 0.0, -1.0), // swap t2, t3
        Matrix2::new(-1.0, 0.0, -1.0, 1.0), // swap t1, t3
        Matrix2::new(0.0, -1.0, 1.0, -1.0), // cycle t1→t2→t3
        Matrix2::new(-1.0, 1.0, -1.0, 0.0), // cycle t1→t3→t2
    ];
    let mut out: Vec<Matrix2<f64>> = permutation_induced.to_vec();
    out.extend(permutation_induced.iter().map(|m| -m));
    out
}

/// Pulls a hex-plane linear map back to the triangle through Φ.
pub fn hex_symmetry_pullback(
    triangle: &ConvexDomain,
    m: &Matrix2<f64>,
    p: Point2<f64>,
) -> Result<Point2<f64>> {
    let frame = TriangleFrame::from_domain(triangle)?;
    let hex = frame.barycentric(p)?.to_hex()?;
    let image = BarycentricPoint::from_hex(hex.transform(m));
    Ok(frame.to_affine(&image))
}
