//! Bounded convex planar domains and the boundary constructions the Hilbert
//! metric needs: point classification, chord endpoints, extreme points, and
//! shape classification.
//!
//! Three shape families are supported: convex polygons (flat boundary pieces,
//! finitely many extreme points), ellipses, and superellipses with exponent
//! p > 1 (strictly convex, every boundary point extreme). Polygons intersect
//! lines exactly, edge by edge; smooth shapes bracket the boundary crossing of
//! the signed implicit function along the line and bisect. Domains are
//! immutable: derived data (bounding box, edge normals, extreme points) is
//! precomputed at construction.

use nalgebra::{Point2, Vector2};
use serde::{Deserialize, Serialize};

use crate::config::{BOUNDARY_BISECT_ITERS, BOUNDARY_TOL, DEGENERATE_EPS};
use crate::error::{Error, Result};

/// Classification of a point against a domain, with a boundary band of
/// relative width [`BOUNDARY_TOL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
}

/// Shape classes that drive the isometry-classification pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShapeClass {
    Triangle,
    Quadrilateral,
    /// Polygon with at least five extreme points.
    PolygonAtLeast5,
    /// Smooth shape: every boundary point is extreme.
    StrictlyConvex,
}

/// Extreme points of a domain: finitely many for polygons, all boundary
/// points for strictly convex shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtremePoints {
    Finite(Vec<Point2<f64>>),
    Infinite,
}

/// The two boundary points cut by a line, ordered so that the line visits
/// `xbar, x, y, ybar` when constructed from interior points `x, y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub xbar: Point2<f64>,
    pub ybar: Point2<f64>,
}

#[derive(Debug, Clone)]
enum Shape {
    Polygon {
        vertices: Vec<Point2<f64>>,
        /// Outward unit normal per edge `(v[i], v[i+1])`.
        normals: Vec<Vector2<f64>>,
        extreme: Vec<Point2<f64>>,
        centroid: Point2<f64>,
    },
    Ellipse {
        center: Point2<f64>,
        semi_axes: (f64, f64),
        rotation: f64,
    },
    SuperEllipse {
        center: Point2<f64>,
        semi_axes: (f64, f64),
        rotation: f64,
        exponent: f64,
    },
}

/// A bounded convex open domain of the plane.
#[derive(Debug, Clone)]
pub struct ConvexDomain {
    shape: Shape,
    bbox_min: Point2<f64>,
    bbox_max: Point2<f64>,
    /// Bounding-box diagonal; relative tolerances scale by this.
    scale: f64,
}

fn cross2(a: Vector2<f64>, b: Vector2<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

impl ConvexDomain {
    /// Convex polygon from counterclockwise vertices. Collinear runs of
    /// vertices are accepted (the middle vertices are simply not extreme);
    /// reflex turns, repeated vertices, and clockwise input are rejected.
    pub fn polygon(vertices: Vec<Point2<f64>>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidDomain(
                "polygon needs at least 3 vertices".into(),
            ));
        }
        for v in &vertices {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(Error::InvalidDomain("polygon vertex not finite".into()));
            }
        }
        let (bbox_min, bbox_max) = bbox_of(&vertices);
        let scale = (bbox_max - bbox_min).norm();
        if scale == 0.0 {
            return Err(Error::InvalidDomain("polygon has zero extent".into()));
        }
        let len_tol = 1e-12 * scale;
        let turn_tol = 1e-12 * scale * scale;

        for i in 0..n {
            if (vertices[(i + 1) % n] - vertices[i]).norm() <= len_tol {
                return Err(Error::InvalidDomain("repeated consecutive vertices".into()));
            }
        }

        let mut area2 = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            area2 += cross2(a.coords, b.coords);
        }
        if area2 <= turn_tol {
            return Err(Error::InvalidDomain(
                "vertices must be counterclockwise and enclose positive area".into(),
            ));
        }

        let mut strict_turns = 0;
        let mut turning = 0.0;
        let mut extreme = Vec::new();
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e0 = cur - prev;
            let e1 = next - cur;
            let c = cross2(e0, e1);
            if c < -turn_tol {
                return Err(Error::InvalidDomain("polygon is not convex".into()));
            }
            if c > turn_tol {
                strict_turns += 1;
                extreme.push(cur);
            }
            turning += c.atan2(e0.dot(&e1));
        }
        if strict_turns < 3 {
            return Err(Error::InvalidDomain("all vertices are collinear".into()));
        }
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::InvalidDomain(
                "vertex sequence winds more than once".into(),
            ));
        }

        let normals = (0..n)
            .map(|i| {
                let e = vertices[(i + 1) % n] - vertices[i];
                Vector2::new(e.y, -e.x) / e.norm()
            })
            .collect();

        // area centroid (interior for a convex polygon)
        let mut cx = 0.0;
        let mut cy = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let w = cross2(a.coords, b.coords);
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        let centroid = Point2::new(cx / (3.0 * area2), cy / (3.0 * area2));

        Ok(ConvexDomain {
            shape: Shape::Polygon {
                vertices,
                normals,
                extreme,
                centroid,
            },
            bbox_min,
            bbox_max,
            scale,
        })
    }

    /// Ellipse with semi-axes `a >= b > 0` rotated by `rotation` radians.
    pub fn ellipse(center: Point2<f64>, a: f64, b: f64, rotation: f64) -> Result<Self> {
        validate_axes(a, b, rotation)?;
        let shape = Shape::Ellipse {
            center,
            semi_axes: (a, b),
            rotation,
        };
        Ok(Self::with_smooth_bbox(shape, center, a, b, rotation))
    }

    /// Superellipse `|u/a|^p + |v/b|^p = 1` in body coordinates, `p > 1`.
    pub fn superellipse(
        center: Point2<f64>,
        a: f64,
        b: f64,
        rotation: f64,
        exponent: f64,
    ) -> Result<Self> {
        validate_axes(a, b, rotation)?;
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(Error::InvalidDomain(
                "superellipse exponent must be > 1 for strict convexity".into(),
            ));
        }
        let shape = Shape::SuperEllipse {
            center,
            semi_axes: (a, b),
            rotation,
            exponent,
        };
        Ok(Self::with_smooth_bbox(shape, center, a, b, rotation))
    }

    pub fn unit_disk() -> Self {
        ConvexDomain::ellipse(Point2::origin(), 1.0, 1.0, 0.0).unwrap()
    }

    /// Regular polygon with `n` vertices on a circle of radius `radius`.
    pub fn regular_polygon(n: usize, radius: f64, phase: f64) -> Result<Self> {
        let verts = (0..n)
            .map(|k| {
                let t = phase + std::f64::consts::TAU * k as f64 / n as f64;
                Point2::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        ConvexDomain::polygon(verts)
    }

    fn with_smooth_bbox(
        shape: Shape,
        center: Point2<f64>,
        a: f64,
        b: f64,
        rotation: f64,
    ) -> Self {
        // box of the rotated body box [-a,a]x[-b,b]; contains the shape
        let (c, s) = (rotation.cos(), rotation.sin());
        let hx = (a * c).abs() + (b * s).abs();
        let hy = (a * s).abs() + (b * c).abs();
        let bbox_min = Point2::new(center.x - hx, center.y - hy);
        let bbox_max = Point2::new(center.x + hx, center.y + hy);
        let scale = (bbox_max - bbox_min).norm();
        ConvexDomain {
            shape,
            bbox_min,
            bbox_max,
            scale,
        }
    }

    pub fn bbox(&self) -> (Point2<f64>, Point2<f64>) {
        (self.bbox_min, self.bbox_max)
    }

    /// Bounding-box diagonal, used to scale relative tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// A deterministic interior point: the polygon area centroid or the
    /// smooth shape's center.
    pub fn interior_anchor(&self) -> Point2<f64> {
        match &self.shape {
            Shape::Polygon { centroid, .. } => *centroid,
            Shape::Ellipse { center, .. } | Shape::SuperEllipse { center, .. } => *center,
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self.shape, Shape::Polygon { .. })
    }

    /// Polygon vertices (counterclockwise) when the domain is a polygon.
    pub fn polygon_vertices(&self) -> Option<&[Point2<f64>]> {
        match &self.shape {
            Shape::Polygon { vertices, .. } => Some(vertices),
            _ => None,
        }
    }

    /// Signed implicit function: negative inside, zero on the boundary,
    /// positive outside. For polygons this is the exact signed distance to
    /// the boundary (inside); for smooth shapes it is the raw algebraic value.
    pub fn implicit(&self, p: Point2<f64>) -> f64 {
        match &self.shape {
            Shape::Polygon {
                vertices, normals, ..
            } => {
                let mut best = f64::NEG_INFINITY;
                for (v, n) in vertices.iter().zip(normals) {
                    best = best.max((p - v).dot(n));
                }
                best
            }
            Shape::Ellipse {
                center,
                semi_axes: (a, b),
                rotation,
            } => {
                let (u, v) = body_coords(p, *center, *rotation);
                (u / a) * (u / a) + (v / b) * (v / b) - 1.0
            }
            Shape::SuperEllipse {
                center,
                semi_axes: (a, b),
                rotation,
                exponent,
            } => {
                let (u, v) = body_coords(p, *center, *rotation);
                (u / a).abs().powf(*exponent) + (v / b).abs().powf(*exponent) - 1.0
            }
        }
    }

    /// First-order estimate of the signed Euclidean distance to the boundary
    /// (negative inside). Exact for polygons.
    pub fn signed_distance(&self, p: Point2<f64>) -> f64 {
        match &self.shape {
            Shape::Polygon { .. } => self.implicit(p),
            Shape::Ellipse {
                center,
                semi_axes: (a, b),
                rotation,
            } => {
                let (u, v) = body_coords(p, *center, *rotation);
                let f = (u / a) * (u / a) + (v / b) * (v / b) - 1.0;
                let g = Vector2::new(2.0 * u / (a * a), 2.0 * v / (b * b)).norm();
                f / g.max(1e-12)
            }
            Shape::SuperEllipse {
                center,
                semi_axes: (a, b),
                rotation,
                exponent,
            } => {
                let (u, v) = body_coords(p, *center, *rotation);
                let pw = *exponent;
                let f = (u / a).abs().powf(pw) + (v / b).abs().powf(pw) - 1.0;
                let gu = pw * (u / a).abs().powf(pw - 1.0) / a;
                let gv = pw * (v / b).abs().powf(pw - 1.0) / b;
                f / gu.hypot(gv).max(1e-12)
            }
        }
    }

    /// Classifies a point, with a boundary band of half-width
    /// `BOUNDARY_TOL * scale`.
    pub fn contains(&self, p: Point2<f64>) -> Region {
        let sd = self.signed_distance(p);
        let band = BOUNDARY_TOL * self.scale;
        if sd.abs() <= band {
            Region::Boundary
        } else if sd < 0.0 {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    /// Boundary point at parameter `t`: the angle-parametrized point for
    /// smooth shapes, the perimeter-fraction point (`t/2π` of the perimeter)
    /// for polygons.
    pub fn boundary_point(&self, t: f64) -> Point2<f64> {
        match &self.shape {
            Shape::Polygon { vertices, .. } => {
                let n = vertices.len();
                let mut perimeter = 0.0;
                for i in 0..n {
                    perimeter += (vertices[(i + 1) % n] - vertices[i]).norm();
                }
                let frac = (t / std::f64::consts::TAU).rem_euclid(1.0);
                let mut remaining = frac * perimeter;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let len = (b - a).norm();
                    if remaining <= len {
                        return a + (b - a) * (remaining / len);
                    }
                    remaining -= len;
                }
                vertices[0]
            }
            Shape::Ellipse {
                center,
                semi_axes: (a, b),
                rotation,
            } => world_coords(a * t.cos(), b * t.sin(), *center, *rotation),
            Shape::SuperEllipse {
                center,
                semi_axes: (a, b),
                rotation,
                exponent,
            } => {
                let e = 2.0 / exponent;
                let u = a * t.cos().abs().powf(e) * t.cos().signum();
                let v = b * t.sin().abs().powf(e) * t.sin().signum();
                world_coords(u, v, *center, *rotation)
            }
        }
    }

    /// Points outlining the boundary, used for angular-extent estimates:
    /// vertices for polygons, a dense parameter sweep for smooth shapes.
    pub(crate) fn silhouette_points(&self) -> Vec<Point2<f64>> {
        match &self.shape {
            Shape::Polygon { vertices, .. } => vertices.clone(),
            _ => (0..512)
                .map(|k| self.boundary_point(std::f64::consts::TAU * k as f64 / 512.0))
                .collect(),
        }
    }

    /// Extreme points: polygon vertices with a strict convex turn, or the
    /// marker `Infinite` for strictly convex shapes.
    pub fn extreme_points(&self) -> ExtremePoints {
        match &self.shape {
            Shape::Polygon { extreme, .. } => ExtremePoints::Finite(extreme.clone()),
            _ => ExtremePoints::Infinite,
        }
    }

    /// Shape classification by extreme-point count.
    pub fn classify(&self) -> ShapeClass {
        match self.extreme_points() {
            ExtremePoints::Infinite => ShapeClass::StrictlyConvex,
            ExtremePoints::Finite(e) => match e.len() {
                3 => ShapeClass::Triangle,
                4 => ShapeClass::Quadrilateral,
                _ => ShapeClass::PolygonAtLeast5,
            },
        }
    }

    /// Intersections of the full line through interior points `x`, `y` with
    /// the boundary, labeled so the affine order along the line is
    /// `xbar, x, y, ybar`.
    pub fn chord_endpoints(&self, x: Point2<f64>, y: Point2<f64>) -> Result<Chord> {
        if self.contains(x) != Region::Interior || self.contains(y) != Region::Interior {
            return Err(Error::NotInterior);
        }
        let sep = (y - x).norm();
        if sep <= DEGENERATE_EPS * self.scale.max(1.0) {
            return Err(Error::CoincidentPoints);
        }
        let dir = (y - x) / sep;
        let (t_back, t_fwd) = self.clip_from_interior(x, dir);
        debug_assert!(t_back < 0.0 && t_fwd > sep * 0.5);
        Ok(Chord {
            xbar: x + dir * t_back,
            ybar: x + dir * t_fwd,
        })
    }

    /// Boundary crossings `(t_min, t_max)` along `base + t * dir` for an
    /// interior base point.
    pub(crate) fn clip_from_interior(&self, base: Point2<f64>, dir: Vector2<f64>) -> (f64, f64) {
        match &self.shape {
            Shape::Polygon { .. } => {
                let hits = self.polygon_line_hits(base, dir);
                debug_assert!(hits.len() >= 2, "interior line must cross the boundary twice");
                (hits[0], hits[hits.len() - 1])
            }
            _ => {
                let reach = self.escape_reach(base);
                let fwd = self.bisect_boundary(base, dir, 0.0, reach);
                let back = self.bisect_boundary(base, -dir, 0.0, reach);
                (-back, fwd)
            }
        }
    }

    /// Clips the full line `base + t * dir` to the domain; `None` when the
    /// line misses it. Endpoints are ordered by the line parameter.
    pub fn clip_line(&self, base: Point2<f64>, dir: Vector2<f64>) -> Option<Chord> {
        let dir = dir / dir.norm();
        if self.contains(base) == Region::Interior {
            let (t0, t1) = self.clip_from_interior(base, dir);
            return Some(Chord {
                xbar: base + dir * t0,
                ybar: base + dir * t1,
            });
        }
        match &self.shape {
            Shape::Polygon { .. } => {
                let hits = self.polygon_line_hits(base, dir);
                if hits.len() < 2 {
                    return None;
                }
                let (t0, t1) = (hits[0], hits[hits.len() - 1]);
                // reject grazing hits that do not bound an interior section
                let mid = base + dir * (0.5 * (t0 + t1));
                if self.contains(mid) == Region::Exterior {
                    return None;
                }
                Some(Chord {
                    xbar: base + dir * t0,
                    ybar: base + dir * t1,
                })
            }
            _ => {
                let reach = self.escape_reach(base);
                let steps = 512;
                let mut t_in = None;
                for k in 0..=steps {
                    let t = -reach + 2.0 * reach * (k as f64) / (steps as f64);
                    if self.implicit(base + dir * t) < 0.0 {
                        t_in = Some(t);
                        break;
                    }
                }
                let t_in = t_in?;
                let inner = base + dir * t_in;
                let fwd = self.bisect_boundary(inner, dir, 0.0, 2.0 * reach);
                let back = self.bisect_boundary(inner, -dir, 0.0, 2.0 * reach);
                Some(Chord {
                    xbar: inner - dir * back,
                    ybar: inner + dir * fwd,
                })
            }
        }
    }

    /// Chord of a line through a boundary point `pole` in inward direction
    /// `dir`; the near endpoint is the pole itself.
    pub(crate) fn clip_from_boundary(
        &self,
        pole: Point2<f64>,
        dir: Vector2<f64>,
    ) -> Option<Chord> {
        let dir = dir / dir.norm();
        // grow a probe until it lands inside
        let mut t = self.scale * 1e-9;
        let mut probe = None;
        for _ in 0..64 {
            if self.implicit(pole + dir * t) < 0.0 {
                probe = Some(t);
                break;
            }
            t *= 2.0;
            if t > 2.0 * self.scale {
                break;
            }
        }
        let t_probe = probe?;
        let inner = pole + dir * t_probe;
        let far = match &self.shape {
            Shape::Polygon { .. } => {
                let hits = self.polygon_line_hits(pole, dir);
                let t_far = hits.into_iter().fold(f64::NEG_INFINITY, f64::max);
                if !t_far.is_finite() || t_far <= t_probe {
                    return None;
                }
                pole + dir * t_far
            }
            _ => {
                let reach = self.escape_reach(inner);
                inner + dir * self.bisect_boundary(inner, dir, 0.0, reach)
            }
        };
        Some(Chord {
            xbar: pole,
            ybar: far,
        })
    }

    /// Sorted, deduplicated line parameters of boundary crossings with all
    /// polygon edges.
    fn polygon_line_hits(&self, base: Point2<f64>, dir: Vector2<f64>) -> Vec<f64> {
        let Shape::Polygon { vertices, .. } = &self.shape else {
            unreachable!("polygon_line_hits called on smooth shape");
        };
        let n = vertices.len();
        let mut ts = Vec::new();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let edge = b - a;
            let denom = cross2(dir, edge);
            if denom.abs() < 1e-14 * self.scale {
                continue; // parallel to the edge
            }
            let rel = a - base;
            let t = cross2(rel, edge) / denom;
            let s = cross2(rel, dir) / denom;
            if (-1e-9..=1.0 + 1e-9).contains(&s) {
                ts.push(t);
            }
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * self.scale);
        ts
    }

    /// Line parameter guaranteed to be outside the bounding box from `base`.
    fn escape_reach(&self, base: Point2<f64>) -> f64 {
        let center = Point2::from((self.bbox_min.coords + self.bbox_max.coords) * 0.5);
        (base - center).norm() + self.scale + 1.0
    }

    /// Bisects the boundary crossing of `base + t*dir` for
    /// `t in [t_in, t_out]` with `implicit(t_in) < 0 <= implicit(t_out)`.
    fn bisect_boundary(&self, base: Point2<f64>, dir: Vector2<f64>, t_in: f64, t_out: f64) -> f64 {
        let mut lo = t_in;
        let mut hi = t_out;
        debug_assert!(self.implicit(base + dir * lo) < 0.0);
        for _ in 0..BOUNDARY_BISECT_ITERS {
            let mid = 0.5 * (lo + hi);
            if self.implicit(base + dir * mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

fn validate_axes(a: f64, b: f64, rotation: f64) -> Result<()> {
    if !(a >= b && b > 0.0) || !a.is_finite() {
        return Err(Error::InvalidDomain(
            "semi-axes must satisfy a >= b > 0".into(),
        ));
    }
    if !rotation.is_finite() {
        return Err(Error::InvalidDomain("rotation must be finite".into()));
    }
    Ok(())
}

fn body_coords(p: Point2<f64>, center: Point2<f64>, rotation: f64) -> (f64, f64) {
    let d = p - center;
    let (c, s) = (rotation.cos(), rotation.sin());
    (c * d.x + s * d.y, -s * d.x + c * d.y)
}

fn world_coords(u: f64, v: f64, center: Point2<f64>, rotation: f64) -> Point2<f64> {
    let (c, s) = (rotation.cos(), rotation.sin());
    Point2::new(center.x + c * u - s * v, center.y + s * u + c * v)
}

fn bbox_of(points: &[Point2<f64>]) -> (Point2<f64>, Point2<f64>) {
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    (min, max)
}

// ---------------------------------------------------------------------------
// wire format

/// JSON shape schema:
/// `{"type":"polygon","vertices":[[x,y],...]}`,
/// `{"type":"ellipse","center":[x,y],"semi_axes":[a,b],"rotation":r}`,
/// `{"type":"superellipse",...,"exponent":p}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum DomainSpec {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Ellipse {
        center: [f64; 2],
        semi_axes: [f64; 2],
        rotation: f64,
    },
    SuperEllipse {
        center: [f64; 2],
        semi_axes: [f64; 2],
        rotation: f64,
        exponent: f64,
    },
}

impl From<&ConvexDomain> for DomainSpec {
    fn from(d: &ConvexDomain) -> Self {
        match &d.shape {
            Shape::Polygon { vertices, .. } => DomainSpec::Polygon {
                vertices: vertices.iter().map(|v| [v.x, v.y]).collect(),
            },
            Shape::Ellipse {
                center,
                semi_axes,
                rotation,
            } => DomainSpec::Ellipse {
                center: [center.x, center.y],
                semi_axes: [semi_axes.0, semi_axes.1],
                rotation: *rotation,
            },
            Shape::SuperEllipse {
                center,
                semi_axes,
                rotation,
                exponent,
            } => DomainSpec::SuperEllipse {
                center: [center.x, center.y],
                semi_axes: [semi_axes.0, semi_axes.1],
                rotation: *rotation,
                exponent: *exponent,
            },
        }
    }
}

impl TryFrom<DomainSpec> for ConvexDomain {
    type Error = Error;

    fn try_from(spec: DomainSpec) -> Result<Self> {
        match spec {
            DomainSpec::Polygon { vertices } => ConvexDomain::polygon(
                vertices.into_iter().map(|[x, y]| Point2::new(x, y)).collect(),
            ),
            DomainSpec::Ellipse {
                center,
                semi_axes,
                rotation,
            } => ConvexDomain::ellipse(
                Point2::new(center[0], center[1]),
                semi_axes[0],
                semi_axes[1],
                rotation,
            ),
            DomainSpec::SuperEllipse {
                center,
                semi_axes,
                rotation,
                exponent,
            } => ConvexDomain::superellipse(
                Point2::new(center[0], center[1]),
                semi_axes[0],
                semi_axes[1],
                rotation,
                exponent,
            ),
        }
    }
}

impl Serialize for ConvexDomain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DomainSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexDomain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = DomainSpec::deserialize(d)?;
        ConvexDomain::try_from(spec).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square() -> ConvexDomain {
        ConvexDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn standard_triangle() -> ConvexDomain {
        ConvexDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn contains_classification() {
        let disk = ConvexDomain::unit_disk();
        assert_eq!(disk.contains(Point2::new(0.0, 0.0)), Region::Interior);
        assert_eq!(disk.contains(Point2::new(1.0, 0.0)), Region::Boundary);
        assert_eq!(unit_square().contains(Point2::new(2.0, 2.0)), Region::Exterior);
    }

    #[test]
    fn chord_endpoints_disk_axis() {
        let disk = ConvexDomain::unit_disk();
        let chord = disk
            .chord_endpoints(Point2::new(0.0, 0.0), Point2::new(0.5, 0.0))
            .unwrap();
        assert_relative_eq!(chord.xbar.x, -1.0, epsilon = 1e-12);
        assert_relative_eq!(chord.xbar.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(chord.ybar.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(chord.ybar.y, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn chord_endpoints_square_diagonal() {
        let sq = unit_square();
        let chord = sq
            .chord_endpoints(Point2::new(0.25, 0.25), Point2::new(0.75, 0.75))
            .unwrap();
        assert_relative_eq!((chord.xbar - Point2::new(0.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((chord.ybar - Point2::new(1.0, 1.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn chord_endpoints_triangle_horizontal() {
        let tri = standard_triangle();
        let chord = tri
            .chord_endpoints(Point2::new(0.2, 0.2), Point2::new(0.4, 0.2))
            .unwrap();
        assert_relative_eq!((chord.xbar - Point2::new(0.0, 0.2)).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((chord.ybar - Point2::new(0.8, 0.2)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn chord_endpoints_error_paths() {
        let disk = ConvexDomain::unit_disk();
        let p = Point2::new(0.1, 0.1);
        assert_eq!(disk.chord_endpoints(p, p), Err(Error::CoincidentPoints));
        assert_eq!(
            disk.chord_endpoints(p, Point2::new(2.0, 0.0)),
            Err(Error::NotInterior)
        );
    }

    #[test]
    fn chord_order_and_collinearity() {
        use crate::projective::collinearity_defect;
        let tri = standard_triangle();
        let x = Point2::new(0.3, 0.4);
        let y = Point2::new(0.5, 0.1);
        let chord = tri.chord_endpoints(x, y).unwrap();
        let defect = collinearity_defect(&[chord.xbar, x, y, chord.ybar]);
        assert!(defect < 1e-10);
        // affine order xbar, x, y, ybar along the line
        let dir = (y - x) / (y - x).norm();
        let ts = [
            (chord.xbar - x).dot(&dir),
            0.0,
            (y - x).dot(&dir),
            (chord.ybar - x).dot(&dir),
        ];
        assert!(ts[0] < ts[1] && ts[1] < ts[2] && ts[2] < ts[3]);
    }

    #[test]
    fn smooth_chord_residual() {
        let se = ConvexDomain::superellipse(Point2::new(0.2, -0.1), 1.3, 0.7, 0.4, 3.0).unwrap();
        let chord = se
            .chord_endpoints(Point2::new(0.3, -0.2), Point2::new(0.1, 0.2))
            .unwrap();
        assert!(se.implicit(chord.xbar).abs() < 1e-12);
        assert!(se.implicit(chord.ybar).abs() < 1e-12);
    }

    #[test]
    fn extreme_points_examples() {
        let tri = standard_triangle();
        match tri.extreme_points() {
            ExtremePoints::Finite(pts) => assert_eq!(pts.len(), 3),
            _ => panic!("triangle extreme points must be finite"),
        }

        let pent = ConvexDomain::regular_polygon(5, 1.0, 0.1).unwrap();
        match pent.extreme_points() {
            ExtremePoints::Finite(pts) => assert_eq!(pts.len(), 5),
            _ => panic!(),
        }

        // middle collinear vertex dropped
        let quad = ConvexDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        match quad.extreme_points() {
            ExtremePoints::Finite(pts) => {
                assert_eq!(pts.len(), 3);
                assert!(pts.contains(&Point2::new(0.0, 0.0)));
                assert!(pts.contains(&Point2::new(2.0, 0.0)));
                assert!(pts.contains(&Point2::new(0.0, 1.0)));
            }
            _ => panic!(),
        }
        assert_eq!(ConvexDomain::unit_disk().extreme_points(), ExtremePoints::Infinite);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(standard_triangle().classify(), ShapeClass::Triangle);
        assert_eq!(unit_square().classify(), ShapeClass::Quadrilateral);
        assert_eq!(
            ConvexDomain::regular_polygon(6, 1.0, 0.0).unwrap().classify(),
            ShapeClass::PolygonAtLeast5
        );
        assert_eq!(ConvexDomain::unit_disk().classify(), ShapeClass::StrictlyConvex);
        assert_eq!(
            ConvexDomain::superellipse(Point2::origin(), 1.0, 0.8, 0.0, 4.0)
                .unwrap()
                .classify(),
            ShapeClass::StrictlyConvex
        );
    }

    #[test]
    fn invalid_polygons_rejected() {
        // clockwise
        assert!(ConvexDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 0.0),
        ])
        .is_err());
        // reflex vertex
        assert!(ConvexDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(1.0, 2.0),
        ])
        .is_err());
        // too few vertices
        assert!(ConvexDomain::polygon(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]).is_err());
        // flat
        assert!(ConvexDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
        ])
        .is_err());
    }

    #[test]
    fn invalid_smooth_shapes_rejected() {
        assert!(ConvexDomain::ellipse(Point2::origin(), 0.5, 1.0, 0.0).is_err());
        assert!(ConvexDomain::ellipse(Point2::origin(), 1.0, 0.0, 0.0).is_err());
        assert!(ConvexDomain::superellipse(Point2::origin(), 1.0, 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let shapes = vec![
            unit_square(),
            ConvexDomain::ellipse(Point2::new(0.1, -0.2), 1.2, 0.8, 0.3).unwrap(),
            ConvexDomain::superellipse(Point2::new(0.0, 0.0), 1.1, 0.9, 0.2, 1.5).unwrap(),
        ];
        for d in shapes {
            let text = serde_json::to_string(&d).unwrap();
            let back: ConvexDomain = serde_json::from_str(&text).unwrap();
            assert_eq!(d.classify(), back.classify());
            assert_relative_eq!(d.scale(), back.scale(), epsilon = 1e-15);
        }
        let sq_json = serde_json::to_string(&unit_square()).unwrap();
        assert!(sq_json.contains("\"type\":\"polygon\""));
    }

    #[test]
    fn json_rejects_invalid_domain() {
        let bad = r#"{"type":"polygon","vertices":[[0,0],[0,1],[1,0]]}"#;
        assert!(serde_json::from_str::<ConvexDomain>(bad).is_err());
    }

    #[test]
    fn clip_line_misses_domain() {
        let disk = ConvexDomain::unit_disk();
        let hit = disk.clip_line(Point2::new(0.0, 2.0), Vector2::new(1.0, 0.0));
        assert!(hit.is_none());
        let tangentish = disk.clip_line(Point2::new(0.0, 0.5), Vector2::new(1.0, 0.0));
        assert!(tangentish.is_some());
    }
}
