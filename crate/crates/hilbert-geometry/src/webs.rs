//! Pencils of lines, n-webs, the web-straightness checks behind the
//! fundamental theorem arguments, and the map classifier.
//!
//! A pencil is the family of lines through a common pole clipped to a domain;
//! an n-web is n line families over a common domain, no two sharing a line.
//! An injective continuous map that carries a 4-web into a 4-web is projective
//! (Prenowitz), and lines through extreme boundary points are unique Hilbert
//! geodesics, so an isometry must straighten them. The checks here measure
//! exactly that: how far the image of each sampled web line is from being
//! straight, plus an independent global projective fit.
//!
//! `classify_map` combines three measurements into a verdict:
//! an isometry defect over seeded random point pairs, a collineation defect
//! (five boundary pencils, the quadrilateral patch construction, or a 4-web
//! inside a triangle, chosen by shape class), and a projective-fit residual.
//! Everything is deterministic given the seed carried by [`RunConfig`];
//! table-backed maps are looked up by coordinates, so sample order never
//! matters.

use std::sync::Arc;

use nalgebra::{Point2, Vector2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{POOL_MARGIN, RunConfig};
use crate::domain::{Chord, ConvexDomain, ExtremePoints, Region, ShapeClass};
use crate::error::{Error, Result};
use crate::metric::distance;
use crate::projective::{collinearity_defect, fit_projective, HomPoint, ProjLine, ProjMap};

/// Barycentric lattice density for quadrilateral patch fitting.
const PATCH_LATTICE: usize = 7;
/// Samples per shared edge in the quadrilateral gluing check.
const EDGE_SAMPLES: usize = 10;
/// Relative tolerance for looking up table samples by source coordinates.
const TABLE_MATCH_TOL: f64 = 1e-9;

/// A pencil: the lines through `pole` clipped to `domain`. The pole may be
/// finite (outside or on the boundary) or at infinity, in which case the
/// family is parallel.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub pole: HomPoint,
    pub domain: ConvexDomain,
    pub n_lines: usize,
}

impl Pencil {
    pub fn new(pole: HomPoint, domain: ConvexDomain, n_lines: usize) -> Self {
        Pencil {
            pole,
            domain,
            n_lines,
        }
    }

    pub fn lines(&self) -> Result<Vec<Chord>> {
        pencil_lines(&self.domain, &self.pole, self.n_lines)
    }
}

/// `n` chords whose supporting lines pass through `pole`, fanned across the
/// domain's angular extent as seen from the pole (offset-fanned parallels for
/// a pole at infinity).
///
/// Poles strictly inside the domain are rejected: every line through them
/// would be split into two chords. Boundary poles are fine — each inward line
/// cuts one chord starting at the pole — and this is what the five-pole and
/// triangle checks use.
pub fn pencil_lines(domain: &ConvexDomain, pole: &HomPoint, n: usize) -> Result<Vec<Chord>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "a pencil needs at least 2 lines".into(),
        ));
    }
    let mut chords = Vec::with_capacity(n);
    if pole.is_at_infinity() {
        let c = pole.coords();
        let dir = Vector2::new(c.x, c.y).normalize();
        let normal = Vector2::new(-dir.y, dir.x);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in domain.silhouette_points() {
            let s = p.coords.dot(&normal);
            lo = lo.min(s);
            hi = hi.max(s);
        }
        let (bb_lo, bb_hi) = domain.bbox();
        let mid = Point2::from((bb_lo.coords + bb_hi.coords) * 0.5);
        for k in 0..n {
            let s = lo + (hi - lo) * (k + 1) as f64 / (n + 1) as f64;
            let base = mid + normal * (s - mid.coords.dot(&normal));
            let chord = domain.clip_line(base, dir).ok_or_else(|| {
                Error::DegenerateConfiguration("pencil line missed the domain".into())
            })?;
            chords.push(chord);
        }
        return Ok(chords);
    }

    let apex = pole.to_affine()?;
    let region = domain.contains(apex);
    if region == Region::Interior {
        return Err(Error::PoleInsideDomain);
    }
    // angular extent of the domain as seen from the pole, measured around the
    // direction towards an interior anchor
    let anchor_dir = domain.interior_anchor() - apex;
    let theta_c = anchor_dir.y.atan2(anchor_dir.x);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in domain.silhouette_points() {
        let d = p - apex;
        if d.norm() < 1e-9 * domain.scale() {
            continue; // the pole itself lies on the silhouette
        }
        let mut delta = d.y.atan2(d.x) - theta_c;
        while delta > std::f64::consts::PI {
            delta -= std::f64::consts::TAU;
        }
        while delta < -std::f64::consts::PI {
            delta += std::f64::consts::TAU;
        }
        lo = lo.min(delta);
        hi = hi.max(delta);
    }
    for k in 0..n {
        let theta = theta_c + lo + (hi - lo) * (k + 1) as f64 / (n + 1) as f64;
        let dir = Vector2::new(theta.cos(), theta.sin());
        let chord = match region {
            Region::Boundary => domain.clip_from_boundary(apex, dir),
            _ => domain.clip_line(apex, dir),
        }
        .ok_or_else(|| Error::DegenerateConfiguration("pencil line missed the domain".into()))?;
        chords.push(chord);
    }
    Ok(chords)
}

/// An n-web: at least two pencils over a common domain with pairwise
/// distinct poles (so no two families share a line).
#[derive(Debug, Clone)]
pub struct Web {
    pencils: Vec<Pencil>,
}

impl Web {
    pub fn new(pencils: Vec<Pencil>) -> Result<Self> {
        if pencils.len() < 2 {
            return Err(Error::InvalidParameter("a web needs at least 2 families".into()));
        }
        for i in 0..pencils.len() {
            for j in i + 1..pencils.len() {
                if pencils[i].pole.projectively_eq(&pencils[j].pole, 1e-12) {
                    return Err(Error::InvalidParameter(
                        "web families must have pairwise distinct poles".into(),
                    ));
                }
            }
        }
        Ok(Web { pencils })
    }

    pub fn pencils(&self) -> &[Pencil] {
        &self.pencils
    }
}

type MapFn = Arc<dyn Fn(Point2<f64>) -> Result<Point2<f64>> + Send + Sync>;

/// A candidate isometry between two domains, given either as a finite
/// source→target correspondence table or as a callable.
///
/// Table lookups match source coordinates within a relative tolerance, so a
/// table must cover every point the classifier queries;
/// [`classification_support_points`] generates exactly that set for a given
/// domain and configuration.
#[derive(Clone)]
pub struct SampledMap {
    source: ConvexDomain,
    target: ConvexDomain,
    samples: Vec<(Point2<f64>, Point2<f64>)>,
    func: Option<MapFn>,
}

impl std::fmt::Debug for SampledMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledMap")
            .field("samples", &self.samples.len())
            .field("callable", &self.func.is_some())
            .finish()
    }
}

impl SampledMap {
    /// Builds a table-backed map, validating that all sources are interior to
    /// the source domain, all targets interior to the target domain, and the
    /// table is injective.
    pub fn from_table(
        source: ConvexDomain,
        target: ConvexDomain,
        samples: Vec<(Point2<f64>, Point2<f64>)>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InsufficientSamples("empty sample table".into()));
        }
        for (s, t) in &samples {
            if source.contains(*s) != Region::Interior {
                return Err(Error::SampleOutsideDomain);
            }
            if target.contains(*t) != Region::Interior {
                return Err(Error::SampleOutsideDomain);
            }
        }
        let src_tol = TABLE_MATCH_TOL * source.scale();
        let dst_tol = 1e-12 * target.scale();
        for i in 0..samples.len() {
            for j in i + 1..samples.len() {
                let ds = (samples[i].0 - samples[j].0).norm();
                if ds < src_tol {
                    return Err(Error::DegenerateConfiguration(
                        "duplicate source point in sample table".into(),
                    ));
                }
                if (samples[i].1 - samples[j].1).norm() < dst_tol {
                    return Err(Error::DegenerateConfiguration(
                        "sample table is not injective".into(),
                    ));
                }
            }
        }
        Ok(SampledMap {
            source,
            target,
            samples,
            func: None,
        })
    }

    /// Wraps a closed-form map. Images are validated lazily at evaluation.
    pub fn from_fn<F>(source: ConvexDomain, target: ConvexDomain, f: F) -> Self
    where
        F: Fn(Point2<f64>) -> Result<Point2<f64>> + Send + Sync + 'static,
    {
        SampledMap {
            source,
            target,
            samples: Vec::new(),
            func: Some(Arc::new(f)),
        }
    }

    /// Wraps a projective map as a callable.
    pub fn from_projective(source: ConvexDomain, target: ConvexDomain, map: ProjMap) -> Self {
        SampledMap::from_fn(source, target, move |p| map.apply_affine(p))
    }

    pub fn source(&self) -> &ConvexDomain {
        &self.source
    }

    pub fn target(&self) -> &ConvexDomain {
        &self.target
    }

    pub fn samples(&self) -> &[(Point2<f64>, Point2<f64>)] {
        &self.samples
    }

    pub fn is_callable(&self) -> bool {
        self.func.is_some()
    }

    /// Image of a source point: the callable's value, or the matching table
    /// entry. The image is required to be interior to the target domain.
    pub fn eval(&self, p: Point2<f64>) -> Result<Point2<f64>> {
        let q = if let Some(f) = &self.func {
            let q = f(p)?;
            if self.target.contains(q) != Region::Interior {
                return Err(Error::SampleOutsideDomain);
            }
            q
        } else {
            let tol = TABLE_MATCH_TOL * self.source.scale();
            self.samples
                .iter()
                .find(|(s, _)| (s - p).norm() <= tol)
                .map(|(_, t)| *t)
                .ok_or_else(|| {
                    Error::InsufficientSamples(format!(
                        "sample table does not cover query point ({}, {}); \
                         regenerate the table with matching seed and budgets",
                        p.x, p.y
                    ))
                })?
        };
        Ok(q)
    }

    /// Produces a table-backed copy of this map evaluated on `points`.
    pub fn tabulate(&self, points: &[Point2<f64>]) -> Result<SampledMap> {
        let samples = points
            .iter()
            .map(|p| Ok((*p, self.eval(*p)?)))
            .collect::<Result<Vec<_>>>()?;
        SampledMap::from_table(self.source.clone(), self.target.clone(), samples)
    }
}

#[derive(Serialize, Deserialize)]
struct MapSpec {
    samples: Vec<[[f64; 2]; 2]>,
    source: ConvexDomain,
    target: ConvexDomain,
}

impl Serialize for SampledMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapSpec {
            samples: self
                .samples
                .iter()
                .map(|(a, b)| [[a.x, a.y], [b.x, b.y]])
                .collect(),
            source: self.source.clone(),
            target: self.target.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SampledMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = MapSpec::deserialize(d)?;
        let samples = spec
            .samples
            .into_iter()
            .map(|[[sx, sy], [tx, ty]]| (Point2::new(sx, sy), Point2::new(tx, ty)))
            .collect();
        SampledMap::from_table(spec.source, spec.target, samples).map_err(serde::de::Error::custom)
    }
}

/// Sample points on the open chord, at fractions `(j+1)/(s+1)`.
fn chord_sample_points(chord: &Chord, s: usize) -> Vec<Point2<f64>> {
    (0..s)
        .map(|j| chord.xbar + (chord.ybar - chord.xbar) * ((j + 1) as f64 / (s + 1) as f64))
        .collect()
}

/// Maps every sample set and returns the worst image collinearity defect.
fn max_image_collinearity(
    map: &SampledMap,
    domain: &ConvexDomain,
    sample_sets: &[Vec<Point2<f64>>],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for set in sample_sets {
        let mut images = Vec::with_capacity(set.len());
        for p in set {
            if domain.contains(*p) != Region::Interior {
                return Err(Error::SampleOutsideDomain);
            }
            images.push(map.eval(*p)?);
        }
        worst = worst.max(collinearity_defect(&images));
    }
    Ok(worst)
}

/// How far `map` is from carrying the web into a web: samples every line of
/// every family, maps the samples, and returns the maximum collinearity
/// defect of the image sets. Near zero means the image families are again
/// straight (they partition automatically, the map being injective and
/// continuous).
pub fn web_image_check(web: &Web, map: &SampledMap, samples_per_line: usize) -> Result<f64> {
    if samples_per_line < 3 {
        return Err(Error::InvalidParameter(
            "need at least 3 samples per line".into(),
        ));
    }
    let mut worst: f64 = 0.0;
    for pencil in web.pencils() {
        let sets: Vec<Vec<Point2<f64>>> = pencil
            .lines()?
            .iter()
            .map(|c| chord_sample_points(c, samples_per_line))
            .collect();
        worst = worst.max(max_image_collinearity(map, &pencil.domain, &sets)?);
    }
    Ok(worst)
}

/// The five pencil poles used by [`five_pole_check`]: five extreme points for
/// polygons, five boundary points at parameter angles `2πk/5` for strictly
/// convex shapes (extreme by strict convexity).
pub fn five_poles(domain: &ConvexDomain) -> Result<Vec<HomPoint>> {
    match domain.classify() {
        ShapeClass::Triangle => Err(Error::NotEnoughExtremePoints { found: 3, needed: 5 }),
        ShapeClass::Quadrilateral => Err(Error::NotEnoughExtremePoints { found: 4, needed: 5 }),
        ShapeClass::PolygonAtLeast5 => {
            let ExtremePoints::Finite(e) = domain.extreme_points() else {
                unreachable!()
            };
            let m = e.len();
            Ok((0..5)
                .map(|k| HomPoint::from_affine(e[k * m / 5]))
                .collect())
        }
        ShapeClass::StrictlyConvex => Ok((0..5)
            .map(|k| {
                HomPoint::from_affine(
                    domain.boundary_point(std::f64::consts::TAU * k as f64 / 5.0),
                )
            })
            .collect()),
    }
}

fn five_pole_line_samples(
    domain: &ConvexDomain,
    lines_per_pole: usize,
    samples_per_line: usize,
) -> Result<Vec<Vec<Point2<f64>>>> {
    let mut sets = Vec::new();
    for pole in five_poles(domain)? {
        for chord in pencil_lines(domain, &pole, lines_per_pole)? {
            sets.push(chord_sample_points(&chord, samples_per_line));
        }
    }
    Ok(sets)
}

/// Builds the five boundary pencils of the domain, maps every sampled line,
/// and returns the worst image collinearity defect together with the poles.
///
/// Each line through an extreme point is a unique Hilbert geodesic, so an
/// isometry must map it to a straight line; a defect near zero therefore
/// forces the map to be projective.
pub fn five_pole_check(
    domain: &ConvexDomain,
    map: &SampledMap,
    lines_per_pole: usize,
    samples_per_line: usize,
) -> Result<(f64, Vec<HomPoint>)> {
    let poles = five_poles(domain)?;
    let sets = five_pole_line_samples(domain, lines_per_pole, samples_per_line)?;
    let defect = max_image_collinearity(map, domain, &sets)?;
    Ok((defect, poles))
}

/// Geometry of a convex quadrilateral: corners in counterclockwise order, the
/// diagonal intersection `M`, and the four triangles it cuts.
struct QuadGeometry {
    m: Point2<f64>,
    patches: [[Point2<f64>; 3]; 4],
}

fn quad_geometry(quad: &ConvexDomain) -> Result<QuadGeometry> {
    let ExtremePoints::Finite(e) = quad.extreme_points() else {
        return Err(Error::DegenerateQuadrilateral(
            "domain has no finite extreme points".into(),
        ));
    };
    if e.len() != 4 {
        return Err(Error::DegenerateQuadrilateral(format!(
            "domain has {} extreme points, need exactly 4",
            e.len()
        )));
    }
    let diag_ac = ProjLine::through(&HomPoint::from_affine(e[0]), &HomPoint::from_affine(e[2]))?;
    let diag_bd = ProjLine::through(&HomPoint::from_affine(e[1]), &HomPoint::from_affine(e[3]))?;
    let m = diag_ac.meet(&diag_bd)?.to_affine().map_err(|_| {
        Error::DegenerateQuadrilateral("diagonals are parallel".into())
    })?;
    for (p, q) in [(e[0], e[2]), (e[1], e[3])] {
        let along = (m - p).dot(&(q - p)) / (q - p).norm_squared();
        if !(1e-9..=1.0 - 1e-9).contains(&along) {
            return Err(Error::DegenerateQuadrilateral(
                "diagonals do not intersect strictly inside".into(),
            ));
        }
    }
    let patches = [
        [e[0], e[1], m],
        [e[1], e[2], m],
        [e[2], e[3], m],
        [e[3], e[0], m],
    ];
    Ok(QuadGeometry { m, patches })
}

/// Strictly interior barycentric lattice points of a triangle.
fn patch_lattice(tri: &[Point2<f64>; 3]) -> Vec<Point2<f64>> {
    let m = PATCH_LATTICE;
    let mut out = Vec::new();
    for i in 1..m {
        for j in 1..m - i {
            let k = m - i - j;
            let (a, b, c) = (i as f64 / m as f64, j as f64 / m as f64, k as f64 / m as f64);
            out.push(Point2::new(
                a * tri[0].x + b * tri[1].x + c * tri[2].x,
                a * tri[0].y + b * tri[1].y + c * tri[2].y,
            ));
        }
    }
    out
}

/// Result of the quadrilateral patch construction: a projective fit on each
/// of the four diagonal triangles and the worst disagreement of adjacent fits
/// on their shared edges.
#[derive(Debug, Clone)]
pub struct QuadPatchReport {
    pub patch_residuals: [f64; 4],
    pub glue_defect: f64,
    pub patch_maps: [ProjMap; 4],
}

/// Fits a projective map to samples inside each of the four triangles cut by
/// the diagonals, and measures how well adjacent fits agree on the shared
/// half-diagonal edges (the gluing step that extends the patchwise maps to
/// the whole quadrilateral).
pub fn quadrilateral_patch_check(
    quad: &ConvexDomain,
    map: &SampledMap,
) -> Result<QuadPatchReport> {
    let geom = quad_geometry(quad)?;
    let mut maps = Vec::with_capacity(4);
    let mut residuals = [0.0_f64; 4];
    for (k, patch) in geom.patches.iter().enumerate() {
        let corr = patch_lattice(patch)
            .into_iter()
            .map(|p| Ok((p, map.eval(p)?)))
            .collect::<Result<Vec<_>>>()?;
        let fit = fit_projective(&corr)?;
        residuals[k] = fit.residual;
        maps.push(fit.map);
    }
    // patches k and k+1 share the half-diagonal from corner k+1 to M
    let mut glue: f64 = 0.0;
    for k in 0..4 {
        let next = (k + 1) % 4;
        let shared_corner = geom.patches[k][1];
        for j in 0..EDGE_SAMPLES {
            let f = (j + 1) as f64 / (EDGE_SAMPLES + 1) as f64;
            let p = shared_corner + (geom.m - shared_corner) * f;
            let a = maps[k].apply_affine(p)?;
            let b = maps[next].apply_affine(p)?;
            glue = glue.max((a - b).norm());
        }
    }
    Ok(QuadPatchReport {
        patch_residuals: residuals,
        glue_defect: glue,
        patch_maps: [maps[0], maps[1], maps[2], maps[3]],
    })
}

/// The 4-web used for collineation checks inside a triangle: pencils through
/// the three vertices plus one external pole (the reflection of one vertex
/// across the opposite edge midpoint).
pub fn triangle_web(domain: &ConvexDomain, lines_per_pole: usize) -> Result<Web> {
    let ExtremePoints::Finite(e) = domain.extreme_points() else {
        return Err(Error::InvalidParameter("triangle web needs a polygon".into()));
    };
    if e.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "triangle web needs exactly 3 extreme points, got {}",
            e.len()
        )));
    }
    let external = Point2::from(e[0].coords + e[1].coords - e[2].coords);
    let poles = [
        HomPoint::from_affine(e[0]),
        HomPoint::from_affine(e[1]),
        HomPoint::from_affine(e[2]),
        HomPoint::from_affine(external),
    ];
    Web::new(
        poles
            .into_iter()
            .map(|pole| Pencil::new(pole, domain.clone(), lines_per_pole))
            .collect(),
    )
}

/// Deterministic pool of `count` interior points, kept a relative margin of
/// [`POOL_MARGIN`] away from the boundary so distances stay well conditioned.
pub fn sample_interior_pool(
    domain: &ConvexDomain,
    seed: u64,
    count: usize,
) -> Result<Vec<Point2<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = domain.bbox();
    let margin = POOL_MARGIN * domain.scale();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 10_000 * count.max(1) {
            return Err(Error::InsufficientSamples(
                "rejection sampling failed to find interior points".into(),
            ));
        }
        let p = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if domain.signed_distance(p) < -margin {
            out.push(p);
        }
    }
    Ok(out)
}

/// Every source point `classify_map` evaluates for this domain and
/// configuration: the random pair pool plus the branch-specific collineation
/// samples. A sample table covering these points (see
/// [`SampledMap::tabulate`]) can be classified without a callable.
pub fn classification_support_points(
    domain: &ConvexDomain,
    config: &RunConfig,
) -> Result<Vec<Point2<f64>>> {
    let mut points = sample_interior_pool(domain, config.seed, 2 * config.pair_budget.max(1))?;
    match domain.classify() {
        ShapeClass::Triangle => {
            let web = triangle_web(domain, config.lines_per_pole)?;
            for pencil in web.pencils() {
                for chord in pencil.lines()? {
                    points.extend(chord_sample_points(&chord, config.samples_per_line));
                }
            }
        }
        ShapeClass::Quadrilateral => {
            for patch in &quad_geometry(domain)?.patches {
                points.extend(patch_lattice(patch));
            }
        }
        _ => {
            for set in five_pole_line_samples(domain, config.lines_per_pole, config.samples_per_line)? {
                points.extend(set);
            }
        }
    }
    Ok(points)
}

/// Trichotomy verdict for a candidate isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ProjectiveIsometry,
    NonProjectiveIsometry,
    NotIsometry,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::ProjectiveIsometry => "ProjectiveIsometry",
            Verdict::NonProjectiveIsometry => "NonProjectiveIsometry",
            Verdict::NotIsometry => "NotIsometry",
        };
        f.write_str(s)
    }
}

/// Outcome of `classify_map`: the verdict together with the three
/// measurements it rests on.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// Max `|d2(fx, fy) - d1(x, y)|` over the tested pairs, in nats.
    pub isometry_defect: f64,
    /// Worst straightness defect of mapped web lines (or the patch/glue
    /// defect on quadrilaterals).
    pub collineation_defect: f64,
    /// Max symmetric transfer error of the global projective fit.
    pub residual: f64,
    pub fitted_map: Option<ProjMap>,
}

/// Runs the full classification pipeline on a candidate map.
///
/// The isometry defect is measured over `config.pair_budget` seeded random
/// pairs; the collineation defect comes from the five-pole check, the
/// quadrilateral patch construction, or a triangle 4-web depending on the
/// source shape class; the residual from a projective fit over the pair pool.
/// Verdicts: an isometry defect at or above `tolerances.isometry` means
/// `NotIsometry`; otherwise the map is a `ProjectiveIsometry` when both the
/// residual and the collineation defect are below their thresholds, and a
/// `NonProjectiveIsometry` when either is not.
pub fn classify_map(map: &SampledMap, config: &RunConfig) -> Result<ClassificationReport> {
    let pair_budget = config.pair_budget.max(1);
    if !map.is_callable() && map.samples().len() < pair_budget.max(20) {
        return Err(Error::InsufficientSamples(format!(
            "table has {} samples, need at least {}",
            map.samples().len(),
            pair_budget.max(20)
        )));
    }

    let pool = sample_interior_pool(map.source(), config.seed, 2 * pair_budget)?;
    let images = pool
        .iter()
        .map(|p| map.eval(*p))
        .collect::<Result<Vec<_>>>()?;

    let mut isometry_defect: f64 = 0.0;
    for k in 0..pair_budget {
        let (x, y) = (pool[2 * k], pool[2 * k + 1]);
        let d1 = distance(map.source(), x, y)?;
        let d2 = distance(map.target(), images[2 * k], images[2 * k + 1])?;
        isometry_defect = isometry_defect.max((d2 - d1).abs());
    }

    let collineation_defect = match map.source().classify() {
        ShapeClass::Triangle => {
            let web = triangle_web(map.source(), config.lines_per_pole)?;
            web_image_check(&web, map, config.samples_per_line)?
        }
        ShapeClass::Quadrilateral => {
            let report = quadrilateral_patch_check(map.source(), map)?;
            report
                .patch_residuals
                .iter()
                .fold(report.glue_defect, |acc, r| acc.max(*r))
        }
        _ => five_pole_check(map.source(), map, config.lines_per_pole, config.samples_per_line)?.0,
    };

    let correspondences: Vec<_> = pool.iter().copied().zip(images.iter().copied()).collect();
    let (fitted_map, residual) = match fit_projective(&correspondences) {
        Ok(fit) => (Some(fit.map), fit.residual),
        Err(_) => (None, f64::INFINITY),
    };

    let tol = &config.tolerances;
    let verdict = if isometry_defect >= tol.isometry {
        Verdict::NotIsometry
    } else if residual < tol.residual && collineation_defect < tol.collineation {
        Verdict::ProjectiveIsometry
    } else {
        Verdict::NonProjectiveIsometry
    };

    Ok(ClassificationReport {
        verdict,
        isometry_defect,
        collineation_defect,
        residual,
        fitted_map,
    })
}
