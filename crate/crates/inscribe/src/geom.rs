//! Planar primitives: points, lines, validated convex polygons, and the
//! inscribed-polygon data model used by all solvers.
//!
//! Everything here is an immutable value; all operations are pure functions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for the collinearity band of [`orientation`].
pub const ORIENT_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn add(&self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(&self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(&self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z-component of the wedge).
    pub fn cross(&self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, other: Point) -> f64 {
        (*self - other).norm()
    }

    /// Linear interpolation: `self` at t=0, `other` at t=1.
    pub fn lerp(&self, other: Point, t: f64) -> Point {
        Point::new(self.x + t * (other.x - self.x), self.y + t * (other.y - self.y))
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn perp(&self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(&self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        self.scale(s)
    }
}

/// Sign of the cross product `(b - a) x (c - a)`, with a symmetric,
/// scale-relative tolerance band for zero.
pub fn orientation(a: Point, b: Point, c: Point) -> i32 {
    let u = b - a;
    let v = c - a;
    let cross = u.cross(v);
    let tol = ORIENT_EPS * (u.norm() * v.norm()).max(1.0);
    if cross > tol {
        1
    } else if cross < -tol {
        -1
    } else {
        0
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    #[error("polygon needs at least 5 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex at vertex index {0}")]
    NotConvex(usize),
    #[error("duplicate vertices at indices {0} and {1}")]
    DuplicateVertex(usize, usize),
    #[error("non-finite coordinate at vertex index {0}")]
    NonFinite(usize),
}

/// A validated, strictly convex polygon with vertices in counterclockwise
/// order. Vertex indexing is mod n.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validates a vertex list into a convex polygon, normalizing clockwise
    /// input to counterclockwise by reversal.
    pub fn new(points: Vec<Point>) -> Result<Self, PolygonError> {
        let n = points.len();
        if n < 5 {
            return Err(PolygonError::TooFewVertices(n));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.is_finite() {
                return Err(PolygonError::NonFinite(i));
            }
        }
        // Duplicate check relative to the bounding-box diagonal. Consecutive
        // pairs suffice: non-adjacent duplicates fail the convexity test below.
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in &points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let diag = (hi - lo).norm();
        for i in 0..n {
            let j = (i + 1) % n;
            if points[i].dist(points[j]) <= 1e-12 * diag {
                return Err(PolygonError::DuplicateVertex(i, j));
            }
        }
        // Normalize orientation via the shoelace sign.
        let mut pts = points;
        let mut signed = 0.0;
        for i in 0..n {
            let j = (i + 1) % n;
            signed += pts[i].cross(pts[j]);
        }
        if signed < 0.0 {
            pts.reverse();
        }
        // Strict convexity: every consecutive triple turns left, and the
        // exterior angles sum to one full turn (rules out multiple windings).
        let mut turn_sum = 0.0;
        for i in 0..n {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            if orientation(a, b, c) <= 0 {
                return Err(PolygonError::NotConvex(i));
            }
            let u = b - a;
            let v = c - b;
            turn_sum += u.cross(v).atan2(u.dot(v));
        }
        if (turn_sum - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(PolygonError::NotConvex(0));
        }
        Ok(ConvexPolygon { vertices: pts })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertex with mod-n indexing; accepts any integer index.
    pub fn vertex(&self, i: isize) -> Point {
        let n = self.vertices.len() as isize;
        self.vertices[i.rem_euclid(n) as usize]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Side i is the segment from vertex i to vertex i+1.
    pub fn side(&self, i: isize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn side_len(&self, i: isize) -> f64 {
        let (a, b) = self.side(i);
        a.dist(b)
    }

    /// Line through side i, directed from vertex i to vertex i+1.
    pub fn side_line(&self, i: isize) -> Line {
        let (a, b) = self.side(i);
        Line::through(a, b)
    }

    pub fn area(&self) -> f64 {
        shoelace_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        let mut c = Point::new(0.0, 0.0);
        for p in &self.vertices {
            c = c + *p;
        }
        c.scale(1.0 / n)
    }

    /// Interior angle at vertex i, in (0, pi).
    pub fn interior_angle(&self, i: isize) -> f64 {
        let a = self.vertex(i - 1);
        let b = self.vertex(i);
        let c = self.vertex(i + 1);
        let u = a - b;
        let v = c - b;
        u.cross(v).abs().atan2(u.dot(v))
    }

    /// Diameter of the bounding box; the length scale used by tolerances.
    pub fn scale(&self) -> f64 {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for p in &self.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (hi - lo).norm()
    }

    /// True iff `p` lies inside or on the boundary (tolerance `tol`, absolute).
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (a, b) = self.side(i as isize);
            (b - a).cross(p - a) >= -tol * (b - a).norm()
        })
    }
}

/// Shoelace area of a vertex ring (positive for counterclockwise order).
pub fn shoelace_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    s / 2.0
}

/// An infinite line given by a base point and a unit direction.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub base: Point,
    pub dir: Point,
}

impl Line {
    pub fn new(base: Point, dir: Point) -> Self {
        Line { base, dir: dir.normalized() }
    }

    pub fn through(a: Point, b: Point) -> Self {
        Line::new(a, b - a)
    }

    /// Signed distance of `p` from the line (positive on the left of `dir`).
    pub fn signed_dist(&self, p: Point) -> f64 {
        self.dir.cross(p - self.base)
    }

    pub fn project_param(&self, p: Point) -> f64 {
        (p - self.base).dot(self.dir)
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.base + self.dir * t
    }
}

/// Mirror image of `p` across `line`. An involution and an isometry.
pub fn reflect_across(p: Point, line: &Line) -> Point {
    let d = p - line.base;
    let along = line.dir * d.dot(line.dir);
    let across = d - along;
    line.base + along - across
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line contains the segment")]
pub struct ParallelOverlap;

/// Intersection of a line with the closed segment `ab`; returns the point and
/// its parameter along `ab` when it exists.
pub fn line_segment_intersection(
    line: &Line,
    a: Point,
    b: Point,
) -> Result<Option<(Point, f64)>, ParallelOverlap> {
    let seg = b - a;
    let denom = line.dir.cross(seg);
    let scale = seg.norm().max(1.0);
    if denom.abs() <= 1e-14 * scale {
        if line.signed_dist(a).abs() <= 1e-12 * scale {
            return Err(ParallelOverlap);
        }
        return Ok(None);
    }
    let tau = line.dir.cross(a - line.base) / -denom;
    if (0.0..=1.0).contains(&tau) {
        Ok(Some((a.lerp(b, tau), tau)))
    } else {
        Ok(None)
    }
}

/// Intersection of two lines, if they are not (near-)parallel.
pub fn line_line_intersection(l1: &Line, l2: &Line) -> Option<Point> {
    let denom = l1.dir.cross(l2.dir);
    if denom.abs() <= 1e-14 {
        return None;
    }
    let t = (l2.base - l1.base).cross(l2.dir) / denom;
    Some(l1.point_at(t))
}

/// A vertex of an inscribed polygon: either a vertex of the host, or an
/// interior point of a host side at parameter `tau` in (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Anchor {
    /// Vertex i of the host polygon.
    VertexOf(usize),
    /// Interior point of side (i, i+1), at parameter tau from vertex i.
    OnSide { side: usize, tau: f64 },
}

impl Anchor {
    pub fn realize(&self, host: &ConvexPolygon) -> Point {
        match *self {
            Anchor::VertexOf(i) => host.vertex(i as isize),
            Anchor::OnSide { side, tau } => {
                let (a, b) = host.side(side as isize);
                a.lerp(b, tau)
            }
        }
    }

    /// Boundary position, for ordering anchors along the host boundary:
    /// vertex i maps to i, a side point to i + tau.
    pub fn boundary_pos(&self) -> f64 {
        match *self {
            Anchor::VertexOf(i) => i as f64,
            Anchor::OnSide { side, tau } => side as f64 + tau,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InscriptionError {
    #[error("side {0} of the host contains no vertex of the inscribed polygon")]
    SideUntouched(usize),
    #[error("anchor {0} has tau outside the open unit interval")]
    TauOutOfRange(usize),
    #[error("anchors are not in counterclockwise boundary order at position {0}")]
    OutOfOrder(usize),
}

/// A polygon inscribed in a host: a ring of anchors in counterclockwise
/// boundary order, touching every side of the host.
#[derive(Clone, Debug, PartialEq)]
pub struct InscribedPolygon {
    anchors: Vec<Anchor>,
}

impl InscribedPolygon {
    /// Builds and checks the inscription invariants against `host`.
    pub fn new(host: &ConvexPolygon, anchors: Vec<Anchor>) -> Result<Self, InscriptionError> {
        let n = host.len();
        for (k, a) in anchors.iter().enumerate() {
            if let Anchor::OnSide { tau, .. } = a {
                if !(*tau > 0.0 && *tau < 1.0) {
                    return Err(InscriptionError::TauOutOfRange(k));
                }
            }
        }
        // Every side of the host must contain at least one anchor. A side
        // (i, i+1) is touched by VertexOf(i), VertexOf(i+1), or OnSide(i).
        let mut touched = vec![false; n];
        for a in &anchors {
            match *a {
                Anchor::VertexOf(i) => {
                    touched[i % n] = true;
                    touched[(i + n - 1) % n] = true;
                }
                Anchor::OnSide { side, .. } => touched[side % n] = true,
            }
        }
        if let Some(i) = touched.iter().position(|t| !t) {
            return Err(InscriptionError::SideUntouched(i));
        }
        // Counterclockwise boundary order: positions strictly increase along
        // the ring after rotating the minimum to the front, mod n.
        let pos: Vec<f64> = anchors.iter().map(|a| a.boundary_pos()).collect();
        let m = anchors.len();
        let start = (0..m).min_by(|&a, &b| pos[a].partial_cmp(&pos[b]).unwrap()).unwrap();
        for k in 1..m {
            let prev = pos[(start + k - 1) % m];
            let cur = pos[(start + k) % m];
            if cur < prev {
                return Err(InscriptionError::OutOfOrder(k));
            }
        }
        Ok(InscribedPolygon { anchors })
    }

    /// Builds without checking; for internal degenerate witnesses (e.g. family
    /// endpoints where an anchor sits on a host vertex).
    pub fn new_unchecked(anchors: Vec<Anchor>) -> Self {
        InscribedPolygon { anchors }
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    pub fn points(&self, host: &ConvexPolygon) -> Vec<Point> {
        self.anchors.iter().map(|a| a.realize(host)).collect()
    }

    pub fn area(&self, host: &ConvexPolygon) -> f64 {
        shoelace_area(&self.points(host))
    }

    pub fn perimeter(&self, host: &ConvexPolygon) -> f64 {
        let pts = self.points(host);
        let m = pts.len();
        (0..m).map(|i| pts[i].dist(pts[(i + 1) % m])).sum()
    }
}
