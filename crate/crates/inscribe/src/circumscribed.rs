//! Circumscribed polygons: maximum diameter via the external points x_i
//! (linear-time hull plus rotating calipers), and verification/propagation
//! of the first-order maximum-perimeter condition
//! |q_i p_j| cot(beta_i) = |q_{i+1} p_j| cot(beta_{i+1})          (*)
//! for sides of the circumscribed polygon containing a single host vertex.
//!
//! All operations assume the host satisfies the angle condition: the sum of
//! any two consecutive interior angles exceeds pi.

use std::f64::consts::PI;

use thiserror::Error;

use crate::geom::{line_line_intersection, orientation, ConvexPolygon, Line, Point};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircumError {
    #[error("the sum of two consecutive interior angles does not exceed pi (at vertex {0})")]
    AngleConditionViolated(usize),
    #[error("side {0} of the circumscribed polygon contains no vertex of the host")]
    NotCircumscribed(usize),
    #[error("the given line does not support the host polygon")]
    LineNotSupporting,
    #[error("vertex {0} of the circumscribed polygon lies outside the host boundary structure")]
    VertexNotOnBoundary(usize),
    #[error("the circumscribed polygon does not contain the host (vertex {0} outside)")]
    HostNotContained(usize),
}

/// True iff every pair of consecutive interior angles sums to more than pi
/// (strictly, margin 1e-10). This guarantees all external points exist.
pub fn validate_angle_condition(c: &ConvexPolygon) -> bool {
    (0..c.len()).all(|i| {
        c.interior_angle(i as isize) + c.interior_angle(i as isize + 1) > PI + 1e-10
    })
}

/// The external points x_i: intersection of the lines through p_{i-1}p_i
/// and p_{i+1}p_{i+2}, lying outside the host beyond side p_i p_{i+1}.
#[derive(Clone, Debug)]
pub struct ExternalPoints {
    pub x: Vec<Point>,
}

pub fn external_points(c: &ConvexPolygon) -> Result<ExternalPoints, CircumError> {
    let n = c.len();
    if let Some(i) = (0..n).find(|&i| {
        c.interior_angle(i as isize) + c.interior_angle(i as isize + 1) <= PI + 1e-10
    }) {
        return Err(CircumError::AngleConditionViolated(i));
    }
    let scale = c.scale();
    let centroid = c.centroid();
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let a = c.side_line(i as isize - 1);
        let b = c.side_line(i as isize + 1);
        let p = match line_line_intersection(&a, &b) {
            // Near-parallel adjacent side lines produce intersections too
            // far away to be meaningful; treat as a condition violation.
            Some(p) if p.dist(centroid) <= 1e12 * scale => p,
            _ => return Err(CircumError::AngleConditionViolated(i)),
        };
        x.push(p);
    }
    Ok(ExternalPoints { x })
}

/// Convex hull of points given in counterclockwise angular order around an
/// interior point, in O(n): Graham's scan without the sorting phase.
/// Returns indices into `pts` of the hull vertices, counterclockwise.
pub fn linear_hull(pts: &[Point]) -> Vec<usize> {
    let n = pts.len();
    assert!(n >= 3);
    // Start from the lexicographically smallest point: always a hull vertex.
    let start = (0..n)
        .min_by(|&a, &b| (pts[a].x, pts[a].y).partial_cmp(&(pts[b].x, pts[b].y)).unwrap())
        .unwrap();
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    for step in 0..=n {
        let idx = (start + step) % n;
        while stack.len() >= 2 {
            let top = stack[stack.len() - 1];
            let second = stack[stack.len() - 2];
            if orientation(pts[second], pts[top], pts[idx]) <= 0 {
                stack.pop();
            } else {
                break;
            }
        }
        if step < n {
            stack.push(idx);
        }
    }
    stack
}

/// Diameter of a convex polygon with all achieving vertex pairs.
#[derive(Clone, Debug)]
pub struct DiameterReport {
    /// diam(X): an upper bound for, and usually the exact value of, the
    /// maximum circumscribed diameter.
    pub value: f64,
    /// Hull vertices of X, counterclockwise.
    pub hull: Vec<Point>,
    /// Index pairs into `hull` achieving the diameter (within 1e-12
    /// relative), each with the smaller index first, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// True when some achieving pair is non-consecutive on the hull; only
    /// then is `value` known to be attained by a circumscribed polygon.
    pub resolved: bool,
}

/// Rotating-calipers diameter over a strictly convex CCW vertex ring.
pub fn calipers_report(hull: Vec<Point>) -> DiameterReport {
    let m = hull.len();
    assert!(m >= 2);
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    if m == 2 {
        candidates.push((0, 1));
    } else {
        let area2 = |a: Point, b: Point, c: Point| (b - a).cross(c - a);
        let mut j = 1usize;
        let mut advances = 0usize;
        for i in 0..m {
            let i1 = (i + 1) % m;
            while advances <= 2 * m
                && area2(hull[i], hull[i1], hull[(j + 1) % m])
                    > area2(hull[i], hull[i1], hull[j])
            {
                j = (j + 1) % m;
                advances += 1;
            }
            candidates.push((i, j));
            candidates.push((i1, j));
            candidates.push((i, (j + 1) % m));
        }
    }
    let dist = |&(a, b): &(usize, usize)| hull[a].dist(hull[b]);
    let value = candidates.iter().map(dist).fold(0.0, f64::max);
    let tol = 1e-12 * value;
    let mut pairs: Vec<(usize, usize)> = candidates
        .into_iter()
        .filter(|p| p.0 != p.1 && dist(p) >= value - tol)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let resolved = pairs.iter().any(|&(a, b)| b - a != 1 && b - a != m - 1);
    DiameterReport { value, hull, pairs, resolved }
}

/// Maximum circumscribed diameter: external points, linear hull, calipers.
/// When `resolved` is false the value is only an upper bound (the farthest
/// external points are consecutive on X, a case with no known realization).
pub fn max_diameter_circumscribed(c: &ConvexPolygon) -> Result<DiameterReport, CircumError> {
    let ext = external_points(c)?;
    let hull_idx = linear_hull(&ext.x);
    Ok(calipers_report(hull_idx.into_iter().map(|i| ext.x[i]).collect()))
}

/// A convex polygon circumscribed about the host: contains it, and every
/// host vertex lies on its boundary.
#[derive(Clone, Debug)]
pub struct CircumPolygon {
    /// Vertices q_0..q_{m-1}, counterclockwise.
    pub vertices: Vec<Point>,
    /// For each side (q_i, q_{i+1}), the host vertex indices lying on it.
    pub assignment: Vec<Vec<usize>>,
}

impl CircumPolygon {
    pub fn new(c: &ConvexPolygon, vertices: Vec<Point>) -> Result<Self, CircumError> {
        let m = vertices.len();
        assert!(m >= 3, "a circumscribed polygon needs at least 3 vertices");
        let tol = 1e-9 * c.scale();
        let sides: Vec<Line> = (0..m)
            .map(|i| Line::through(vertices[i], vertices[(i + 1) % m]))
            .collect();
        let mut assignment = vec![Vec::new(); m];
        for j in 0..c.len() {
            let p = c.vertex(j as isize);
            let mut on_boundary = false;
            for i in 0..m {
                let d = sides[i].signed_dist(p);
                if d < -tol {
                    return Err(CircumError::HostNotContained(j));
                }
                let t = sides[i].project_param(p) / vertices[i].dist(vertices[(i + 1) % m]);
                if d.abs() <= tol && (-1e-9..=1.0 + 1e-9).contains(&t) {
                    assignment[i].push(j);
                    on_boundary = true;
                }
            }
            if !on_boundary {
                return Err(CircumError::VertexNotOnBoundary(j));
            }
        }
        Ok(CircumPolygon { vertices, assignment })
    }

    fn interior_angle(&self, i: usize) -> f64 {
        let m = self.vertices.len();
        let q = self.vertices[i];
        let u = self.vertices[(i + m - 1) % m] - q;
        let v = self.vertices[(i + 1) % m] - q;
        u.cross(v).abs().atan2(u.dot(v)).rem_euclid(2.0 * PI)
    }
}

/// Per-side verdict of the first-order optimality condition (*).
#[derive(Clone, Debug)]
pub struct SideReport {
    /// Host vertex indices on this side (1 or 2 for an optimal polygon).
    pub vertices: Vec<usize>,
    /// For single-vertex sides, the residual of (*); `None` for two-vertex
    /// sides, where the condition does not apply.
    pub residual: Option<f64>,
}

/// Evaluates condition (*) on every side of a circumscribed polygon.
pub fn check_eq5(c: &ConvexPolygon, q: &CircumPolygon) -> Result<Vec<SideReport>, CircumError> {
    let m = q.vertices.len();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let verts = q.assignment[i].clone();
        if verts.is_empty() {
            return Err(CircumError::NotCircumscribed(i));
        }
        let residual = if verts.len() == 1 {
            let p = c.vertex(verts[0] as isize);
            let (qi, qi1) = (q.vertices[i], q.vertices[(i + 1) % m]);
            let (bi, bi1) = (q.interior_angle(i), q.interior_angle((i + 1) % m));
            Some(qi.dist(p) * (bi.cos() / bi.sin()) - qi1.dist(p) * (bi1.cos() / bi1.sin()))
        } else {
            None
        };
        out.push(SideReport { vertices: verts, residual });
    }
    Ok(out)
}

/// The two tangent points of the host as seen from an exterior point z:
/// (right, left) in the angular sense, i.e. every host vertex lies weakly
/// left of z->right and weakly right of z->left.
pub fn tangent_points(c: &ConvexPolygon, z: Point) -> (usize, usize) {
    let n = c.len();
    let mut right = None;
    let mut left = None;
    for k in 0..n {
        let all_left = (0..n)
            .all(|j| orientation(z, c.vertex(k as isize), c.vertex(j as isize)) >= 0 || j == k);
        let all_right = (0..n)
            .all(|j| orientation(z, c.vertex(k as isize), c.vertex(j as isize)) <= 0 || j == k);
        if all_left {
            right = Some(k);
        }
        if all_right {
            left = Some(k);
        }
    }
    (right.expect("exterior point has a right tangent"), left.expect("left tangent"))
}

/// Given q_i on a support line L through host vertex p_j, finds the unique
/// q_{i+1} on L beyond p_j satisfying (*), where the angles at q_i and at
/// the candidate q_{i+1} are spanned by L and the second tangent line from
/// each point. Returns `Ok(None)` when no admissible solution exists.
pub fn propagate_eq5(
    c: &ConvexPolygon,
    q_i: Point,
    p_j: usize,
) -> Result<Option<Point>, CircumError> {
    let n = c.len();
    let p = c.vertex(p_j as isize);
    let scale = c.scale();
    if q_i.dist(p) <= 1e-9 * scale {
        return Err(CircumError::LineNotSupporting);
    }
    let line = Line::through(q_i, p);
    // L supports C: every vertex weakly on one side.
    let signs: Vec<f64> = (0..n).map(|j| line.signed_dist(c.vertex(j as isize))).collect();
    let tol = 1e-9 * scale;
    let all_nonneg = signs.iter().all(|&d| d >= -tol);
    let all_nonpos = signs.iter().all(|&d| d <= tol);
    if !(all_nonneg || all_nonpos) {
        return Err(CircumError::LineNotSupporting);
    }

    // Interior angle at a point z on L between the ray back to p and the
    // second tangent of C from z.
    let angle_at = |z: Point| -> f64 {
        let (r, l) = tangent_points(c, z);
        // The tangent through p is L itself; pick the other one.
        let other = if r == p_j { l } else { r };
        let u = p - z;
        let v = c.vertex(other as isize) - z;
        u.cross(v).abs().atan2(u.dot(v))
    };
    let beta_i = angle_at(q_i);
    let lhs = q_i.dist(p) * (beta_i.cos() / beta_i.sin());
    let dir = (p - q_i).normalized();
    let g = |t: f64| -> f64 {
        let z = p + dir.scale(t);
        let beta = angle_at(z);
        lhs - z.dist(p) * (beta.cos() / beta.sin())
    };
    // Bracket a sign change on the ray beyond p_j, expanding outward.
    let mut lo = 1e-7 * scale;
    let mut hi = lo;
    let g_lo = g(lo);
    let mut bracket = None;
    for _ in 0..120 {
        hi *= 1.5;
        if hi > 1e9 * scale {
            break;
        }
        if g(hi) * g_lo <= 0.0 {
            bracket = Some((lo, hi));
            break;
        }
        lo = hi;
    }
    let (mut lo, mut hi) = match bracket {
        Some(b) => b,
        None => return Ok(None),
    };
    let g_lo = g(lo);
    while hi - lo > 1e-12 * scale {
        let mid = 0.5 * (lo + hi);
        if g(mid) * g_lo <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(p + dir.scale(0.5 * (lo + hi))))
}
