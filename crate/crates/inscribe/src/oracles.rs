//! Independent, slow, obviously-correct reference implementations used to
//! cross-validate the solvers: exhaustive enumeration for minimum area,
//! per-sequence coordinate descent for minimum perimeter, and an all-pairs
//! diameter scan.

use thiserror::Error;

use crate::geom::{shoelace_area, Anchor, ConvexPolygon, InscribedPolygon, Point};
use crate::sequences::{perimeter_admissible, CyclicSequence};

#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_iterations: usize,
    pub restarts: usize,
    pub tolerance: f64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        // tolerance bounds the abscissa of the golden-section fallback;
        // golden-section search cannot localize an abscissa below
        // ~sqrt(machine epsilon), so the default stays above that floor.
        OracleBudget { max_vertices: 16, max_iterations: 10_000, restarts: 1, tolerance: 1e-7 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance size {n} exceeds the oracle budget of {max}")]
    BudgetExceeded { n: usize, max: usize },
    #[error("coordinate descent did not converge within {0} iterations")]
    NoConvergence(usize),
}

/// Exhaustive minimum-area reference: tries all 2^n cut sets, keeps those
/// whose kept-vertex hull is inscribed (every side touched), and returns the
/// minimum area together with every minimizing cut set (each sorted
/// ascending, the list in lexicographic order).
pub fn brute_min_area(
    c: &ConvexPolygon,
    budget: &OracleBudget,
) -> Result<(f64, Vec<Vec<usize>>), OracleError> {
    let n = c.len();
    if n > budget.max_vertices {
        return Err(OracleError::BudgetExceeded { n, max: budget.max_vertices });
    }
    let mut best = f64::INFINITY;
    let mut argmin: Vec<Vec<usize>> = Vec::new();
    let tol = 1e-12 * c.area();
    for mask in 0u32..(1 << n) {
        let cut = |i: usize| mask & (1 << i) != 0;
        // Side i is touched iff p_i or p_{i+1} is kept; for vertex-anchored
        // polygons this index test is exact.
        if (0..n).any(|i| cut(i) && cut((i + 1) % n)) {
            continue;
        }
        let kept: Vec<Point> = (0..n).filter(|&i| !cut(i)).map(|i| c.vertex(i as isize)).collect();
        if kept.len() < 3 {
            continue;
        }
        let area = shoelace_area(&kept);
        if area < best - tol {
            best = area;
            argmin.clear();
        }
        if area <= best + tol {
            argmin.push((0..n).filter(|&i| cut(i)).collect());
        }
    }
    argmin.sort();
    Ok((best, argmin))
}

/// Minimizes |prev - q(t)| + |q(t) - next| for q on the segment a-b. The
/// unconstrained optimum is the intersection of the segment from the
/// reflection of `prev` across the carrier line with `next`; clamping to
/// [0, 1] handles anchors pushed onto an endpoint. Falls back to
/// golden-section search when that chord is (near-)parallel to the side.
fn segment_min(a: Point, b: Point, prev: Point, next: Point, tol: f64) -> f64 {
    let line = crate::geom::Line::through(a, b);
    let mirrored = crate::geom::reflect_across(prev, &line);
    let seg = b - a;
    let chord = next - mirrored;
    let denom = seg.cross(chord);
    if denom.abs() <= 1e-12 * seg.norm() * chord.norm().max(1.0) {
        return golden_min(a, b, prev, next, tol);
    }
    ((mirrored - a).cross(chord) / denom).clamp(0.0, 1.0)
}

/// Golden-section minimizer of a unimodal function on [lo, hi].
fn golden_scalar(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Minimizes |prev - q(t)| + |q(t) - next| for q on a segment by
/// golden-section search; the objective is strictly convex in t.
fn golden_min(a: Point, b: Point, prev: Point, next: Point, tol: f64) -> f64 {
    let f = |t: f64| {
        let q = a.lerp(b, t);
        q.dist(prev) + q.dist(next)
    };
    golden_scalar(0.0, 1.0, f, tol)
}

/// Coordinate-descent minimum perimeter for a fixed contact sequence:
/// vertices at the U positions are pinned, one free anchor is kept on every
/// side not already touched, and each free anchor is cyclically re-optimized
/// on its side. Returns `None` when an anchor converges onto a side
/// endpoint (no interior-anchor optimum for this sequence).
pub fn relax_min_perimeter(
    c: &ConvexPolygon,
    s: &CyclicSequence,
    budget: &OracleBudget,
) -> Result<Option<(f64, InscribedPolygon)>, OracleError> {
    assert!(perimeter_admissible(s), "sequence must be perimeter-admissible");
    assert_eq!(s.len(), c.len());
    let n = c.len();
    // Ring of anchors in boundary order; free anchors sit on sides touched
    // by no pinned vertex.
    let mut anchors: Vec<Anchor> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for i in 0..n {
        if s.at(i as isize) == 'U' {
            anchors.push(Anchor::VertexOf(i));
        }
        if s.at(i as isize) == 'N' && s.at(i as isize + 1) == 'N' {
            free.push(anchors.len());
            anchors.push(Anchor::OnSide { side: i, tau: 0.5 });
        }
    }
    let m = anchors.len();
    let scale = c.scale();
    let tau_of = |a: &Anchor| match *a {
        Anchor::OnSide { tau, .. } => tau,
        _ => unreachable!(),
    };
    let set_taus = |anchors: &mut [Anchor], taus: &[f64], free: &[usize]| {
        for (&j, &tau) in free.iter().zip(taus) {
            if let Anchor::OnSide { side, .. } = anchors[j] {
                anchors[j] = Anchor::OnSide { side, tau };
            }
        }
    };
    let mut last_perimeter = InscribedPolygon::new_unchecked(anchors.clone()).perimeter(c);
    for _ in 0..budget.max_iterations {
        let sweep_start = last_perimeter;
        let tau_before: Vec<f64> = free.iter().map(|&j| tau_of(&anchors[j])).collect();
        for &j in &free {
            let side = match anchors[j] {
                Anchor::OnSide { side, .. } => side,
                _ => unreachable!(),
            };
            let prev = anchors[(j + m - 1) % m].realize(c);
            let next = anchors[(j + 1) % m].realize(c);
            let (a, b) = c.side(side as isize);
            let tau = segment_min(a, b, prev, next, 0.1 * budget.tolerance);
            anchors[j] = Anchor::OnSide { side, tau };
            let perimeter = InscribedPolygon::new_unchecked(anchors.clone()).perimeter(c);
            assert!(
                perimeter <= last_perimeter + 1e-14 * scale.max(last_perimeter),
                "coordinate descent must not increase the perimeter"
            );
            last_perimeter = perimeter;
        }
        // Joint moves over ring-adjacent free pairs. Two free anchors on
        // consecutive sides can collapse onto the shared host vertex, a
        // non-smooth kink where single-coordinate steps stick; minimizing
        // the pair jointly (outer golden over the first anchor, exact inner
        // step for the second) escapes it. The partial minimum of a convex
        // function is convex, so the outer search is valid.
        if free.len() >= 2 {
            for w in 0..free.len() {
                let j = free[w];
                let j2 = free[(w + 1) % free.len()];
                if (j + 1) % m != j2 {
                    continue;
                }
                let (side1, side2) = match (anchors[j], anchors[j2]) {
                    (Anchor::OnSide { side: s1, .. }, Anchor::OnSide { side: s2, .. }) => (s1, s2),
                    _ => unreachable!(),
                };
                let prev = anchors[(j + m - 1) % m].realize(c);
                let next2 = anchors[(j2 + 1) % m].realize(c);
                let (a1, b1) = c.side(side1 as isize);
                let (a2, b2) = c.side(side2 as isize);
                let inner = |t1: f64| {
                    let q1 = a1.lerp(b1, t1);
                    let t2 = segment_min(a2, b2, q1, next2, 0.1 * budget.tolerance);
                    let q2 = a2.lerp(b2, t2);
                    (q1.dist(prev) + q1.dist(q2) + q2.dist(next2), t2)
                };
                let t1 = golden_scalar(0.0, 1.0, |t| inner(t).0, 1e-9);
                let (local, t2) = inner(t1);
                let q1_old = anchors[j].realize(c);
                let q2_old = anchors[j2].realize(c);
                let local_old =
                    q1_old.dist(prev) + q1_old.dist(q2_old) + q2_old.dist(next2);
                if local < local_old {
                    anchors[j] = Anchor::OnSide { side: side1, tau: t1 };
                    anchors[j2] = Anchor::OnSide { side: side2, tau: t2 };
                    let perimeter = InscribedPolygon::new_unchecked(anchors.clone()).perimeter(c);
                    assert!(
                        perimeter <= last_perimeter + 1e-14 * scale.max(last_perimeter),
                        "joint pair step must not increase the perimeter"
                    );
                    last_perimeter = perimeter;
                }
            }
        }
        // Pattern move: cyclic per-anchor steps zigzag on narrow diagonal
        // valleys, so extrapolate along the net displacement of the whole
        // sweep and line-search the (convex) perimeter along that ray.
        let tau_after: Vec<f64> = free.iter().map(|&j| tau_of(&anchors[j])).collect();
        let delta: Vec<f64> =
            tau_after.iter().zip(&tau_before).map(|(a, b)| a - b).collect();
        if delta.iter().any(|d| d.abs() > 0.0) {
            // Largest step that keeps every coordinate inside [0, 1].
            let alpha_max = free
                .iter()
                .zip(&tau_after)
                .zip(&delta)
                .filter(|&(_, &d)| d != 0.0)
                .map(|((_, &t), &d)| if d > 0.0 { (1.0 - t) / d } else { -t / d })
                .fold(1e6f64, f64::min);
            if alpha_max > 0.0 {
                let perim_at = |alpha: f64| {
                    let mut trial = anchors.clone();
                    let taus: Vec<f64> = tau_after
                        .iter()
                        .zip(&delta)
                        .map(|(&t, &d)| (t + alpha * d).clamp(0.0, 1.0))
                        .collect();
                    set_taus(&mut trial, &taus, &free);
                    InscribedPolygon::new_unchecked(trial).perimeter(c)
                };
                let alpha = golden_scalar(0.0, alpha_max, perim_at, 1e-12 * alpha_max);
                let value = perim_at(alpha);
                if value < last_perimeter {
                    let taus: Vec<f64> = tau_after
                        .iter()
                        .zip(&delta)
                        .map(|(&t, &d)| (t + alpha * d).clamp(0.0, 1.0))
                        .collect();
                    set_taus(&mut anchors, &taus, &free);
                    last_perimeter = value;
                }
            }
        }
        // Converged when a full sweep of exact per-anchor steps no longer
        // improves the value. Anchor movement is deliberately not used as a
        // criterion: on narrow valleys it stays large long after the value
        // has converged, and on flat optimum families it never settles.
        if sweep_start - last_perimeter < 1e-13 * scale.max(last_perimeter) {
            // Converged; reject anchors pinned to a side endpoint.
            let pinned = anchors.iter().any(|a| match *a {
                Anchor::OnSide { tau, .. } => tau < 1e-6 || tau > 1.0 - 1e-6,
                _ => false,
            });
            if pinned {
                return Ok(None);
            }
            let witness = InscribedPolygon::new(c, anchors)
                .expect("converged interior anchors form an inscribed polygon");
            return Ok(Some((witness.perimeter(c), witness)));
        }
    }
    Err(OracleError::NoConvergence(budget.max_iterations))
}

/// Global minimum-perimeter reference: runs [`relax_min_perimeter`] over
/// every perimeter-admissible sequence and keeps the best result.
pub fn global_min_perimeter(
    c: &ConvexPolygon,
    budget: &OracleBudget,
) -> Result<(f64, InscribedPolygon), OracleError> {
    let n = c.len();
    if n > 12 {
        return Err(OracleError::BudgetExceeded { n, max: 12 });
    }
    let mut best: Option<(f64, InscribedPolygon)> = None;
    for mask in 0u32..(1 << n) {
        let word: String =
            (0..n).map(|i| if mask & (1 << i) != 0 { 'U' } else { 'N' }).collect();
        let s = CyclicSequence::new(word).unwrap();
        if !perimeter_admissible(&s) {
            continue;
        }
        if let Some((value, witness)) = relax_min_perimeter(c, &s, budget)? {
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                best = Some((value, witness));
            }
        }
    }
    Ok(best.expect("the all-N sequence always yields a candidate"))
}

/// O(n^2) diameter reference: the maximum pairwise distance and all index
/// pairs achieving it within 1e-12 relative.
pub fn pairwise_diameter(points: &[Point]) -> (f64, Vec<(usize, usize)>) {
    assert!(points.len() >= 2, "diameter needs at least two points");
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.max(points[i].dist(points[j]));
        }
    }
    let tol = 1e-12 * best;
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].dist(points[j]) >= best - tol {
                pairs.push((i, j));
            }
        }
    }
    (best, pairs)
}
