//! Seeded polygon generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{ConvexPolygon, Point};

/// Regular n-gon with the given circumradius, first vertex on the +x axis.
pub fn regular_ngon(n: usize, r: f64) -> ConvexPolygon {
    let pts = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect();
    ConvexPolygon::new(pts).expect("regular polygon is strictly convex")
}

/// Random strictly convex n-gon: n uniform angles sorted and placed on the
/// unit circle; degenerate draws (near-collinear triples) are rejected.
pub fn random_polygon(n: usize, seed: u64) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut angles: Vec<f64> =
            (0..n).map(|_| rng.gen::<f64>() * std::f64::consts::TAU).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pts: Vec<Point> = angles.iter().map(|t| Point::new(t.cos(), t.sin())).collect();
        if let Ok(c) = ConvexPolygon::new(pts) {
            return c;
        }
    }
}

/// Large random convex n-gon with jittered-regular angles. Unlike
/// [`random_polygon`], the minimum angular gap is bounded below, so draws
/// at n in the thousands stay strictly convex.
pub fn jittered_ngon(n: usize, seed: u64) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..n)
        .map(|i| {
            let jitter = 0.3 * (2.0 * rng.gen::<f64>() - 1.0);
            let t = std::f64::consts::TAU * (i as f64 + jitter) / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    ConvexPolygon::new(pts).expect("jittered polygon is strictly convex")
}
