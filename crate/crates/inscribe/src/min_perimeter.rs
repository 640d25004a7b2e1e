//! Minimum-perimeter inscribed polygons.
//!
//! The solver runs the reflection-unfolding dynamic program over boundary
//! arcs: Pi(i, k) is the length of the shortest polygonal arc from vertex i
//! to vertex i+k that touches every side in between. An arc either uses no
//! intermediate host vertex (computed by straightening the path with
//! successive reflections) or passes through some vertex i+u and splits.
//! The all-interior-anchor case (a closed billiard trajectory touching every
//! side) is handled by a separate linear-time solver over the one-parameter
//! family q(tau) on the last side.

use crate::geom::{
    line_line_intersection, reflect_across, Anchor, ConvexPolygon, InscribedPolygon, Line, Point,
};
use thiserror::Error;

/// Relative margin for "strictly inside a side": anchors closer than this
/// (in side-parameter units) to an endpoint are rejected for Type-(0) arcs.
const INTERIOR_MARGIN: f64 = 1e-12;

/// A direct planar isometry or reflection, kept as a 2x2 linear part plus a
/// translation.
#[derive(Clone, Copy, Debug)]
struct Iso {
    m: [f64; 4],
    t: Point,
}

impl Iso {
    fn identity() -> Self {
        Iso { m: [1.0, 0.0, 0.0, 1.0], t: Point::new(0.0, 0.0) }
    }

    fn reflection(line: &Line) -> Self {
        let d = line.dir;
        let m = [
            d.x * d.x - d.y * d.y,
            2.0 * d.x * d.y,
            2.0 * d.x * d.y,
            d.y * d.y - d.x * d.x,
        ];
        // p -> base + R (p - base)
        let rb = Point::new(m[0] * line.base.x + m[1] * line.base.y, m[2] * line.base.x + m[3] * line.base.y);
        Iso { m, t: line.base - rb }
    }

    fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m[0] * p.x + self.m[1] * p.y + self.t.x,
            self.m[2] * p.x + self.m[3] * p.y + self.t.y,
        )
    }

    /// self o inner: applies `inner` first.
    fn compose(&self, inner: &Iso) -> Iso {
        let a = &self.m;
        let b = &inner.m;
        Iso {
            m: [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ],
            t: self.apply(inner.t),
        }
    }
}

/// Incrementally built unfolding of the boundary arc starting at vertex i:
/// the intermediate side lines are reflected into the frame where the arc is
/// a straight segment from p_i to the image of the far endpoint.
pub struct UnfoldChain<'a> {
    host: &'a ConvexPolygon,
    start: isize,
    /// (side index, imaged endpoints) for each intermediate side, in order.
    imaged: Vec<(usize, Point, Point)>,
    acc: Iso,
}

impl<'a> UnfoldChain<'a> {
    pub fn new(host: &'a ConvexPolygon, start: isize) -> Self {
        UnfoldChain { host, start, imaged: Vec::new(), acc: Iso::identity() }
    }

    /// Appends the next intermediate side (start+1, then start+2, ...).
    pub fn push_side(&mut self) {
        let n = self.host.len() as isize;
        let t = self.start + 1 + self.imaged.len() as isize;
        let a = self.acc.apply(self.host.vertex(t));
        let b = self.acc.apply(self.host.vertex(t + 1));
        self.imaged.push(((t.rem_euclid(n)) as usize, a, b));
        self.acc = self.acc.compose(&Iso::reflection(&self.host.side_line(t)));
    }

    fn sides_len(&self) -> usize {
        self.imaged.len()
    }

    /// Image of a point in the fully unfolded frame.
    fn unfold_point(&self, p: Point) -> Point {
        self.acc.apply(p)
    }

    /// Tries to fold the straight segment from `from` to `to` (both in the
    /// unfolded frame) back into an arc with one strictly interior anchor per
    /// intermediate side. Returns the anchors and the arc length.
    fn fold_segment(&self, from: Point, to: Point) -> Option<(Vec<Anchor>, f64)> {
        let mut anchors = Vec::with_capacity(self.imaged.len());
        let seg = to - from;
        let seg_len = seg.norm();
        if seg_len == 0.0 {
            return None;
        }
        let mut last_w = 0.0;
        for &(side, a, b) in &self.imaged {
            let e = b - a;
            let denom = seg.cross(e);
            if denom.abs() <= 1e-14 * seg_len * e.norm() {
                return None;
            }
            // Solve from + w*seg = a + s*e.
            let d = a - from;
            let w = d.cross(e) / denom;
            let s = d.cross(seg) / denom;
            if !(s > INTERIOR_MARGIN && s < 1.0 - INTERIOR_MARGIN) {
                return None;
            }
            if !(w > 0.0 && w < 1.0 && w >= last_w) {
                return None;
            }
            last_w = w;
            anchors.push(Anchor::OnSide { side, tau: s });
        }
        Some((anchors, seg_len))
    }
}

/// Type-(0) shortest arc from vertex i to vertex i+k using no intermediate
/// host vertex: straightens the path by reflections and folds it back.
/// Absent when some folded anchor does not lie strictly inside its side.
pub fn unfold_shortest_arc(
    c: &ConvexPolygon,
    i: isize,
    k: usize,
) -> Option<(Vec<Anchor>, f64)> {
    assert!(k >= 1 && k <= c.len());
    if k <= 2 {
        return Some((Vec::new(), c.vertex(i).dist(c.vertex(i + k as isize))));
    }
    let mut chain = UnfoldChain::new(c, i);
    for _ in 0..k - 2 {
        chain.push_side();
    }
    let target = chain.unfold_point(c.vertex(i + k as isize));
    chain.fold_segment(c.vertex(i), target)
}

/// How an optimal Pi entry was achieved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Back {
    /// Type (0): pure reflection arc, no intermediate vertex.
    Unfold,
    /// Type (u): the arc passes through vertex i+u.
    Split(usize),
}

/// Triangular table of shortest boundary-arc lengths Pi(i, k) with
/// back-pointers; j = i + k, indices mod n.
pub struct PiTable {
    pub n: usize,
    /// pi[i][k] for k in 1..=n (index 0 unused).
    pi: Vec<Vec<f64>>,
    /// All achieving types per entry, Unfold first, then splits by
    /// increasing u; reconstruction uses the first.
    back: Vec<Vec<Vec<Back>>>,
}

impl PiTable {
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.pi[i % self.n][k]
    }

    pub fn back(&self, i: usize, k: usize) -> &[Back] {
        &self.back[i % self.n][k]
    }

    /// Interior anchors of the reconstructed optimal arc (endpoints excluded).
    pub fn reconstruct_arc(&self, c: &ConvexPolygon, i: usize, k: usize) -> Vec<Anchor> {
        let mut out = Vec::new();
        self.reconstruct_into(c, i, k, &mut out);
        out
    }

    fn reconstruct_into(&self, c: &ConvexPolygon, i: usize, k: usize, out: &mut Vec<Anchor>) {
        if k <= 2 {
            return;
        }
        match self.back[i % self.n][k][0] {
            Back::Unfold => {
                let (anchors, _) = unfold_shortest_arc(c, i as isize, k)
                    .expect("recorded Type-(0) arc must refold");
                out.extend(anchors);
            }
            Back::Split(u) => {
                self.reconstruct_into(c, i, u, out);
                out.push(Anchor::VertexOf((i + u) % self.n));
                self.reconstruct_into(c, (i + u) % self.n, k - u, out);
            }
        }
    }
}

/// Builds the full Pi table in O(n^3).
pub fn build_pi_table(c: &ConvexPolygon) -> PiTable {
    let n = c.len();
    let tol = 1e-12 * c.scale();
    let mut pi = vec![vec![0.0; n + 1]; n];
    let mut back = vec![vec![Vec::new(); n + 1]; n];
    for i in 0..n {
        pi[i][1] = c.side_len(i as isize);
        pi[i][2] = c.vertex(i as isize).dist(c.vertex(i as isize + 2));
    }
    // One incremental unfolding chain per start vertex; rows for a fixed k
    // depend only on entries with smaller k.
    let mut chains: Vec<UnfoldChain> = (0..n).map(|i| UnfoldChain::new(c, i as isize)).collect();
    for k in 3..=n {
        for i in 0..n {
            let chain = &mut chains[i];
            while chain.sides_len() < k - 2 {
                chain.push_side();
            }
            let target = chain.unfold_point(c.vertex((i + k) as isize));
            let type0 = chain.fold_segment(c.vertex(i as isize), target).map(|(_, len)| len);
            let mut best = f64::INFINITY;
            if let Some(len) = type0 {
                best = len;
            }
            for u in 1..k {
                let cand = pi[i][u] + pi[(i + u) % n][k - u];
                if cand < best {
                    best = cand;
                }
            }
            let mut achieving = Vec::new();
            if let Some(len) = type0 {
                if len - best <= tol {
                    achieving.push(Back::Unfold);
                }
            }
            for u in 1..k {
                let cand = pi[i][u] + pi[(i + u) % n][k - u];
                if cand - best <= tol {
                    achieving.push(Back::Split(u));
                }
            }
            pi[i][k] = best;
            back[i][k] = achieving;
        }
    }
    PiTable { n, pi, back }
}

/// Outcome of the all-interior-anchor (closed billiard trajectory) solver.
#[derive(Clone, Debug)]
pub enum FagnanoSolution {
    /// No admissible closed trajectory with every vertex strictly inside a
    /// side.
    None,
    /// A single optimal trajectory at parameter `tau0`.
    Unique { tau0: f64, witness: InscribedPolygon, perimeter: f64 },
    /// A one-parameter family of equal-perimeter trajectories over
    /// `interval` (even n); representative witnesses near the endpoints and
    /// at the midpoint.
    Family { interval: (f64, f64), witnesses: Vec<InscribedPolygon>, perimeter: f64 },
}

impl FagnanoSolution {
    pub fn perimeter(&self) -> Option<f64> {
        match self {
            FagnanoSolution::None => None,
            FagnanoSolution::Unique { perimeter, .. }
            | FagnanoSolution::Family { perimeter, .. } => Some(*perimeter),
        }
    }
}

/// State for evaluating the all-N trajectory at a given tau.
struct AllNFrame<'a> {
    c: &'a ConvexPolygon,
    chain: UnfoldChain<'a>,
    p0_img: Point,
    pn1_img: Point,
}

impl<'a> AllNFrame<'a> {
    fn new(c: &'a ConvexPolygon) -> Self {
        let n = c.len() as isize;
        // Start "vertex" sits on side n-1; intermediate sides are 0..n-2.
        let mut chain = UnfoldChain::new(c, n - 1);
        for _ in 0..c.len() - 1 {
            chain.push_side();
        }
        let p0_img = chain.unfold_point(c.vertex(0));
        let pn1_img = chain.unfold_point(c.vertex(n - 1));
        AllNFrame { c, chain, p0_img, pn1_img }
    }

    fn q(&self, tau: f64) -> Point {
        self.c.vertex(0).lerp(self.c.vertex(-1), tau)
    }

    fn q_img(&self, tau: f64) -> Point {
        self.p0_img.lerp(self.pn1_img, tau)
    }

    /// Anchors on sides 0..n-2 when all of them are strictly interior.
    fn anchors(&self, tau: f64) -> Option<(Vec<Anchor>, f64)> {
        self.chain.fold_segment(self.q(tau), self.q_img(tau))
    }

    fn feasible(&self, tau: f64) -> bool {
        tau > INTERIOR_MARGIN && tau < 1.0 - INTERIOR_MARGIN && self.anchors(tau).is_some()
    }

    /// Residual of the reflection law at the moving vertex q(tau): distance
    /// between q and the returning point of the trajectory on the last side.
    fn closure_residual(&self, tau: f64) -> f64 {
        let (anchors, _) = match self.anchors(tau) {
            Some(a) => a,
            None => return f64::INFINITY,
        };
        let q = self.q(tau);
        let first = anchors.first().unwrap().realize(self.c);
        let last = anchors.last().unwrap().realize(self.c);
        let side = self.c.side_line(-1);
        let mirrored = reflect_across(last, &side);
        match line_line_intersection(&Line::through(mirrored, first), &side) {
            Some(r) => r.dist(q),
            None => f64::INFINITY,
        }
    }

    fn full_witness(&self, tau: f64) -> Option<InscribedPolygon> {
        let (mut anchors, _) = self.anchors(tau)?;
        let n = self.c.len();
        // q(tau) = p_{n-1} + (1 - tau) * (p_0 - p_{n-1}).
        anchors.push(Anchor::OnSide { side: n - 1, tau: 1.0 - tau });
        InscribedPolygon::new(self.c, anchors).ok()
    }

    fn perimeter_at(&self, tau: f64) -> f64 {
        self.q(tau).dist(self.q_img(tau))
    }
}

/// Finds the minimum-perimeter closed trajectory touching the interior of
/// every side, in O(n): the squared length is a quadratic in tau, minimized
/// over the (interval) set of tau with all anchors strictly interior, then
/// checked for closure (the reflection law at the moving vertex).
pub fn solve_all_n(c: &ConvexPolygon) -> FagnanoSolution {
    let frame = AllNFrame::new(c);
    let scale = c.scale();
    let d1 = frame.p0_img - c.vertex(0);
    let dn = frame.pn1_img - c.vertex(-1);
    let dd = dn - d1;
    let (qa, qb) = (dd.dot(dd), 2.0 * d1.dot(dd));

    // Feasible tau form an interval; locate it by scanning, refine by
    // bisection.
    const GRID: usize = 2048;
    let mut feas: Option<(f64, f64)> = None;
    for g in 0..=GRID {
        let tau = (g as f64 + 0.5) / (GRID as f64 + 1.0);
        if frame.feasible(tau) {
            feas = Some(match feas {
                Some((lo, _)) => (lo, tau),
                None => (tau, tau),
            });
        }
    }
    // Narrow admissible sets can slip through the grid; probe the quadratic
    // minimum directly.
    if feas.is_none() && qa > 0.0 {
        let tau0 = -qb / (2.0 * qa);
        if tau0 > 0.0 && tau0 < 1.0 && frame.feasible(tau0) {
            feas = Some((tau0, tau0));
        }
    }
    let (mut lo, mut hi) = match feas {
        Some(x) => x,
        None => return FagnanoSolution::None,
    };
    // Refine the interval endpoints.
    let mut bad = 0.0_f64.max(lo - 1.0 / GRID as f64);
    for _ in 0..60 {
        let mid = 0.5 * (bad + lo);
        if frame.feasible(mid) {
            lo = mid;
        } else {
            bad = mid;
        }
    }
    let mut bad = 1.0_f64.min(hi + 1.0 / GRID as f64);
    for _ in 0..60 {
        let mid = 0.5 * (bad + hi);
        if frame.feasible(mid) {
            hi = mid;
        } else {
            bad = mid;
        }
    }

    let closure_tol = 1e-9 * scale;
    let constant = qa <= 1e-10 * scale * scale && qb.abs() <= 1e-10 * scale;
    if constant {
        let mid = 0.5 * (lo + hi);
        if frame.closure_residual(mid) > closure_tol {
            return FagnanoSolution::None;
        }
        let inset = 1e-6 * (hi - lo);
        let samples = [lo + inset, mid, hi - inset];
        let witnesses: Vec<InscribedPolygon> =
            samples.iter().filter_map(|&t| frame.full_witness(t)).collect();
        if witnesses.len() != 3 {
            return FagnanoSolution::None;
        }
        return FagnanoSolution::Family {
            interval: (lo, hi),
            witnesses,
            perimeter: frame.perimeter_at(mid),
        };
    }
    if qa <= 0.0 {
        // Degenerate non-constant quadratic: no interior minimum.
        return FagnanoSolution::None;
    }
    let tau0 = -qb / (2.0 * qa);
    if !(tau0 >= lo && tau0 <= hi) || !frame.feasible(tau0) {
        return FagnanoSolution::None;
    }
    if frame.closure_residual(tau0) > closure_tol {
        return FagnanoSolution::None;
    }
    match frame.full_witness(tau0) {
        Some(witness) => {
            FagnanoSolution::Unique { tau0, witness, perimeter: frame.perimeter_at(tau0) }
        }
        None => FagnanoSolution::None,
    }
}

#[derive(Clone, Debug)]
pub struct MinPerimResult {
    /// p(C): the minimum inscribed perimeter.
    pub value: f64,
    pub witness: InscribedPolygon,
    /// The all-interior-anchor solution, when one exists.
    pub family: FagnanoSolution,
    /// Pi(i, n) per starting vertex i: the best perimeter whose sequence has
    /// a U at position i.
    pub per_sequence_best: Vec<f64>,
}

/// Solves the minimum-perimeter inscribed polygon problem in O(n^3).
pub fn min_perimeter_inscribed(c: &ConvexPolygon) -> MinPerimResult {
    let table = build_pi_table(c);
    let n = c.len();
    let per_sequence_best: Vec<f64> = (0..n).map(|i| table.get(i, n)).collect();
    let (i0, &p1) = per_sequence_best
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let fagnano = solve_all_n(c);
    let prefer_fagnano = match fagnano.perimeter() {
        Some(p) => p <= p1 * (1.0 + 1e-9),
        None => false,
    };
    let (value, witness) = if prefer_fagnano {
        let p = fagnano.perimeter().unwrap();
        let witness = match &fagnano {
            FagnanoSolution::Unique { witness, .. } => witness.clone(),
            FagnanoSolution::Family { witnesses, .. } => witnesses[1].clone(),
            FagnanoSolution::None => unreachable!(),
        };
        (p.min(p1), witness)
    } else {
        let mut anchors = vec![Anchor::VertexOf(i0)];
        anchors.extend(table.reconstruct_arc(c, i0, n));
        let witness = InscribedPolygon::new(c, anchors)
            .expect("reconstructed arc is an inscribed polygon");
        (p1, witness)
    };
    MinPerimResult { value, witness, family: fagnano, per_sequence_best }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("two consecutive realized vertices coincide at ring position {0}")]
pub struct DegenerateAngle(pub usize);

/// Reflection-law angle residual for every interior-side anchor; vertex
/// anchors yield `None`.
pub fn check_reflection_law(
    c: &ConvexPolygon,
    q: &InscribedPolygon,
) -> Result<Vec<Option<f64>>, DegenerateAngle> {
    let pts = q.points(c);
    let m = pts.len();
    let mut out = Vec::with_capacity(m);
    for (j, anchor) in q.anchors().iter().enumerate() {
        match *anchor {
            Anchor::VertexOf(_) => out.push(None),
            Anchor::OnSide { side, .. } => {
                let cur = pts[j];
                let prev = pts[(j + m - 1) % m];
                let next = pts[(j + 1) % m];
                let scale = c.scale();
                if cur.dist(prev) <= 1e-14 * scale || cur.dist(next) <= 1e-14 * scale {
                    return Err(DegenerateAngle(j));
                }
                let (a, b) = c.side(side as isize);
                let angle = |u: Point, v: Point| u.cross(v).abs().atan2(u.dot(v));
                let incoming = angle(a - cur, prev - cur);
                let outgoing = angle(next - cur, b - cur);
                out.push(Some((incoming - outgoing).abs()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_polygon, regular_ngon};

    #[test]
    fn pi_base_rows() {
        let c = random_polygon(8, 1);
        let table = build_pi_table(&c);
        for i in 0..8 {
            assert!((table.get(i, 1) - c.side_len(i as isize)).abs() < 1e-12);
            let diag = c.vertex(i as isize).dist(c.vertex(i as isize + 2));
            assert!((table.get(i, 2) - diag).abs() < 1e-12);
        }
    }

    #[test]
    fn pi_triangle_inequality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for seed in 0..5 {
            let c = random_polygon(9, seed);
            let table = build_pi_table(&c);
            for _ in 0..100 {
                let i = rng.gen_range(0..9);
                let k = rng.gen_range(2..=9usize);
                let u = rng.gen_range(1..k);
                let split = table.get(i, u) + table.get((i + u) % 9, k - u);
                assert!(table.get(i, k) <= split + 1e-9);
            }
        }
    }

    #[test]
    fn unfold_base_case_is_diagonal() {
        let c = regular_ngon(6, 1.0);
        let (anchors, len) = unfold_shortest_arc(&c, 1, 2).unwrap();
        assert!(anchors.is_empty());
        assert!((len - c.vertex(1).dist(c.vertex(3))).abs() < 1e-12);
    }

    #[test]
    fn unfold_two_reflections_folds_back() {
        // On regular polygons the shortest two-reflection arc grazes the
        // middle vertex exactly, so Type (0) is absent there...
        assert!(unfold_shortest_arc(&regular_ngon(6, 1.0), 0, 4).is_none());
        assert!(unfold_shortest_arc(&regular_ngon(7, 1.0), 0, 4).is_none());
        // ...while irregular hosts admit genuine two-anchor arcs; on every
        // present arc the folded polyline length equals the straight
        // unfolded distance.
        let mut present = 0;
        for seed in 0..10 {
            let c = random_polygon(7, seed);
            for i in 0..7 {
                if let Some((anchors, len)) = unfold_shortest_arc(&c, i as isize, 4) {
                    assert_eq!(anchors.len(), 2);
                    let mut pts = vec![c.vertex(i as isize)];
                    pts.extend(anchors.iter().map(|a| a.realize(&c)));
                    pts.push(c.vertex(i as isize + 4));
                    let poly_len: f64 = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
                    assert!((poly_len - len).abs() < 1e-10 * len);
                    present += 1;
                }
            }
        }
        assert!(present > 0);
    }

    #[test]
    fn unfold_rejects_exterior_fold() {
        // Pentagon with a near-degenerate flat corner at p2: some arc folds
        // outside a side and must be reported absent.
        let c = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.6, 0.03),
            Point::new(2.0, 1.6),
            Point::new(0.2, 1.2),
        ])
        .unwrap();
        let mut saw_absent = false;
        for i in 0..5 {
            for k in 3..=5 {
                if unfold_shortest_arc(&c, i as isize, k).is_none() {
                    saw_absent = true;
                }
            }
        }
        assert!(saw_absent);
        // The DP still produces finite values via splits.
        let table = build_pi_table(&c);
        for i in 0..5 {
            assert!(table.get(i, 5).is_finite());
        }
    }

    #[test]
    fn pentagon_fagnano_is_midpoint_polygon() {
        let c = regular_ngon(5, 1.0);
        match solve_all_n(&c) {
            FagnanoSolution::Unique { tau0, witness, perimeter } => {
                assert!((tau0 - 0.5).abs() < 1e-9);
                let expected = 5.0 * 72f64.to_radians().sin();
                assert!((perimeter - expected).abs() < 1e-9);
                for a in witness.anchors() {
                    match a {
                        Anchor::OnSide { tau, .. } => assert!((tau - 0.5).abs() < 1e-9),
                        _ => panic!("all anchors must be interior"),
                    }
                }
            }
            other => panic!("expected Unique, got {other:?}"),
        }
    }

    #[test]
    fn hexagon_fagnano_is_family() {
        let c = regular_ngon(6, 1.0);
        match solve_all_n(&c) {
            FagnanoSolution::Family { interval, witnesses, perimeter } => {
                assert!(interval.0 < 0.01 && interval.1 > 0.99);
                assert_eq!(witnesses.len(), 3);
                let expected = 3.0 * 3f64.sqrt();
                assert!((perimeter - expected).abs() < 1e-9);
                for w in &witnesses {
                    assert!((w.perimeter(&c) - expected).abs() < 1e-10 * expected);
                }
            }
            other => panic!("expected Family, got {other:?}"),
        }
    }

    #[test]
    fn pentagon_min_perimeter() {
        let c = regular_ngon(5, 1.0);
        let res = min_perimeter_inscribed(&c);
        let expected = 5.0 * 72f64.to_radians().sin();
        assert!((res.value - expected).abs() < 1e-9);
        // Witness is the midpoint polygon: sequence all-N.
        assert!(res.witness.anchors().iter().all(|a| matches!(a, Anchor::OnSide { .. })));
        let residuals = check_reflection_law(&c, &res.witness).unwrap();
        for r in residuals.into_iter().flatten() {
            assert!(r < 1e-7);
        }
    }

    #[test]
    fn hexagon_even_shortcut() {
        let c = regular_ngon(6, 1.0);
        let res = min_perimeter_inscribed(&c);
        let expected = 3.0 * 3f64.sqrt();
        assert!((res.value - expected).abs() < 1e-9);
        // Even n: the vertex-touching branch already attains p(C).
        let p1 = res.per_sequence_best.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((p1 - expected).abs() < 1e-9);
    }

    #[test]
    fn midpoint_polygon_upper_bound() {
        for seed in 0..10 {
            let c = random_polygon(7, seed);
            let res = min_perimeter_inscribed(&c);
            let mid = InscribedPolygon::new(
                &c,
                (0..7).map(|i| Anchor::OnSide { side: i, tau: 0.5 }).collect(),
            )
            .unwrap();
            assert!(res.value <= mid.perimeter(&c) + 1e-9);
        }
    }

    #[test]
    fn witness_local_optimality() {
        for seed in 0..5 {
            let c = random_polygon(6, seed + 50);
            let res = min_perimeter_inscribed(&c);
            let base = res.witness.perimeter(&c);
            for (j, a) in res.witness.anchors().iter().enumerate() {
                if let Anchor::OnSide { side, tau } = *a {
                    for dt in [-1e-4, 1e-4] {
                        let t = tau + dt;
                        if t <= 0.0 || t >= 1.0 {
                            continue;
                        }
                        let mut anchors = res.witness.anchors().to_vec();
                        anchors[j] = Anchor::OnSide { side, tau: t };
                        let p = InscribedPolygon::new_unchecked(anchors).perimeter(&c);
                        assert!(p >= base - 1e-10 * base);
                    }
                }
            }
        }
    }

    #[test]
    fn per_sequence_reconstruction_consistent() {
        // Theorem 5(i): the witness for a fixed non-all-N sequence is unique;
        // folding the recorded arc reproduces the recorded length.
        for seed in 0..5 {
            let c = random_polygon(8, seed + 100);
            let table = build_pi_table(&c);
            for i in 0..8 {
                let anchors = table.reconstruct_arc(&c, i, 8);
                let mut pts = vec![c.vertex(i as isize)];
                pts.extend(anchors.iter().map(|a| a.realize(&c)));
                pts.push(c.vertex(i as isize));
                let len: f64 = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
                assert!((len - table.get(i, 8)).abs() < 1e-9 * len);
            }
        }
    }

    #[test]
    fn reflection_law_flags_perturbed_witness() {
        let c = regular_ngon(5, 1.0);
        let res = min_perimeter_inscribed(&c);
        let mut anchors = res.witness.anchors().to_vec();
        if let Anchor::OnSide { side, tau } = anchors[0] {
            anchors[0] = Anchor::OnSide { side, tau: tau + 0.1 };
        }
        let perturbed = InscribedPolygon::new(&c, anchors).unwrap();
        let residuals = check_reflection_law(&c, &perturbed).unwrap();
        assert!(residuals.iter().flatten().any(|&r| r > 1e-3));
    }
}
