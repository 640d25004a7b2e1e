//! Minimum-area inscribed polygons.
//!
//! Cutting corner p_i from the host replaces it by the diagonal
//! p_{i-1}p_{i+1} and removes the triangle (p_{i-1}, p_i, p_{i+1}). The
//! minimum-area problem is therefore a maximum-weight independent set on a
//! cycle over the corner-triangle areas, solved by two linear passes (one
//! forcing the first weight in, one forcing it out). All optimal subsets are
//! kept in a shared-suffix decision DAG.

use crate::geom::{Anchor, ConvexPolygon, InscribedPolygon};

/// Corner-triangle areas: `weights[i]` is the area of (p_{i-1}, p_i, p_{i+1}).
#[derive(Clone, Debug)]
pub struct TriangleWeights {
    pub weights: Vec<f64>,
}

pub fn triangle_weights(c: &ConvexPolygon) -> TriangleWeights {
    let n = c.len() as isize;
    let weights = (0..n)
        .map(|i| {
            let a = c.vertex(i - 1);
            let b = c.vertex(i);
            let d = c.vertex(i + 1);
            0.5 * (b - a).cross(d - a).abs()
        })
        .collect();
    TriangleWeights { weights }
}

/// One alternative at a decision node: optionally choose a weight index now,
/// then continue at `next` (`None` terminates the path).
#[derive(Clone, Copy, Debug)]
struct Alt {
    choose: Option<usize>,
    next: Option<usize>,
}

/// At most two alternatives per node ("take" and "skip"); a fixed pair keeps
/// the DAG allocation-free per node.
#[derive(Clone, Copy, Debug)]
struct Node {
    alts: [Option<Alt>; 2],
}

impl Node {
    fn alts(&self) -> impl Iterator<Item = &Alt> {
        self.alts.iter().flatten()
    }
}

/// Compact DAG whose root-to-sink paths enumerate exactly the optimal
/// independent index subsets of the cyclic maximum-sum problem. Tied branches
/// share suffixes, so the DAG stays linear even when the number of optima
/// does not.
#[derive(Clone, Debug)]
pub struct SkipDecisionTree {
    nodes: Vec<Node>,
    root: usize,
    /// The optimum value the paths achieve.
    pub value: f64,
}

impl SkipDecisionTree {
    /// Number of optimal subsets (root-to-sink paths), saturating.
    pub fn count(&self) -> u128 {
        let mut memo = vec![None; self.nodes.len()];
        self.count_from(self.root, &mut memo)
    }

    fn count_from(&self, id: usize, memo: &mut Vec<Option<u128>>) -> u128 {
        if let Some(c) = memo[id] {
            return c;
        }
        let mut total: u128 = 0;
        for alt in self.nodes[id].alts() {
            let sub = match alt.next {
                Some(next) => self.count_from(next, memo),
                None => 1,
            };
            total = total.saturating_add(sub);
        }
        memo[id] = Some(total);
        total
    }

    pub fn is_unique(&self) -> bool {
        self.count() == 1
    }

    /// All optimal subsets, each sorted ascending. The first decoded subset is
    /// the lexicographically smallest. `limit` caps the enumeration.
    pub fn decode_all(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.decode_from(Some(self.root), &mut prefix, &mut out, limit);
        out
    }

    fn decode_from(
        &self,
        id: Option<usize>,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let id = match id {
            Some(id) => id,
            None => {
                out.push(prefix.clone());
                return;
            }
        };
        for alt in self.nodes[id].alts() {
            let pushed = if let Some(idx) = alt.choose {
                prefix.push(idx);
                true
            } else {
                false
            };
            self.decode_from(alt.next, prefix, out, limit);
            if pushed {
                prefix.pop();
            }
        }
    }

    /// Lexicographically smallest optimal subset (alternatives are ordered so
    /// the first path is it).
    pub fn lex_smallest(&self) -> Vec<usize> {
        self.decode_all(1).remove(0)
    }
}

/// Solves one linear (chain) subproblem by a suffix DP and appends its
/// decision nodes to `nodes`, so decoding runs forward in increasing index
/// order. `idx` lists the actual weight indices of the chain entries.
/// Returns the chain optimum and the root node (None for an empty chain).
fn chain_dag(
    weights: &[f64],
    idx: &[usize],
    tol: f64,
    nodes: &mut Vec<Node>,
) -> (f64, Option<usize>) {
    let m = idx.len();
    // best[j] = optimum over chain entries j.. ; two sentinel zeros at end.
    let mut best = vec![0.0f64; m + 2];
    for j in (0..m).rev() {
        best[j] = best[j + 1].max(weights[idx[j]] + best[j + 2]);
    }
    // Nodes are built back to front, so successors already exist. Positions
    // at or past m are sinks (None).
    let mut memo: Vec<Option<usize>> = vec![None; m + 2];
    for j in (0..m).rev() {
        let mut alts = [None, None];
        let mut slot = 0;
        // "take" first so the lexicographically smallest subset decodes first.
        if (best[j] - (weights[idx[j]] + best[j + 2])).abs() <= tol {
            alts[slot] = Some(Alt { choose: Some(idx[j]), next: memo[j + 2] });
            slot += 1;
        }
        if (best[j] - best[j + 1]).abs() <= tol {
            alts[slot] = Some(Alt { choose: None, next: memo[j + 1] });
        }
        debug_assert!(alts[0].is_some());
        memo[j] = Some(nodes.len());
        nodes.push(Node { alts });
    }
    (best[0], memo[0])
}

/// Maximum-weight subset of the cyclic weight sequence with no two
/// cyclically consecutive indices chosen. Returns the optimum and the
/// decision DAG of all optimal subsets. Linear time in n.
pub fn max_nonconsecutive_cycle(t: &TriangleWeights) -> (f64, SkipDecisionTree) {
    let w = &t.weights;
    let n = w.len();
    assert!(n >= 5, "cycle needs at least 5 weights");
    let sum: f64 = w.iter().sum();
    let tol = 1e-12 * sum;

    let mut nodes = Vec::new();
    // Pass 1: weight 0 forced in, so 1 and n-1 are out; free chain 2..=n-2.
    let chain1: Vec<usize> = (2..=n - 2).collect();
    let (c1, root1) = chain_dag(w, &chain1, tol, &mut nodes);
    let v1 = w[0] + c1;
    // Pass 2: weight 0 forced out; free chain 1..=n-1.
    let chain2: Vec<usize> = (1..=n - 1).collect();
    let (v2, root2) = chain_dag(w, &chain2, tol, &mut nodes);

    let a = v1.max(v2);
    let mut alts = [None, None];
    let mut slot = 0;
    if (a - v1).abs() <= tol {
        alts[slot] = Some(Alt { choose: Some(0), next: root1 });
        slot += 1;
    }
    if (a - v2).abs() <= tol {
        alts[slot] = Some(Alt { choose: None, next: root2 });
    }
    let root = nodes.len();
    nodes.push(Node { alts });
    (a, SkipDecisionTree { nodes, root, value: a })
}

/// A continuum of non-vertex optima generated from a vertex-anchored optimum:
/// each slidable entry may replace its witness vertex by any point of the
/// named host side without changing the area.
#[derive(Clone, Debug)]
pub struct SlideFamily {
    pub base_witness: InscribedPolygon,
    pub slidable: Vec<SlideEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlideEntry {
    /// Position of the sliding vertex in the witness ring.
    pub ring_pos: usize,
    /// Host vertex index that slides.
    pub vertex: usize,
    /// Host side (i, i+1) the vertex slides along.
    pub side: usize,
}

#[derive(Clone, Debug)]
pub struct MinAreaResult {
    /// a(C): the minimum inscribed area.
    pub value: f64,
    /// Witness from the lexicographically smallest optimal cut set; all
    /// anchors are vertices of the host.
    pub one_witness: InscribedPolygon,
    /// The cut set producing `one_witness`.
    pub witness_cut_set: Vec<usize>,
    /// All optimal cut sets, as a decision DAG.
    pub all_vertex_optima: SkipDecisionTree,
    /// Continua of non-vertex optima, one family per vertex-anchored optimum
    /// that admits slides.
    pub slide_families: Vec<SlideFamily>,
}

/// Witness polygon for a cut set: the host vertices not cut, as vertex anchors.
pub fn witness_for_cut_set(c: &ConvexPolygon, cut: &[usize]) -> InscribedPolygon {
    let n = c.len();
    let mut in_cut = vec![false; n];
    for &i in cut {
        in_cut[i] = true;
    }
    let anchors: Vec<Anchor> =
        (0..n).filter(|&i| !in_cut[i]).map(Anchor::VertexOf).collect();
    InscribedPolygon::new(c, anchors).expect("independent cut set leaves an inscribed polygon")
}

/// Angle-based parallelism test between side (i, i+1) and diagonal
/// (i-1, i+2): |sin| of the angle between them at most `tol`.
fn side_parallel_to_diagonal(c: &ConvexPolygon, i: isize, tol: f64) -> bool {
    let side = c.vertex(i + 1) - c.vertex(i);
    let diag = c.vertex(i + 2) - c.vertex(i - 1);
    let sin = side.cross(diag).abs() / (side.norm() * diag.norm());
    sin <= tol
}

/// Cap on enumerating optima when deriving slide families.
const FAMILY_DECODE_LIMIT: usize = 4096;

/// Slide families per Remark-2 structure: a witness vertex q on side (i, i+1)
/// may slide exactly when its witness neighbours are p_{i-1} and p_{i+2} and
/// the side is parallel to that diagonal.
pub fn slide_families(c: &ConvexPolygon, tree: &SkipDecisionTree) -> Vec<SlideFamily> {
    let n = c.len();
    let parallel: Vec<bool> =
        (0..n as isize).map(|i| side_parallel_to_diagonal(c, i, 1e-9)).collect();
    if !parallel.iter().any(|&p| p) {
        return Vec::new();
    }
    let mut families = Vec::new();
    for cut in tree.decode_all(FAMILY_DECODE_LIMIT) {
        let mut in_cut = vec![false; n];
        for &i in &cut {
            in_cut[i] = true;
        }
        let witness_ring: Vec<usize> = (0..n).filter(|&i| !in_cut[i]).collect();
        let ring_pos_of = |v: usize| witness_ring.iter().position(|&w| w == v);
        let mut slidable = Vec::new();
        for side in 0..n {
            if !parallel[side] {
                continue;
            }
            let prev = (side + n - 1) % n;
            let next = (side + 1) % n;
            let next2 = (side + 2) % n;
            // q = p_side slides when corner side+1 is cut and p_{side-1} kept.
            if in_cut[next] && !in_cut[prev] {
                slidable.push(SlideEntry {
                    ring_pos: ring_pos_of(side).unwrap(),
                    vertex: side,
                    side,
                });
            }
            // q = p_{side+1} slides when corner side is cut and p_{side+2} kept.
            if in_cut[side] && !in_cut[next2] {
                slidable.push(SlideEntry {
                    ring_pos: ring_pos_of(next).unwrap(),
                    vertex: next,
                    side,
                });
            }
        }
        if !slidable.is_empty() {
            families.push(SlideFamily { base_witness: witness_for_cut_set(c, &cut), slidable });
        }
    }
    families
}

/// Solves the minimum-area inscribed polygon problem.
pub fn min_area_inscribed(c: &ConvexPolygon) -> MinAreaResult {
    let t = triangle_weights(c);
    let (a, tree) = max_nonconsecutive_cycle(&t);
    let cut = tree.lex_smallest();
    let one_witness = witness_for_cut_set(c, &cut);
    let families = slide_families(c, &tree);
    MinAreaResult {
        value: c.area() - a,
        one_witness,
        witness_cut_set: cut,
        all_vertex_optima: tree,
        slide_families: families,
    }
}
