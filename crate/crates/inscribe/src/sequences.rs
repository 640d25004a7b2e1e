//! Cyclic U/N contact sequences: extraction, admissibility, and the
//! constructive realizations that produce a host polygon whose extremal
//! inscribed polygon has a prescribed sequence.
//!
//! Position k of the sequence is U ("used") exactly when host vertex p_k is
//! a vertex of the inscribed polygon, N otherwise. A sequence is realizable
//! by the minimum-area problem iff it avoids cyclic NN and UUU, and by the
//! minimum-perimeter problem iff it avoids cyclic UUU.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geom::{Anchor, ConvexPolygon, InscribedPolygon, Point};
use crate::min_area::min_area_inscribed;
use crate::min_perimeter::min_perimeter_inscribed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("sequence length {0} is below the minimum of 5")]
    TooShort(usize),
    #[error("invalid symbol {0:?}; sequences are words over {{U, N}}")]
    BadSymbol(char),
}

/// Cyclic word over {U, N} of length >= 5. Equality (`==`) is
/// position-exact; use [`CyclicSequence::equals_rotation`] for
/// rotation-aware comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSequence {
    word: String,
}

impl CyclicSequence {
    pub fn new(word: impl Into<String>) -> Result<Self, SequenceError> {
        let word = word.into();
        if word.len() < 5 {
            return Err(SequenceError::TooShort(word.len()));
        }
        if let Some(c) = word.chars().find(|&c| c != 'U' && c != 'N') {
            return Err(SequenceError::BadSymbol(c));
        }
        Ok(CyclicSequence { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_str(&self) -> &str {
        &self.word
    }

    /// Symbol at cyclic position i.
    pub fn at(&self, i: isize) -> char {
        let n = self.word.len() as isize;
        self.word.as_bytes()[i.rem_euclid(n) as usize] as char
    }

    pub fn count_u(&self) -> usize {
        self.word.bytes().filter(|&b| b == b'U').count()
    }

    pub fn count_n(&self) -> usize {
        self.word.bytes().filter(|&b| b == b'N').count()
    }

    /// True when `other` is a rotation of `self`.
    pub fn equals_rotation(&self, other: &CyclicSequence) -> bool {
        self.word.len() == other.word.len()
            && format!("{}{}", self.word, self.word).contains(&other.word)
    }

    /// Ascending positions of every N.
    fn n_positions(&self) -> Vec<usize> {
        self.word.bytes().enumerate().filter(|&(_, b)| b == b'N').map(|(i, _)| i).collect()
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word)
    }
}

impl FromStr for CyclicSequence {
    type Err = SequenceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CyclicSequence::new(s)
    }
}

/// The contact sequence s(Q): U at position k iff p_k is a vertex of Q.
pub fn sequence_of(c: &ConvexPolygon, q: &InscribedPolygon) -> CyclicSequence {
    let mut word = vec![b'N'; c.len()];
    for anchor in q.anchors() {
        if let Anchor::VertexOf(k) = *anchor {
            word[k] = b'U';
        }
    }
    CyclicSequence::new(String::from_utf8(word).unwrap()).expect("host has >= 5 vertices")
}

/// True iff the cyclic word avoids NN and UUU: exactly the sequences of
/// unique minimum-area optima.
pub fn area_admissible(s: &CyclicSequence) -> bool {
    let n = s.len() as isize;
    (0..n).all(|i| {
        !(s.at(i) == 'N' && s.at(i + 1) == 'N')
            && !(s.at(i) == 'U' && s.at(i + 1) == 'U' && s.at(i + 2) == 'U')
    })
}

/// True iff the cyclic word avoids UUU: exactly the sequences of
/// minimum-perimeter witnesses.
pub fn perimeter_admissible(s: &CyclicSequence) -> bool {
    let n = s.len() as isize;
    (0..n).all(|i| !(s.at(i) == 'U' && s.at(i + 1) == 'U' && s.at(i + 2) == 'U'))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeAreaError {
    #[error("sequence is not area-admissible (contains cyclic NN or UUU)")]
    NotAdmissible,
    #[error("construction failed to verify even after shrinking eps {0} times")]
    EpsTooLarge(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizePerimError {
    #[error("sequence is not perimeter-admissible (contains cyclic UUU)")]
    NotAdmissible,
    #[error("construction failed to verify even after shrinking zeta/delta {0} times")]
    ParamsTooLarge(usize),
}

/// Default eps for [`realize_area_sequence`], relative to the unit
/// circumradius of the core polygon.
pub const DEFAULT_AREA_EPS: f64 = 1e-3;
/// Default gap between the paired points of a doubly-used side.
pub const DEFAULT_PERIM_ZETA: f64 = 1e-2;
/// Default outward bump height, relative to the unit circumradius.
pub const DEFAULT_PERIM_DELTA: f64 = 1e-4;

const MAX_HALVINGS: usize = 40;

/// The cyclic gaps (numbers of Us) between consecutive Ns, aligned with
/// `n_positions()`.
fn gaps(s: &CyclicSequence) -> (Vec<usize>, Vec<usize>) {
    let npos = s.n_positions();
    let n = s.len();
    let k = npos.len();
    let gaps = (0..k).map(|i| (npos[(i + 1) % k] + n - npos[i] - 1) % n).collect();
    (npos, gaps)
}

/// Host polygon for the area layout: core vertices at the N positions and
/// one or two near-flat bump vertices per gap, bumped outward by `h`.
fn area_layout(npos: &[usize], gap: &[usize], n: usize, h: f64) -> Vec<Point> {
    let k = npos.len();
    let core: Vec<Point> = if k >= 3 {
        (0..k)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / k as f64;
                Point::new(t.cos(), t.sin())
            })
            .collect()
    } else {
        vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0)]
    };
    let mut out = vec![Point::new(f64::NAN, f64::NAN); n];
    for i in 0..k {
        out[npos[i]] = core[i];
        let (a, b) = (core[i], core[(i + 1) % k]);
        let dir = (b - a).normalized();
        // Outward normal of the CCW core edge (for k = 2 the two "edges"
        // face opposite half-planes, which this formula also yields).
        let u = Point::new(dir.y, -dir.x);
        let m = a.lerp(b, 0.5);
        let w = h / 4.0;
        match gap[i] {
            1 => out[(npos[i] + 1) % n] = m + u.scale(h),
            2 => {
                out[(npos[i] + 1) % n] = m - dir.scale(w / 2.0) + u.scale(h);
                out[(npos[i] + 2) % n] = m + dir.scale(w / 2.0) + u.scale(h);
            }
            g => unreachable!("area-admissible gap must be 1 or 2, got {g}"),
        }
    }
    out
}

/// Realizes an area-admissible sequence: builds a host polygon whose unique
/// minimum-area inscribed polygon uses exactly the U-position vertices. The
/// construction is verified by running the solver; `eps` is halved until
/// verification passes.
pub fn realize_area_sequence(
    s: &CyclicSequence,
    eps: f64,
) -> Result<ConvexPolygon, RealizeAreaError> {
    assert!(eps > 0.0, "eps must be positive");
    if !area_admissible(s) {
        return Err(RealizeAreaError::NotAdmissible);
    }
    let (npos, gap) = gaps(s);
    let n = s.len();
    let mut h = eps;
    for _ in 0..=MAX_HALVINGS {
        if let Ok(c) = ConvexPolygon::new(area_layout(&npos, &gap, n, h)) {
            let res = min_area_inscribed(&c);
            let mut cut = res.witness_cut_set.clone();
            cut.sort_unstable();
            if res.all_vertex_optima.is_unique()
                && res.slide_families.is_empty()
                && cut == npos
            {
                return Ok(c);
            }
        }
        h *= 0.5;
    }
    Err(RealizeAreaError::EpsTooLarge(MAX_HALVINGS))
}

/// Host polygon for the perimeter layout with k >= 3 Ns: regular k-gon core
/// with per-side bumps by gap type (0: untouched; 1: midpoint bumped by
/// delta; 2: two points zeta apart bumped by delta).
fn perim_layout_core(npos: &[usize], gap: &[usize], n: usize, zeta: f64, delta: f64) -> Vec<Point> {
    let k = npos.len();
    let core: Vec<Point> = (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    let mut out = vec![Point::new(f64::NAN, f64::NAN); n];
    for i in 0..k {
        out[npos[i]] = core[i];
        let (a, b) = (core[i], core[(i + 1) % k]);
        let dir = (b - a).normalized();
        let u = Point::new(dir.y, -dir.x);
        let m = a.lerp(b, 0.5);
        match gap[i] {
            0 => {}
            1 => out[(npos[i] + 1) % n] = m + u.scale(delta),
            2 => {
                out[(npos[i] + 1) % n] = m - dir.scale(zeta / 2.0) + u.scale(delta);
                out[(npos[i] + 2) % n] = m + dir.scale(zeta / 2.0) + u.scale(delta);
            }
            g => unreachable!("perimeter-admissible gap must be <= 2, got {g}"),
        }
    }
    out
}

/// Perimeter layout for k = 2 Ns: a perturbed obtuse isosceles triangle.
/// The first gap sits along the flat base, the second around the apex.
fn perim_layout_two(npos: &[usize], gap: &[usize], n: usize, zeta: f64, delta: f64) -> Vec<Point> {
    const APEX_H: f64 = 0.6;
    let a = Point::new(-1.0, 0.0);
    let b = Point::new(1.0, 0.0);
    let mut out = vec![Point::new(f64::NAN, f64::NAN); n];
    out[npos[0]] = a;
    out[npos[1]] = b;
    match gap[0] {
        1 => out[(npos[0] + 1) % n] = Point::new(0.0, -delta),
        2 => {
            out[(npos[0] + 1) % n] = Point::new(-zeta / 2.0, -delta);
            out[(npos[0] + 2) % n] = Point::new(zeta / 2.0, -delta);
        }
        g => unreachable!("gap must be 1 or 2, got {g}"),
    }
    match gap[1] {
        1 => out[(npos[1] + 1) % n] = Point::new(0.0, APEX_H),
        2 => {
            out[(npos[1] + 1) % n] = Point::new(zeta / 2.0, APEX_H + delta);
            out[(npos[1] + 2) % n] = Point::new(-zeta / 2.0, APEX_H + delta);
        }
        g => unreachable!("gap must be 1 or 2, got {g}"),
    }
    out
}

/// Realizes a perimeter-admissible sequence: builds a host polygon whose
/// minimum-perimeter witness has exactly the given sequence. Verified by
/// running the solver; `zeta` and `delta` are halved until verification
/// passes.
pub fn realize_perimeter_sequence(
    s: &CyclicSequence,
    zeta: f64,
    delta: f64,
) -> Result<ConvexPolygon, RealizePerimError> {
    assert!(zeta > 0.0 && delta > 0.0, "zeta and delta must be positive");
    if !perimeter_admissible(s) {
        return Err(RealizePerimError::NotAdmissible);
    }
    let n = s.len();
    if s.count_n() == n {
        // All-N: realized by a regular polygon, no bumps needed.
        return Ok(crate::gen::regular_ngon(n, 1.0));
    }
    let (npos, gap) = gaps(s);
    let k = npos.len();
    let (mut zeta, mut delta) = (zeta, delta);
    for _ in 0..=MAX_HALVINGS {
        let layout = if k >= 3 {
            perim_layout_core(&npos, &gap, n, zeta, delta)
        } else {
            perim_layout_two(&npos, &gap, n, zeta, delta)
        };
        if let Ok(c) = ConvexPolygon::new(layout) {
            let res = min_perimeter_inscribed(&c);
            if sequence_of(&c, &res.witness) == *s {
                return Ok(c);
            }
        }
        zeta *= 0.5;
        delta *= 0.5;
    }
    Err(RealizePerimError::ParamsTooLarge(MAX_HALVINGS))
}
