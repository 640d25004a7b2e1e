//! JSON document formats for polygons, witnesses, and solver results.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Anchor, ConvexPolygon, InscribedPolygon, InscriptionError, Point, PolygonError};

/// On-disk polygon: a list of [x, y] pairs, optionally named.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolygonDocument {
    pub vertices: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid polygon: {0}")]
    Invalid(#[from] PolygonError),
    #[error("invalid witness: {0}")]
    InvalidWitness(#[from] InscriptionError),
    #[error("document has no {0} field")]
    MissingField(&'static str),
}

pub fn parse_polygon(text: &str) -> Result<ConvexPolygon, DocError> {
    let doc: PolygonDocument = serde_json::from_str(text)?;
    let pts = doc.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect();
    Ok(ConvexPolygon::new(pts)?)
}

pub fn polygon_to_document(c: &ConvexPolygon, name: Option<String>) -> PolygonDocument {
    PolygonDocument {
        vertices: c.vertices().iter().map(|p| [p.x, p.y]).collect(),
        name,
    }
}

/// Witness anchor in document form: {"vertex": i} or {"side": i, "tau": t}.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AnchorDoc {
    Vertex { vertex: usize },
    Side { side: usize, tau: f64 },
}

impl From<Anchor> for AnchorDoc {
    fn from(a: Anchor) -> Self {
        match a {
            Anchor::VertexOf(i) => AnchorDoc::Vertex { vertex: i },
            Anchor::OnSide { side, tau } => AnchorDoc::Side { side, tau },
        }
    }
}

impl From<AnchorDoc> for Anchor {
    fn from(a: AnchorDoc) -> Self {
        match a {
            AnchorDoc::Vertex { vertex } => Anchor::VertexOf(vertex),
            AnchorDoc::Side { side, tau } => Anchor::OnSide { side, tau },
        }
    }
}

pub fn witness_to_docs(q: &InscribedPolygon) -> Vec<AnchorDoc> {
    q.anchors().iter().map(|&a| AnchorDoc::from(a)).collect()
}

pub fn witness_from_docs(
    c: &ConvexPolygon,
    docs: &[AnchorDoc],
) -> Result<InscribedPolygon, DocError> {
    Ok(InscribedPolygon::new(c, docs.iter().map(|&d| Anchor::from(d)).collect())?)
}

/// Optional per-problem diagnostic payloads.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Diagnostics {
    /// Reflection-law residual per witness anchor (null for vertex anchors).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reflection_residuals: Option<Vec<Option<f64>>>,
    /// [lo, hi] of the all-interior-anchor family parameter, when one exists.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family_interval: Option<[f64; 2]>,
    /// Number of vertex-anchored optima (minimum area).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optima_count: Option<u128>,
    /// Number of slide families (minimum area).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slide_families: Option<usize>,
    /// Whether the diameter value is attained (circumscribed diameter).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resolved: Option<bool>,
    /// Hull-index pairs achieving the diameter.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diameter_pairs: Option<Vec<(usize, usize)>>,
}

/// Solver result as emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResultDocument {
    pub kind: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<AnchorDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sequence: Option<String>,
    #[serde(default)]
    pub diagnostics: Diagnostics,
    pub timing_ns: u128,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::regular_ngon;

    #[test]
    fn parse_regular_pentagon() {
        let text = r#"{"vertices": [[1,0],[0.309,0.951],[-0.809,0.588],[-0.809,-0.588],[0.309,-0.951]]}"#;
        let c = parse_polygon(text).unwrap();
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn parse_rejects_small_and_malformed() {
        let square = r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;
        assert!(matches!(
            parse_polygon(square),
            Err(DocError::Invalid(PolygonError::TooFewVertices(4)))
        ));
        assert!(matches!(parse_polygon("{not json"), Err(DocError::Syntax(_))));
    }

    #[test]
    fn polygon_round_trip_is_exact() {
        let c = regular_ngon(7, 1.0);
        let doc = polygon_to_document(&c, Some("heptagon".into()));
        let text = serde_json::to_string(&doc).unwrap();
        let c2 = parse_polygon(&text).unwrap();
        // JSON float serialization is shortest-round-trip: bit-exact.
        for (a, b) in c.vertices().iter().zip(c2.vertices()) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
    }

    #[test]
    fn anchor_docs_round_trip() {
        let docs = vec![
            AnchorDoc::Vertex { vertex: 3 },
            AnchorDoc::Side { side: 4, tau: 0.123456789012345678 },
        ];
        let text = serde_json::to_string(&docs).unwrap();
        let back: Vec<AnchorDoc> = serde_json::from_str(&text).unwrap();
        assert_eq!(docs, back);
    }

    #[test]
    fn result_document_round_trip() {
        let doc = ResultDocument {
            kind: "min-perimeter".into(),
            value: 4.755282581475768,
            witness: Some(vec![AnchorDoc::Side { side: 0, tau: 0.5 }]),
            sequence: Some("NNNNN".into()),
            diagnostics: Diagnostics {
                reflection_residuals: Some(vec![Some(1e-12), None]),
                ..Default::default()
            },
            timing_ns: 12345,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc, back);
    }
}
