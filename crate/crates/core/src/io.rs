//! JSON input documents and canonical JSON output.
//!
//! One document format covers every input. A matroid is given either by a
//! representation matrix or by a graph:
//!
//! ```json
//! {"field": "5", "rows": [[1, 0, 1, 1], [0, 1, 1, -1]], "labels": ["a", "b", "c", "d"]}
//! {"vertices": 6, "edges": [[1, 2], [1, 3], [2, 3], [2, 4], [3, 5], [4, 5], [4, 6], [5, 6], [1, 6]],
//!  "rotation": {"1": [8, 1, 0], "2": [0, 2, 3], "3": [1, 4, 2], "4": [5, 6, 3], "5": [7, 5, 4], "6": [6, 7, 8]}}
//! ```
//!
//! Matrix entries are integers, or coefficient lists (low degree first) for
//! elements of extension fields. Embedded cubic graphs carry either a
//! `rotation` (edge indices in cyclic order per vertex) or explicit `faces`
//! as vertex cycles; when both are present the faces are used.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::alphasum::TermTally;
use crate::error::{Error, Result};
use crate::fqlin::FqMatrix;
use crate::gf::{FieldCtx, FqElem};
use crate::matroid::RepresentedMatroid;
use crate::tait::CubicPlanarGraph;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coeffs(Vec<i64>),
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime(u32),
    Text(String),
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Rotation {
    List(Vec<Vec<usize>>),
    ByVertex(BTreeMap<String, Vec<usize>>),
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub field: Option<FieldSpec>,
    pub rows: Option<Vec<Vec<Entry>>>,
    pub labels: Option<Vec<String>>,
    pub vertices: Option<usize>,
    pub edges: Option<Vec<(usize, usize)>>,
    pub rotation: Option<Rotation>,
    pub faces: Option<Vec<Vec<usize>>>,
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// The field named in the document, if any.
    pub fn field(&self) -> Result<Option<FieldCtx>> {
        match &self.field {
            None => Ok(None),
            Some(FieldSpec::Prime(p)) => FieldCtx::new(*p, 1).map(Some),
            Some(FieldSpec::Text(s)) => FieldCtx::parse(s).map(Some),
        }
    }

    fn graph_parts(&self) -> Result<(usize, &[(usize, usize)])> {
        match (self.vertices, &self.edges) {
            (Some(n), Some(e)) => Ok((n, e)),
            _ => Err(Error::Parse("document needs `rows`, or `vertices` and `edges`".into())),
        }
    }

    /// The matroid of the matrix rows, or the cycle matroid of the graph.
    pub fn matroid(&self, field: Arc<FieldCtx>) -> Result<RepresentedMatroid> {
        if let Some(rows) = &self.rows {
            let width = rows.first().map_or(0, Vec::len);
            let mut data = Vec::with_capacity(rows.len() * width);
            for row in rows {
                if row.len() != width {
                    return Err(Error::Parse("matrix rows have different lengths".into()));
                }
                for e in row {
                    data.push(entry(&field, e)?);
                }
            }
            let raw = FqMatrix::from_vec(field, rows.len(), width, data)?;
            return match &self.labels {
                Some(l) => RepresentedMatroid::from_matrix(raw, l.clone()),
                None => RepresentedMatroid::from_matrix_unlabeled(raw),
            };
        }
        let (n, edges) = self.graph_parts()?;
        RepresentedMatroid::from_graph(field, n, edges)
    }

    pub fn cubic_graph(&self) -> Result<CubicPlanarGraph> {
        let (n, edges) = self.graph_parts()?;
        if let Some(faces) = &self.faces {
            return CubicPlanarGraph::from_faces(n, edges, faces);
        }
        let rotation = match &self.rotation {
            Some(Rotation::List(r)) => r.clone(),
            Some(Rotation::ByVertex(map)) => {
                let mut out = vec![Vec::new(); n];
                for (k, v) in map {
                    let idx: usize = k.parse().map_err(|_| Error::Parse(format!("rotation key `{k}`")))?;
                    if idx == 0 || idx > n {
                        return Err(Error::Parse(format!("rotation key `{k}` is not a vertex")));
                    }
                    out[idx - 1] = v.clone();
                }
                out
            }
            None => return Err(Error::Parse("graph needs a `rotation` or `faces`".into())),
        };
        CubicPlanarGraph::from_rotation(n, edges, &rotation)
    }
}

fn entry(field: &FieldCtx, e: &Entry) -> Result<FqElem> {
    match e {
        Entry::Int(n) => Ok(field.from_int(*n)),
        Entry::Coeffs(c) => field.from_coeffs(c),
    }
}

/// `"n"` for integers, `"num/den"` otherwise.
pub fn ratio_string(r: &Ratio<i128>) -> String {
    r.to_string()
}

/// `{"(r,+)": n, "(r,-)": n, "skipped_odd": n}`.
pub fn tally_json(t: &TermTally) -> Value {
    let mut map = serde_json::Map::new();
    for (&(r, s), &c) in &t.counts {
        let sign = match s {
            1 => "+",
            -1 => "-",
            _ => "0",
        };
        map.insert(format!("({r},{sign})"), json!(c));
    }
    map.insert("skipped_odd".into(), json!(t.skipped_odd));
    Value::Object(map)
}

/// Compact JSON with object keys in sorted order.
pub fn canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string(v).expect("values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphasum::AlphaTerm;
    use crate::instances;

    #[test]
    fn matrix_document() {
        let doc = InputDoc::parse(r#"{"field": "5", "rows": [[1, 0, 1, 1], [0, 1, 1, -1]]}"#).unwrap();
        let f = Arc::new(doc.field().unwrap().unwrap());
        assert_eq!(doc.matroid(f.clone()).unwrap(), instances::u24(f));
        let doc = InputDoc::parse(r#"{"field": 5, "rows": [[1]]}"#).unwrap();
        assert_eq!(doc.field().unwrap().unwrap().q(), 5);
    }

    #[test]
    fn extension_entries() {
        let doc = InputDoc::parse(r#"{"field": "3^2", "rows": [[[0, 1], 1]]}"#).unwrap();
        let f = Arc::new(doc.field().unwrap().unwrap());
        let m = doc.matroid(f.clone()).unwrap();
        assert_eq!(m.matrix().get(0, 0), f.from_coeffs(&[0, 1]).unwrap());
    }

    #[test]
    fn graph_documents() {
        let text = r#"{"vertices": 6,
            "edges": [[1,2],[1,3],[2,3],[2,4],[3,5],[4,5],[4,6],[5,6],[1,6]],
            "rotation": {"1": [8,1,0], "2": [0,2,3], "3": [1,4,2], "4": [5,6,3], "5": [7,5,4], "6": [6,7,8]}}"#;
        let doc = InputDoc::parse(text).unwrap();
        assert_eq!(doc.cubic_graph().unwrap(), instances::prism_graph_from_rotation());
        let f = Arc::new(FieldCtx::new(3, 1).unwrap());
        assert_eq!(doc.matroid(f.clone()).unwrap(), instances::prism_matroid(f));
        let faces = r#"{"vertices": 6,
            "edges": [[1,2],[1,3],[2,3],[2,4],[3,5],[4,5],[4,6],[5,6],[1,6]],
            "faces": [[1,2,3],[2,3,5,4],[4,5,6],[1,3,5,6],[1,2,4,6]]}"#;
        assert_eq!(InputDoc::parse(faces).unwrap().cubic_graph().unwrap(), instances::prism_graph());
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(InputDoc::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(InputDoc::parse(r#"{"colour": 1}"#), Err(Error::Parse(_))));
        let ragged = InputDoc::parse(r#"{"rows": [[1, 2], [1]]}"#).unwrap();
        let f = Arc::new(FieldCtx::new(3, 1).unwrap());
        assert!(matches!(ragged.matroid(f.clone()), Err(Error::Parse(_))));
        assert!(matches!(InputDoc::default().matroid(f), Err(Error::Parse(_))));
        let even = InputDoc::parse(r#"{"field": "2", "rows": [[1]]}"#).unwrap();
        assert!(matches!(even.field(), Err(Error::InvalidField(_))));
    }

    #[test]
    fn tally_output_is_canonical() {
        let mut t = TermTally::default();
        t.record(AlphaTerm { r_star: 4, sign: -1 });
        t.record(AlphaTerm { r_star: 2, sign: 1 });
        t.record(AlphaTerm { r_star: 3, sign: 1 });
        let s = canonical_string(&json!({"value": ratio_string(&Ratio::new(8, 3)), "tally": tally_json(&t)}));
        assert_eq!(s, r#"{"tally":{"(2,+)":1,"(4,-)":1,"skipped_odd":1},"value":"8/3"}"#);
        assert_eq!(ratio_string(&Ratio::from_integer(-4)), "-4");
    }
}
