use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Edge, End, HalfEdge, Skeleton, Vertex};
use crate::error::{Error, Result};

/// On-disk skeleton description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    pub halfedges: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub id: String,
    pub tail: String,
    pub head: String,
    #[serde(default)]
    pub rot2: i64,
}

impl SkeletonFile {
    pub fn from_names(vertices: &[(&str, &[&str])], edges: &[(&str, &str, &str)]) -> Self {
        SkeletonFile {
            vertices: vertices
                .iter()
                .map(|(id, hs)| VertexEntry { id: id.to_string(), halfedges: hs.iter().map(|h| h.to_string()).collect() })
                .collect(),
            edges: edges
                .iter()
                .map(|(id, t, h)| EdgeEntry { id: id.to_string(), tail: t.to_string(), head: h.to_string(), rot2: 0 })
                .collect(),
        }
    }

    /// Resolves names and validates.
    pub fn to_skeleton(&self) -> Result<Skeleton> {
        let mut he_index: HashMap<&str, HalfEdge> = HashMap::new();
        let mut edge_ids = HashMap::new();
        for (e, entry) in self.edges.iter().enumerate() {
            if edge_ids.insert(entry.id.as_str(), e).is_some() {
                return Err(Error::parse(0, format!("duplicate edge id `{}`", entry.id)));
            }
            for (name, end) in [(&entry.tail, End::Tail), (&entry.head, End::Head)] {
                if he_index.insert(name.as_str(), HalfEdge { edge: e, end }).is_some() {
                    return Err(Error::parse(0, format!("duplicate half-edge id `{name}`")));
                }
            }
        }
        let mut vertex_ids = HashMap::new();
        let mut seen = HashMap::new();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if vertex_ids.insert(v.id.as_str(), ()).is_some() {
                return Err(Error::parse(0, format!("duplicate vertex id `{}`", v.id)));
            }
            let mut list = Vec::with_capacity(v.halfedges.len());
            for name in &v.halfedges {
                let he = *he_index
                    .get(name.as_str())
                    .ok_or_else(|| Error::MalformedSkeleton(format!("vertex {} lists unknown half-edge `{name}`", v.id)))?;
                if seen.insert(name.as_str(), ()).is_some() {
                    return Err(Error::parse(0, format!("duplicate half-edge id `{name}`")));
                }
                list.push(he);
            }
            vertices.push(Vertex { id: v.id.clone(), halfedges: list });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: e.id.clone(), tail_name: e.tail.clone(), head_name: e.head.clone(), rot2: e.rot2 })
            .collect();
        Skeleton::new(vertices, edges)
    }

    pub fn from_skeleton(sk: &Skeleton) -> Self {
        SkeletonFile {
            vertices: sk
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    halfedges: v.halfedges.iter().map(|h| sk.halfedge_name(*h).to_string()).collect(),
                })
                .collect(),
            edges: sk
                .edges()
                .iter()
                .map(|e| EdgeEntry { id: e.id.clone(), tail: e.tail_name.clone(), head: e.head_name.clone(), rot2: e.rot2 })
                .collect(),
        }
    }
}

/// Parses the JSON skeleton format; syntax errors report a byte offset.
pub fn parse_skeleton(text: &str) -> Result<Skeleton> {
    let file: SkeletonFile = serde_json::from_str(text).map_err(|e| Error::parse(byte_offset(text, e.line(), e.column()), e.to_string()))?;
    file.to_skeleton()
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    start + column.saturating_sub(1)
}

impl Skeleton {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SkeletonFile::from_skeleton(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = r#"{"vertices":[{"id":"v0","halfedges":["a+","b+","a-","b-"]}],
        "edges":[{"id":"a","tail":"a+","head":"a-","rot2":1},{"id":"b","tail":"b+","head":"b-"}]}"#;

    #[test]
    fn parses_torus_with_default_rotation() {
        let sk = parse_skeleton(TORUS).unwrap();
        assert_eq!(sk.rot2(0), 1);
        assert_eq!(sk.rot2(1), 0);
        assert_eq!(sk.info().unwrap().genus, 1);
    }

    #[test]
    fn round_trip() {
        let sk = parse_skeleton(TORUS).unwrap();
        assert_eq!(parse_skeleton(&sk.to_json()).unwrap(), sk);
    }

    #[test]
    fn duplicate_halfedge_is_parse_error() {
        let bad = TORUS.replace(r#""tail":"b+""#, r#""tail":"a+""#);
        assert!(matches!(parse_skeleton(&bad), Err(Error::ParseError { .. })));
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_skeleton("{\"vertices\": [,]}") {
            Err(Error::ParseError { pos, .. }) => assert!(pos > 0),
            other => panic!("{other:?}"),
        }
    }
}
