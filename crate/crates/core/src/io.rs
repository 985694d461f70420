//! JSON files read and written by the command line tool.
//!
//! Every file carries `"schema": "onevis/1"`. All numbers are integers;
//! layout x coordinates are quarter units.

use serde::{Deserialize, Serialize};

use crate::embedding::OnePlanarEmbedding;
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, EdgeKind, Graph, VertexId};
use crate::layout::{CrossingRecord, EdgeSegment, VertexBar, VisibilityLayout};

pub const SCHEMA: &str = "onevis/1";
pub const UNIT: &str = "quarter";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: VertexId,
    pub v: VertexId,
    #[serde(default = "original")]
    pub kind: EdgeKind,
}

fn original() -> EdgeKind {
    EdgeKind::Original
}

fn schema() -> String {
    SCHEMA.to_string()
}

fn unit() -> String {
    UNIT.to_string()
}

/// A graph. Embedding files also parse as graph files since extra fields
/// are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default = "schema")]
    pub schema: String,
    pub n: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    #[serde(default = "schema")]
    pub schema: String,
    pub n: usize,
    pub edges: Vec<EdgeJson>,
    /// Darts leaving each vertex in ccw order; dart `2e` leaves `u`, `2e+1`
    /// leaves `v`.
    pub rotation: Vec<Vec<Dart>>,
    #[serde(default)]
    pub crossings: Vec<[EdgeId; 2]>,
    #[serde(default)]
    pub outer_dart: Option<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutFile {
    #[serde(default = "schema")]
    pub schema: String,
    #[serde(default = "unit")]
    pub unit: String,
    pub vertices: Vec<VertexBar>,
    pub edges: Vec<EdgeSegment>,
    #[serde(default)]
    pub crossings: Vec<CrossingRecord>,
}

fn check_schema(s: &str) -> Result<()> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(Error::Schema(s.to_string()))
    }
}

fn edges_json(g: &Graph) -> Vec<EdgeJson> {
    g.edges().iter().map(|e| EdgeJson { u: e.u, v: e.v, kind: e.kind }).collect()
}

fn build_graph(n: usize, edges: &[EdgeJson]) -> Result<Graph> {
    Graph::new(n, edges.iter().map(|e| (e.u, e.v, e.kind)))
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile { schema: schema(), n: g.n(), edges: edges_json(g) }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        check_schema(&self.schema)?;
        build_graph(self.n, &self.edges)
    }
}

impl EmbeddingFile {
    pub fn from_embedding(emb: &OnePlanarEmbedding) -> Self {
        EmbeddingFile {
            schema: schema(),
            n: emb.graph.n(),
            edges: edges_json(&emb.graph),
            rotation: emb.rotation.clone(),
            crossings: emb.crossings.clone(),
            outer_dart: emb.outer_dart,
        }
    }

    /// Builds the embedding without validating the rotation system.
    pub fn to_embedding(&self) -> Result<OnePlanarEmbedding> {
        check_schema(&self.schema)?;
        Ok(OnePlanarEmbedding {
            graph: build_graph(self.n, &self.edges)?,
            rotation: self.rotation.clone(),
            crossings: self.crossings.clone(),
            outer_dart: self.outer_dart,
        })
    }
}

impl LayoutFile {
    pub fn from_layout(l: &VisibilityLayout) -> Self {
        LayoutFile {
            schema: schema(),
            unit: unit(),
            vertices: l.vertices.clone(),
            edges: l.edges.clone(),
            crossings: l.crossings.clone(),
        }
    }

    pub fn to_layout(&self) -> Result<VisibilityLayout> {
        check_schema(&self.schema)?;
        if self.unit != UNIT {
            return Err(Error::Schema(format!("unit {}", self.unit)));
        }
        Ok(VisibilityLayout { vertices: self.vertices.clone(), edges: self.edges.clone(), crossings: self.crossings.clone() })
    }
}

fn to_string<T: Serialize>(x: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(x)?;
    s.push('\n');
    Ok(s)
}

pub fn graph_to_json(g: &Graph) -> Result<String> {
    to_string(&GraphFile::from_graph(g))
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    serde_json::from_str::<GraphFile>(s)?.to_graph()
}

pub fn embedding_to_json(emb: &OnePlanarEmbedding) -> Result<String> {
    to_string(&EmbeddingFile::from_embedding(emb))
}

pub fn embedding_from_json(s: &str) -> Result<OnePlanarEmbedding> {
    serde_json::from_str::<EmbeddingFile>(s)?.to_embedding()
}

pub fn layout_to_json(l: &VisibilityLayout) -> Result<String> {
    to_string(&LayoutFile::from_layout(l))
}

pub fn layout_from_json(s: &str) -> Result<VisibilityLayout> {
    serde_json::from_str::<LayoutFile>(s)?.to_layout()
}

/// Any serializable report, wrapped with the schema tag.
pub fn report_to_json<T: Serialize>(kind: &str, report: &T) -> Result<String> {
    let mut v = serde_json::to_value(report)?;
    if let serde_json::Value::Object(map) = &mut v {
        map.insert("schema".into(), SCHEMA.into());
        map.insert("report".into(), kind.into());
    }
    to_string(&v)
}

/// Rejects layouts whose ids cannot belong to `g`: the vertex bars must be
/// exactly `0..n`, and segments of graph edges must name that edge's ends.
pub fn check_ids(l: &VisibilityLayout, g: &Graph) -> Result<()> {
    let mut ids: Vec<VertexId> = l.vertices.iter().map(|b| b.id).collect();
    ids.sort_unstable();
    if ids != (0..g.n()).collect::<Vec<_>>() {
        return Err(Error::IdMismatch(format!("vertex ids are not 0..{}", g.n())));
    }
    for e in &l.edges {
        if e.u >= g.n() || e.v >= g.n() {
            return Err(Error::IdMismatch(format!("edge {} names vertex outside 0..{}", e.id, g.n())));
        }
        if e.id < g.m() && g.edge(e.id).key() != (e.u.min(e.v), e.u.max(e.v)) {
            return Err(Error::IdMismatch(format!("edge {} joins {} and {} in the graph", e.id, g.edge(e.id).u, g.edge(e.id).v)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_k7_minus_e, gen_random_1planar, gen_xq};
    use crate::pipeline::one_visibility;
    use proptest::prelude::*;

    #[test]
    fn graph_round_trip() {
        let g = gen_xq(8).unwrap().graph;
        let s = graph_to_json(&g).unwrap();
        assert!(s.contains("\"schema\": \"onevis/1\""));
        assert_eq!(graph_from_json(&s).unwrap(), g);
    }

    #[test]
    fn embedding_parses_as_graph() {
        let emb = gen_xq(6).unwrap();
        let s = embedding_to_json(&emb).unwrap();
        assert_eq!(embedding_from_json(&s).unwrap(), emb);
        assert_eq!(graph_from_json(&s).unwrap(), emb.graph);
    }

    #[test]
    fn layout_round_trip_and_ids() {
        let (g, l) = gen_k7_minus_e();
        let s = layout_to_json(&l).unwrap();
        assert!(s.contains("\"unit\": \"quarter\""));
        let back = layout_from_json(&s).unwrap();
        assert_eq!(back, l);
        check_ids(&back, &g).unwrap();
        let small = Graph::from_pairs(3, &[(0, 1)]).unwrap();
        assert!(matches!(check_ids(&back, &small), Err(Error::IdMismatch(_))));
    }

    #[test]
    fn wrong_schema_and_garbage() {
        let s = r#"{"schema":"onevis/2","n":2,"edges":[{"u":0,"v":1}]}"#;
        assert!(matches!(graph_from_json(s), Err(Error::Schema(_))));
        assert!(matches!(graph_from_json("{nope"), Err(Error::Json(_))));
        // kind and schema default
        let g = graph_from_json(r#"{"n":2,"edges":[{"u":0,"v":1}]}"#).unwrap();
        assert_eq!(g.m(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn pipeline_layouts_round_trip(n in 4usize..40, seed in 0u64..1000) {
            let emb = gen_random_1planar(n, seed).unwrap();
            let e = embedding_from_json(&embedding_to_json(&emb).unwrap()).unwrap();
            prop_assert_eq!(&e, &emb);
            let (l, _) = one_visibility(&emb).unwrap();
            let s = layout_to_json(&l).unwrap();
            prop_assert_eq!(layout_from_json(&s).unwrap(), l);
        }
    }
}
