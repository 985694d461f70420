//! 1-planar embeddings (rotation system plus crossing pairs) and their
//! planarization.
//!
//! A crossing pair `[e1, e2]` is oriented: counter-clockwise around the
//! crossing point the four ends appear as `e1.u, e2.u, e1.v, e2.v`. Writing
//! the pair as `[e2, e1]` mirrors the crossing.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, EdgeKind, Graph, VertexId};
use crate::plane::{Faces, PlaneMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePlanarEmbedding {
    pub graph: Graph,
    /// Darts leaving each vertex in ccw order.
    pub rotation: Vec<Vec<Dart>>,
    pub crossings: Vec<[EdgeId; 2]>,
    /// A dart whose left face is the outer face; `None` picks the largest face.
    pub outer_dart: Option<Dart>,
}

/// A single problem found by [`validate_embedding`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("rotation lists {found} vertices, graph has {expected}")]
    RotationSize { found: usize, expected: usize },
    #[error("dart {dart} listed at vertex {vertex} does not exist")]
    DartOutOfRange { vertex: VertexId, dart: Dart },
    #[error("dart {dart} listed at vertex {vertex} does not leave it")]
    DartWrongVertex { vertex: VertexId, dart: Dart },
    #[error("dart {0} listed twice")]
    DuplicateDart(Dart),
    #[error("dart {0} missing from rotation")]
    MissingDart(Dart),
    #[error("crossing names unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} crosses itself")]
    SelfCrossing(EdgeId),
    #[error("edge crossed twice: {0}")]
    EdgeCrossedTwice(EdgeId),
    #[error("adjacent edges cross: {0} and {1}")]
    AdjacentEdgesCross(EdgeId, EdgeId),
    #[error("planarization is not a sphere embedding: {0}")]
    NotSpherical(String),
    #[error("outer dart {0} does not exist")]
    OuterDartInvalid(Dart),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Informational: the pipeline splits graphs that are not 2-connected.
    pub biconnected: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self) -> Result<()> {
        if self.violations.is_empty() {
            return Ok(());
        }
        let msg: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        Err(Error::InvalidEmbedding(msg.join("; ")))
    }
}

pub fn validate_embedding(emb: &OnePlanarEmbedding) -> ValidationReport {
    let g = &emb.graph;
    let mut violations = Vec::new();
    if emb.rotation.len() != g.n() {
        violations.push(Violation::RotationSize { found: emb.rotation.len(), expected: g.n() });
    }
    let mut seen = vec![false; 2 * g.m()];
    for (v, darts) in emb.rotation.iter().enumerate() {
        for &d in darts {
            if d.0 >= seen.len() {
                violations.push(Violation::DartOutOfRange { vertex: v, dart: d });
            } else if g.tail(d) != v {
                violations.push(Violation::DartWrongVertex { vertex: v, dart: d });
            } else if std::mem::replace(&mut seen[d.0], true) {
                violations.push(Violation::DuplicateDart(d));
            }
        }
    }
    if emb.rotation.len() == g.n() {
        violations.extend((0..seen.len()).filter(|&i| !seen[i]).map(|i| Violation::MissingDart(Dart(i))));
    }
    let mut crossed = vec![false; g.m()];
    for &[a, b] in &emb.crossings {
        if a >= g.m() || b >= g.m() {
            violations.extend([a, b].into_iter().filter(|&e| e >= g.m()).map(Violation::UnknownEdge));
            continue;
        }
        if a == b {
            violations.push(Violation::SelfCrossing(a));
            continue;
        }
        for e in [a, b] {
            if std::mem::replace(&mut crossed[e], true) {
                violations.push(Violation::EdgeCrossedTwice(e));
            }
        }
        let (ea, eb) = (g.edge(a), g.edge(b));
        if ea.has_endpoint(eb.u) || ea.has_endpoint(eb.v) {
            violations.push(Violation::AdjacentEdgesCross(a, b));
        }
    }
    if let Some(d) = emb.outer_dart {
        if d.0 >= 2 * g.m() {
            violations.push(Violation::OuterDartInvalid(d));
        }
    }
    if violations.is_empty() {
        let map = build_map(emb).expect("rotation already checked");
        if let Err(e) = map.map.check_euler() {
            violations.push(Violation::NotSpherical(e.to_string()));
        }
    }
    ValidationReport { violations, biconnected: g.is_biconnected() }
}

/// Plane graph of an embedding with one degree-4 dummy vertex per crossing.
///
/// Plane edge `e < m` is the whole of graph edge `e`, or its half at `u` when
/// `e` is crossed. The half at `v` of a crossed edge is a separate plane edge
/// oriented from `v` to the dummy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planarization {
    pub map: PlaneMap,
    /// Original vertices are `0..n_original`; dummy `n_original + i` is crossing `i`.
    pub n_original: usize,
    pub edges: Vec<PlaneEdgeRecord>,
    /// Owning graph edge of every plane edge.
    pub owner: Vec<EdgeId>,
    pub crossings: Vec<[EdgeId; 2]>,
    /// Dart with the outer face on its left.
    pub outer: Dart,
}

/// Graph-level view of an edge inside a planarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneEdgeRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: EdgeKind,
    pub live: bool,
    /// Plane edge holding the whole edge, or its half at `u`.
    pub first: EdgeId,
    /// Plane edge holding the half at `v` for crossed edges.
    pub second: Option<EdgeId>,
    pub crossing: Option<usize>,
}

impl PlaneEdgeRecord {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn has_endpoint(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

struct Built {
    map: PlaneMap,
    edges: Vec<PlaneEdgeRecord>,
    owner: Vec<EdgeId>,
}

fn build_map(emb: &OnePlanarEmbedding) -> Result<Built> {
    let g = &emb.graph;
    let (n, m, k) = (g.n(), g.m(), emb.crossings.len());
    let mut edges: Vec<PlaneEdgeRecord> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, ed)| PlaneEdgeRecord { u: ed.u, v: ed.v, kind: ed.kind, live: true, first: e, second: None, crossing: None })
        .collect();
    let mut owner: Vec<EdgeId> = (0..m).collect();
    for (i, &[a, b]) in emb.crossings.iter().enumerate() {
        for (j, e) in [a, b].into_iter().enumerate() {
            edges[e].second = Some(m + 2 * i + j);
            edges[e].crossing = Some(i);
            owner.push(e);
        }
    }
    let mut rotation: Vec<Vec<Dart>> = emb
        .rotation
        .iter()
        .map(|r| {
            r.iter()
                .map(|&d| match edges[d.edge()].second {
                    Some(h) if d.from_v() => Dart(2 * h),
                    _ => d,
                })
                .collect()
        })
        .collect();
    for &[a, b] in &emb.crossings {
        let (ha, hb) = (edges[a].second.unwrap(), edges[b].second.unwrap());
        rotation.push(vec![Dart(2 * a + 1), Dart(2 * b + 1), Dart(2 * ha + 1), Dart(2 * hb + 1)]);
    }
    debug_assert_eq!(rotation.len(), n + k);
    let map = PlaneMap::from_rotation(m + 2 * k, &rotation)?;
    Ok(Built { map, edges, owner })
}

/// Builds the planarization, validating the embedding first.
pub fn planarize(emb: &OnePlanarEmbedding) -> Result<Planarization> {
    validate_embedding(emb).into_result()?;
    let Built { map, edges, owner } = build_map(emb)?;
    let mut p = Planarization {
        map,
        n_original: emb.graph.n(),
        edges,
        owner,
        crossings: emb.crossings.clone(),
        outer: Dart(0),
    };
    p.outer = match emb.outer_dart {
        Some(d) => p.plane_dart(d),
        None => p.largest_face_dart(),
    };
    Ok(p)
}

/// Faces of a plane map, checked against Euler's formula.
pub fn faces(map: &PlaneMap) -> Result<Faces> {
    map.check_euler()?;
    Ok(map.faces())
}

impl Planarization {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_dummy(&self, v: VertexId) -> bool {
        v >= self.n_original
    }

    /// Dummy vertex of crossing `i`.
    pub fn dummy(&self, i: usize) -> VertexId {
        self.n_original + i
    }

    pub fn faces(&self) -> Faces {
        self.map.faces()
    }

    pub fn outer_face(&self, faces: &Faces) -> usize {
        faces.face_left(self.outer)
    }

    /// Plane dart leaving the tail of graph dart `d`.
    pub fn plane_dart(&self, d: Dart) -> Dart {
        let rec = &self.edges[d.edge()];
        let tail = if d.from_v() { rec.v } else { rec.u };
        let pe = match rec.second {
            Some(h) if d.from_v() => h,
            _ => rec.first,
        };
        if self.map.origin(Dart(2 * pe)) == tail {
            Dart(2 * pe)
        } else {
            Dart(2 * pe + 1)
        }
    }

    /// Graph dart for a plane dart leaving an original vertex.
    pub fn graph_dart(&self, pd: Dart) -> Option<Dart> {
        let x = self.map.origin(pd);
        if self.is_dummy(x) {
            return None;
        }
        let e = self.owner[pd.edge()];
        Some(Dart::new(e, self.edges[e].u != x))
    }

    /// Endpoints recovered from the plane structure by walking through dummies.
    pub fn contracted_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let rec = &self.edges[e];
        let real_end = |pe: EdgeId| {
            let a = self.map.origin(Dart(2 * pe));
            if self.is_dummy(a) {
                self.map.origin(Dart(2 * pe + 1))
            } else {
                a
            }
        };
        match rec.second {
            Some(h) => (real_end(rec.first), real_end(h)),
            None => (self.map.origin(Dart(2 * rec.first)), self.map.origin(Dart(2 * rec.first + 1))),
        }
    }

    /// Builds a planarization from a plane map whose vertices from
    /// `n_original` on are degree-4 crossing points. All edges get `kind`.
    pub fn from_plane_map(map: PlaneMap, n_original: usize, kind: EdgeKind, outer: Dart) -> Result<Self> {
        let mut owner = vec![usize::MAX; map.edge_slots()];
        let mut edges = Vec::new();
        let mut crossings = Vec::new();
        for pv in n_original..map.vertex_count() {
            let r = map.darts_around(pv);
            if r.len() != 4 {
                return Err(Error::InvalidEmbedding(format!("crossing vertex {pv} has degree {}", r.len())));
            }
            let i = crossings.len();
            let mut pair = [0; 2];
            for (j, (a, c)) in [(r[0], r[2]), (r[1], r[3])].into_iter().enumerate() {
                let id = edges.len();
                edges.push(PlaneEdgeRecord {
                    u: map.head(a),
                    v: map.head(c),
                    kind,
                    live: true,
                    first: a.edge(),
                    second: Some(c.edge()),
                    crossing: Some(i),
                });
                owner[a.edge()] = id;
                owner[c.edge()] = id;
                pair[j] = id;
            }
            crossings.push(pair);
        }
        for e in map.live_edges() {
            if owner[e] == usize::MAX {
                owner[e] = edges.len();
                let (u, v) = (map.origin(Dart(2 * e)), map.origin(Dart(2 * e + 1)));
                if u >= n_original || v >= n_original {
                    return Err(Error::InvalidEmbedding(format!("plane edge {e} joins two crossing points")));
                }
                edges.push(PlaneEdgeRecord { u, v, kind, live: true, first: e, second: None, crossing: None });
            }
        }
        Ok(Planarization { map, n_original, edges, owner, crossings, outer })
    }

    pub fn is_crossed(&self, e: EdgeId) -> bool {
        self.edges[e].crossing.is_some()
    }

    pub fn largest_face_dart(&self) -> Dart {
        let faces = self.map.faces();
        let best = (0..faces.len()).max_by_key(|&f| (faces.cycles[f].len(), std::cmp::Reverse(f)));
        best.map_or(Dart(0), |f| faces.cycles[f][0])
    }

    /// Adds a new uncrossed graph edge as a chord; see [`PlaneMap::add_chord`].
    pub fn add_chord(&mut self, x_out: Dart, z_out: Dart, kind: EdgeKind) -> Dart {
        let nd = self.map.add_chord(x_out, z_out);
        let id = self.edges.len();
        self.edges.push(PlaneEdgeRecord {
            u: self.map.origin(x_out),
            v: self.map.origin(z_out),
            kind,
            live: true,
            first: nd.edge(),
            second: None,
            crossing: None,
        });
        debug_assert_eq!(self.owner.len(), nd.edge());
        self.owner.push(id);
        nd
    }

    /// Removes an uncrossed helper edge.
    pub fn remove_edge(&mut self, e: EdgeId) {
        let rec = &mut self.edges[e];
        assert!(rec.crossing.is_none(), "cannot remove crossed edge {e}");
        rec.live = false;
        let pe = rec.first;
        if self.outer.edge() == pe {
            self.outer = self.map.face_next(self.outer);
            if self.outer.edge() == pe {
                self.outer = self.map.face_next(self.outer.twin());
            }
        }
        self.map.remove_edge(pe);
    }

    /// Whether an uncrossed live edge joins `x` and `y`.
    pub fn plane_adjacent(&self, x: VertexId, y: VertexId) -> bool {
        self.map.darts_around(x).into_iter().any(|d| self.map.head(d) == y)
    }

    /// Converts back to an embedding, renumbering live edges in order.
    pub fn to_embedding(&self) -> Result<OnePlanarEmbedding> {
        let mut new_id = vec![usize::MAX; self.edges.len()];
        let mut list = Vec::new();
        for (e, rec) in self.edges.iter().enumerate() {
            if rec.live {
                new_id[e] = list.len();
                list.push((rec.u, rec.v, rec.kind));
            }
        }
        let graph = Graph::new(self.n_original, list)?;
        let convert = |pd: Dart| -> Dart {
            let d = self.graph_dart(pd).expect("dart leaves an original vertex");
            Dart::new(new_id[d.edge()], d.from_v())
        };
        let rotation = (0..self.n_original)
            .map(|v| {
                let mut r: Vec<Dart> = self.map.darts_around(v).into_iter().map(convert).collect();
                if let Some(i) = r.iter().enumerate().min_by_key(|(_, d)| d.0).map(|(i, _)| i) {
                    r.rotate_left(i);
                }
                r
            })
            .collect();
        let crossings = self.crossings.iter().map(|&[a, b]| [new_id[a], new_id[b]]).collect();
        let outer = self
            .map
            .face_cycle(self.outer)
            .into_iter()
            .find(|&d| !self.is_dummy(self.map.origin(d)))
            .map(convert);
        Ok(OnePlanarEmbedding { graph, rotation, crossings, outer_dart: outer })
    }

    /// Number of original vertices and crossing points on a face cycle.
    pub fn face_profile(&self, cycle: &[Dart]) -> FaceProfile {
        let dummies = cycle.iter().filter(|&&d| self.is_dummy(self.map.origin(d))).count();
        FaceProfile { half_edges: cycle.len(), vertices: cycle.len() - dummies, crossing_points: dummies }
    }

    /// Face-size statistics for every face.
    pub fn face_profiles(&self) -> Vec<FaceProfile> {
        self.faces().cycles.iter().map(|c| self.face_profile(c)).collect()
    }

    /// Original vertex set of a face.
    pub fn face_vertices(&self, cycle: &[Dart]) -> BTreeSet<VertexId> {
        cycle.iter().map(|&d| self.map.origin(d)).filter(|&v| !self.is_dummy(v)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceProfile {
    pub half_edges: usize,
    pub vertices: usize,
    pub crossing_points: usize,
}

/// Builds a rotation system from integer coordinates by angle sorting.
/// Each crossing is given with its crossing point; the crossing edges are
/// drawn as two straight pieces through it. Pair orientation is derived
/// from the drawing.
pub fn embedding_from_coordinates(
    graph: Graph,
    coords: &[(i64, i64)],
    crossings: &[([EdgeId; 2], (i64, i64))],
    outer_dart: Option<Dart>,
) -> OnePlanarEmbedding {
    let mut target: Vec<(i64, i64)> = (0..2 * graph.m()).map(|d| coords[graph.head(Dart(d))]).collect();
    let mut oriented = Vec::new();
    for &([a, b], p) in crossings {
        for e in [a, b] {
            target[2 * e] = p;
            target[2 * e + 1] = p;
        }
        let dir = |v: VertexId| (coords[v].0 - p.0, coords[v].1 - p.1);
        let (ea, eb) = (graph.edge(a), graph.edge(b));
        let mut ends = [(dir(ea.u), 0), (dir(eb.u), 1), (dir(ea.v), 2), (dir(eb.v), 3)];
        ends.sort_by(|x, y| angle_cmp(x.0, y.0));
        let pos = ends.iter().position(|x| x.1 == 0).unwrap();
        oriented.push(if ends[(pos + 1) % 4].1 == 1 { [a, b] } else { [b, a] });
    }
    let rotation = (0..graph.n())
        .map(|v| {
            let c = coords[v];
            let mut darts: Vec<Dart> =
                graph.incident(v).iter().map(|&e| Dart::new(e, graph.edge(e).v == v)).collect();
            darts.sort_by(|&x, &y| {
                let (tx, ty) = (target[x.0], target[y.0]);
                angle_cmp((tx.0 - c.0, tx.1 - c.1), (ty.0 - c.0, ty.1 - c.1))
            });
            darts
        })
        .collect();
    OnePlanarEmbedding { graph, rotation, crossings: oriented, outer_dart }
}

/// Exact comparison of direction angles in `[0, 2π)`.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

/// Face structure of an embedding, as printed by `onevis stats`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingStats {
    pub n: usize,
    pub m: usize,
    /// Crossing pairs.
    pub crossings: usize,
    /// Edges taking part in a crossing.
    pub crossed_edges: usize,
    pub faces: usize,
    /// Faces of the planarization by number of half-edges.
    pub face_sizes: BTreeMap<usize, usize>,
    /// Crossing points on each face of the planarization.
    pub crossing_points: Vec<usize>,
    pub max_half_edges: usize,
    pub max_vertices: usize,
    pub max_crossing_points: usize,
    /// Whether the ends of every crossing pair span a K4.
    pub crossings_span_k4: bool,
    /// The face bounds that hold for planar-maximal embeddings.
    pub planar_maximal_bounds: bool,
}

pub fn embedding_stats(emb: &OnePlanarEmbedding) -> Result<EmbeddingStats> {
    let p = planarize(emb)?;
    let profiles = p.face_profiles();
    let mut face_sizes = BTreeMap::new();
    for f in &profiles {
        *face_sizes.entry(f.half_edges).or_insert(0) += 1;
    }
    let g = &emb.graph;
    let crossings_span_k4 = emb.crossings.iter().all(|&[a, b]| {
        let (ea, eb) = (g.edge(a), g.edge(b));
        let ends = [ea.u, eb.u, ea.v, eb.v];
        (0..4).all(|i| (i + 1..4).all(|j| ends[i] != ends[j] && !g.edges_between(ends[i], ends[j]).is_empty()))
    });
    let max = |f: fn(&FaceProfile) -> usize| profiles.iter().map(f).max().unwrap_or(0);
    let (max_half_edges, max_vertices, max_crossing_points) =
        (max(|f| f.half_edges), max(|f| f.vertices), max(|f| f.crossing_points));
    Ok(EmbeddingStats {
        n: g.n(),
        m: g.m(),
        crossings: emb.crossings.len(),
        crossed_edges: 2 * emb.crossings.len(),
        faces: profiles.len(),
        face_sizes,
        crossing_points: profiles.iter().map(|f| f.crossing_points).collect(),
        max_half_edges,
        max_vertices,
        max_crossing_points,
        crossings_span_k4,
        planar_maximal_bounds: max_half_edges <= 8 && max_vertices <= 4 && max_crossing_points <= 4 && crossings_span_k4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_plane() -> OnePlanarEmbedding {
        let g = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap();
        embedding_from_coordinates(g, &[(0, 0), (4, 0), (0, 4), (1, 1)], &[], None)
    }

    /// K5 with vertices on a pentagon-ish layout and one crossing.
    fn k5_one_crossing() -> OnePlanarEmbedding {
        // 0,1,2 outer triangle; 3,4 inside; edge (0,4) crosses (1,3)
        let coords = [(0, 0), (12, 0), (6, 12), (4, 4), (8, 4)];
        let pairs = [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let g = Graph::from_pairs(5, &pairs).unwrap();
        // segments (0,0)-(8,4) and (12,0)-(4,4) meet at (6,3)
        embedding_from_coordinates(g, &coords, &[([4, 5], (6, 3))], None)
    }

    #[test]
    fn angle_order() {
        use std::cmp::Ordering::*;
        assert_eq!(angle_cmp((1, 0), (0, 1)), Less);
        assert_eq!(angle_cmp((-1, 0), (0, -1)), Less);
        assert_eq!(angle_cmp((0, -1), (1, 0)), Greater);
        assert_eq!(angle_cmp((1, 1), (2, 2)), Equal);
    }

    #[test]
    fn k4_planarization() {
        let p = planarize(&k4_plane()).unwrap();
        let f = faces(&p.map).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(p.crossing_count(), 0);
    }

    #[test]
    fn k5_one_crossing_counts() {
        let emb = k5_one_crossing();
        assert!(validate_embedding(&emb).is_valid(), "{:?}", validate_embedding(&emb));
        let p = planarize(&emb).unwrap();
        assert_eq!(p.map.vertex_count(), 6);
        assert_eq!(p.map.live_edge_count(), 12);
        assert_eq!(p.faces().len(), 8);
        assert_eq!(p.map.degree(5), 4);
        for e in 0..emb.graph.m() {
            let (u, v) = p.contracted_endpoints(e);
            assert_eq!((u, v), (emb.graph.edge(e).u, emb.graph.edge(e).v));
        }
    }

    #[test]
    fn mirrored_crossing_is_rejected() {
        let mut emb = k5_one_crossing();
        emb.crossings[0].swap(0, 1);
        let r = validate_embedding(&emb);
        assert!(matches!(r.violations[..], [Violation::NotSpherical(_)]));
    }

    #[test]
    fn crossing_rules() {
        let mut emb = k5_one_crossing();
        emb.crossings.push([4, 7]);
        let r = validate_embedding(&emb);
        assert!(r.violations.contains(&Violation::EdgeCrossedTwice(4)));
        assert!(r.violations.iter().any(|v| v.to_string().starts_with("edge crossed twice")));

        let mut emb = k5_one_crossing();
        emb.crossings = vec![[3, 4]];
        let r = validate_embedding(&emb);
        assert!(r.violations.contains(&Violation::AdjacentEdgesCross(3, 4)));
        assert!(r.violations[0].to_string().starts_with("adjacent edges cross"));
    }

    #[test]
    fn rotation_defects() {
        let mut emb = k4_plane();
        let d = emb.rotation[0].pop().unwrap();
        emb.rotation[1].push(d);
        let r = validate_embedding(&emb);
        assert!(r.violations.contains(&Violation::DartWrongVertex { vertex: 1, dart: d }));
        assert!(r.violations.contains(&Violation::MissingDart(d)));
        assert!(matches!(planarize(&emb), Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn outer_face_defaults_to_largest() {
        let emb = k5_one_crossing();
        let p = planarize(&emb).unwrap();
        let f = p.faces();
        let outer = p.outer_face(&f);
        assert_eq!(f.cycles[outer].len(), f.cycles.iter().map(Vec::len).max().unwrap());
    }

    #[test]
    fn round_trip_through_planarization() {
        let emb = k5_one_crossing();
        let p = planarize(&emb).unwrap();
        let back = p.to_embedding().unwrap();
        assert_eq!(back.graph, emb.graph);
        assert_eq!(back.crossings, emb.crossings);
        let norm = |r: &Vec<Vec<Dart>>| {
            r.iter()
                .map(|l| {
                    let mut l = l.clone();
                    let i = (0..l.len()).min_by_key(|&i| l[i].0).unwrap_or(0);
                    l.rotate_left(i);
                    l
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(norm(&back.rotation), norm(&emb.rotation));
    }

    #[test]
    fn stats_of_xq8() {
        let s = embedding_stats(&crate::generators::gen_xq(8).unwrap()).unwrap();
        assert_eq!((s.n, s.m, s.crossings, s.crossed_edges), (10, 32, 8, 16));
        assert_eq!(s.face_sizes.keys().copied().collect::<Vec<_>>(), vec![3]);
        assert!(s.planar_maximal_bounds);
    }
}
