//! Geometric verification of 1-visibility representations.
//!
//! Works on the layout alone plus the graph it claims to represent. Vertex
//! bars are closed; edge segments are open at their ends, so an edge ending
//! on a bar touches it without crossing it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{gen_gn, gen_xq};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::layout::{EdgeSegment, VertexBar, VisibilityLayout};

/// A pairwise contact between segments that the definition forbids or
/// limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Intersection {
    /// Edge segment passes through the interior of its span over a bar.
    VertexEdge { vertex: VertexId, edge: EdgeId },
    /// Two bars on one level share a point.
    VertexVertex { a: VertexId, b: VertexId },
    /// Two edge segments on one column share more than an end point.
    EdgeEdge { a: EdgeId, b: EdgeId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayoutViolation {
    MissingVertex { vertex: VertexId },
    DuplicateVertex { vertex: VertexId },
    UnknownVertex { vertex: VertexId },
    EmptyBar { vertex: VertexId },
    MissingEdge { edge: EdgeId },
    DuplicateEdge { edge: EdgeId },
    WrongEndpoints { edge: EdgeId },
    DegenerateEdge { edge: EdgeId },
    EndpointOffSegment { edge: EdgeId, vertex: VertexId },
    BarsOverlap { a: VertexId, b: VertexId },
    EdgesOverlap { a: EdgeId, b: EdgeId },
    VertexCrossedTwice { vertex: VertexId, edges: Vec<EdgeId> },
    EdgeCrossesTwice { edge: EdgeId, vertices: Vec<VertexId> },
    UnreportedCrossing { edge: EdgeId, vertex: VertexId },
    PhantomCrossing { edge: EdgeId, vertex: VertexId },
}

impl fmt::Display for LayoutViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LayoutViolation::*;
        match self {
            MissingVertex { vertex } => write!(f, "vertex {vertex} has no segment"),
            DuplicateVertex { vertex } => write!(f, "vertex {vertex} has several segments"),
            UnknownVertex { vertex } => write!(f, "segment for unknown vertex {vertex}"),
            EmptyBar { vertex } => write!(f, "vertex segment {vertex} has x_lo > x_hi"),
            MissingEdge { edge } => write!(f, "edge {edge} has no segment"),
            DuplicateEdge { edge } => write!(f, "edge {edge} has several segments"),
            WrongEndpoints { edge } => write!(f, "edge segment {edge} names the wrong endpoints"),
            DegenerateEdge { edge } => write!(f, "edge segment {edge} does not join two levels"),
            EndpointOffSegment { edge, vertex } => write!(f, "endpoint off segment: edge {edge} misses vertex {vertex}"),
            BarsOverlap { a, b } => write!(f, "vertex segments {a} and {b} overlap"),
            EdgesOverlap { a, b } => write!(f, "edge segments {a} and {b} overlap"),
            VertexCrossedTwice { vertex, edges } => write!(f, "vertex {vertex} crossed by edges {edges:?}"),
            EdgeCrossesTwice { edge, vertices } => write!(f, "edge {edge} crosses vertices {vertices:?}"),
            UnreportedCrossing { edge, vertex } => write!(f, "edge {edge} crosses vertex {vertex} without a record"),
            PhantomCrossing { edge, vertex } => write!(f, "recorded crossing of edge {edge} and vertex {vertex} does not exist"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub violations: Vec<LayoutViolation>,
    /// Number of edge segments through each vertex bar, by vertex id.
    pub vertex_crossings: BTreeMap<VertexId, usize>,
    /// Number of vertex bars each edge segment passes, by edge id.
    pub edge_crossings: BTreeMap<EdgeId, usize>,
    pub width: i64,
    pub height: i64,
}

fn ve(b: &VertexBar, e: &EdgeSegment) -> bool {
    b.x_lo <= e.x && e.x <= b.x_hi && e.y_lo < b.y && b.y < e.y_hi
}

fn vv(a: &VertexBar, b: &VertexBar) -> bool {
    a.y == b.y && a.x_lo <= b.x_hi && b.x_lo <= a.x_hi
}

fn ee(a: &EdgeSegment, b: &EdgeSegment) -> bool {
    a.x == b.x && a.y_lo < a.y_hi && b.y_lo < b.y_hi && a.y_lo < b.y_hi && b.y_lo < a.y_hi
}

/// All forbidden or limited contacts by checking every pair.
pub fn naive_intersections(layout: &VisibilityLayout) -> Vec<Intersection> {
    let (vs, es) = (&layout.vertices, &layout.edges);
    let mut out = Vec::new();
    for b in vs {
        for e in es {
            if ve(b, e) {
                out.push(Intersection::VertexEdge { vertex: b.id, edge: e.id });
            }
        }
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vv(&vs[i], &vs[j]) {
                let (a, b) = (vs[i].id.min(vs[j].id), vs[i].id.max(vs[j].id));
                out.push(Intersection::VertexVertex { a, b });
            }
        }
    }
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if ee(&es[i], &es[j]) {
                let (a, b) = (es[i].id.min(es[j].id), es[i].id.max(es[j].id));
                out.push(Intersection::EdgeEdge { a, b });
            }
        }
    }
    out.sort_unstable();
    out
}

/// Overlapping pairs among intervals on one line. `closed` decides whether
/// touching ends count.
fn interval_overlaps(mut items: Vec<(i64, i64, usize)>, closed: bool) -> Vec<(usize, usize)> {
    items.sort_unstable();
    let mut active: BTreeSet<(i64, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for (lo, hi, id) in items {
        // drop intervals that end before this one starts
        while let Some(&(end, k)) = active.first() {
            if end < lo || (!closed && end <= lo) {
                active.remove(&(end, k));
            } else {
                break;
            }
        }
        out.extend(active.iter().map(|&(_, k)| (k.min(id), k.max(id))));
        active.insert((hi, id));
    }
    out
}

/// Same result as [`naive_intersections`] by a sweep over x.
pub fn sweep_intersections(layout: &VisibilityLayout) -> Vec<Intersection> {
    let mut out = Vec::new();
    // bars enter before and leave after edges on the same column
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Ev {
        Open(usize),
        Edge(usize),
        Close(usize),
    }
    let mut events: Vec<(i64, Ev)> = Vec::new();
    for (i, b) in layout.vertices.iter().enumerate() {
        events.push((b.x_lo, Ev::Open(i)));
        events.push((b.x_hi, Ev::Close(i)));
    }
    for (i, e) in layout.edges.iter().enumerate() {
        events.push((e.x, Ev::Edge(i)));
    }
    events.sort_unstable();
    let mut active: BTreeSet<(i64, usize)> = BTreeSet::new();
    for (_, ev) in events {
        match ev {
            Ev::Open(i) => {
                active.insert((layout.vertices[i].y, i));
            }
            Ev::Close(i) => {
                active.remove(&(layout.vertices[i].y, i));
            }
            Ev::Edge(i) => {
                let e = &layout.edges[i];
                if e.y_hi - e.y_lo < 2 {
                    continue;
                }
                for &(_, k) in active.range((e.y_lo + 1, 0)..(e.y_hi, 0)) {
                    out.push(Intersection::VertexEdge { vertex: layout.vertices[k].id, edge: e.id });
                }
            }
        }
    }
    let mut rows: HashMap<i64, Vec<(i64, i64, usize)>> = HashMap::new();
    for b in &layout.vertices {
        rows.entry(b.y).or_default().push((b.x_lo, b.x_hi, b.id));
    }
    for (_, row) in rows {
        out.extend(interval_overlaps(row, true).into_iter().map(|(a, b)| Intersection::VertexVertex { a, b }));
    }
    let mut cols: HashMap<i64, Vec<(i64, i64, usize)>> = HashMap::new();
    for e in &layout.edges {
        cols.entry(e.x).or_default().push((e.y_lo, e.y_hi, e.id));
    }
    for (_, col) in cols {
        // an empty open interval overlaps nothing
        let col: Vec<_> = col.into_iter().filter(|&(lo, hi, _)| lo < hi).collect();
        out.extend(interval_overlaps(col, false).into_iter().map(|(a, b)| Intersection::EdgeEdge { a, b }));
    }
    out.sort_unstable();
    out
}

/// Checks that `layout` is a 1-visibility representation of `g`. Segments
/// with ids `>= g.m()` and segments of helper edges of `g` are extras: their
/// endpoints are checked, but they may be missing and are left out of the
/// crossing and overlap tests since they are not part of the drawing.
pub fn verify_layout(layout: &VisibilityLayout, g: &Graph) -> VerificationReport {
    use LayoutViolation::*;
    let real = |e: EdgeId| e < g.m() && !g.edge(e).kind.is_helper();
    let mut violations = Vec::new();
    let mut bar_of: HashMap<VertexId, &VertexBar> = HashMap::new();
    for b in &layout.vertices {
        if b.id >= g.n() {
            violations.push(UnknownVertex { vertex: b.id });
        } else if bar_of.insert(b.id, b).is_some() {
            violations.push(DuplicateVertex { vertex: b.id });
        }
        if b.x_lo > b.x_hi {
            violations.push(EmptyBar { vertex: b.id });
        }
    }
    violations.extend((0..g.n()).filter(|v| !bar_of.contains_key(v)).map(|vertex| MissingVertex { vertex }));

    let mut seen = BTreeSet::new();
    for e in &layout.edges {
        if !seen.insert(e.id) {
            violations.push(DuplicateEdge { edge: e.id });
        }
        if e.id < g.m() {
            let ge = g.edge(e.id);
            if (e.u.min(e.v), e.u.max(e.v)) != (ge.u.min(ge.v), ge.u.max(ge.v)) {
                violations.push(WrongEndpoints { edge: e.id });
            }
        }
        if e.y_lo >= e.y_hi {
            violations.push(DegenerateEdge { edge: e.id });
        }
        let (Some(bu), Some(bv)) = (bar_of.get(&e.u), bar_of.get(&e.v)) else {
            violations.push(WrongEndpoints { edge: e.id });
            continue;
        };
        let (lo, hi) = if bu.y <= bv.y { (bu, bv) } else { (bv, bu) };
        for (b, y) in [(lo, e.y_lo), (hi, e.y_hi)] {
            if b.y != y || e.x < b.x_lo || e.x > b.x_hi {
                violations.push(EndpointOffSegment { edge: e.id, vertex: b.id });
            }
        }
    }
    violations.extend((0..g.m()).filter(|&e| real(e) && !seen.contains(&e)).map(|edge| MissingEdge { edge }));

    let mut vertex_crossings: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    let mut edge_crossings: BTreeMap<EdgeId, Vec<VertexId>> = BTreeMap::new();
    let mut found = BTreeSet::new();
    let drawn = VisibilityLayout {
        vertices: layout.vertices.clone(),
        edges: layout.edges.iter().filter(|e| real(e.id)).copied().collect(),
        crossings: Vec::new(),
    };
    for x in sweep_intersections(&drawn) {
        match x {
            Intersection::VertexEdge { vertex, edge } => {
                vertex_crossings.entry(vertex).or_default().push(edge);
                edge_crossings.entry(edge).or_default().push(vertex);
                found.insert((edge, vertex));
            }
            Intersection::VertexVertex { a, b } => violations.push(BarsOverlap { a, b }),
            Intersection::EdgeEdge { a, b } => violations.push(EdgesOverlap { a, b }),
        }
    }
    for (&vertex, edges) in &vertex_crossings {
        if edges.len() > 1 {
            violations.push(VertexCrossedTwice { vertex, edges: edges.clone() });
        }
    }
    for (&edge, vertices) in &edge_crossings {
        if vertices.len() > 1 {
            violations.push(EdgeCrossesTwice { edge, vertices: vertices.clone() });
        }
    }
    let recorded: BTreeSet<(EdgeId, VertexId)> = layout.crossings.iter().filter(|c| real(c.edge)).map(|c| (c.edge, c.vertex)).collect();
    for &(edge, vertex) in found.difference(&recorded) {
        violations.push(UnreportedCrossing { edge, vertex });
    }
    for &(edge, vertex) in recorded.difference(&found) {
        violations.push(PhantomCrossing { edge, vertex });
    }

    let ext = layout.extent();
    VerificationReport {
        pass: violations.is_empty(),
        violations,
        vertex_crossings: vertex_crossings.into_iter().map(|(k, v)| (k, v.len())).collect(),
        edge_crossings: edge_crossings.into_iter().map(|(k, v)| (k, v.len())).collect(),
        width: ext.width,
        height: ext.height,
    }
}

/// Outcome of the witness lookup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub m: usize,
    /// Whether `m = 4n - 8`.
    pub optimal: bool,
    /// Name of the family the graph was found in.
    pub family: &'static str,
    /// True for the known 1-visible graphs without a 1-planar embedding.
    pub not_1planar: bool,
}

fn edge_set(g: &Graph) -> BTreeSet<(VertexId, VertexId)> {
    g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect()
}

/// Looks `g` up among the generated families, with vertex labels as the
/// generators produce them. This is a table lookup, not a 1-planarity test.
pub fn verify_not_1planar_witness(g: &Graph) -> Result<WitnessReport> {
    let (n, m) = (g.n(), g.m());
    let edges = edge_set(g);
    let optimal = n >= 3 && m == 4 * n - 8;
    if n >= 7 {
        if let Ok((gn, _)) = gen_gn(n) {
            if edge_set(&gn) == edges {
                return Ok(WitnessReport { n, m, optimal, family: if n == 7 { "k7-minus-e" } else { "gn" }, not_1planar: true });
            }
        }
    }
    if n >= 8 {
        if let Ok(xq) = gen_xq(n - 2) {
            if edge_set(&xq.graph) == edges {
                return Ok(WitnessReport { n, m, optimal, family: "xq", not_1planar: false });
            }
        }
    }
    Err(Error::UnknownFamily)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_k7_minus_e;
    use crate::layout::CrossingRecord;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn soup(rng: &mut ChaCha8Rng, k: usize, span: i64) -> VisibilityLayout {
        let mut l = VisibilityLayout::default();
        for id in 0..k {
            let (a, b) = (rng.gen_range(0..span), rng.gen_range(0..span));
            l.vertices.push(VertexBar { id, y: rng.gen_range(0..span / 2), x_lo: a.min(b), x_hi: a.max(b) });
            let (a, b) = (rng.gen_range(0..span / 2), rng.gen_range(0..span / 2));
            l.edges.push(EdgeSegment { id, u: 0, v: 0, x: rng.gen_range(0..span), y_lo: a.min(b), y_hi: a.max(b), hidden: false });
        }
        l
    }

    #[test]
    fn tiny_cases() {
        let mut l = VisibilityLayout::default();
        l.vertices.push(VertexBar { id: 0, y: 0, x_lo: 0, x_hi: 4 });
        l.vertices.push(VertexBar { id: 1, y: 0, x_lo: 8, x_hi: 12 });
        assert!(naive_intersections(&l).is_empty());
        l.edges.push(EdgeSegment { id: 0, u: 0, v: 1, x: 2, y_lo: -1, y_hi: 1, hidden: false });
        assert_eq!(naive_intersections(&l), vec![Intersection::VertexEdge { vertex: 0, edge: 0 }]);
        assert_eq!(sweep_intersections(&l), naive_intersections(&l));
    }

    #[test]
    fn sweep_matches_naive_on_soups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let k = rng.gen_range(1..60);
            let l = soup(&mut rng, k, 20);
            assert_eq!(sweep_intersections(&l), naive_intersections(&l));
        }
    }

    #[test]
    fn k7_hint_passes_and_tamper_fails() {
        let (g, l) = gen_k7_minus_e();
        let r = verify_layout(&l, &g);
        assert!(r.pass, "{:?}", r.violations);
        // a second edge through an already crossed bar
        let mut bad = l.clone();
        let (edge, vertex) = (bad.crossings[0].edge, bad.crossings[0].vertex);
        let bar = *bad.bar(vertex).unwrap();
        let other = bad.edges.iter_mut().find(|e| e.id != edge && e.y_lo < bar.y && bar.y < e.y_hi).unwrap();
        other.x = bar.x_lo;
        let r = verify_layout(&bad, &g);
        assert!(!r.pass);
        // moving an edge off its bar
        let mut bad = l.clone();
        bad.edges[0].x += 1000;
        let r = verify_layout(&bad, &g);
        assert!(r.violations.iter().any(|v| matches!(v, LayoutViolation::EndpointOffSegment { .. })));
        // a record for a crossing that is not there
        let mut bad = l;
        bad.crossings.push(CrossingRecord { edge: 0, vertex: 6 });
        assert!(!verify_layout(&bad, &g).pass);
    }

    #[test]
    fn witness_lookup() {
        let (k7, _) = gen_k7_minus_e();
        let r = verify_not_1planar_witness(&k7).unwrap();
        assert!(r.not_1planar && r.optimal && r.m == 20);
        let (g10, _) = gen_gn(10).unwrap();
        let r = verify_not_1planar_witness(&g10).unwrap();
        assert!(r.not_1planar && r.m == 32);
        let xq = gen_xq(8).unwrap();
        let r = verify_not_1planar_witness(&xq.graph).unwrap();
        assert!(!r.not_1planar && r.m == 32 && r.family == "xq");
        let c4 = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(verify_not_1planar_witness(&c4), Err(Error::UnknownFamily)));
    }
}
