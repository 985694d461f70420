//! Planar-maximal augmentation, configuration classification, separation
//! pairs and separation edges.
//!
//! Augmentation first routes the four kite edges of every crossing tightly
//! along its half-edges, so that each crossing point is surrounded by four
//! triangles. A kite edge that already exists elsewhere and is not needed by
//! another crossing is moved into place instead of duplicated. Remaining
//! faces are then triangulated with non-parallel chords.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::embedding::{planarize, OnePlanarEmbedding, Planarization};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, EdgeKind, Graph, VertexId};
use crate::plane::Faces;

/// Counts of what an augmentation changed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AugmentStats {
    pub kite_edges_added: usize,
    pub kite_edges_rerouted: usize,
    pub chords_added: usize,
    pub digons_removed: usize,
}

/// Multiset of vertex pairs joined by live graph edges.
pub(crate) struct PairCounts(HashMap<(VertexId, VertexId), usize>);

impl PairCounts {
    pub(crate) fn new(p: &Planarization) -> Self {
        let mut m = HashMap::new();
        for r in p.edges.iter().filter(|r| r.live) {
            *m.entry(key(r.u, r.v)).or_insert(0) += 1;
        }
        PairCounts(m)
    }

    fn has(&self, x: VertexId, y: VertexId) -> bool {
        self.0.get(&key(x, y)).is_some_and(|&c| c > 0)
    }

    fn add(&mut self, x: VertexId, y: VertexId) {
        *self.0.entry(key(x, y)).or_insert(0) += 1;
    }

    fn remove(&mut self, x: VertexId, y: VertexId) {
        if let Some(c) = self.0.get_mut(&key(x, y)) {
            *c -= 1;
        }
    }
}

fn key(x: VertexId, y: VertexId) -> (VertexId, VertexId) {
    (x.min(y), x.max(y))
}

fn is_dummy_triangle(p: &Planarization, d: Dart) -> bool {
    let c = p.map.face_cycle(d);
    c.len() == 3 && c.iter().any(|&x| p.is_dummy(p.map.origin(x)))
}

/// Makes all four angles at every crossing point triangles.
pub(crate) fn tighten_kites(p: &mut Planarization, pairs: &mut PairCounts, stats: &mut AugmentStats) {
    for i in 0..p.crossings.len() {
        let pv = p.dummy(i);
        for q in p.map.darts_around(pv) {
            let d_a = q.twin();
            let q1 = p.map.face_next(d_a);
            if p.map.face_cycle(d_a).len() == 3 {
                continue;
            }
            let (x2, x1) = (p.map.origin(d_a), p.map.head(q1));
            let free = p.map.darts_around(x1).into_iter().find(|&d| {
                p.map.head(d) == x2 && !is_dummy_triangle(p, d) && !is_dummy_triangle(p, d.twin())
            });
            match free {
                Some(d) => {
                    // move the existing edge next to the crossing
                    if p.outer.edge() == d.edge() {
                        p.outer = p.map.face_next(p.outer);
                    }
                    p.map.remove_edge(d.edge());
                    let x_out = p.map.face_next(q1);
                    p.map.reinsert_chord(d, x_out, d_a);
                    stats.kite_edges_rerouted += 1;
                }
                None => {
                    let kind = if pairs.has(x1, x2) { EdgeKind::Separation } else { EdgeKind::Augmented };
                    let x_out = p.map.face_next(q1);
                    p.add_chord(x_out, d_a, kind);
                    pairs.add(x1, x2);
                    stats.kite_edges_added += 1;
                }
            }
            debug_assert_eq!(p.map.face_cycle(d_a).len(), 3);
        }
    }
}

/// Splits crossing-free faces by chords between non-adjacent vertices, ears first.
fn triangulate(p: &mut Planarization, pairs: &mut PairCounts, stats: &mut AugmentStats) {
    let faces = p.map.faces();
    let mut work: Vec<Dart> = faces.cycles.iter().filter(|c| c.len() >= 4).map(|c| c[0]).collect();
    work.reverse();
    while let Some(start) = work.pop() {
        let cyc = p.map.face_cycle(start);
        let k = cyc.len();
        if k < 4 {
            continue;
        }
        let vs: Vec<VertexId> = cyc.iter().map(|&d| p.map.origin(d)).collect();
        if vs.iter().any(|&v| p.is_dummy(v)) {
            continue;
        }
        'search: for gap in 2..=k - 2 {
            for i in 0..k {
                let j = (i + gap) % k;
                if vs[i] != vs[j] && !pairs.has(vs[i], vs[j]) {
                    let nd = p.add_chord(cyc[i], cyc[j], EdgeKind::Augmented);
                    pairs.add(vs[i], vs[j]);
                    stats.chords_added += 1;
                    work.push(nd.twin());
                    work.push(nd);
                    break 'search;
                }
            }
        }
    }
}

/// Removes one helper edge of every face bounded by two parallel edges.
fn remove_digons(p: &mut Planarization, pairs: &mut PairCounts, stats: &mut AugmentStats) {
    loop {
        let faces = p.map.faces();
        let mut removed = HashSet::new();
        for c in faces.cycles.iter().filter(|c| c.len() == 2) {
            let (a, b) = (p.owner[c[0].edge()], p.owner[c[1].edge()]);
            if a == b || removed.contains(&a) || removed.contains(&b) {
                continue;
            }
            let victim = match (p.edges[a].kind, p.edges[b].kind) {
                (EdgeKind::Original, _) => b,
                (_, EdgeKind::Original) => a,
                _ => a.max(b),
            };
            let (u, v) = (p.edges[victim].u, p.edges[victim].v);
            p.remove_edge(victim);
            pairs.remove(u, v);
            removed.insert(victim);
            stats.digons_removed += 1;
        }
        if removed.is_empty() {
            break;
        }
    }
}

pub(crate) fn augment_planarization(p: &mut Planarization) -> AugmentStats {
    let mut stats = AugmentStats::default();
    let mut pairs = PairCounts::new(p);
    tighten_kites(p, &mut pairs, &mut stats);
    triangulate(p, &mut pairs, &mut stats);
    remove_digons(p, &mut pairs, &mut stats);
    stats
}

/// Augments to a planar-maximal embedding. Original edges keep their ids;
/// added edges follow in creation order.
pub fn planar_maximal_augment(emb: &OnePlanarEmbedding) -> Result<OnePlanarEmbedding> {
    let mut p = planarize(emb)?;
    augment_planarization(&mut p);
    p.to_embedding()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigKind {
    B,
    W,
    X,
}

/// Classification of one crossing pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub crossing: usize,
    /// The base edge of a B or W.
    pub base: Option<EdgeId>,
    /// The other crossing of a W.
    pub partner: Option<usize>,
}

/// Plane edge of graph edge `e` incident to its endpoint `x`.
fn half_at(p: &Planarization, e: EdgeId, x: VertexId) -> EdgeId {
    let r = &p.edges[e];
    match r.second {
        Some(h) if x == r.v => h,
        _ => r.first,
    }
}

/// Faces reachable from the outer face without crossing the given plane edges.
fn reachable_faces(p: &Planarization, faces: &Faces, wall: &HashSet<EdgeId>) -> Vec<bool> {
    let mut seen = vec![false; faces.len()];
    let start = p.outer_face(faces);
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for &d in &faces.cycles[f] {
            if wall.contains(&d.edge()) {
                continue;
            }
            let g = faces.face_right(d);
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    seen
}

fn inside(p: &Planarization, faces: &Faces, reach: &[bool], x: VertexId) -> bool {
    p.map.darts_around(x).into_iter().all(|d| !reach[faces.face_left(d)])
}

/// B if both far endpoints lie inside the triangle formed by the base and
/// the two half-edges; W if a second crossing closes that region from the
/// other side of the same base; X otherwise.
pub fn classify_configuration(emb: &OnePlanarEmbedding, crossing: usize) -> Result<Configuration> {
    let p = planarize(emb)?;
    if crossing >= p.crossings.len() {
        return Err(Error::InvalidEmbedding(format!("no crossing {crossing}")));
    }
    Ok(classify_in(&p, crossing))
}

pub(crate) fn classify_in(p: &Planarization, i: usize) -> Configuration {
    let faces = p.faces();
    let [e1, e2] = p.crossings[i];
    let (r1, r2) = (p.edges[e1], p.edges[e2]);
    let bases = |u: VertexId, v: VertexId| -> Vec<Dart> {
        p.map.darts_around(u).into_iter().filter(|&d| p.map.head(d) == v).collect()
    };
    let mut b_hit = None;
    for (u, x) in [(r1.u, r1.v), (r1.v, r1.u)] {
        for (v, y) in [(r2.u, r2.v), (r2.v, r2.u)] {
            let base = bases(u, v);
            if base.is_empty() {
                continue;
            }
            // W: a second crossing sharing u and v from different edges
            for (j, &[f1, f2]) in p.crossings.iter().enumerate() {
                if j == i {
                    continue;
                }
                let (s1, s2) = (p.edges[f1], p.edges[f2]);
                for (fu, fv) in [(f1, f2), (f2, f1)] {
                    let (su, sv) = if fu == f1 { (s1, s2) } else { (s2, s1) };
                    if !su.has_endpoint(u) || !sv.has_endpoint(v) {
                        continue;
                    }
                    let wall: HashSet<EdgeId> =
                        [half_at(p, e1, u), half_at(p, e2, v), half_at(p, fu, u), half_at(p, fv, v)].into();
                    let reach = reachable_faces(p, &faces, &wall);
                    let far = [x, y, su.other(u), sv.other(v)];
                    if far.iter().all(|&z| inside(p, &faces, &reach, z)) {
                        return Configuration {
                            kind: ConfigKind::W,
                            crossing: i,
                            base: Some(p.owner[base[0].edge()]),
                            partner: Some(j),
                        };
                    }
                }
            }
            for &bd in &base {
                let wall: HashSet<EdgeId> = [half_at(p, e1, u), half_at(p, e2, v), bd.edge()].into();
                let reach = reachable_faces(p, &faces, &wall);
                if inside(p, &faces, &reach, x) && inside(p, &faces, &reach, y) && b_hit.is_none() {
                    b_hit = Some(p.owner[bd.edge()]);
                }
            }
        }
    }
    match b_hit {
        Some(base) => Configuration { kind: ConfigKind::B, crossing: i, base: Some(base), partner: None },
        None => Configuration { kind: ConfigKind::X, crossing: i, base: None, partner: None },
    }
}

/// If the outer face is a crossing triangle whose kite edge borders a
/// crossing-free face, makes that face the outer face. This turns an outer
/// B-configuration into an X-configuration.
pub(crate) fn normalize_outer(p: &mut Planarization) -> bool {
    let cyc = p.map.face_cycle(p.outer);
    if cyc.len() != 3 || !cyc.iter().any(|&d| p.is_dummy(p.map.origin(d))) {
        return false;
    }
    let k = *cyc
        .iter()
        .find(|&&d| !p.is_dummy(p.map.origin(d)) && !p.is_dummy(p.map.head(d)))
        .expect("crossing triangle has a kite edge");
    let across = p.map.face_cycle(k.twin());
    if across.iter().any(|&d| p.is_dummy(p.map.origin(d))) {
        return false;
    }
    p.outer = k.twin();
    true
}

/// Brute-force triconnectivity check; returns a separation pair if any.
pub fn find_separation_pair(g: &Graph) -> Option<(VertexId, VertexId)> {
    for u in 0..g.n() {
        let keep: Vec<EdgeId> = (0..g.m()).filter(|&e| !g.edge(e).has_endpoint(u)).collect();
        let cut = g.edge_subgraph(&keep).blocks().cut_vertices;
        if let Some(&v) = cut.first() {
            return Some(key(u, v));
        }
    }
    None
}

/// Puts a 3-connected planar-maximal embedding in normal form: tight kites
/// and no B-configuration at the outer face.
pub fn normalize(emb: &OnePlanarEmbedding) -> Result<OnePlanarEmbedding> {
    if let Some(pair) = find_separation_pair(&emb.graph) {
        return Err(Error::NotTriconnected(pair));
    }
    let mut p = planarize(emb)?;
    let mut pairs = PairCounts::new(&p);
    tighten_kites(&mut p, &mut pairs, &mut AugmentStats::default());
    normalize_outer(&mut p);
    p.to_embedding()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationPair {
    pub u: VertexId,
    pub v: VertexId,
    /// Components of the graph without `u` and `v`, in rotation order at `u`.
    pub components: Vec<Vec<VertexId>>,
    /// Separation-kind copies of `(u, v)`.
    pub separation_edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeparationStructure {
    pub pairs: Vec<SeparationPair>,
}

/// Component label of every vertex after deleting `u` and `v`; `usize::MAX`
/// for the deleted vertices.
fn labels_without(n: usize, u: VertexId, v: VertexId, nbrs: impl Fn(VertexId) -> Vec<VertexId>) -> Vec<usize> {
    let mut lab = vec![usize::MAX; n];
    let mut next = 0;
    for r in 0..n {
        if r == u || r == v || lab[r] != usize::MAX {
            continue;
        }
        lab[r] = next;
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            for y in nbrs(x) {
                if y != u && y != v && lab[y] == usize::MAX {
                    lab[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    lab
}

/// Separation pairs of a 2-connected embedded graph by exhaustive search.
pub fn triconnected_components(emb: &OnePlanarEmbedding) -> Result<SeparationStructure> {
    let g = &emb.graph;
    if !g.is_biconnected() {
        return Err(Error::NotBiconnected);
    }
    let mut found = BTreeSet::new();
    for u in 0..g.n() {
        let keep: Vec<EdgeId> = (0..g.m()).filter(|&e| !g.edge(e).has_endpoint(u)).collect();
        for v in g.edge_subgraph(&keep).blocks().cut_vertices {
            found.insert(key(u, v));
        }
    }
    let pairs = found
        .into_iter()
        .map(|(u, v)| {
            let lab = labels_without(g.n(), u, v, |x| g.incident(x).iter().map(|&e| g.edge(e).other(x)).collect());
            let mut order: Vec<usize> = Vec::new();
            for &d in &emb.rotation[u] {
                let l = lab[g.head(d)];
                if l != usize::MAX && !order.contains(&l) {
                    order.push(l);
                }
            }
            let components = order
                .iter()
                .map(|&l| (0..g.n()).filter(|&x| lab[x] == l).collect())
                .collect();
            let separation_edges =
                g.edges_between(u, v).into_iter().filter(|&e| g.edge(e).kind == EdgeKind::Separation).collect();
            SeparationPair { u, v, components, separation_edges }
        })
        .collect();
    Ok(SeparationStructure { pairs })
}

/// Separation pairs of a triangulated planarization: in a plane multigraph
/// whose faces are triangles a 2-cut is a cycle of two parallel edges.
pub(crate) fn parallel_pairs(p: &Planarization) -> Vec<(VertexId, VertexId)> {
    let mut count: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for r in p.edges.iter().filter(|r| r.live && r.crossing.is_none()) {
        *count.entry(key(r.u, r.v)).or_insert(0) += 1;
    }
    let mut out: Vec<_> = count.into_iter().filter(|&(_, c)| c > 1).map(|(k, _)| k).collect();
    out.sort_unstable();
    out
}

/// Inserts a copy of `(u, v)` between every two consecutive components at
/// `u` that are not yet separated by one. Gaps in the outer face are left
/// open. Returns the new edge ids.
pub(crate) fn fill_separation_gaps(p: &mut Planarization, u: VertexId, v: VertexId) -> Vec<EdgeId> {
    let nv = p.map.vertex_count();
    let lab = labels_without(nv, u, v, |x| p.map.darts_around(x).into_iter().map(|d| p.map.head(d)).collect());
    let mut added = Vec::new();
    let darts = p.map.darts_around(u);
    if darts.len() < 2 {
        return added;
    }
    let outer_face_darts: HashSet<Dart> = p.map.face_cycle(p.outer).into_iter().collect();
    for &d in &darts {
        let nxt = p.map.ccw(d);
        let (a, b) = (lab[p.map.head(d)], lab[p.map.head(nxt)]);
        if a == usize::MAX || b == usize::MAX || a == b || outer_face_darts.contains(&d) {
            continue;
        }
        let cyc = p.map.face_cycle(d);
        let Some(&z_out) = cyc.iter().find(|&&x| p.map.origin(x) == v) else { continue };
        let nd = p.add_chord(d, z_out, EdgeKind::Separation);
        added.push(p.owner[nd.edge()]);
    }
    added
}

/// If a crossing still lies in the outer face, covers it with a copy of its
/// kite edge so that the outer face becomes the digon between the two.
pub(crate) fn cover_outer_crossing(p: &mut Planarization) -> Option<EdgeId> {
    let cyc = p.map.face_cycle(p.outer);
    if cyc.len() != 3 || !cyc.iter().any(|&d| p.is_dummy(p.map.origin(d))) {
        return None;
    }
    let k = *cyc.iter().find(|&&d| !p.is_dummy(p.map.origin(d)) && !p.is_dummy(p.map.head(d)))?;
    let h1 = p.map.face_next(k);
    let nd = p.add_chord(h1, k, EdgeKind::Separation);
    p.outer = k;
    Some(p.owner[nd.edge()])
}

/// Adds separation edges for every pair in `s`, plus the outer cover copy
/// when a crossing lies in the outer face.
pub fn insert_separation_edges(emb: &OnePlanarEmbedding, s: &SeparationStructure) -> Result<OnePlanarEmbedding> {
    let mut p = planarize(emb)?;
    for pair in &s.pairs {
        fill_separation_gaps(&mut p, pair.u, pair.v);
    }
    cover_outer_crossing(&mut p);
    p.to_embedding()
}

/// Whether a face boundary passes through a crossing point.
#[cfg(test)]
fn face_has_dummy(p: &Planarization, cycle: &[Dart]) -> bool {
    cycle.iter().any(|&d| p.is_dummy(p.map.origin(d)))
}
