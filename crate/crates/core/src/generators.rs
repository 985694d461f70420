//! Witness families and random test instances.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{embedding_from_coordinates, OnePlanarEmbedding, Planarization};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, EdgeKind, Graph, VertexId};
use crate::layout::{CrossingRecord, EdgeSegment, VertexBar, VisibilityLayout};
use crate::plane::PlaneMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Xq,
    K7MinusE,
    Gn,
    ConfigB,
    ConfigW,
    ConfigX,
    Random1Planar,
    RandomPlane,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Xq,
        Family::K7MinusE,
        Family::Gn,
        Family::ConfigB,
        Family::ConfigW,
        Family::ConfigX,
        Family::Random1Planar,
        Family::RandomPlane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Xq => "xq",
            Family::K7MinusE => "k7-minus-e",
            Family::Gn => "gn",
            Family::ConfigB => "config-b",
            Family::ConfigW => "config-w",
            Family::ConfigX => "config-x",
            Family::Random1Planar => "random-1planar",
            Family::RandomPlane => "random-plane",
        }
    }

    /// Families without a 1-planar embedding come with a layout instead.
    pub fn has_embedding(self) -> bool {
        !matches!(self, Family::K7MinusE | Family::Gn)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| format!("unknown family {s:?}; expected one of {}", Family::ALL.map(|f| f.name()).join(", ")))
    }
}

/// A family member request with its expected size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    /// Rim size for XQ, vertex count for G_n and the random families,
    /// 1/0 for the augmented flag of the gadgets.
    pub param: usize,
    pub seed: u64,
}

impl FamilySpec {
    /// Expected `(n, m)` where it is fixed by the family.
    pub fn expected_counts(&self) -> Option<(usize, usize)> {
        let p = self.param;
        match self.family {
            Family::Xq => Some((p + 2, 4 * (p + 2) - 8)),
            Family::K7MinusE => Some((7, 20)),
            Family::Gn => Some((p, 4 * p - 8)),
            Family::ConfigX => Some((4, if p != 0 { 6 } else { 3 })),
            Family::ConfigB => Some((4, if p != 0 { 6 } else { 3 })),
            Family::ConfigW => Some((6, if p != 0 { 11 } else { 5 })),
            Family::Random1Planar | Family::RandomPlane => None,
        }
    }
}

/// Builds an embedding of a simple graph from neighbour rotations.
/// Output of [`generate`]: an embedding, or for the families without one,
/// the graph with a layout that certifies it is 1-visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Embedding(OnePlanarEmbedding),
    Witness(Graph, VisibilityLayout),
}

impl Generated {
    pub fn graph(&self) -> &Graph {
        match self {
            Generated::Embedding(e) => &e.graph,
            Generated::Witness(g, _) => g,
        }
    }
}

/// Builds a member of a family. `param` is the rim size for `xq`, the vertex
/// count for `gn` and the random families, and a flag (non-zero adds the
/// kite edges) for the configurations.
pub fn generate(spec: &FamilySpec) -> Result<Generated> {
    use crate::augmentation::ConfigKind;
    let FamilySpec { family, param, seed } = *spec;
    Ok(match family {
        Family::Xq => Generated::Embedding(gen_xq(param)?),
        Family::K7MinusE => {
            let (g, l) = gen_k7_minus_e();
            Generated::Witness(g, l)
        }
        Family::Gn => {
            let (g, l) = gen_gn(param)?;
            Generated::Witness(g, l)
        }
        Family::ConfigB => Generated::Embedding(gen_config(ConfigKind::B, param != 0)),
        Family::ConfigW => Generated::Embedding(gen_config(ConfigKind::W, param != 0)),
        Family::ConfigX => Generated::Embedding(gen_config(ConfigKind::X, param != 0)),
        Family::Random1Planar => Generated::Embedding(gen_random_1planar(param, seed)?),
        Family::RandomPlane => Generated::Embedding(gen_random_plane(param, seed)?),
    })
}

fn from_neighbour_rotation(
    graph: Graph,
    rot: &[Vec<VertexId>],
    crossings: Vec<[EdgeId; 2]>,
    outer: Option<Dart>,
) -> OnePlanarEmbedding {
    let mut dart_of: HashMap<(VertexId, VertexId), Dart> = HashMap::new();
    for (e, ed) in graph.edges().iter().enumerate() {
        dart_of.insert((ed.u, ed.v), Dart::new(e, false));
        dart_of.insert((ed.v, ed.u), Dart::new(e, true));
    }
    let rotation = rot
        .iter()
        .enumerate()
        .map(|(v, ns)| ns.iter().map(|&w| dart_of[&(v, w)]).collect())
        .collect();
    OnePlanarEmbedding { graph, rotation, crossings, outer_dart: outer }
}

/// The extended wheel XQ on an even rim of size `rim >= 6`.
///
/// Rim vertices are `0..rim`, the inner pole `p = rim`, the outer pole
/// `q = rim + 1`. `p` sees the even rim vertices and `q` the odd ones through
/// planar edges; every quadrangle of that quadrangulation gets both
/// diagonals as a crossing pair.
pub fn gen_xq(rim: usize) -> Result<OnePlanarEmbedding> {
    if rim < 6 || rim % 2 == 1 {
        return Err(Error::BadRim(rim));
    }
    let r = rim;
    let (p, q) = (r, r + 1);
    let v = |i: isize| i.rem_euclid(r as isize) as usize;
    let mut edges = Vec::new();
    for i in 0..r {
        edges.push((i, v(i as isize + 1)));
    }
    for i in (0..r).step_by(2) {
        edges.push((p, i));
        edges.push((q, i + 1));
    }
    let mut crossings = Vec::new();
    for i in (0..r).step_by(2) {
        let (a, b) = (edges.len(), edges.len() + 1);
        edges.push((p, i + 1));
        edges.push((i, v(i as isize + 2)));
        crossings.push([a, b]);
        let (c, d) = (edges.len(), edges.len() + 1);
        edges.push((q, v(i as isize + 2)));
        edges.push((v(i as isize + 3), i + 1));
        crossings.push([c, d]);
    }
    let graph = Graph::from_pairs(r + 2, &edges)?;
    let mut rot: Vec<Vec<VertexId>> = (0..r as isize)
        .map(|i| {
            if i % 2 == 0 {
                vec![v(i + 1), v(i + 2), p, v(i - 2), v(i - 1), q]
            } else {
                vec![v(i + 1), p, v(i - 1), v(i - 2), q, v(i + 2)]
            }
        })
        .collect();
    rot.push((0..r).collect());
    rot.push((0..r).rev().collect());
    Ok(from_neighbour_rotation(graph, &rot, crossings, None))
}

/// Fig.-1-style gadgets. The base edge is original; the kite edges are
/// present (as augmented edges) iff `augmented`.
pub fn gen_config(kind: crate::augmentation::ConfigKind, augmented: bool) -> OnePlanarEmbedding {
    use crate::augmentation::ConfigKind;
    let kite = |g: &mut Vec<(VertexId, VertexId, EdgeKind)>, pairs: &[(VertexId, VertexId)]| {
        if augmented {
            g.extend(pairs.iter().map(|&(a, b)| (a, b, EdgeKind::Augmented)));
        }
    };
    let o = EdgeKind::Original;
    match kind {
        ConfigKind::X => {
            // square a b c d with crossing diagonals, base (a, b)
            let mut e = vec![(0, 2, o), (1, 3, o), (0, 1, o)];
            kite(&mut e, &[(1, 2), (2, 3), (3, 0)]);
            let g = Graph::new(4, e).unwrap();
            // dart b -> a has the outside on its left
            embedding_from_coordinates(g, &[(0, 0), (4, 0), (4, 4), (0, 4)], &[([0, 1], (2, 2))], Some(Dart(5)))
        }
        ConfigKind::B => {
            // u v base; (u, y) and (v, x) cross at p outside the kite u x y v
            let mut e = vec![(0, 3, o), (1, 2, o), (0, 1, o)];
            kite(&mut e, &[(0, 2), (2, 3), (3, 1)]);
            let g = Graph::new(4, e).unwrap();
            let coords = [(0, 0), (8, 0), (3, 4), (5, 4)];
            embedding_from_coordinates(g, &coords, &[([0, 1], (4, 8))], Some(Dart(0)))
        }
        ConfigKind::W => {
            // two B's on opposite sides of the base (u, v)
            let mut e = vec![(0, 3, o), (1, 2, o), (0, 5, o), (1, 4, o), (0, 1, o)];
            kite(&mut e, &[(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)]);
            let g = Graph::new(6, e).unwrap();
            let coords = [(0, 0), (8, 0), (3, 2), (5, 2), (3, -2), (5, -2)];
            embedding_from_coordinates(g, &coords, &[([0, 1], (4, 6)), ([2, 3], (4, -6))], Some(Dart(0)))
        }
    }
}

/// Inserts a vertex into the triangle left of `d0`.
fn stack_vertex(map: &mut PlaneMap, d0: Dart) -> VertexId {
    let d1 = map.face_next(d0);
    let d2 = map.face_next(d1);
    let a = map.origin(d0);
    let x = map.add_vertex();
    let av = Dart(2 * map.add_edge(a, Some(d0), x, None));
    let n1 = map.add_chord(av.twin(), d1);
    map.add_chord(n1, d2);
    x
}

/// Random plane triangulation with random flips; darts of the result.
fn random_triangulation(n: usize, rng: &mut ChaCha8Rng) -> PlaneMap {
    let mut map = PlaneMap::with_vertices(3);
    let e0 = map.add_edge(0, None, 1, None);
    let e1 = map.add_edge(1, Some(Dart(2 * e0 + 1)), 2, None);
    map.add_edge(2, Some(Dart(2 * e1 + 1)), 0, Some(Dart(2 * e0)));
    for _ in 3..n {
        let faces = map.faces();
        let f = rng.gen_range(0..faces.len());
        stack_vertex(&mut map, faces.cycles[f][0]);
    }
    // flips keep it a triangulation and mix degrees
    for _ in 0..2 * n {
        let e = rng.gen_range(0..map.edge_slots());
        if !map.is_live(e) {
            continue;
        }
        let du = Dart(2 * e);
        let dv = du.twin();
        let (u, v) = (map.origin(du), map.origin(dv));
        let x = map.head(map.face_next(du));
        let y = map.head(map.face_next(dv));
        if x == y || map.degree(u) <= 3 || map.degree(v) <= 3 {
            continue;
        }
        if map.darts_around(x).into_iter().any(|d| map.head(d) == y) {
            continue;
        }
        let xu = map.face_next(map.face_next(du));
        let yv = map.face_next(map.face_next(dv));
        map.remove_edge(e);
        map.add_chord(xu, yv);
    }
    map
}

/// Replaces plane edge `e` (faces `u v x` and `v u y`) by a crossing with a
/// new edge `(x, y)`.
fn insert_crossing_pair(map: &mut PlaneMap, e: EdgeId) {
    let du = Dart(2 * e);
    let dv = du.twin();
    let (u, v) = (map.origin(du), map.origin(dv));
    let vx = map.face_next(du);
    let xu = map.face_next(vx);
    let uy = map.face_next(dv);
    let yv = map.face_next(uy);
    let (au, av) = (map.cw(du), map.cw(dv));
    map.remove_edge(e);
    let p = map.add_vertex();
    let up = Dart(2 * map.add_edge(u, Some(au), p, None));
    let vp = Dart(2 * map.add_edge(v, Some(av), p, Some(up.twin())));
    let _ = vx;
    map.add_chord(xu, vp.twin());
    map.add_chord(yv, up.twin());
}

/// Neighbours of `x` in the graph, looking through crossing points.
fn real_neighbours(map: &PlaneMap, x: VertexId, n: usize) -> Vec<VertexId> {
    map.darts_around(x)
        .into_iter()
        .map(|d| {
            if map.head(d) < n {
                return map.head(d);
            }
            let opposite = map.ccw(map.ccw(d.twin()));
            map.head(opposite)
        })
        .collect()
}

/// Random connected 1-planar embedding: a random plane triangulation,
/// then crossing pairs in pairs of adjacent triangles, then random removal
/// of about a fifth of the remaining planar edges.
pub fn gen_random_1planar(n: usize, seed: u64) -> Result<OnePlanarEmbedding> {
    random_embedding(n, seed, 0.35, 0.2)
}

/// Random plane triangulation without crossings.
pub fn gen_random_plane(n: usize, seed: u64) -> Result<OnePlanarEmbedding> {
    random_embedding(n, seed, 0.0, 0.0)
}

fn random_embedding(n: usize, seed: u64, cross_rate: f64, drop_rate: f64) -> Result<OnePlanarEmbedding> {
    if n < 4 {
        return Err(Error::TooSmall { n, min: 4 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = random_triangulation(n, &mut rng);
    let mut order: Vec<EdgeId> = map.live_edges().collect();
    order.shuffle(&mut rng);
    for e in order {
        if !map.is_live(e) || !rng.gen_bool(cross_rate) {
            continue;
        }
        let du = Dart(2 * e);
        let tri = |d: Dart| {
            let c = map.face_cycle(d);
            c.len() == 3 && c.iter().all(|&x| map.origin(x) < n)
        };
        if !tri(du) || !tri(du.twin()) {
            continue;
        }
        let x = map.head(map.face_next(du));
        let y = map.head(map.face_next(du.twin()));
        if x == y || real_neighbours(&map, x, n).contains(&y) {
            continue;
        }
        insert_crossing_pair(&mut map, e);
    }
    if drop_rate > 0.0 {
        let mut planar: Vec<EdgeId> =
            map.live_edges().filter(|&e| map.origin(Dart(2 * e)) < n && map.origin(Dart(2 * e + 1)) < n).collect();
        planar.shuffle(&mut rng);
        let target = (planar.len() as f64 * drop_rate) as usize;
        let mut dropped = 0;
        for e in planar {
            if dropped == target {
                break;
            }
            let (a, b) = (map.origin(Dart(2 * e)), map.origin(Dart(2 * e + 1)));
            if map.degree(a) <= 2 || map.degree(b) <= 2 {
                continue;
            }
            let mut trial = map.clone();
            trial.remove_edge(e);
            if trial.components().len() == 1 {
                map = trial;
                dropped += 1;
            }
        }
    }
    let outer = map.face_cycle(Dart(map.live_edges().next().unwrap() * 2))[0];
    let p = Planarization::from_plane_map(map, n, EdgeKind::Original, outer)?;
    let mut emb = p.to_embedding()?;
    emb.outer_dart = None;
    Ok(emb)
}

/// K7 minus one edge with a hand-checked 1-visibility layout.
pub fn gen_k7_minus_e() -> (Graph, VisibilityLayout) {
    gen_gn(7).expect("n = 7 is valid")
}

/// 1-indexed bars of K7-e in whole units: (vertex, level, x_lo, x_hi).
const K7_BARS: [(usize, i64, i64, i64); 7] =
    [(1, 0, 2, 10), (2, 2, 5, 8), (3, 1, 0, 5), (4, 3, 4, 7), (5, 4, 1, 5), (6, 5, 3, 9), (7, 6, 0, 10)];

/// 1-indexed edges of K7-e with their column in whole units.
const K7_EDGES: [((usize, usize), i64); 20] = [
    ((1, 2), 6),
    ((1, 3), 5),
    ((1, 4), 7),
    ((1, 5), 2),
    ((1, 6), 9),
    ((1, 7), 10),
    ((2, 3), 5),
    ((2, 4), 6),
    ((2, 5), 5),
    ((2, 6), 8),
    ((3, 4), 4),
    ((3, 5), 1),
    ((3, 6), 3),
    ((3, 7), 0),
    ((4, 5), 4),
    ((4, 6), 6),
    ((4, 7), 7),
    ((5, 6), 5),
    ((5, 7), 2),
    ((6, 7), 8),
];

/// G_n: K7-e plus vertices 8..n, each joined to 3, 1 and its two
/// predecessors, with a 1-visibility layout. Vertex `k` has id `k - 1`.
///
/// Vertex i >= 8 sits one level above i - 1 with a bar one unit wider on
/// both sides. Its edges to 3 and 1 use the new outermost columns, its edge
/// to i - 1 the left end of that bar, and its edge to i - 2 the right end of
/// the bar of i - 2, crossing i - 1.
pub fn gen_gn(n: usize) -> Result<(Graph, VisibilityLayout)> {
    if n < 7 {
        return Err(Error::TooSmall { n, min: 7 });
    }
    let extra = (n - 7) as i64;
    let mut bars: Vec<(i64, i64, i64)> = K7_BARS.iter().map(|&(_, y, lo, hi)| (y, lo, hi)).collect();
    let mut edges: Vec<((usize, usize), i64)> = K7_EDGES.to_vec();
    // free column inside bars 6 and 7 for the first extension
    const C8: i64 = 9;
    for i in 8..=n {
        let (y, lo, hi) = bars[i - 2];
        let (l, r) = (lo - 1, hi + 1);
        bars.push((y + 1, l, r));
        let to_prev = bars[i - 2].1;
        let to_second = if i == 8 { C8 } else { bars[i - 3].2 };
        edges.push(((3, i), l));
        edges.push(((1, i), r));
        edges.push(((i - 1, i), to_prev));
        edges.push(((i - 2, i), to_second));
    }
    if let Some(&(_, l, r)) = bars.last() {
        bars[2].1 = bars[2].1.min(l);
        bars[0].2 = bars[0].2.max(r);
    }
    let graph = Graph::from_pairs(n, &edges.iter().map(|&((a, b), _)| (a - 1, b - 1)).collect::<Vec<_>>())?;
    let vertices: Vec<VertexBar> = bars
        .iter()
        .enumerate()
        .map(|(v, &(y, lo, hi))| VertexBar { id: v, y, x_lo: 4 * (lo + extra), x_hi: 4 * (hi + extra) })
        .collect();
    let segs: Vec<EdgeSegment> = edges
        .iter()
        .enumerate()
        .map(|(id, &((a, b), x))| {
            let (ya, yb) = (vertices[a - 1].y, vertices[b - 1].y);
            EdgeSegment {
                id,
                u: a - 1,
                v: b - 1,
                x: 4 * (x + extra),
                y_lo: ya.min(yb),
                y_hi: ya.max(yb),
                hidden: false,
            }
        })
        .collect();
    let mut crossings = Vec::new();
    for s in &segs {
        for b in &vertices {
            if b.y > s.y_lo && b.y < s.y_hi && b.x_lo <= s.x && s.x <= b.x_hi {
                crossings.push(CrossingRecord { edge: s.id, vertex: b.id });
            }
        }
    }
    let mut layout = VisibilityLayout { vertices, edges: segs, crossings };
    layout.canonicalize();
    Ok((graph, layout))
}
