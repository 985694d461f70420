//! Reinserting crossing pairs into the quadrangles they leave behind.
//!
//! A quadrangle drawn by the planar visibility construction occupies the
//! open column gap `(4c - 4, 4c)` where `c` is its column. Both crossing
//! edges go into that gap at quarter offsets, and one middle vertex bar is
//! stretched into it so that exactly one of the two edges passes through it.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, VertexId};
use crate::layout::{CrossingRecord, EdgeSegment, VisibilityLayout};
use crate::plane::PlaneMap;
use crate::planar_layout::DistanceMaps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// Three edges on the left side, one on the right.
    LeftWing,
    /// Three edges on the right side, one on the left.
    RightWing,
    /// Two edges on each side.
    Diamond,
}

/// A quadrangle with named corners.
///
/// `a` is the bottom. For wings `b` and `c` are the lower and upper middle
/// vertex and `d` the top; for a diamond `b` is the left middle vertex, `c`
/// the top and `d` the right middle vertex. In both cases the crossing
/// edges are `(a, c)` and `(b, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceShape {
    /// Face index in the planar map.
    pub face: usize,
    pub kind: ShapeKind,
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    /// Column of the face in whole units.
    pub column: i64,
}

impl FaceShape {
    /// The two vertices that may be crossed.
    pub fn candidates(&self) -> [VertexId; 2] {
        match self.kind {
            ShapeKind::Diamond => [self.b, self.d],
            _ => [self.b, self.c],
        }
    }
}

/// Classifies the face left of `dart`.
pub fn classify_face(map: &PlaneMap, dist: &DistanceMaps, dart: Dart) -> Result<FaceShape> {
    let face = dist.faces.face_left(dart);
    let bad = Error::NotQuadrangle { face };
    let cyc = map.face_cycle(dart);
    if cyc.len() != 4 {
        return Err(bad);
    }
    let vs: Vec<VertexId> = cyc.iter().map(|&d| map.origin(d)).collect();
    if (0..4).any(|i| (i + 1..4).any(|j| vs[i] == vs[j])) {
        return Err(bad);
    }
    let lv = |v: VertexId| dist.level[v];
    let lo = (0..4).min_by_key(|&i| (lv(vs[i]), i)).expect("four corners");
    let at = |k: usize| vs[(lo + k) % 4];
    let top = (1..4).max_by_key(|&k| lv(at(k))).expect("three corners");
    let column = dist.column[face];
    // the face is walked counter-clockwise: up its right side, down its left
    let (kind, a, b, c, d) = match top {
        1 => (ShapeKind::LeftWing, at(0), at(3), at(2), at(1)),
        3 => (ShapeKind::RightWing, at(0), at(1), at(2), at(3)),
        _ => (ShapeKind::Diamond, at(0), at(3), at(2), at(1)),
    };
    let ok = match kind {
        ShapeKind::Diamond => lv(a) < lv(b) && lv(a) < lv(d) && lv(b) < lv(c) && lv(d) < lv(c) && lv(b) != lv(d),
        _ => lv(a) < lv(b) && lv(b) < lv(c) && lv(c) < lv(d),
    };
    if !ok {
        return Err(bad);
    }
    Ok(FaceShape { face, kind, a, b, c, d, column })
}

/// Picks one candidate per face so that no vertex is picked twice.
///
/// Vertices with a single remaining face are matched first, lowest face
/// first; what is left consists of alternating cycles, each started at its
/// lowest vertex.
pub fn match_crossed_vertices(shapes: &[FaceShape]) -> Result<Vec<VertexId>> {
    use std::collections::BTreeMap;
    let mut faces_of: BTreeMap<VertexId, BTreeSet<usize>> = BTreeMap::new();
    for (i, s) in shapes.iter().enumerate() {
        for v in s.candidates() {
            faces_of.entry(v).or_default().insert(i);
        }
    }
    let mut chosen: Vec<Option<VertexId>> = vec![None; shapes.len()];
    // forced pairs keyed by (face, vertex)
    let mut forced: BTreeSet<(usize, VertexId)> = BTreeSet::new();
    for (&v, fs) in &faces_of {
        if fs.len() == 1 {
            forced.insert((*fs.first().unwrap(), v));
        }
    }
    let mut open = shapes.len();
    while open > 0 {
        let (f, v) = match forced.pop_first() {
            Some(p) => p,
            None => {
                // lowest vertex still in play, with its lowest face
                let (&v, fs) = faces_of.iter().find(|(_, fs)| !fs.is_empty()).ok_or_else(|| {
                    let face = chosen.iter().position(Option::is_none).unwrap_or(0);
                    Error::HallViolation { face: shapes[face].face }
                })?;
                (*fs.first().unwrap(), v)
            }
        };
        if chosen[f].is_some() || !faces_of.get(&v).is_some_and(|fs| fs.contains(&f)) {
            continue;
        }
        chosen[f] = Some(v);
        open -= 1;
        // v is used up; every other face of v loses a candidate
        let others: Vec<usize> = faces_of.remove(&v).unwrap_or_default().into_iter().filter(|&g| g != f).collect();
        for w in shapes[f].candidates() {
            if w != v {
                if let Some(fs) = faces_of.get_mut(&w) {
                    fs.remove(&f);
                    if fs.len() == 1 {
                        forced.insert((*fs.first().unwrap(), w));
                    }
                }
            }
        }
        for g in others {
            let rest: Vec<VertexId> = shapes[g].candidates().into_iter().filter(|&w| w != v).collect();
            match rest.iter().find(|w| faces_of.get(w).is_some_and(|fs| fs.contains(&g))) {
                Some(&w) => {
                    forced.insert((g, w));
                }
                None => return Err(Error::HallViolation { face: shapes[g].face }),
            }
        }
    }
    Ok(chosen.into_iter().map(|c| c.expect("every face matched")).collect())
}

/// Edge ids to use for the two crossing edges of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingEdges {
    /// The edge joining `a` and `c`.
    pub ac: EdgeId,
    /// The edge joining `b` and `d`.
    pub bd: EdgeId,
}

fn bar_index(layout: &VisibilityLayout, v: VertexId) -> usize {
    layout.vertices.binary_search_by_key(&v, |b| b.id).expect("vertex has a bar")
}

fn stretch_right(layout: &mut VisibilityLayout, v: VertexId, x: i64) {
    let i = bar_index(layout, v);
    layout.vertices[i].x_hi = layout.vertices[i].x_hi.max(x);
}

fn stretch_left(layout: &mut VisibilityLayout, v: VertexId, x: i64) {
    let i = bar_index(layout, v);
    layout.vertices[i].x_lo = layout.vertices[i].x_lo.min(x);
}

fn push_edge(layout: &mut VisibilityLayout, id: EdgeId, p: VertexId, q: VertexId, x: i64) {
    let (yp, yq) = (layout.vertices[bar_index(layout, p)].y, layout.vertices[bar_index(layout, q)].y);
    let (u, v) = if yp <= yq { (p, q) } else { (q, p) };
    layout.edges.push(EdgeSegment { id, u, v, x, y_lo: yp.min(yq), y_hi: yp.max(yq), hidden: false });
}

/// Draws the crossing pair of `shape` so that it crosses `crossed`.
///
/// Vertex bars must be sorted by id.
pub fn insert_crossing(layout: &mut VisibilityLayout, shape: &FaceShape, crossed: VertexId, ids: CrossingEdges) {
    let r = 4 * shape.column;
    let FaceShape { a, b, c, d, .. } = *shape;
    debug_assert!(shape.candidates().contains(&crossed));
    // (x of edge a-c, x of edge b-d, edge through the crossed bar)
    let (x_ac, x_bd, through) = match shape.kind {
        ShapeKind::LeftWing => {
            let (far, near) = if crossed == b { (b, c) } else { (c, b) };
            stretch_right(layout, far, r - 2);
            stretch_right(layout, near, r - 3);
            if crossed == b {
                (r - 3, r - 2, ids.ac)
            } else {
                (r - 2, r - 3, ids.bd)
            }
        }
        ShapeKind::RightWing => {
            let (far, near) = if crossed == b { (b, c) } else { (c, b) };
            stretch_left(layout, far, r - 2);
            stretch_left(layout, near, r - 1);
            if crossed == b {
                (r - 1, r - 2, ids.ac)
            } else {
                (r - 2, r - 1, ids.bd)
            }
        }
        ShapeKind::Diamond => {
            stretch_right(layout, b, r - 2);
            stretch_left(layout, d, r - 2);
            (if crossed == b { r - 3 } else { r - 1 }, r - 2, ids.ac)
        }
    };
    push_edge(layout, ids.ac, a, c, x_ac);
    push_edge(layout, ids.bd, b, d, x_bd);
    layout.crossings.push(CrossingRecord { edge: through, vertex: crossed });
}

/// Marks helper edges hidden and sorts everything by id.
pub fn finalize(layout: &mut VisibilityLayout, is_helper: impl Fn(EdgeId) -> bool) {
    for e in &mut layout.edges {
        e.hidden = is_helper(e.id);
    }
    layout.canonicalize();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::VertexBar;

    fn shape(kind: ShapeKind, face: usize, b: VertexId, m: VertexId) -> FaceShape {
        // only the candidates matter for matching
        let (b_, c_, d_) = match kind {
            ShapeKind::Diamond => (b, 100 + face, m),
            _ => (b, m, 100 + face),
        };
        FaceShape { face, kind, a: 200 + face, b: b_, c: c_, d: d_, column: 1 }
    }

    /// Enumerates all assignments; returns the number of saturating ones.
    fn brute_count(shapes: &[FaceShape]) -> usize {
        let k = shapes.len();
        (0..1usize << k)
            .filter(|mask| {
                let picks: Vec<VertexId> = (0..k).map(|i| shapes[i].candidates()[(mask >> i) & 1]).collect();
                let set: BTreeSet<_> = picks.iter().collect();
                set.len() == k
            })
            .count()
    }

    #[test]
    fn single_face_picks_lower_id() {
        let s = [shape(ShapeKind::Diamond, 0, 7, 3)];
        assert_eq!(match_crossed_vertices(&s).unwrap(), vec![3]);
    }

    #[test]
    fn shared_vertex_goes_to_private_ones() {
        let s = [shape(ShapeKind::Diamond, 0, 1, 5), shape(ShapeKind::LeftWing, 1, 5, 2)];
        assert_eq!(match_crossed_vertices(&s).unwrap(), vec![1, 2]);
        assert_eq!(brute_count(&s), 3);
    }

    #[test]
    fn cycle_of_four() {
        let s = [
            shape(ShapeKind::Diamond, 0, 1, 2),
            shape(ShapeKind::Diamond, 1, 2, 3),
            shape(ShapeKind::Diamond, 2, 3, 4),
            shape(ShapeKind::Diamond, 3, 4, 1),
        ];
        assert_eq!(brute_count(&s), 2);
        let m = match_crossed_vertices(&s).unwrap();
        let set: BTreeSet<_> = m.iter().collect();
        assert_eq!(set.len(), 4);
        assert_eq!(m[0], 1);
    }

    #[test]
    fn three_faces_on_two_vertices_fail() {
        let s = [
            shape(ShapeKind::Diamond, 0, 1, 2),
            shape(ShapeKind::Diamond, 1, 2, 1),
            shape(ShapeKind::Diamond, 2, 1, 2),
        ];
        assert!(matches!(match_crossed_vertices(&s), Err(Error::HallViolation { .. })));
    }

    fn bars(spec: &[(VertexId, i64, i64, i64)]) -> VisibilityLayout {
        VisibilityLayout {
            vertices: spec.iter().map(|&(id, y, x_lo, x_hi)| VertexBar { id, y, x_lo, x_hi }).collect(),
            ..Default::default()
        }
    }

    fn crossings_of(l: &VisibilityLayout) -> Vec<(EdgeId, VertexId)> {
        let mut out = Vec::new();
        for e in &l.edges {
            for b in &l.vertices {
                if b.y > e.y_lo && b.y < e.y_hi && b.x_lo <= e.x && e.x <= b.x_hi {
                    out.push((e.id, b.id));
                }
            }
        }
        out
    }

    #[test]
    fn left_wing_inserts_one_crossing() {
        // column 2: gap (4, 8); a bottom, b and c end at 4, d top
        for crossed in [1, 2] {
            let mut l = bars(&[(0, 0, 0, 8), (1, 1, 0, 4), (2, 2, 0, 4), (3, 3, 0, 8)]);
            let s = FaceShape { face: 0, kind: ShapeKind::LeftWing, a: 0, b: 1, c: 2, d: 3, column: 2 };
            insert_crossing(&mut l, &s, crossed, CrossingEdges { ac: 10, bd: 11 });
            assert_eq!(crossings_of(&l).len(), 1);
            assert_eq!(l.crossings, vec![CrossingRecord { edge: if crossed == 1 { 10 } else { 11 }, vertex: crossed }]);
            let ac = l.edges.iter().find(|e| e.id == 10).unwrap();
            assert_eq!(ac.x, if crossed == 1 { 5 } else { 6 });
            assert!(l.edges.iter().all(|e| e.x > 4 && e.x < 8));
        }
    }

    #[test]
    fn right_wing_and_diamond_insert_one_crossing() {
        for crossed in [1, 2] {
            let mut l = bars(&[(0, 0, 0, 8), (1, 1, 8, 12), (2, 2, 8, 12), (3, 3, 0, 8)]);
            let s = FaceShape { face: 0, kind: ShapeKind::RightWing, a: 0, b: 1, c: 2, d: 3, column: 2 };
            insert_crossing(&mut l, &s, crossed, CrossingEdges { ac: 10, bd: 11 });
            assert_eq!(crossings_of(&l).len(), 1);
            if crossed == 1 {
                assert_eq!(l.edges[0].x, 7);
            }
        }
        for crossed in [1, 3] {
            // b left at level 1, d right at level 2, top c at 3
            let mut l = bars(&[(0, 0, 0, 8), (1, 1, 0, 4), (2, 3, 0, 8), (3, 2, 8, 12)]);
            let s = FaceShape { face: 0, kind: ShapeKind::Diamond, a: 0, b: 1, c: 2, d: 3, column: 2 };
            insert_crossing(&mut l, &s, crossed, CrossingEdges { ac: 10, bd: 11 });
            assert_eq!(crossings_of(&l), vec![(10, crossed)]);
            assert_eq!(l.edges[1].x, 6);
            assert_eq!(l.edges[0].x, if crossed == 1 { 5 } else { 7 });
        }
    }
}
