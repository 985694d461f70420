//! st-numbering, vertex levels, dual columns and the planar visibility
//! drawing of a 2-connected plane multigraph.
//!
//! The plane graph is a [`PlaneMap`] whose vertices `0..n` take part; any
//! vertex from `n` on must be isolated. Faces are identified by their index
//! in [`PlaneMap::faces`]. The outer face is split into a left part `s*`,
//! which keeps its face index, and a right part `t*`, which gets the extra
//! index `faces.len()`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Dart, VertexId};
use crate::layout::{EdgeSegment, VertexBar, VisibilityLayout};
use crate::plane::{Faces, PlaneMap};

/// An st-numbering together with the dart that carries `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StNumbering {
    pub s: VertexId,
    pub t: VertexId,
    /// Dart from `s` to `t` with the outer face on its left.
    pub st_dart: Dart,
    /// Number of every vertex; `usize::MAX` for vertices not in the graph.
    pub number: Vec<usize>,
}

impl StNumbering {
    /// Whether `d` points from the lower to the higher number.
    pub fn is_upward(&self, map: &PlaneMap, d: Dart) -> bool {
        self.number[map.origin(d)] < self.number[map.head(d)]
    }

    /// The upward dart of edge `e`.
    pub fn upward(&self, map: &PlaneMap, e: usize) -> Dart {
        let d = Dart(2 * e);
        if self.is_upward(map, d) {
            d
        } else {
            d.twin()
        }
    }
}

/// Finds the dart from `s` to `t` on the outer face.
pub fn st_dart(map: &PlaneMap, outer: Dart, s: VertexId, t: VertexId) -> Result<Dart> {
    map.face_cycle(outer)
        .into_iter()
        .find(|&d| map.origin(d) == s && map.head(d) == t)
        .ok_or(Error::StNotOuterEdge { s, t })
}

/// Picks `(s, t)` on the outer face: the lexicographically smallest
/// `(origin, head)` pair, restricted to darts leaving `source` if given.
pub fn default_st_dart(map: &PlaneMap, outer: Dart, source: Option<VertexId>) -> Dart {
    let cyc = map.face_cycle(outer);
    let key = |d: &Dart| (map.origin(*d), map.head(*d), d.0);
    source
        .and_then(|s| cyc.iter().copied().filter(|&d| map.origin(d) == s).min_by_key(key))
        .or_else(|| cyc.iter().copied().min_by_key(key))
        .expect("outer face has a dart")
}

/// st-numbering by depth-first search and the sign-list method.
///
/// Fails with [`Error::NotBiconnected`] if the live part of `0..n` is not a
/// single 2-connected graph.
pub fn st_number(map: &PlaneMap, n: usize, st: Dart) -> Result<StNumbering> {
    let (s, t) = (map.origin(st), map.head(st));
    const NONE: usize = usize::MAX;
    let mut pre = vec![NONE; n];
    let mut order = Vec::new();
    let mut parent = vec![NONE; n];
    let mut low = vec![NONE; n];

    // darts of s start with the (s, t) dart so that t is the first child
    let mut first = map.darts_around(s);
    if let Some(i) = first.iter().position(|&d| d == st) {
        first.rotate_left(i);
    }
    pre[s] = 0;
    low[s] = 0;
    order.push(s);
    let mut stack: Vec<(VertexId, Option<usize>, Vec<Dart>, usize)> = vec![(s, None, first, 0)];
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (v, pe) = (top.0, top.1);
        if top.3 < top.2.len() {
            let d = top.2[top.3];
            top.3 += 1;
            if Some(d.edge()) == pe {
                continue;
            }
            let w = map.head(d);
            if pre[w] == NONE {
                pre[w] = order.len();
                low[w] = pre[w];
                order.push(w);
                parent[w] = v;
                if v == s {
                    root_children += 1;
                }
                stack.push((w, Some(d.edge()), map.darts_around(w), 0));
            } else {
                low[v] = low[v].min(pre[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, ..)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != s && low[v] >= pre[p] {
                    return Err(Error::NotBiconnected);
                }
            }
        }
    }
    let present = (0..n).filter(|&v| map.degree(v) > 0).count();
    if root_children != 1 || order.len() != present || present < 2 {
        return Err(Error::NotBiconnected);
    }

    // sign-list construction over a doubly linked list
    let mut next = vec![NONE; n];
    let mut prev = vec![NONE; n];
    let mut minus = vec![false; n];
    next[s] = t;
    prev[t] = s;
    minus[s] = true;
    for &v in &order[1..] {
        if v == t {
            continue;
        }
        let p = parent[v];
        if minus[order[low[v]]] {
            // insert before p
            let a = prev[p];
            prev[v] = a;
            next[v] = p;
            prev[p] = v;
            if a != NONE {
                next[a] = v;
            }
            minus[p] = false;
        } else {
            let b = next[p];
            next[v] = b;
            prev[v] = p;
            next[p] = v;
            if b != NONE {
                prev[b] = v;
            }
            minus[p] = true;
        }
    }
    let mut number = vec![NONE; n];
    let mut cur = s;
    let mut k = 0;
    while cur != NONE {
        number[cur] = k;
        k += 1;
        cur = next[cur];
    }
    debug_assert_eq!(k, present);
    Ok(StNumbering { s, t, st_dart: st, number })
}

/// Vertex levels and face columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMaps {
    /// Level of every vertex (0 for vertices outside the graph).
    pub level: Vec<i64>,
    /// Column of every dual node; index `faces.len()` is `t*`.
    pub column: Vec<i64>,
    pub faces: Faces,
    pub s_star: usize,
    pub t_star: usize,
    /// Number of levels, `level(t) + 1`.
    pub height: i64,
    /// Number of columns, `column(t*) + 1`.
    pub width: i64,
}

impl DistanceMaps {
    /// Dual node on the left of the upward dart `d`.
    pub fn left_node(&self, d: Dart) -> usize {
        self.faces.face_left(d)
    }

    /// Dual node on the right of the upward dart `d`.
    pub fn right_node(&self, d: Dart) -> usize {
        let f = self.faces.face_right(d);
        if f == self.s_star {
            self.t_star
        } else {
            f
        }
    }

    /// Column of the face left of `d`.
    pub fn face_column(&self, d: Dart) -> i64 {
        self.column[self.faces.face_left(d)]
    }
}

/// Longest paths by Kahn's algorithm; `None` on a cycle.
fn longest_paths(nodes: usize, arcs: &[(usize, usize)]) -> Option<Vec<i64>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut indeg = vec![0usize; nodes];
    for &(a, b) in arcs {
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut dist = vec![0i64; nodes];
    let mut queue: VecDeque<usize> = (0..nodes).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(a) = queue.pop_front() {
        done += 1;
        for &b in &out[a] {
            dist[b] = dist[b].max(dist[a] + 1);
            indeg[b] -= 1;
            if indeg[b] == 0 {
                queue.push_back(b);
            }
        }
    }
    (done == nodes).then_some(dist)
}

/// Middle vertices `(left, right)` of a face whose two sides have two
/// edges each, in the current levels.
fn diamond_middles(map: &PlaneMap, level: &[i64], d: Dart) -> Option<(VertexId, VertexId)> {
    let cyc = map.face_cycle(d);
    if cyc.len() != 4 {
        return None;
    }
    let vs: Vec<VertexId> = cyc.iter().map(|&x| map.origin(x)).collect();
    let a = (0..4).min_by_key(|&i| (level[vs[i]], i))?;
    let at = |k: usize| vs[(a + k) % 4];
    let top = (1..4).max_by_key(|&k| level[at(k)])?;
    // ccw from the bottom: right side first, then the top, then the left side
    (top == 2).then(|| (at(3), at(1)))
}

/// Longest-path levels from `s` and columns from `s*`.
///
/// Faces named in `lift` (by a dart on them) are quadrangles that will hold
/// a crossing; if one of them has its two middle vertices on opposite sides
/// at the same level, the right one is lifted above the left one.
pub fn dual_distances(map: &PlaneMap, n: usize, st: &StNumbering, lift: &[Dart]) -> Result<DistanceMaps> {
    let faces = map.faces();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut dual: Vec<(usize, usize)> = Vec::new();
    let s_star = faces.face_left(st.st_dart);
    let t_star = faces.len();
    let mut maps = DistanceMaps { level: vec![0; n], column: Vec::new(), faces, s_star, t_star, height: 0, width: 0 };
    for e in map.live_edges() {
        let d = st.upward(map, e);
        if map.origin(d) >= n || map.head(d) >= n {
            continue;
        }
        arcs.push((map.origin(d), map.head(d)));
        dual.push((maps.left_node(d), maps.right_node(d)));
    }
    let mut lifted = vec![false; lift.len()];
    loop {
        let level = longest_paths(n, &arcs).ok_or(Error::CycleDetected)?;
        let mut changed = false;
        for (i, &d) in lift.iter().enumerate() {
            if lifted[i] {
                continue;
            }
            if let Some((l, r)) = diamond_middles(map, &level, d) {
                if level[l] == level[r] {
                    arcs.push((l, r));
                    lifted[i] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            maps.level = level;
            break;
        }
    }
    maps.column = longest_paths(t_star + 1, &dual).ok_or(Error::CycleDetected)?;
    maps.height = maps.level[st.t] + 1;
    maps.width = maps.column[t_star] + 1;
    Ok(maps)
}

/// The visibility drawing: vertex bars at their levels spanning the columns
/// of their incident faces, edges at the column of their left face.
///
/// Segment ids are vertex ids and plane edge ids; `u` is the lower end.
pub fn planar_visibility(map: &PlaneMap, n: usize, st: &StNumbering, dist: &DistanceMaps) -> VisibilityLayout {
    let full = 4 * (dist.column[dist.t_star] - 1).max(0);
    let mut layout = VisibilityLayout::default();
    for v in 0..n {
        let darts = map.darts_around(v);
        if darts.is_empty() {
            continue;
        }
        let (x_lo, x_hi) = if v == st.s || v == st.t {
            (0, full)
        } else {
            let cols = darts.iter().map(|&d| {
                let f = dist.faces.face_left(d);
                // the outer face touches inner vertices only on its right part
                dist.column[if f == dist.s_star { dist.t_star } else { f }]
            });
            let (lo, hi) = cols.fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c), hi.max(c)));
            (4 * lo, 4 * (hi - 1))
        };
        layout.vertices.push(VertexBar { id: v, y: dist.level[v], x_lo, x_hi });
    }
    for e in map.live_edges() {
        let d = st.upward(map, e);
        let (u, v) = (map.origin(d), map.head(d));
        if u >= n || v >= n {
            continue;
        }
        layout.edges.push(EdgeSegment {
            id: e,
            u,
            v,
            x: 4 * dist.column[dist.left_node(d)],
            y_lo: dist.level[u],
            y_hi: dist.level[v],
            hidden: false,
        });
    }
    layout
}
