//! Dart-based plane multigraph (combinatorial map).
//!
//! Every edge `e` owns darts `2e` and `2e + 1`. Around each vertex darts are
//! linked in counter-clockwise order. The face to the left of dart `d`
//! continues with `face_next(d) = ccw_prev(twin(d))`.

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, VertexId};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    origin: Vec<VertexId>,
    ccw: Vec<Dart>,
    cw: Vec<Dart>,
    live: Vec<bool>,
    anchor: Vec<Option<Dart>>,
}

/// Face structure of a [`PlaneMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    /// Face id of every dart; `usize::MAX` for darts of removed edges.
    pub face_of: Vec<usize>,
    /// Dart cycles, each starting at its smallest dart.
    pub cycles: Vec<Vec<Dart>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn face_left(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    pub fn face_right(&self, d: Dart) -> usize {
        self.face_of[d.twin().0]
    }
}

impl PlaneMap {
    pub fn with_vertices(n: usize) -> Self {
        PlaneMap { origin: Vec::new(), ccw: Vec::new(), cw: Vec::new(), live: Vec::new(), anchor: vec![None; n] }
    }

    /// Builds a map from per-vertex ccw dart lists. Edges `0..edge_count`
    /// whose darts are absent from all lists are created dead.
    pub fn from_rotation(edge_count: usize, rotation: &[Vec<Dart>]) -> Result<Self> {
        let mut map = PlaneMap::with_vertices(rotation.len());
        map.origin = vec![NONE; 2 * edge_count];
        map.ccw = vec![Dart(NONE); 2 * edge_count];
        map.cw = vec![Dart(NONE); 2 * edge_count];
        map.live = vec![false; edge_count];
        for (v, darts) in rotation.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                if d.0 >= 2 * edge_count {
                    return Err(Error::InconsistentRotation(format!("dart {d} at vertex {v} is out of range")));
                }
                if map.origin[d.0] != NONE {
                    return Err(Error::InconsistentRotation(format!("dart {d} appears twice")));
                }
                map.origin[d.0] = v;
                map.ccw[d.0] = darts[(i + 1) % darts.len()];
                map.cw[d.0] = darts[(i + darts.len() - 1) % darts.len()];
            }
            map.anchor[v] = darts.first().copied();
        }
        for e in 0..edge_count {
            let (a, b) = (map.origin[2 * e] != NONE, map.origin[2 * e + 1] != NONE);
            if a != b {
                return Err(Error::InconsistentRotation(format!("edge {e} has only one dart in the rotation")));
            }
            map.live[e] = a;
        }
        Ok(map)
    }

    pub fn vertex_count(&self) -> usize {
        self.anchor.len()
    }

    /// Number of edge slots, including removed ones.
    pub fn edge_slots(&self) -> usize {
        self.live.len()
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        self.live[e]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.live.len()).filter(|&e| self.live[e])
    }

    pub fn live_edge_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.anchor.push(None);
        self.anchor.len() - 1
    }

    pub fn origin(&self, d: Dart) -> VertexId {
        self.origin[d.0]
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.origin[d.twin().0]
    }

    pub fn ccw(&self, d: Dart) -> Dart {
        self.ccw[d.0]
    }

    pub fn cw(&self, d: Dart) -> Dart {
        self.cw[d.0]
    }

    /// Next dart of the face on the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.cw[d.twin().0]
    }

    /// Previous dart of the face on the left of `d`.
    pub fn face_prev(&self, d: Dart) -> Dart {
        self.ccw[d.0].twin()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_around(v).len()
    }

    /// Darts leaving `v` in ccw order, starting at the anchor.
    pub fn darts_around(&self, v: VertexId) -> Vec<Dart> {
        let mut out = Vec::new();
        if let Some(start) = self.anchor[v] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.ccw[d.0];
                if d == start {
                    break;
                }
            }
        }
        out
    }

    /// Rotation with every dart list starting at its smallest dart.
    pub fn rotation(&self) -> Vec<Vec<Dart>> {
        (0..self.vertex_count())
            .map(|v| {
                let mut r = self.darts_around(v);
                if let Some(i) = r.iter().enumerate().min_by_key(|(_, d)| d.0).map(|(i, _)| i) {
                    r.rotate_left(i);
                }
                r
            })
            .collect()
    }

    fn place(&mut self, d: Dart, v: VertexId, after: Option<Dart>) {
        self.origin[d.0] = v;
        match after {
            None => {
                assert!(self.anchor[v].is_none(), "vertex {v} needs a reference dart");
                self.ccw[d.0] = d;
                self.cw[d.0] = d;
                self.anchor[v] = Some(d);
            }
            Some(a) => {
                assert_eq!(self.origin[a.0], v, "reference dart does not leave vertex {v}");
                let b = self.ccw[a.0];
                self.ccw[a.0] = d;
                self.cw[d.0] = a;
                self.ccw[d.0] = b;
                self.cw[b.0] = d;
            }
        }
    }

    /// Adds edge `(u, v)`; its dart from `u` goes ccw right after `after_u`
    /// (`None` only if `u` is isolated), likewise for `v`.
    pub fn add_edge(&mut self, u: VertexId, after_u: Option<Dart>, v: VertexId, after_v: Option<Dart>) -> EdgeId {
        let e = self.live.len();
        self.live.push(true);
        self.origin.extend([NONE, NONE]);
        self.ccw.extend([Dart(NONE), Dart(NONE)]);
        self.cw.extend([Dart(NONE), Dart(NONE)]);
        self.place(Dart(2 * e), u, after_u);
        self.place(Dart(2 * e + 1), v, after_v);
        e
    }

    /// Adds a chord across the face containing `x_out` and `z_out`, from the
    /// tail of `x_out` to the tail of `z_out`. The face left of the new dart
    /// `n` is `[n, z_out, ..]`, the face left of its twin is `[x_out, .., twin(n)]`.
    pub fn add_chord(&mut self, x_out: Dart, z_out: Dart) -> Dart {
        let (x, z) = (self.origin(x_out), self.origin(z_out));
        Dart(2 * self.add_edge(x, Some(x_out), z, Some(z_out)))
    }

    /// Re-inserts a removed edge keeping its id. `d` becomes the dart from
    /// the tail of `x_out`, placed as in [`PlaneMap::add_chord`].
    pub fn reinsert_chord(&mut self, d: Dart, x_out: Dart, z_out: Dart) {
        assert!(!self.live[d.edge()], "edge {} is live", d.edge());
        let (x, z) = (self.origin(x_out), self.origin(z_out));
        self.live[d.edge()] = true;
        self.place(d, x, Some(x_out));
        self.place(d.twin(), z, Some(z_out));
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        assert!(self.live[e], "edge {e} already removed");
        for d in [Dart(2 * e), Dart(2 * e + 1)] {
            let v = self.origin[d.0];
            let (a, b) = (self.cw[d.0], self.ccw[d.0]);
            if a == d {
                self.anchor[v] = None;
            } else {
                self.ccw[a.0] = b;
                self.cw[b.0] = a;
                if self.anchor[v] == Some(d) {
                    self.anchor[v] = Some(b);
                }
            }
        }
        self.live[e] = false;
    }

    pub fn faces(&self) -> Faces {
        let mut face_of = vec![NONE; self.origin.len()];
        let mut cycles = Vec::new();
        for start in 0..self.origin.len() {
            if !self.live[start / 2] || face_of[start] != NONE {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut d = Dart(start);
            while face_of[d.0] == NONE {
                face_of[d.0] = id;
                cycle.push(d);
                d = self.face_next(d);
            }
            cycles.push(cycle);
        }
        Faces { face_of, cycles }
    }

    /// Face cycle through `d`, starting at `d`.
    pub fn face_cycle(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    /// Connected components as vertex lists (isolated vertices included).
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for r in 0..n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut comp = vec![r];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for d in self.darts_around(x) {
                    let y = self.head(d);
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Checks that every connected component is embedded on the sphere.
    pub fn check_euler(&self) -> Result<()> {
        let faces = self.faces();
        let mut comp_of = vec![0; self.vertex_count()];
        let comps = self.components();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut ecount = vec![0usize; comps.len()];
        for e in self.live_edges() {
            ecount[comp_of[self.origin[2 * e]]] += 1;
        }
        let mut fcount = vec![0usize; comps.len()];
        for cyc in &faces.cycles {
            fcount[comp_of[self.origin[cyc[0].0]]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            if ecount[i] == 0 {
                continue;
            }
            let chi = c.len() as isize - ecount[i] as isize + fcount[i] as isize;
            if chi != 2 {
                return Err(Error::InconsistentRotation(format!(
                    "component of vertex {} has V - E + F = {chi}, not 2",
                    c[0]
                )));
            }
        }
        Ok(())
    }
}
