//! Multigraph with provenance-tagged edges.
//!
//! Edges are identified by their id, never by their endpoint pair: the
//! augmentation introduces parallel copies of an edge (separation edges) and
//! each copy keeps its own id and kind.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// One end of an edge. Edge `e` owns darts `2e` (leaving `u`) and `2e + 1`
/// (leaving `v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, from_v: bool) -> Self {
        Dart(2 * edge + from_v as usize)
    }

    pub fn edge(self) -> EdgeId {
        self.0 / 2
    }

    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// True for the dart leaving the edge's `v` endpoint.
    pub fn from_v(self) -> bool {
        self.0 & 1 == 1
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

/// Where an edge came from. Fixed at creation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Part of the input graph.
    Original,
    /// Added to reach a planar-maximal embedding.
    Augmented,
    /// Parallel copy separating components at a separation pair.
    Separation,
}

impl EdgeKind {
    /// Helper edges are hidden in the final drawing.
    pub fn is_helper(self) -> bool {
        self != EdgeKind::Original
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EdgeKind::Original => "original",
            EdgeKind::Augmented => "augmented",
            EdgeKind::Separation => "separation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
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

    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph; edge ids follow input order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId, EdgeKind)>) -> Result<Self> {
        let mut g = Graph { n, edges: Vec::new(), adjacency: vec![Vec::new(); n] };
        let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for (u, v, kind) in edges {
            let id = g.edges.len();
            for x in [u, v] {
                if x >= n {
                    return Err(Error::EndpointOutOfRange { edge: id, vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: id, vertex: u });
            }
            let key = (u.min(v), u.max(v));
            match seen.get(&key) {
                Some(&first) => {
                    // a separation copy may be parallel to anything
                    let first_kind = g.edges[first].kind;
                    if kind != EdgeKind::Separation && first_kind != EdgeKind::Separation {
                        if let Some(other) = g.parallel_non_separation(key, id) {
                            return Err(Error::IllegalParallelEdge { first: other, second: id });
                        }
                    }
                }
                None => {
                    seen.insert(key, id);
                }
            }
            g.edges.push(Edge { u, v, kind });
            g.adjacency[u].push(id);
            g.adjacency[v].push(id);
        }
        Ok(g)
    }

    /// Convenience constructor for a list of original edges.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| (u, v, EdgeKind::Original)))
    }

    fn parallel_non_separation(&self, key: (VertexId, VertexId), _new: EdgeId) -> Option<EdgeId> {
        self.adjacency[key.0]
            .iter()
            .copied()
            .find(|&e| self.edges[e].key() == key && self.edges[e].kind != EdgeKind::Separation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Vertex a dart leaves.
    pub fn tail(&self, d: Dart) -> VertexId {
        let e = &self.edges[d.edge()];
        if d.from_v() {
            e.v
        } else {
            e.u
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.twin())
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Ids of all edges joining `u` and `v`.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.adjacency[u].iter().copied().filter(|&e| self.edges[e].other(u) == v).collect()
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].iter().any(|&e| self.edges[e].other(u) == v)
    }

    /// Number of distinct vertex pairs joined by an original or augmented edge.
    pub fn simple_edge_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind != EdgeKind::Separation)
            .map(Edge::key)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn count_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.components().iter().filter(|c| !c.is_empty()).count() == 1
    }

    /// Vertex sets of connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root];
            comp[root] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &e in &self.adjacency[x] {
                    let y = self.edges[e].other(x);
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Block (biconnected component) decomposition.
    pub fn blocks(&self) -> BlockDecomposition {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        let mut blocks = Vec::new();
        let mut estack: Vec<EdgeId> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX || self.adjacency[root].is_empty() {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, edge used to enter it, next adjacency index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
                if *idx < self.adjacency[v].len() {
                    let e = self.adjacency[v][*idx];
                    *idx += 1;
                    if Some(e) == pe {
                        continue;
                    }
                    let w = self.edges[e].other(v);
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        estack.push(e);
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(e), 0));
                    } else if disc[w] < disc[v] {
                        estack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    let Some(e) = pe else { continue };
                    let p = self.edges[e].other(v);
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block_edges = Vec::new();
                        while let Some(f) = estack.pop() {
                            block_edges.push(f);
                            if f == e {
                                break;
                            }
                        }
                        block_edges.sort_unstable();
                        let vertices: BTreeSet<VertexId> =
                            block_edges.iter().flat_map(|&f| [self.edges[f].u, self.edges[f].v]).collect();
                        blocks.push(Block { edges: block_edges, vertices: vertices.into_iter().collect() });
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        blocks.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
        BlockDecomposition {
            blocks,
            cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        }
    }

    pub fn is_biconnected(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.blocks().blocks.len() == 1
    }

    /// Graph restricted to the given edges; vertex ids are kept.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> Graph {
        let mut g = Graph { n: self.n, edges: Vec::with_capacity(edges.len()), adjacency: vec![Vec::new(); self.n] };
        for &e in edges {
            let edge = self.edges[e];
            let id = g.edges.len();
            g.edges.push(edge);
            g.adjacency[edge.u].push(id);
            g.adjacency[edge.v].push(id);
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub m: usize,
    /// `4n - 8`, absent for n < 3.
    pub bound: Option<usize>,
    pub pass: bool,
    pub tight: bool,
}

/// Checks the `4n - 8` edge bound shared by 1-planar and 1-visible graphs.
pub fn check_density(g: &Graph) -> DensityReport {
    let n = g.n();
    let m = g.simple_edge_count();
    if n < 3 {
        return DensityReport { n, m, bound: None, pass: m <= n * n.saturating_sub(1) / 2, tight: false };
    }
    let bound = 4 * n - 8;
    DensityReport { n, m, bound: Some(bound), pass: m <= bound, tight: m == bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn triangle() {
        let g = Graph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.edge(2).kind, EdgeKind::Original);
        assert!(g.is_biconnected());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_pairs(2, &[(0, 1), (0, 1)]),
            Err(Error::IllegalParallelEdge { first: 0, second: 1 })
        ));
        assert!(matches!(Graph::from_pairs(2, &[(1, 1)]), Err(Error::SelfLoop { edge: 0, vertex: 1 })));
        assert!(matches!(Graph::from_pairs(2, &[(0, 2)]), Err(Error::EndpointOutOfRange { vertex: 2, .. })));
        let g = Graph::new(2, [(0, 1, EdgeKind::Original), (1, 0, EdgeKind::Separation)]).unwrap();
        assert_eq!(g.edges_between(0, 1), vec![0, 1]);
        assert_eq!(g.simple_edge_count(), 1);
    }

    #[test]
    fn k7_minus_e_density() {
        // 1-indexed (2,7) missing
        let pairs: Vec<_> = k(7).into_iter().filter(|&p| p != (1, 6)).collect();
        let g = Graph::from_pairs(7, &pairs).unwrap();
        assert_eq!(g.m(), 20);
        let r = check_density(&g);
        assert!(r.pass && r.tight);
        assert_eq!(r.bound, Some(20));

        let k7 = Graph::from_pairs(7, &k(7)).unwrap();
        let r = check_density(&k7);
        assert!(!r.pass);
        assert_eq!((r.m, r.bound), (21, Some(20)));

        let single = Graph::from_pairs(2, &[(0, 1)]).unwrap();
        assert!(check_density(&single).pass);
    }

    #[test]
    fn density_ignores_separation_copies() {
        let g = Graph::new(
            3,
            [(0, 1, EdgeKind::Original), (1, 2, EdgeKind::Original), (0, 1, EdgeKind::Separation)],
        )
        .unwrap();
        assert_eq!(check_density(&g).m, 2);
    }

    #[test]
    fn bowtie_blocks() {
        let g = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let b = g.blocks();
        assert_eq!(b.blocks.len(), 2);
        assert_eq!(b.cut_vertices, vec![2]);
        assert_eq!(b.blocks[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn cycle_is_one_block() {
        let g = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let b = g.blocks();
        assert_eq!(b.blocks.len(), 1);
        assert!(b.cut_vertices.is_empty());
    }

    /// Brute force: a vertex is a cut vertex iff deleting it raises the
    /// number of components among the remaining non-isolated vertices.
    fn brute_cut_vertices(g: &Graph) -> Vec<VertexId> {
        let count = |skip: Option<VertexId>| {
            let keep: Vec<EdgeId> = (0..g.m()).filter(|&e| skip.map_or(true, |s| !g.edge(e).has_endpoint(s))).collect();
            let sub = g.edge_subgraph(&keep);
            sub.components()
                .iter()
                .filter(|c| c.iter().any(|&x| Some(x) != skip && g.degree(x) > 0))
                .count()
        };
        let base = count(None);
        (0..g.n()).filter(|&v| g.degree(v) > 0 && count(Some(v)) > base).collect()
    }

    #[test]
    fn path_gives_single_edge_blocks() {
        let g = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = g.blocks();
        assert_eq!(b.blocks.len(), 3);
        assert!(b.blocks.iter().all(|blk| blk.edges.len() == 1));
        assert_eq!(b.cut_vertices, brute_cut_vertices(&g));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn blocks_partition_edges(n in 2usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let mut seen = BTreeSet::new();
            let pairs: Vec<_> = raw.into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
                .collect();
            let g = Graph::from_pairs(n, &pairs).unwrap();
            let d = g.blocks();
            let mut all: Vec<EdgeId> = d.blocks.iter().flat_map(|b| b.edges.iter().copied()).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.m()).collect::<Vec<_>>());
            prop_assert_eq!(d.cut_vertices, brute_cut_vertices(&g));
            // each block with >= 2 edges stays connected after removing any one of its vertices
            for b in d.blocks.iter().filter(|b| b.edges.len() > 1) {
                for &x in &b.vertices {
                    let keep: Vec<EdgeId> = b.edges.iter().copied().filter(|&e| !g.edge(e).has_endpoint(x)).collect();
                    let sub = g.edge_subgraph(&keep);
                    let touched: BTreeSet<_> = keep.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
                    let comps = sub.components().into_iter().filter(|c| c.iter().any(|v| touched.contains(v))).count();
                    prop_assert!(comps <= 1);
                }
            }
        }
    }
}
