//! End-to-end construction of a 1-visibility representation from a
//! 1-planar embedding.
//!
//! Stages: validate, augment to planar-maximal, fix up the outer face,
//! add separation edges, split off the crossing pairs, draw the remaining
//! plane graph, choose crossed vertices and put the crossing pairs back.
//! Graphs that stay separable after augmentation are drawn block by block;
//! disconnected graphs component by component.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::augmentation::{augment_planarization, cover_outer_crossing, fill_separation_gaps, normalize_outer, parallel_pairs};
use crate::crossing::{classify_face, finalize, insert_crossing, match_crossed_vertices, CrossingEdges};
use crate::embedding::{planarize, validate_embedding, OnePlanarEmbedding};
use crate::error::{Error, Result};
use crate::graph::{check_density, Dart, EdgeId, EdgeKind, Graph, VertexId};
use crate::layout::{VertexBar, VisibilityLayout};
use crate::planar_layout::{default_st_dart, dual_distances, planar_visibility, st_number};

/// Horizontal space between side-by-side pieces, in quarter units.
pub const PIECE_GAP: i64 = 8;

/// Placeholder id of helper segments until the final renumbering.
const HELPER: EdgeId = usize::MAX;

/// How graphs that are not 2-connected are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockMode {
    /// Let the augmentation connect the blocks; compose blocks only if
    /// that is not enough.
    #[default]
    Augment,
    /// Always draw blocks separately and join them at cut vertices.
    Compose,
    /// Refuse graphs that are not 2-connected.
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub blocks: BlockMode,
    /// Reject graphs with more than `4n - 8` edges up front.
    pub check_density: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { blocks: BlockMode::Augment, check_density: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageTiming {
    pub stage: &'static str,
    pub micros: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct PipelineReport {
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub augmented_edges: usize,
    pub separation_edges: usize,
    pub crossing_faces: usize,
    /// Number of separately drawn pieces (blocks or components).
    pub pieces: usize,
    /// Width in whole units after scaling.
    pub width: i64,
    pub height: i64,
    /// Whether the drawing fits `(8n - 20) x (n - 1)`; only checked for n >= 5.
    pub within_bound: Option<bool>,
    pub timings: Vec<StageTiming>,
    pub warnings: Vec<String>,
    /// The crossed-vertex assignment of each drawn piece, in piece-local
    /// vertex ids.
    #[serde(skip)]
    pub matchings: Vec<MatchingRecord>,
}

/// Candidate pairs of the crossing faces of one piece and the vertex chosen
/// for each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingRecord {
    pub candidates: Vec<[VertexId; 2]>,
    pub crossed: Vec<VertexId>,
}

impl PipelineReport {
    fn time<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.add_time(stage, start.elapsed());
        out
    }

    fn add_time(&mut self, stage: &'static str, d: Duration) {
        match self.timings.iter_mut().find(|t| t.stage == stage) {
            Some(t) => t.micros += d.as_micros(),
            None => self.timings.push(StageTiming { stage, micros: d.as_micros() }),
        }
    }
}

/// Runs the pipeline with default options.
pub fn one_visibility(emb: &OnePlanarEmbedding) -> Result<(VisibilityLayout, PipelineReport)> {
    one_visibility_with(emb, &PipelineOptions::default())
}

/// Runs the pipeline, drawing blocks separately whenever the graph is not
/// 2-connected.
pub fn layout_blocks(emb: &OnePlanarEmbedding) -> Result<(VisibilityLayout, PipelineReport)> {
    one_visibility_with(emb, &PipelineOptions { blocks: BlockMode::Compose, ..Default::default() })
}

pub fn one_visibility_with(emb: &OnePlanarEmbedding, opts: &PipelineOptions) -> Result<(VisibilityLayout, PipelineReport)> {
    let g = &emb.graph;
    let mut report = PipelineReport { n: g.n(), m: g.m(), crossings: emb.crossings.len(), ..Default::default() };
    if opts.check_density {
        let d = check_density(g);
        if let (false, Some(bound)) = (d.pass, d.bound) {
            return Err(Error::DensityViolation { n: d.n, m: d.m, bound });
        }
    }
    let valid = report.time("validate", || validate_embedding(emb));
    if !valid.is_valid() {
        let msg: Vec<String> = valid.violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidEmbedding(msg.join("; ")));
    }
    if opts.blocks == BlockMode::Reject && !g.is_biconnected() {
        return Err(Error::NotBiconnected);
    }

    let mut layout = VisibilityLayout::default();
    let mut right = -PIECE_GAP;
    for comp in g.components() {
        let edges: Vec<EdgeId> = (0..g.m()).filter(|&e| comp.binary_search(&g.edge(e).u).is_ok()).collect();
        let mut piece = if edges.is_empty() {
            report.pieces += 1;
            VisibilityLayout { vertices: vec![VertexBar { id: comp[0], y: 0, x_lo: 0, x_hi: 0 }], ..Default::default() }
        } else {
            let (sub, vmap, emap) = restrict(emb, &comp, &edges, None);
            let mut piece = draw_component(&sub, opts.blocks, &mut report)?;
            relabel(&mut piece, &vmap, &emap);
            piece
        };
        let lo = piece.vertices.iter().map(|b| b.x_lo).min().unwrap_or(0);
        piece.shift(right + PIECE_GAP - lo, 0);
        right = piece.vertices.iter().map(|b| b.x_hi).chain(piece.edges.iter().map(|e| e.x)).max().unwrap_or(right);
        layout.vertices.extend(piece.vertices);
        layout.edges.extend(piece.edges);
        layout.crossings.extend(piece.crossings);
    }

    report.time("finalize", || {
        let mut next = g.m();
        for e in layout.edges.iter_mut().filter(|e| e.id == HELPER) {
            e.id = next;
            next += 1;
        }
        finalize(&mut layout, |e| e >= g.m() || g.edge(e).kind.is_helper());
    });
    let ext = layout.extent();
    report.width = ext.width;
    report.height = ext.height;
    let n = g.n() as i64;
    if n >= 5 {
        let ok = ext.width <= 8 * n - 20 && ext.height <= n - 1;
        report.within_bound = Some(ok);
        if !ok {
            report.warnings.push(format!("drawing is {}x{}, above the (8n-20)x(n-1) bound", ext.width, ext.height));
        }
    }
    Ok((layout, report))
}

fn draw_component(emb: &OnePlanarEmbedding, mode: BlockMode, report: &mut PipelineReport) -> Result<VisibilityLayout> {
    let separable = emb.graph.m() > 1 && !emb.graph.is_biconnected();
    match mode {
        BlockMode::Compose if separable => draw_blocks(emb, report),
        _ => match draw_connected(emb, None, report) {
            Err(Error::NotBiconnected) if separable && mode == BlockMode::Augment => {
                report.warnings.push("augmentation left cut vertices; blocks drawn separately".into());
                draw_blocks(emb, report)
            }
            other => other,
        },
    }
}

/// Sub-embedding on the given vertices and edges, with maps from local to
/// original ids. The outer face is chosen at `source` if given.
fn restrict(
    emb: &OnePlanarEmbedding,
    vertices: &[VertexId],
    edges: &[EdgeId],
    source: Option<VertexId>,
) -> (OnePlanarEmbedding, Vec<VertexId>, Vec<EdgeId>) {
    let g = &emb.graph;
    let mut vloc = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        vloc[v] = i;
    }
    let mut eloc = vec![usize::MAX; g.m()];
    for (i, &e) in edges.iter().enumerate() {
        eloc[e] = i;
    }
    let graph = Graph::new(
        vertices.len(),
        edges.iter().map(|&e| {
            let ed = g.edge(e);
            (vloc[ed.u], vloc[ed.v], ed.kind)
        }),
    )
    .expect("sub-graph of a valid graph");
    let map_dart = |d: Dart| (eloc[d.edge()] != usize::MAX).then(|| Dart::new(eloc[d.edge()], d.from_v()));
    let rotation: Vec<Vec<Dart>> = vertices.iter().map(|&v| emb.rotation[v].iter().filter_map(|&d| map_dart(d)).collect()).collect();
    let crossings = emb
        .crossings
        .iter()
        .filter(|[a, b]| eloc[*a] != usize::MAX && eloc[*b] != usize::MAX)
        .map(|&[a, b]| [eloc[a], eloc[b]])
        .collect();
    let outer_dart = match source {
        Some(s) => rotation[vloc[s]].first().copied(),
        None => emb.outer_dart.and_then(map_dart),
    };
    (OnePlanarEmbedding { graph, rotation, crossings, outer_dart }, vertices.to_vec(), edges.to_vec())
}

fn relabel(layout: &mut VisibilityLayout, vmap: &[VertexId], emap: &[EdgeId]) {
    for b in &mut layout.vertices {
        b.id = vmap[b.id];
    }
    for e in &mut layout.edges {
        e.u = vmap[e.u];
        e.v = vmap[e.v];
        if e.id != HELPER {
            e.id = emap[e.id];
        }
    }
    for c in &mut layout.crossings {
        c.edge = emap[c.edge];
        c.vertex = vmap[c.vertex];
    }
    layout.vertices.sort_by_key(|b| b.id);
}

/// Draws a connected embedding whose augmentation is 2-connected. With a
/// `source`, that vertex becomes the bottom vertex spanning the full width.
fn draw_connected(emb: &OnePlanarEmbedding, source: Option<VertexId>, report: &mut PipelineReport) -> Result<VisibilityLayout> {
    report.pieces += 1;
    let mut p = report.time("planarize", || planarize(emb))?;
    report.time("augment", || augment_planarization(&mut p));
    report.time("normalize", || normalize_outer(&mut p));
    report.time("separation edges", || {
        for (u, v) in parallel_pairs(&p) {
            fill_separation_gaps(&mut p, u, v);
        }
        cover_outer_crossing(&mut p);
    });
    for r in p.edges.iter().filter(|r| r.live) {
        match r.kind {
            EdgeKind::Augmented => report.augmented_edges += 1,
            EdgeKind::Separation => report.separation_edges += 1,
            EdgeKind::Original => {}
        }
    }

    let n = p.n_original;
    let (skeleton, kites) = report.time("extract crossings", || {
        let mut sk = p.map.clone();
        let dummy_edges: Vec<usize> =
            sk.live_edges().filter(|&e| p.is_dummy(sk.origin(Dart(2 * e))) || p.is_dummy(sk.origin(Dart(2 * e + 1)))).collect();
        for e in dummy_edges {
            sk.remove_edge(e);
        }
        let kites: Vec<Dart> = (0..p.crossing_count()).map(|i| p.map.face_next(p.map.darts_around(p.dummy(i))[0])).collect();
        (sk, kites)
    });

    let start = Instant::now();
    let st = st_number(&skeleton, n, default_st_dart(&skeleton, p.outer, source))?;
    let dist = dual_distances(&skeleton, n, &st, &kites)?;
    let mut layout = planar_visibility(&skeleton, n, &st, &dist);
    report.add_time("planar layout", start.elapsed());
    for seg in &mut layout.edges {
        let e = p.owner[seg.id];
        seg.hidden = p.edges[e].kind.is_helper();
        seg.id = if seg.hidden { HELPER } else { e };
    }

    let shapes = report.time("matching", || {
        let shapes = kites.iter().map(|&k| classify_face(&skeleton, &dist, k)).collect::<Result<Vec<_>>>()?;
        let crossed = match_crossed_vertices(&shapes)?;
        Ok::<_, Error>((shapes, crossed))
    })?;
    report.crossing_faces += shapes.0.len();
    report.matchings.push(MatchingRecord { candidates: shapes.0.iter().map(|s| s.candidates()).collect(), crossed: shapes.1.clone() });
    report.time("crossing insertion", || {
        for (i, (shape, &crossed)) in shapes.0.iter().zip(&shapes.1).enumerate() {
            let [e1, e2] = p.crossings[i];
            let joins_ac = p.edges[e1].has_endpoint(shape.a) && p.edges[e1].has_endpoint(shape.c);
            let ids = if joins_ac { CrossingEdges { ac: e1, bd: e2 } } else { CrossingEdges { ac: e2, bd: e1 } };
            insert_crossing(&mut layout, shape, crossed, ids);
        }
    });
    Ok(layout)
}

/// Draws each block with its parent cut vertex at the bottom and hangs it
/// to the right of that vertex's bar in the parent drawing.
fn draw_blocks(emb: &OnePlanarEmbedding, report: &mut PipelineReport) -> Result<VisibilityLayout> {
    let g = &emb.graph;
    let dec = report.time("decompose", || g.blocks());
    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, b) in dec.blocks.iter().enumerate() {
        for &v in &b.vertices {
            blocks_of[v].push(i);
        }
    }
    let mut seen = vec![false; dec.blocks.len()];
    seen[0] = true;
    draw_block_tree(emb, &dec.blocks, &blocks_of, &mut seen, 0, None, report)
}

fn draw_block_tree(
    emb: &OnePlanarEmbedding,
    blocks: &[crate::graph::Block],
    blocks_of: &[Vec<usize>],
    seen: &mut [bool],
    bi: usize,
    parent: Option<VertexId>,
    report: &mut PipelineReport,
) -> Result<VisibilityLayout> {
    let b = &blocks[bi];
    let (sub, vmap, emap) = restrict(emb, &b.vertices, &b.edges, parent);
    let local_source = parent.map(|v| vmap.binary_search(&v).expect("cut vertex in block"));
    let mut layout = draw_connected(&sub, local_source, report)?;
    relabel(&mut layout, &vmap, &emap);
    for &v in &b.vertices {
        if Some(v) == parent {
            continue;
        }
        for &ci in &blocks_of[v] {
            if seen[ci] {
                continue;
            }
            seen[ci] = true;
            let child = draw_block_tree(emb, blocks, blocks_of, seen, ci, Some(v), report)?;
            attach(&mut layout, v, child)?;
        }
    }
    Ok(layout)
}

/// Opens an empty strip right of the bar of `v` and empty levels above it,
/// places `child` there and extends the bar of `v` over it. In `child`, `v`
/// must be the bottom vertex spanning the whole width.
fn attach(parent: &mut VisibilityLayout, v: VertexId, mut child: VisibilityLayout) -> Result<()> {
    let cb = *child.bar(v).ok_or_else(|| Error::UnsupportedBlockStructure(format!("vertex {v} missing in block")))?;
    let c_lo = child.vertices.iter().map(|b| b.x_lo).chain(child.edges.iter().map(|e| e.x)).min().unwrap_or(0);
    let c_hi = child.vertices.iter().map(|b| b.x_hi).chain(child.edges.iter().map(|e| e.x)).max().unwrap_or(0);
    let c_bottom = child.vertices.iter().map(|b| b.y).min().unwrap_or(0);
    let below = child.vertices.iter().filter(|b| b.y == cb.y).count();
    if cb.y != c_bottom || below != 1 || cb.x_lo != c_lo || cb.x_hi != c_hi {
        return Err(Error::UnsupportedBlockStructure(format!("cut vertex {v} is not the base of its block")));
    }
    let height = child.vertices.iter().map(|b| b.y).max().unwrap_or(0) - c_bottom;
    let pb = *parent.bar(v).expect("cut vertex in parent");
    let dx = (c_hi - c_lo) + PIECE_GAP;
    for b in &mut parent.vertices {
        if b.x_lo > pb.x_hi {
            b.x_lo += dx;
        }
        // bars ending with v's keep reaching the right border
        if b.x_hi >= pb.x_hi {
            b.x_hi += dx;
        }
        if b.y > pb.y {
            b.y += height;
        }
    }
    for e in &mut parent.edges {
        if e.x > pb.x_hi {
            e.x += dx;
        }
        if e.y_lo > pb.y {
            e.y_lo += height;
        }
        if e.y_hi > pb.y {
            e.y_hi += height;
        }
    }
    child.shift(pb.x_hi + PIECE_GAP - c_lo, pb.y - c_bottom);
    let new_hi = pb.x_hi + dx;
    for b in parent.vertices.iter_mut().filter(|b| b.id == v) {
        b.x_hi = new_hi;
    }
    parent.vertices.extend(child.vertices.into_iter().filter(|b| b.id != v));
    parent.vertices.sort_by_key(|b| b.id);
    parent.edges.extend(child.edges);
    parent.crossings.extend(child.crossings);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augmentation::ConfigKind;
    use crate::embedding::embedding_from_coordinates;
    use crate::generators::{gen_config, gen_random_1planar, gen_xq};

    fn crossings_of(l: &VisibilityLayout) -> Vec<(EdgeId, VertexId)> {
        let mut out = Vec::new();
        for e in &l.edges {
            for b in &l.vertices {
                if b.y > e.y_lo && b.y < e.y_hi && b.x_lo <= e.x && e.x <= b.x_hi {
                    out.push((e.id, b.id));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn check(emb: &OnePlanarEmbedding, l: &VisibilityLayout) {
        let g = &emb.graph;
        let bar = |v: VertexId| l.bar(v).unwrap();
        for e in &l.edges {
            let (bu, bv) = (bar(e.u), bar(e.v));
            assert_eq!((e.y_lo, e.y_hi), (bu.y.min(bv.y), bu.y.max(bv.y)), "edge {}", e.id);
            assert!(bu.x_lo <= e.x && e.x <= bu.x_hi, "edge {} off bar {}", e.id, e.u);
            assert!(bv.x_lo <= e.x && e.x <= bv.x_hi, "edge {} off bar {}", e.id, e.v);
            if e.id < g.m() {
                assert_eq!(g.edge(e.id).key(), (e.u.min(e.v), e.u.max(e.v)));
            }
        }
        let mut expected: Vec<(EdgeId, VertexId)> = l.crossings.iter().map(|c| (c.edge, c.vertex)).collect();
        expected.sort_unstable();
        assert_eq!(crossings_of(l), expected);
        assert_eq!(l.crossings.len(), emb.crossings.len());
        assert_eq!(l.visible_edge_count(), g.count_kind(EdgeKind::Original));
        let r = crate::verify::verify_layout(l, g);
        assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn xq8_fits_the_bound() {
        let emb = gen_xq(8).unwrap();
        let (l, r) = one_visibility(&emb).unwrap();
        check(&emb, &l);
        assert_eq!(r.within_bound, Some(true));
        assert!(r.width <= 60 && r.height <= 9);
        assert_eq!(r.augmented_edges, 0);
    }

    #[test]
    fn plane_k4_has_no_crossings() {
        let g = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap();
        let emb = embedding_from_coordinates(g, &[(0, 0), (12, 0), (6, 12), (6, 4)], &[], None);
        let (l, r) = one_visibility(&emb).unwrap();
        check(&emb, &l);
        assert!(l.crossings.is_empty());
        assert_eq!(r.augmented_edges, 0);
    }

    #[test]
    fn gadgets() {
        for kind in [ConfigKind::B, ConfigKind::W, ConfigKind::X] {
            for aug in [false, true] {
                let emb = gen_config(kind, aug);
                let (l, _) = one_visibility(&emb).unwrap();
                check(&emb, &l);
            }
        }
    }

    #[test]
    fn random_instances() {
        for seed in 0..40 {
            let n = 4 + (seed as usize * 13) % 80;
            let emb = gen_random_1planar(n, seed).unwrap();
            let (l, r) = one_visibility(&emb).unwrap();
            check(&emb, &l);
            assert_eq!(r.within_bound.unwrap_or(true), true, "seed {seed}: {:?}", r.warnings);
        }
    }

    #[test]
    fn bowtie_and_chain_compose() {
        // two triangles sharing vertex 2
        let g = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let emb = embedding_from_coordinates(g, &[(0, 0), (4, 0), (4, 4), (8, 4), (8, 8)], &[], None);
        let (l, r) = layout_blocks(&emb).unwrap();
        check(&emb, &l);
        assert_eq!(r.pieces, 2);
        // a path of three edges: three blocks, two gaps
        let g = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let emb = embedding_from_coordinates(g, &[(0, 0), (4, 0), (8, 0), (12, 0)], &[], None);
        let (l, r) = layout_blocks(&emb).unwrap();
        check(&emb, &l);
        assert_eq!(r.width, 2 * PIECE_GAP);
        assert!(matches!(
            one_visibility_with(&emb, &PipelineOptions { blocks: BlockMode::Reject, ..Default::default() }),
            Err(Error::NotBiconnected)
        ));
        // the default mode augments the path instead
        let (l, _) = one_visibility(&emb).unwrap();
        check(&emb, &l);
    }

    #[test]
    fn disconnected_and_tiny() {
        let g = Graph::from_pairs(5, &[(0, 1), (2, 3)]).unwrap();
        let emb = embedding_from_coordinates(g, &[(0, 0), (4, 0), (8, 0), (12, 0), (16, 0)], &[], None);
        let (l, r) = one_visibility(&emb).unwrap();
        check(&emb, &l);
        assert_eq!(r.pieces, 3);
        assert_eq!(l.vertices.len(), 5);
    }

    #[test]
    fn density_is_checked_first() {
        let pairs: Vec<(usize, usize)> = (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b))).collect();
        let g = Graph::from_pairs(7, &pairs).unwrap();
        let rot = (0..7).map(|v| g.incident(v).iter().map(|&e| Dart::new(e, g.edge(e).u != v)).collect()).collect();
        let emb = OnePlanarEmbedding { graph: g, rotation: rot, crossings: vec![], outer_dart: None };
        // the rotation is not planar either, but density is checked first
        let err = one_visibility(&emb).unwrap_err();
        assert!(matches!(err, Error::DensityViolation { n: 7, m: 21, bound: 20 }));
    }
}
