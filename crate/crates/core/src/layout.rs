//! Visibility layout data: horizontal vertex bars and vertical edge
//! segments on an integer grid.
//!
//! x coordinates are in quarter units (a whole unit is 4), so the
//! fractional offsets used for crossings stay exact. y coordinates are whole
//! levels.

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexBar {
    pub id: VertexId,
    pub y: i64,
    pub x_lo: i64,
    pub x_hi: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSegment {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub x: i64,
    pub y_lo: i64,
    pub y_hi: i64,
    pub hidden: bool,
}

/// Edge `edge` passes through the bar of `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub edge: EdgeId,
    pub vertex: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VisibilityLayout {
    pub vertices: Vec<VertexBar>,
    pub edges: Vec<EdgeSegment>,
    pub crossings: Vec<CrossingRecord>,
}

/// Extent of a layout in grid units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Extent {
    /// In quarter units, equal to whole units after the final x4 scaling.
    pub width: i64,
    pub height: i64,
}

impl VisibilityLayout {
    pub fn bar(&self, v: VertexId) -> Option<&VertexBar> {
        self.vertices.iter().find(|b| b.id == v)
    }

    pub fn extent(&self) -> Extent {
        let xs = self.vertices.iter().flat_map(|b| [b.x_lo, b.x_hi]).chain(self.edges.iter().map(|e| e.x));
        let (lo, hi) = xs.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let ys = self.vertices.iter().map(|b| b.y);
        let (ylo, yhi) = ys.fold((i64::MAX, i64::MIN), |(lo, hi), y| (lo.min(y), hi.max(y)));
        Extent { width: if lo <= hi { hi - lo } else { 0 }, height: if ylo <= yhi { yhi - ylo } else { 0 } }
    }

    pub fn visible_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.hidden).count()
    }

    /// Moves everything by `dx` quarter units and `dy` levels.
    pub fn shift(&mut self, dx: i64, dy: i64) {
        for b in &mut self.vertices {
            b.x_lo += dx;
            b.x_hi += dx;
            b.y += dy;
        }
        for e in &mut self.edges {
            e.x += dx;
            e.y_lo += dy;
            e.y_hi += dy;
        }
    }

    /// Sorts bars by vertex id, segments by edge id and crossings.
    pub fn canonicalize(&mut self) {
        self.vertices.sort_by_key(|b| b.id);
        self.edges.sort_by_key(|e| e.id);
        self.crossings.sort();
    }
}
