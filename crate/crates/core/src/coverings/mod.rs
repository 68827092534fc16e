//! Finite patches of plane coverings.

pub mod gosper;
pub mod tri;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::EmbeddedCurve;
use crate::foldseq::{Family, FoldError, FoldSpec};
use crate::lattice::hex::{segment_cell_between, GosperFrame, GosperTile};
use crate::lattice::{hex_disc, tri_dir_index, OrientedSide, Pt, TRI_DIRS};

pub use gosper::{
    assemble_gosper_covering_patch, child_extension_counts, classify_regions, enumerate_extensions,
    gosper_tile_coverings, Assembly, ChildExtensions, RegionCount, RegionReport, TileRelation,
};
pub use tri::{build_tri_covering_patch, connect_limit_patch, limit_depth_for_radius, Alpha};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoveringError {
    #[error("window radius {radius} is below the curve diameter bound {needed:.3}")]
    WindowTooSmall { radius: i64, needed: f64 },
    #[error("X-prefix does not fit the connection rule: {0}")]
    InconsistentPrefix(String),
    #[error("invalid X-prefix: {0}")]
    InvalidPrefix(String),
    #[error("tile is not a child of the parent")]
    NotAChild,
    #[error("orientation class must be 1 or 2, got {0}")]
    BadClass(u8),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Window {
    /// Closed hexagon `H(center, radius)` of the triangular lattice.
    Hexagon { center: Pt, radius: i64 },
    /// One Peano-Gosper tile.
    Tile { frame: GosperFrame, tile: GosperTile },
}

impl Window {
    pub fn contains_vertex(&self, p: Pt) -> bool {
        match self {
            Window::Hexagon { center, radius } => (p - *center).hex_norm() <= *radius,
            Window::Tile { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringPatch {
    pub family: Family,
    pub window: Window,
    pub curves: Vec<EmbeddedCurve>,
    pub truncated: Vec<bool>,
    pub spec: FoldSpec,
    pub anchor: Pt,
    pub x_prefix: Vec<Pt>,
}

impl CoveringPatch {
    pub fn segments(&self) -> impl Iterator<Item = OrientedSide> + '_ {
        self.curves.iter().flat_map(|c| c.edges())
    }

    pub fn num_segments(&self) -> usize {
        self.curves.iter().map(|c| c.len()).sum()
    }

    /// Same patch with curve `i` reversed.
    pub fn with_curve_flipped(&self, i: usize) -> CoveringPatch {
        let mut p = self.clone();
        p.curves[i] = p.curves[i].reversed();
        p
    }

    /// Supports of the window that are not used exactly once, with their use counts.
    pub fn coverage_defects(&self) -> Vec<((Pt, Pt), usize)> {
        let mut count: HashMap<(Pt, Pt), usize> = HashMap::new();
        match &self.window {
            Window::Hexagon { center, radius } => {
                for p in hex_disc(*center, *radius) {
                    for d in &TRI_DIRS[..3] {
                        let q = p + *d;
                        if (q - *center).hex_norm() <= *radius {
                            count.insert(OrientedSide::new(p, q).key(), 0);
                        }
                    }
                }
                for e in self.segments() {
                    *count.entry(e.key()).or_insert(0) += 1;
                }
            }
            Window::Tile { frame, tile } => {
                for c in frame.tile_cells(*tile) {
                    count.insert((c, Pt::default()), 0);
                }
                for e in self.segments() {
                    let c = segment_cell_between(e.from, e.to).expect("unit segment");
                    *count.entry((c, Pt::default())).or_insert(0) += 1;
                }
            }
        }
        let mut bad: Vec<_> = count.into_iter().filter(|&(_, n)| n != 1).collect();
        bad.sort();
        bad
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("segments {a:?} and {b:?} break property (P)")]
pub struct Violation {
    pub a: OrientedSide,
    pub b: OrientedSide,
}

/// Triangular: all used sides of any unit triangle turn the same way around it.
/// Peano-Gosper: opposite sides of a rhombus carry opposite orientations.
pub fn check_property_p(patch: &CoveringPatch) -> Result<(), Violation> {
    let segs: Vec<OrientedSide> = patch.segments().collect();
    let set: HashSet<OrientedSide> = segs.iter().copied().collect();
    match patch.family {
        Family::Gosper => {
            for &s in &segs {
                let k = tri_dir_index(s.delta()).expect("unit segment");
                for j in [1, 2, 4, 5] {
                    let v = TRI_DIRS[(k + j) % 6];
                    let same = OrientedSide::new(s.from + v, s.to + v);
                    if set.contains(&same) {
                        return Err(Violation { a: s, b: same });
                    }
                }
            }
            Ok(())
        }
        _ => {
            // a side p -> p + d_k turns counterclockwise around the triangle on its left
            // and clockwise around the one on its right
            let mut turn: HashMap<(Pt, Pt, Pt), (bool, OrientedSide)> = HashMap::new();
            for &s in &segs {
                let k = tri_dir_index(s.delta()).expect("unit segment");
                let left = s.from + TRI_DIRS[(k + 1) % 6];
                let right = s.from + TRI_DIRS[(k + 5) % 6];
                for (apex, ccw) in [(left, true), (right, false)] {
                    let mut tri = [s.from, s.to, apex];
                    tri.sort();
                    match turn.get(&(tri[0], tri[1], tri[2])) {
                        Some(&(other, o)) if other != ccw => return Err(Violation { a: o, b: s }),
                        Some(_) => {}
                        None => {
                            turn.insert((tri[0], tri[1], tri[2]), (ccw, s));
                        }
                    }
                }
            }
            Ok(())
        }
    }
}
