//! Local patterns of coverings: extraction, recurrence (strong local
//! isomorphism), aperiodicity and configuration censuses.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coverings::{CoveringPatch, Window};
use crate::curves::EmbeddedCurve;
use crate::foldseq::Family;
use crate::lattice::hex::{cell_corner, segment_cell_between, vertex_cells, GosperFrame, GosperTile};
use crate::lattice::{hex_disc, tri_dir_index, Pt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LipError {
    #[error("this check needs a hexagonal window")]
    NotHexagonal,
    #[error("this check needs a Peano-Gosper tile patch")]
    NotGosper,
    #[error("window radius {radius} leaves no core for pattern radius {r}")]
    NoCore { radius: i64, r: i64 },
}

const UNKNOWN: u32 = u32::MAX;

/// State of a lattice vertex: for each of the 6 incident sides whether a
/// segment leaves (1) or enters (2), and for each entering side the side the
/// curve leaves by.
fn encode(slots: &[u8; 6], links: &[u8; 6]) -> u32 {
    let mut s = 0u32;
    for k in 0..6 {
        s |= (slots[k] as u32) << (2 * k);
        s |= (links[k] as u32) << (12 + 3 * k);
    }
    s
}

/// Vertex states of a patch on a dense grid, `UNKNOWN` where the window does
/// not determine them.
#[derive(Debug, Clone)]
pub struct StateGrid {
    lo: Pt,
    w: i64,
    h: i64,
    cells: Vec<u32>,
}

impl StateGrid {
    pub fn from_patch(patch: &CoveringPatch) -> StateGrid {
        let mut slots: HashMap<Pt, ([u8; 6], [u8; 6])> = HashMap::new();
        for c in &patch.curves {
            let v = &c.vertices;
            for i in 0..c.len() {
                let k = tri_dir_index(v[i + 1] - v[i]).expect("unit segment");
                slots.entry(v[i]).or_default().0[k] = 1;
                slots.entry(v[i + 1]).or_default().0[(k + 3) % 6] = 2;
                if i + 1 < c.len() {
                    let j = (k + 3) % 6;
                    let out = tri_dir_index(v[i + 2] - v[i + 1]).expect("unit segment");
                    slots.entry(v[i + 1]).or_default().1[j] = out as u8 + 1;
                }
            }
        }
        let known: Vec<Pt> = match &patch.window {
            Window::Hexagon { center, radius } => hex_disc(*center, radius - 1).collect(),
            Window::Tile { frame, tile } => {
                let cells: HashSet<Pt> = frame.tile_cells(*tile).into_iter().collect();
                slots.keys().copied().filter(|&p| w_point_cells(p).iter().all(|c| cells.contains(c))).collect()
            }
        };
        let (mut lo, mut hi) = (Pt { a: i64::MAX, b: i64::MAX }, Pt { a: i64::MIN, b: i64::MIN });
        for p in &known {
            lo = Pt { a: lo.a.min(p.a), b: lo.b.min(p.b) };
            hi = Pt { a: hi.a.max(p.a), b: hi.b.max(p.b) };
        }
        if known.is_empty() {
            return StateGrid { lo: Pt::default(), w: 0, h: 0, cells: vec![] };
        }
        let (w, h) = (hi.a - lo.a + 1, hi.b - lo.b + 1);
        let mut g = StateGrid { lo, w, h, cells: vec![UNKNOWN; (w * h) as usize] };
        for p in known {
            let s = slots.get(&p).map_or(0, |(a, b)| encode(a, b));
            let i = g.index(p).unwrap();
            g.cells[i] = s;
        }
        g
    }

    fn index(&self, p: Pt) -> Option<usize> {
        let (x, y) = (p.a - self.lo.a, p.b - self.lo.b);
        (x >= 0 && y >= 0 && x < self.w && y < self.h).then(|| (x * self.h + y) as usize)
    }

    pub fn get(&self, p: Pt) -> Option<u32> {
        self.index(p).map(|i| self.cells[i]).filter(|&s| s != UNKNOWN)
    }

    pub fn known(&self) -> Vec<Pt> {
        let mut out = Vec::new();
        for x in 0..self.w {
            for y in 0..self.h {
                if self.cells[(x * self.h + y) as usize] != UNKNOWN {
                    out.push(Pt { a: self.lo.a + x, b: self.lo.b + y });
                }
            }
        }
        out
    }
}

/// Cells holding the 6 sides at a point of `W`.
fn w_point_cells(p: Pt) -> [Pt; 3] {
    [p, Pt { a: p.a - 1, b: p.b }, Pt { a: p.a, b: p.b - 1 }]
}

/// The states of the vertices of the open hexagon `H*(center, radius)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub center: Pt,
    pub radius: i64,
    pub states: Vec<u32>,
}

pub fn extract_pattern(g: &StateGrid, center: Pt, radius: i64) -> Option<Pattern> {
    let states = hex_disc(center, radius - 1).map(|p| g.get(p)).collect::<Option<Vec<u32>>>()?;
    Some(Pattern { center, radius, states })
}

/// Equal up to translation.
pub fn patterns_equal(a: &Pattern, b: &Pattern) -> bool {
    a.radius == b.radius && a.states == b.states
}

/// Pattern ids for every center whose pattern is known.
struct PatternTable {
    ids: HashMap<Pt, u32>,
    count: usize,
}

fn pattern_table(g: &StateGrid, centers: &[Pt], r: i64) -> PatternTable {
    let pats: Vec<Option<Vec<u32>>> = centers.par_iter().map(|&z| extract_pattern(g, z, r).map(|p| p.states)).collect();
    let mut dict: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut ids = HashMap::with_capacity(centers.len());
    for (z, p) in centers.iter().zip(pats) {
        if let Some(p) = p {
            let n = dict.len() as u32;
            ids.insert(*z, *dict.entry(p).or_insert(n));
        }
    }
    PatternTable { ids, count: dict.len() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LipRow {
    pub m: u32,
    /// pattern radius `3^m`
    pub radius: i64,
    /// recurrence radius `5 · 3^m`
    pub reach: i64,
    pub patterns: usize,
    pub cores: usize,
    pub failing_cores: usize,
    /// largest number of patterns missing around a single core
    pub worst_missing: usize,
    pub example_failure: Option<Pt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LipReport {
    pub window_radius: i64,
    pub rows: Vec<LipRow>,
}

impl LipReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.failing_cores == 0 && r.cores > 0)
    }
}

/// For `m = 0..=max_m`: every pattern `H*(x, 3^m)` of the window recurs with
/// its center in `H(y, 5 · 3^m)` for every core point `y`, where the cores
/// are the `y` with `H(y, 6 · 3^m)` inside the window.
pub fn strong_lip_report(patch: &CoveringPatch, max_m: u32) -> Result<LipReport, LipError> {
    let Window::Hexagon { center, radius } = patch.window else { return Err(LipError::NotHexagonal) };
    let g = StateGrid::from_patch(patch);
    let mut rows = Vec::new();
    for m in 0..=max_m {
        let r = 3i64.pow(m);
        let reach = 5 * r;
        if radius - 6 * r < 0 {
            return Err(LipError::NoCore { radius, r });
        }
        let centers: Vec<Pt> = hex_disc(center, radius - r).collect();
        let table = pattern_table(&g, &centers, r);
        let cores: Vec<Pt> = hex_disc(center, radius - 6 * r).collect();
        let missing: Vec<(Pt, usize)> = cores
            .par_iter()
            .map_init(
                || (vec![u32::MAX; table.count], 0u32),
                |(stamp, tick), &y| {
                    *tick += 1;
                    let mut seen = 0;
                    for z in hex_disc(y, reach) {
                        let id = table.ids[&z] as usize;
                        if stamp[id] != *tick {
                            stamp[id] = *tick;
                            seen += 1;
                        }
                    }
                    (y, table.count - seen)
                },
            )
            .filter(|&(_, k)| k > 0)
            .collect();
        rows.push(LipRow {
            m,
            radius: r,
            reach,
            patterns: table.count,
            cores: cores.len(),
            failing_cores: missing.len(),
            worst_missing: missing.iter().map(|x| x.1).max().unwrap_or(0),
            example_failure: missing.iter().min_by_key(|x| (x.0 - center).hex_norm()).map(|x| x.0),
        });
    }
    Ok(LipReport { window_radius: radius, rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AperiodicityReport {
    pub max_norm: f64,
    pub shifts_checked: usize,
    /// shifts under which the patch agrees with itself on the whole overlap,
    /// or whose overlap is empty
    pub unrefuted: Vec<Pt>,
    pub min_overlap: usize,
}

impl AperiodicityReport {
    pub fn passes(&self) -> bool {
        self.unrefuted.is_empty()
    }
}

/// Looks for translations of norm at most `max_norm` (in unit sides of the
/// drawn curves) that leave the patch unchanged wherever both sides are known.
pub fn aperiodicity_check(patch: &CoveringPatch, max_norm: f64) -> AperiodicityReport {
    // Peano-Gosper curves live on W, whose unit is sqrt(3) hexagon sides
    let scale = if patch.family == Family::Gosper { 3.0 } else { 1.0 };
    let g = StateGrid::from_patch(patch);
    let known = g.known();
    let bound = (max_norm * 2.0).ceil() as i64 + 1;
    let shifts: Vec<Pt> = hex_disc(Pt::default(), bound)
        .filter(|v| *v != Pt::default() && (v.norm2() as f64) * scale <= max_norm * max_norm + 1e-9)
        .collect();
    let results: Vec<(Pt, usize, bool)> = shifts
        .par_iter()
        .map(|&v| {
            let mut overlap = 0;
            let mut differs = false;
            for &p in &known {
                if let Some(t) = g.get(p + v) {
                    overlap += 1;
                    if t != g.get(p).unwrap() {
                        differs = true;
                        break;
                    }
                }
            }
            (v, overlap, differs)
        })
        .collect();
    let mut unrefuted: Vec<Pt> = results.iter().filter(|r| !r.2).map(|r| r.0).collect();
    unrefuted.sort();
    AperiodicityReport {
        max_norm,
        shifts_checked: shifts.len(),
        unrefuted,
        min_overlap: results.iter().filter(|r| r.2).map(|r| r.1).min().unwrap_or(0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Equivalence {
    /// translations only
    Translation,
    /// translations, rotations by `2kπ/3` about the vertex, reversing every curve
    Full,
}

/// Restriction of a covering to the three hexagons around one vertex: the
/// maximal runs of consecutive segments inside them, in fine coordinates
/// relative to the vertex.
pub type Configuration = Vec<Vec<Pt>>;

fn canonical(chains: Configuration, eq: Equivalence) -> Configuration {
    let norm = |mut c: Configuration| {
        c.sort();
        c
    };
    match eq {
        Equivalence::Translation => norm(chains),
        Equivalence::Full => {
            let mut best: Option<Configuration> = None;
            for k in [0, 2, 4] {
                for rev in [false, true] {
                    let c: Configuration = chains
                        .iter()
                        .map(|ch| {
                            let mut v: Vec<Pt> = ch.iter().map(|p| p.rot60(k)).collect();
                            if rev {
                                v.reverse();
                            }
                            v
                        })
                        .collect();
                    let c = norm(c);
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                }
            }
            best.unwrap()
        }
    }
}

/// Configurations `C ↾ Q^0_x` for every hexagon vertex `x` whose three
/// hexagons all lie in `cells`.
pub fn config_census(curves: &[EmbeddedCurve], cells: &HashSet<Pt>, eq: Equivalence) -> BTreeSet<Configuration> {
    let mut at: HashMap<Pt, (usize, usize)> = HashMap::new();
    for (ci, c) in curves.iter().enumerate() {
        for i in 0..c.len() {
            let cell = segment_cell_between(c.vertices[i], c.vertices[i + 1]).expect("unit segment");
            at.insert(cell, (ci, i));
        }
    }
    let mut vertices: BTreeSet<Pt> = BTreeSet::new();
    for &c in cells {
        for j in 0..6 {
            vertices.insert(cell_corner(c, j));
        }
    }
    let mut out = BTreeSet::new();
    for v in vertices {
        let around = vertex_cells(v);
        if !around.iter().all(|c| cells.contains(c)) {
            continue;
        }
        let mut segs: Vec<(usize, usize)> = around.iter().filter_map(|c| at.get(c).copied()).collect();
        segs.sort();
        let mut chains: Configuration = Vec::new();
        let mut prev: Option<(usize, usize)> = None;
        for (ci, i) in segs {
            let c = &curves[ci];
            let (p, q) = (c.vertices[i] * 3 - v, c.vertices[i + 1] * 3 - v);
            match prev {
                Some((pc, pi)) if pc == ci && pi + 1 == i => chains.last_mut().unwrap().push(q),
                _ => chains.push(vec![p, q]),
            }
            prev = Some((ci, i));
        }
        out.insert(canonical(chains, eq));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtileCensus {
    pub tile: GosperTile,
    pub present: usize,
    pub missing: usize,
}

fn descendants(frame: &GosperFrame, t: GosperTile, level: u32) -> Vec<GosperTile> {
    if t.level == level {
        return vec![t];
    }
    frame.children(t).iter().flat_map(|&c| descendants(frame, c, level)).collect()
}

/// For each level-`level` subtile of a Peano-Gosper tile patch, how many of
/// the patch's configurations it fails to contain.
pub fn gosper_recurrence(patch: &CoveringPatch, level: u32, eq: Equivalence) -> Result<Vec<SubtileCensus>, LipError> {
    let Window::Tile { frame, tile } = &patch.window else { return Err(LipError::NotGosper) };
    let all: HashSet<Pt> = frame.tile_cells(*tile).into_iter().collect();
    let global = config_census(&patch.curves, &all, eq);
    Ok(descendants(frame, *tile, level)
        .par_iter()
        .map(|&s| {
            let cells: HashSet<Pt> = frame.tile_cells(s).into_iter().collect();
            let here = config_census(&patch.curves, &cells, eq);
            SubtileCensus { tile: s, present: here.len(), missing: global.difference(&here).count() }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalIsoReport {
    pub radius: i64,
    pub patterns_a: usize,
    pub patterns_b: usize,
    pub missing_in_b: usize,
    pub missing_in_a: usize,
}

impl LocalIsoReport {
    pub fn isomorphic(&self) -> bool {
        self.missing_in_a == 0 && self.missing_in_b == 0
    }
}

/// Compares the sets of radius-`r` patterns of two patches.
pub fn local_iso_compare(a: &CoveringPatch, b: &CoveringPatch, r: i64) -> LocalIsoReport {
    let set = |p: &CoveringPatch| -> HashSet<Vec<u32>> {
        let g = StateGrid::from_patch(p);
        g.known().into_iter().filter_map(|z| extract_pattern(&g, z, r).map(|x| x.states)).collect()
    };
    let (sa, sb) = (set(a), set(b));
    LocalIsoReport {
        radius: r,
        patterns_a: sa.len(),
        patterns_b: sb.len(),
        missing_in_b: sa.difference(&sb).count(),
        missing_in_a: sb.difference(&sa).count(),
    }
}
