//! Hexagonal tiling and Peano-Gosper substitution tiles.
//!
//! The vertex class `W` is the triangular lattice itself (coarse points). A
//! hexagon cell `c` is the up-triangle `(c, c + e0, c + e1)` of `W`: its three
//! `W` corners are alternate hexagon vertices, its center is the triangle
//! center. Fine coordinates multiply everything by 3 so that centers and the
//! non-`W` vertices become integral: `W` points are `3p`, centers `3c + (1,1)`,
//! non-`W` vertices `3p + (2,2)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{pt, tri_dir_index, Pt, TRI_DIRS};

/// Level multipliers: tile centers of `P_{xλ1…λn}` are `x + M_{λ1}⋯M_{λn} Z[ω]`.
pub const M_PLUS: Pt = pt(2, 1);
pub const M_MINUS: Pt = pt(3, -1);

pub fn multiplier(sign: i8) -> Pt {
    if sign > 0 {
        M_PLUS
    } else {
        M_MINUS
    }
}

/// Child offsets: digit 0 is the central child, digit `k` sits in direction `d_{k-1}`.
pub const FLOWER: [Pt; 7] = [pt(0, 0), pt(1, 0), pt(0, 1), pt(-1, 1), pt(-1, 0), pt(0, -1), pt(1, -1)];

/// Fine offsets of the hexagon corners from the center, counterclockwise from 30°.
pub const CORNERS: [Pt; 6] = [pt(1, 1), pt(-1, 2), pt(-2, 1), pt(-1, -1), pt(1, -2), pt(2, -1)];

/// Cell holding the segment `u -> u + d_k` of a curve on `W`.
const SEGMENT_CELL: [Pt; 6] = [pt(0, 0), pt(0, 0), pt(-1, 0), pt(-1, 0), pt(0, -1), pt(0, -1)];

pub fn segment_cell(from: Pt, k: usize) -> Pt {
    from + SEGMENT_CELL[k % 6]
}

pub fn segment_cell_between(from: Pt, to: Pt) -> Option<Pt> {
    tri_dir_index(to - from).map(|k| segment_cell(from, k))
}

pub fn fine_w(p: Pt) -> Pt {
    p * 3
}

pub fn fine_center(c: Pt) -> Pt {
    c * 3 + pt(1, 1)
}

pub fn cell_corner(c: Pt, j: usize) -> Pt {
    fine_center(c) + CORNERS[j % 6]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    W,
    NotW,
}

/// Class of a hexagon vertex in fine coordinates; `None` for non-vertices.
pub fn w_class(v: Pt) -> Option<VertexClass> {
    if (v.a - v.b).rem_euclid(3) != 0 {
        return None;
    }
    match v.a.rem_euclid(3) {
        0 => Some(VertexClass::W),
        2 => Some(VertexClass::NotW),
        _ => None,
    }
}

pub fn fine_to_w(v: Pt) -> Option<Pt> {
    (w_class(v) == Some(VertexClass::W)).then(|| pt(v.a / 3, v.b / 3))
}

/// The three cells sharing a hexagon vertex (fine coordinates).
pub fn vertex_cells(v: Pt) -> [Pt; 3] {
    let (base, offs) = match w_class(v) {
        Some(VertexClass::W) => (pt(v.a / 3, v.b / 3), [pt(0, 0), pt(-1, 0), pt(0, -1)]),
        Some(VertexClass::NotW) => (pt((v.a - 2) / 3, (v.b - 2) / 3), [pt(0, 0), pt(1, 0), pt(0, 1)]),
        None => panic!("{v:?} is not a hexagon vertex"),
    };
    offs.map(|o| base + o)
}

/// Unit side of cell `cell` facing neighbor `cell + d_k`, oriented counterclockwise around the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HexSide {
    pub cell: Pt,
    pub k: u8,
}

impl HexSide {
    pub fn from(self) -> Pt {
        cell_corner(self.cell, (self.k as usize + 5) % 6)
    }

    pub fn to(self) -> Pt {
        cell_corner(self.cell, self.k as usize)
    }

    pub fn neighbor(self) -> Pt {
        self.cell + TRI_DIRS[self.k as usize]
    }
}

/// `x + m (v - x)` in fine coordinates, `x` the center of `anchor`.
pub fn phi(m: Pt, anchor: Pt, v: Pt) -> Pt {
    let x = fine_center(anchor);
    x + m.emul(v - x)
}

pub fn phi_inv(m: Pt, anchor: Pt, v: Pt) -> Option<Pt> {
    let x = fine_center(anchor);
    (v - x).ediv(m).map(|q| x + q)
}

/// Cell-level form of `phi`: centers map to centers.
pub fn phi_cell(m: Pt, anchor: Pt, c: Pt) -> Pt {
    anchor + m.emul(c - anchor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GosperTile {
    pub level: u32,
    pub center: Pt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GosperAddress {
    pub tile: GosperTile,
    /// `digits[i]` locates the level-`i` tile inside its level-`i+1` parent.
    pub digits: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileBoundary {
    /// Counterclockwise, starting at `vertices[0]`.
    pub sides: Vec<HexSide>,
    /// Fine coordinates, counterclockwise.
    pub vertices: [Pt; 6],
    pub macro_sides: Vec<Vec<HexSide>>,
}

/// Tilings `P_{xλ1…λn}` for one anchor cell `x` and one sign string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GosperFrame {
    pub anchor: Pt,
    pub signs: Vec<i8>,
}

impl GosperFrame {
    pub fn new(anchor: Pt, signs: &[i8]) -> GosperFrame {
        GosperFrame { anchor, signs: signs.to_vec() }
    }

    pub fn depth(&self) -> u32 {
        self.signs.len() as u32
    }

    /// Frame of the derived tiling `Q_{xλ1}` read in its own cell units: drops `λ1`.
    pub fn tail(&self) -> GosperFrame {
        GosperFrame { anchor: self.anchor, signs: self.signs[1..].to_vec() }
    }

    pub fn multiplier(&self, level: u32) -> Pt {
        multiplier(self.signs[level as usize - 1])
    }

    /// `M_{λ1}⋯M_{λk}`.
    pub fn scale(&self, k: u32) -> Pt {
        self.signs[..k as usize].iter().fold(pt(1, 0), |acc, &s| acc.emul(multiplier(s)))
    }

    pub fn anchor_tile(&self, level: u32) -> GosperTile {
        GosperTile { level, center: self.anchor }
    }

    pub fn address(&self, cell: Pt, level: u32) -> GosperAddress {
        let mut z = cell - self.anchor;
        let mut digits = Vec::with_capacity(level as usize);
        for i in 1..=level {
            let m = self.multiplier(i);
            let (d, q) = FLOWER
                .iter()
                .enumerate()
                .find_map(|(d, &e)| (z - e).ediv(m).map(|q| (d as u8, q)))
                .expect("flower offsets are coset representatives");
            digits.push(d);
            z = q;
        }
        GosperAddress { tile: GosperTile { level, center: self.anchor + self.scale(level).emul(z) }, digits }
    }

    pub fn cell_of(&self, addr: &GosperAddress) -> Pt {
        let level = addr.tile.level;
        let mut z = (addr.tile.center - self.anchor).ediv(self.scale(level)).expect("not a tile center");
        for i in (1..=level).rev() {
            z = z.emul(self.multiplier(i)) + FLOWER[addr.digits[i as usize - 1] as usize];
        }
        self.anchor + z
    }

    pub fn tile_of(&self, cell: Pt, level: u32) -> GosperTile {
        self.address(cell, level).tile
    }

    pub fn is_tile_center(&self, c: Pt, level: u32) -> bool {
        (c - self.anchor).ediv(self.scale(level)).is_some()
    }

    pub fn children(&self, t: GosperTile) -> [GosperTile; 7] {
        assert!(t.level >= 1, "level-0 tiles have no children");
        let s = self.scale(t.level - 1);
        FLOWER.map(|e| GosperTile { level: t.level - 1, center: t.center + s.emul(e) })
    }

    /// Center of the neighboring tile in direction `k` (counterclockwise from `e0`).
    pub fn neighbor(&self, t: GosperTile, k: usize) -> GosperTile {
        let s = self.scale(t.level);
        GosperTile { level: t.level, center: t.center + s.emul(TRI_DIRS[k % 6]) }
    }

    pub fn tile_cells(&self, t: GosperTile) -> Vec<Pt> {
        let mut cells = vec![t.center];
        for lvl in (1..=t.level).rev() {
            let s = self.scale(lvl - 1);
            cells = cells.iter().flat_map(|&c| FLOWER.map(|e| c + s.emul(e))).collect();
        }
        cells.sort();
        cells
    }

    /// Tile vertices in fine coordinates, counterclockwise, from the image of corner 0.
    pub fn tile_vertices(&self, t: GosperTile) -> [Pt; 6] {
        let shift = (t.center - self.anchor) * 3;
        let mut v = CORNERS.map(|u| fine_center(self.anchor) + u);
        for i in (1..=t.level).rev() {
            let m = self.multiplier(i);
            v = v.map(|p| phi(m, self.anchor, p));
        }
        v.map(|p| p + shift)
    }

    /// Whether a hexagon vertex is common to 3 distinct level-`level` tiles.
    pub fn is_tile_vertex(&self, v: Pt, level: u32) -> bool {
        let [a, b, c] = vertex_cells(v).map(|c| self.tile_of(c, level).center);
        a != b && b != c && a != c
    }

    pub fn boundary(&self, t: GosperTile) -> TileBoundary {
        let cells: HashSet<Pt> = self.tile_cells(t).into_iter().collect();
        let mut next = std::collections::HashMap::new();
        for &c in &cells {
            for k in 0..6u8 {
                let s = HexSide { cell: c, k };
                if !cells.contains(&s.neighbor()) {
                    next.insert(s.from(), s);
                }
            }
        }
        let vertices = self.tile_vertices(t);
        let mut sides = Vec::with_capacity(next.len());
        let mut p = vertices[0];
        loop {
            let s = next[&p];
            sides.push(s);
            p = s.to();
            if p == vertices[0] {
                break;
            }
        }
        assert_eq!(sides.len(), next.len(), "tile boundary is not a single cycle");
        let mut macro_sides = Vec::with_capacity(6);
        let mut cur = Vec::new();
        for &s in &sides {
            cur.push(s);
            if self.is_tile_vertex(s.to(), t.level) {
                macro_sides.push(std::mem::take(&mut cur));
            }
        }
        TileBoundary { sides, vertices, macro_sides }
    }
}

/// Mirror `z ↦ -z̄` on coarse points; preserves `W`, cells map by `c ↦ -c̄ - 1`.
pub fn mirror_w(p: Pt) -> Pt {
    pt(-p.a - p.b, p.b)
}

pub fn mirror_cell(c: Pt) -> Pt {
    pt(-c.a - c.b - 1, c.b)
}
