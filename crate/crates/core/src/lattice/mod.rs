//! Integer coordinates for the square, triangular and hexagonal lattices.
//!
//! Triangular-lattice points use the axial basis `e0 = 1`, `e1 = ω` with
//! `ω = e^{iπ/3}`, so `(a, b)` is the Eisenstein integer `a + bω` and
//! `ω² = ω - 1`. Square-lattice points use plain Cartesian pairs.

pub mod hex;

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Pt {
    pub a: i64,
    pub b: i64,
}

pub type TriVertex = Pt;

pub const fn pt(a: i64, b: i64) -> Pt {
    Pt { a, b }
}

pub const ORIGIN: Pt = pt(0, 0);
pub const ONE_PLUS_OMEGA: Pt = pt(1, 1);

pub const TRI_DIRS: [Pt; 6] = [pt(1, 0), pt(0, 1), pt(-1, 1), pt(-1, 0), pt(0, -1), pt(1, -1)];
pub const SQ_DIRS: [Pt; 4] = [pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)];

pub fn tri_dir(k: i64) -> Pt {
    TRI_DIRS[k.rem_euclid(6) as usize]
}

pub fn sq_dir(k: i64) -> Pt {
    SQ_DIRS[k.rem_euclid(4) as usize]
}

/// Index of a unit triangular-lattice vector, if it is one.
pub fn tri_dir_index(v: Pt) -> Option<usize> {
    TRI_DIRS.iter().position(|&d| d == v)
}

pub fn sq_dir_index(v: Pt) -> Option<usize> {
    SQ_DIRS.iter().position(|&d| d == v)
}

impl Pt {
    /// Eisenstein product.
    pub fn emul(self, o: Pt) -> Pt {
        pt(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)
    }

    /// Complex conjugate `a + b ω̄ = (a + b) - bω`.
    pub fn conj(self) -> Pt {
        pt(self.a + self.b, -self.b)
    }

    /// Squared Euclidean length in the triangular metric.
    pub fn norm2(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    /// Hexagonal distance to the origin: unit steps along the 6 directions.
    pub fn hex_norm(self) -> i64 {
        self.a.abs().max(self.b.abs()).max((self.a + self.b).abs())
    }

    /// Rotation by `k · π/3` about the origin.
    pub fn rot60(self, k: i64) -> Pt {
        let mut p = self;
        for _ in 0..k.rem_euclid(6) {
            p = pt(-p.b, p.a + p.b);
        }
        p
    }

    /// Rotation by `k · π/2` about the origin (square lattice).
    pub fn rot90(self, k: i64) -> Pt {
        let mut p = self;
        for _ in 0..k.rem_euclid(4) {
            p = pt(-p.b, p.a);
        }
        p
    }

    /// Exact quotient `self / m` in the Eisenstein integers, if it exists.
    pub fn ediv(self, m: Pt) -> Option<Pt> {
        let n = m.norm2();
        assert!(n != 0, "division by zero");
        let num = self.emul(m.conj());
        (num.a % n == 0 && num.b % n == 0).then(|| pt(num.a / n, num.b / n))
    }

    pub fn tri_xy(self) -> (f64, f64) {
        (self.a as f64 + 0.5 * self.b as f64, self.b as f64 * 3f64.sqrt() / 2.0)
    }

    pub fn sq_xy(self) -> (f64, f64) {
        (self.a as f64, self.b as f64)
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        pt(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        pt(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        pt(-self.a, -self.b)
    }
}

impl Mul<i64> for Pt {
    type Output = Pt;
    fn mul(self, k: i64) -> Pt {
        pt(self.a * k, self.b * k)
    }
}

impl AddAssign for Pt {
    fn add_assign(&mut self, o: Pt) {
        *self = *self + o;
    }
}

impl SubAssign for Pt {
    fn sub_assign(&mut self, o: Pt) {
        *self = *self - o;
    }
}

/// `(1 + ω)^k`.
pub fn one_plus_omega_pow(k: u32) -> Pt {
    (0..k).fold(pt(1, 0), |acc, _| acc.emul(ONE_PLUS_OMEGA))
}

/// Integer square root rounded down.
pub fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All points with hexagonal norm `<= r` around `c`, row by row.
pub fn hex_disc(c: Pt, r: i64) -> impl Iterator<Item = Pt> {
    (-r..=r).flat_map(move |b| {
        let lo = (-r).max(-r - b);
        let hi = r.min(r - b);
        (lo..=hi).map(move |a| pt(c.a + a, c.b + b))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedSide {
    pub from: Pt,
    pub to: Pt,
}

impl OrientedSide {
    pub fn new(from: Pt, to: Pt) -> OrientedSide {
        OrientedSide { from, to }
    }

    pub fn rev(self) -> OrientedSide {
        OrientedSide { from: self.to, to: self.from }
    }

    pub fn delta(self) -> Pt {
        self.to - self.from
    }

    /// Undirected key: endpoints in sorted order.
    pub fn key(self) -> (Pt, Pt) {
        if self.from <= self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        }
    }

    pub fn is_unit_tri(self) -> bool {
        tri_dir_index(self.delta()).is_some()
    }
}

/// Rotation class of a triangular-lattice side: `1` for even directions
/// (counterclockwise around up-triangles), `2` for odd ones.
pub fn tri_side_class(s: OrientedSide) -> Option<u8> {
    tri_dir_index(s.delta()).map(|k| if k % 2 == 0 { 1 } else { 2 })
}

/// The oriented sides of class `i` inside the closed hexagon `H(c, r)`.
pub fn tri_class_sides(c: Pt, r: i64, class: u8) -> Vec<OrientedSide> {
    let first = if class == 1 { 0 } else { 1 };
    let mut out = Vec::new();
    for p in hex_disc(c, r) {
        for k in [first, first + 2, first + 4] {
            let q = p + TRI_DIRS[k];
            if (q - c).hex_norm() <= r {
                out.push(OrientedSide::new(p, q));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SublatticeLevel {
    pub anchor: Pt,
    pub level: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    InV,
    InW,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("level must be at least 1")]
    LevelZero,
    #[error("vertex {v:?} is not in V_{level} of the anchor")]
    NotInParent { v: Pt, level: u32 },
}

/// Largest `k <= cap` with `v - anchor ∈ (1 + ω)^k Z[ω]`.
pub fn sublattice_depth(v: Pt, anchor: Pt, cap: u32) -> u32 {
    let mut d = v - anchor;
    let mut k = 0;
    while k < cap {
        match d.ediv(ONE_PLUS_OMEGA) {
            Some(q) => {
                d = q;
                k += 1;
            }
            None => break,
        }
    }
    k
}

/// Whether `v ∈ V_k(anchor)`.
pub fn in_v(v: Pt, anchor: Pt, k: u32) -> bool {
    sublattice_depth(v, anchor, k) == k
}

/// Classifies a vertex of `V_{level-1}` as a hexagon center (`V_level`) or a
/// hexagon vertex (`W_level`).
pub fn sublattice_member(v: Pt, lvl: SublatticeLevel) -> Result<Membership, LatticeError> {
    if lvl.level == 0 {
        return Err(LatticeError::LevelZero);
    }
    match sublattice_depth(v, lvl.anchor, lvl.level) {
        d if d == lvl.level => Ok(Membership::InV),
        d if d + 1 == lvl.level => Ok(Membership::InW),
        _ => Err(LatticeError::NotInParent { v, level: lvl.level - 1 }),
    }
}

/// Smallest hexagonal norm of a nonzero element of `(1 + ω)^k Z[ω]`.
pub fn sublattice_min_hex_norm(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        3i64.pow(k / 2)
    } else {
        2 * 3i64.pow(k / 2)
    }
}
