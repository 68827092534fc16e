//! Lattice embeddings of turn words and their geometry.

pub mod derive;
pub mod frontier;
pub mod triangle;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foldseq::{Alphabet, Family, FoldError, TurnWord};
use crate::lattice::hex::segment_cell_between;
use crate::lattice::{isqrt, sq_dir, tri_dir, OrientedSide, Pt};

pub use derive::{contraction_check, derive_geometric, derive_gosper_curve, derive_tri_curve};
pub use frontier::{frontier, frontier_formula_mismatch, frontier_recursive, Frontier};
pub use triangle::{covers_k_triangle, KTriangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("{family} curves need the {expected:?} alphabet")]
    AlphabetMismatch { family: Family, expected: Alphabet },
    #[error("start direction {dir} is out of range for {family}")]
    BadDirection { family: Family, dir: u8 },
    #[error("not a triangular folding curve")]
    NotFoldingCurve,
    #[error(transparent)]
    Fold(#[from] FoldError),
    #[error("curve vertex {0:?} is off the derived lattice")]
    OffDerivedLattice(Pt),
    #[error("frontier is not a simple path at {0:?}")]
    BrokenFrontier(Pt),
}

/// A turn word drawn on a lattice. `vertices` has one more entry than the
/// number of segments; Gosper vertices are points of `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddedCurve {
    pub family: Family,
    pub start: Pt,
    pub dir: u8,
    pub word: TurnWord,
    pub vertices: Vec<Pt>,
}

pub fn num_dirs(family: Family) -> u8 {
    match family {
        Family::Square => 4,
        _ => 6,
    }
}

pub fn unit(family: Family, k: i64) -> Pt {
    match family {
        Family::Square => sq_dir(k),
        _ => tri_dir(k),
    }
}

/// Direction change per unit letter, in direction-index steps.
fn turn_step(family: Family) -> i64 {
    match family {
        Family::Triangular => 2,
        _ => 1,
    }
}

pub fn embed(word: &TurnWord, family: Family, start: Pt, dir: u8) -> Result<EmbeddedCurve, CurveError> {
    if word.alphabet() != family.alphabet() {
        return Err(CurveError::AlphabetMismatch { family, expected: family.alphabet() });
    }
    if dir >= num_dirs(family) {
        return Err(CurveError::BadDirection { family, dir });
    }
    let step = turn_step(family);
    let mut d = dir as i64;
    let mut p = start + unit(family, d);
    let mut vertices = Vec::with_capacity(word.len() + 2);
    vertices.push(start);
    vertices.push(p);
    for &l in word.letters() {
        d += step * l as i64;
        p += unit(family, d);
        vertices.push(p);
    }
    Ok(EmbeddedCurve { family, start, dir, word: word.clone(), vertices })
}

impl EmbeddedCurve {
    /// Builds a curve from its vertex list, reading the word off the turns.
    pub fn from_vertices(family: Family, vertices: Vec<Pt>) -> Option<EmbeddedCurve> {
        let n = num_dirs(family) as i64;
        let dirs: Vec<i64> =
            vertices.windows(2).map(|w| (0..n).find(|&k| unit(family, k) == w[1] - w[0])).collect::<Option<_>>()?;
        let step = turn_step(family);
        let letters = dirs
            .windows(2)
            .map(|w| {
                let t = (w[1] - w[0]).rem_euclid(n);
                let t = if t > n / 2 { t - n } else { t };
                (t % step == 0).then_some((t / step) as i8)
            })
            .collect::<Option<Vec<i8>>>()?;
        let word = TurnWord::new(family.alphabet(), letters).ok()?;
        Some(EmbeddedCurve { family, start: vertices[0], dir: *dirs.first()? as u8, word, vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    pub fn end(&self) -> Pt {
        *self.vertices.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = OrientedSide> + '_ {
        self.vertices.windows(2).map(|w| OrientedSide::new(w[0], w[1]))
    }

    /// Direction index of segment `i`.
    pub fn dir_of(&self, i: usize) -> usize {
        let d = self.vertices[i + 1] - self.vertices[i];
        (0..num_dirs(self.family) as i64).find(|&k| unit(self.family, k) == d).unwrap() as usize
    }

    pub fn reversed(&self) -> EmbeddedCurve {
        let mut v = self.vertices.clone();
        v.reverse();
        EmbeddedCurve::from_vertices(self.family, v).unwrap()
    }

    pub fn translated(&self, t: Pt) -> EmbeddedCurve {
        let mut c = self.clone();
        c.start += t;
        for v in &mut c.vertices {
            *v += t;
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("segments {0} and {1} share a support")]
pub struct Collision(pub usize, pub usize);

/// Checks the family's occupancy rule and reports the first violating pair of segment indices.
pub fn is_self_avoiding(c: &EmbeddedCurve) -> Result<(), Collision> {
    let mut seen: HashMap<(Pt, Pt), usize> = HashMap::with_capacity(c.len());
    for (i, e) in c.edges().enumerate() {
        let key = match c.family {
            Family::Gosper => (segment_cell_between(e.from, e.to).expect("unit segment"), Pt::default()),
            _ => e.key(),
        };
        if let Some(&j) = seen.get(&key) {
            return Err(Collision(j, i));
        }
        seen.insert(key, i);
    }
    if c.family == Family::Gosper && !c.is_empty() {
        let (s, t) = (c.vertices[0], c.end());
        let last = c.len() - 1;
        for (i, e) in c.edges().enumerate() {
            if i > 0 && (e.from == s || e.to == s) {
                return Err(Collision(0, i));
            }
            if i < last && (e.from == t || e.to == t) {
                return Err(Collision(i, last));
            }
        }
    }
    Ok(())
}

/// Squared Euclidean diameter of the vertex set, exact.
pub fn diameter_sq(c: &EmbeddedCurve) -> i64 {
    let hull = convex_hull(&c.vertices);
    let dist = |p: Pt, q: Pt| {
        let d = q - p;
        match c.family {
            Family::Square => d.a * d.a + d.b * d.b,
            _ => d.norm2(),
        }
    };
    let mut best = 0;
    for (i, &p) in hull.iter().enumerate() {
        for &q in &hull[i + 1..] {
            best = best.max(dist(p, q));
        }
    }
    best
}

pub fn curve_diameter(c: &EmbeddedCurve) -> f64 {
    (diameter_sq(c) as f64).sqrt()
}

/// Convex hull of integer points in any affine frame (monotone chain).
pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut p: Vec<Pt> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: Pt, a: Pt, b: Pt| (a.a - o.a) * (b.b - o.b) - (a.b - o.b) * (b.a - o.a);
    let mut lower: Vec<Pt> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A closed interval of reals with outward-rounded endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn sqrt_of(n: i64) -> Interval {
        let s = (n as f64).sqrt();
        let r = isqrt(n);
        if r * r == n {
            return Interval::point(r as f64);
        }
        Interval { lo: s.next_down(), hi: s.next_up() }
    }
}

impl std::ops::Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }
}

impl std::ops::Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }
}

/// Product of intervals with nonnegative endpoints.
impl std::ops::Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        assert!(self.lo >= 0.0 && o.lo >= 0.0);
        Interval { lo: (self.lo * o.lo).next_down(), hi: (self.hi * o.hi).next_up() }
    }
}

/// Quotient of intervals with positive endpoints.
impl std::ops::Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(self.lo >= 0.0 && o.lo > 0.0);
        Interval { lo: (self.lo / o.hi).next_down(), hi: (self.hi / o.lo).next_up() }
    }
}

/// Enclosure of `ρ_n = [(√3)^{n-1}(4 - √3) - 1] / (√3 - 1)`.
pub fn rho_interval(n: u32) -> Interval {
    assert!(n >= 1);
    let s3 = Interval::sqrt_of(3);
    let one = Interval::point(1.0);
    let mut pow = one;
    for _ in 1..n {
        pow = pow * s3;
    }
    (pow * (Interval::point(4.0) - s3) - one) / (s3 - one)
}

pub fn rho(n: u32) -> f64 {
    let r = rho_interval(n);
    0.5 * (r.lo + r.hi)
}

pub const DIAMETER_TOLERANCE: f64 = 1e-9;

/// Whether a curve with squared diameter `d2` can satisfy `diam <= ρ_n`,
/// failing only when the violation is certain beyond the tolerance.
pub fn diameter_within_rho(d2: i64, n: u32) -> bool {
    Interval::sqrt_of(d2).lo <= rho_interval(n).hi + DIAMETER_TOLERANCE
}
