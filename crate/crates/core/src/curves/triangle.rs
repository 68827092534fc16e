//! Search for `k`-triangles covered by a triangular curve.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::EmbeddedCurve;
use crate::lattice::{pt, Pt, TRI_DIRS};

/// Side-`k` triangle with corner `corner`: `up` spans `corner + {(i, j): i, j >= 0, i + j <= k}`,
/// otherwise `corner + {(i, j): i, j <= k, i + j >= k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KTriangle {
    pub corner: Pt,
    pub k: i64,
    pub up: bool,
}

impl KTriangle {
    pub fn contains(&self, p: Pt) -> bool {
        let d = p - self.corner;
        if self.up {
            d.a >= 0 && d.b >= 0 && d.a + d.b <= self.k
        } else {
            d.a <= self.k && d.b <= self.k && d.a + d.b >= self.k
        }
    }

    pub fn points(&self) -> Vec<Pt> {
        let mut out = Vec::new();
        for i in 0..=self.k {
            for j in 0..=self.k {
                let p = self.corner + pt(i, j);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Unit sides with both endpoints in the closed triangle.
    pub fn sides(&self) -> Vec<(Pt, Pt)> {
        let mut out = Vec::new();
        for p in self.points() {
            for d in &TRI_DIRS[..3] {
                let q = p + *d;
                if self.contains(q) {
                    out.push(key(p, q));
                }
            }
        }
        out
    }
}

fn key(p: Pt, q: Pt) -> (Pt, Pt) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Some `k`-triangle all of whose sides are supports of segments of `c`.
pub fn covers_k_triangle(c: &EmbeddedCurve, k: i64) -> Option<KTriangle> {
    assert!(k >= 1);
    let used: HashSet<(Pt, Pt)> = c.edges().map(|e| e.key()).collect();
    let lo = pt(c.vertices.iter().map(|p| p.a).min()?, c.vertices.iter().map(|p| p.b).min()?);
    let hi = pt(c.vertices.iter().map(|p| p.a).max()?, c.vertices.iter().map(|p| p.b).max()?);
    for up in [true, false] {
        for a in lo.a - k..=hi.a {
            for b in lo.b - k..=hi.b {
                let t = KTriangle { corner: pt(a, b), k, up };
                if t.sides().iter().all(|s| used.contains(s)) {
                    return Some(t);
                }
            }
        }
    }
    None
}
