//! Coverings of the triangular lattice by translated and rotated folding curves.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{CoveringError, CoveringPatch, Window};
use crate::curves::{rho, EmbeddedCurve};
use crate::foldseq::{Family, FoldError, FoldSpec};
use crate::lattice::{in_v, one_plus_omega_pow, sublattice_min_hex_norm, tri_dir, Pt};

/// How the three half-curves through the point `x` are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alpha {
    /// Each incoming half-curve continues with the outgoing one on its left.
    Plus,
    /// Each incoming half-curve continues with the outgoing one on its right.
    Minus,
    /// No junction point.
    Zero,
}

/// Level-`k` curves of `T_{λ1…λk}` drawn from a start point and direction.
pub(crate) struct TriGen {
    signs: Vec<i8>,
    /// displacement of a level-`k` curve leaving in direction 0
    z: Vec<Pt>,
    /// hexagonal radius of a level-`k` curve around its start
    reach: Vec<i64>,
}

impl TriGen {
    pub(crate) fn new(signs: &[i8]) -> TriGen {
        let mut z = vec![tri_dir(0)];
        let mut reach = vec![1];
        for (k, &l) in signs.iter().enumerate() {
            let w = z[k];
            let b = w + w.rot60(2 * l as i64);
            let r = reach[k];
            reach.push(r.max(w.hex_norm() + r).max(b.hex_norm() + r));
            z.push(b + w);
        }
        TriGen { signs: signs.to_vec(), z, reach }
    }

    pub(crate) fn reach(&self, k: usize) -> i64 {
        self.reach[k]
    }

    /// Appends `(index, from, to)` for the segments of the level-`k` curve
    /// from `s` in direction `d` whose endpoints both lie in `H(center, r)`.
    fn emit(&self, k: usize, s: Pt, d: i64, base: u64, (center, r): (Pt, i64), out: &mut Vec<(u64, Pt, Pt)>) {
        if (s - center).hex_norm() > r + self.reach[k] {
            return;
        }
        if k == 0 {
            let t = s + tri_dir(d);
            if (t - center).hex_norm() <= r && (s - center).hex_norm() <= r {
                out.push((base, s, t));
            }
            return;
        }
        let step = 3u64.pow(k as u32 - 1);
        let w = self.z[k - 1];
        let db = d + 2 * self.signs[k - 1] as i64;
        self.emit(k - 1, s, d, base, (center, r), out);
        let s1 = s + w.rot60(d);
        self.emit(k - 1, s1, db, base + step, (center, r), out);
        let s2 = s1 + w.rot60(db);
        self.emit(k - 1, s2, d, base + 2 * step, (center, r), out);
    }

    /// Pieces of one level-`n` curve inside the window, with their truncation flags.
    pub(crate) fn pieces(&self, s: Pt, d: i64, center: Pt, r: i64) -> Vec<(EmbeddedCurve, bool)> {
        let n = self.signs.len();
        let mut segs = Vec::new();
        self.emit(n, s, d, 0, (center, r), &mut segs);
        let total = 3u64.pow(n as u32);
        let mut out = Vec::new();
        let mut i = 0;
        while i < segs.len() {
            let mut j = i + 1;
            while j < segs.len() && segs[j].0 == segs[j - 1].0 + 1 {
                j += 1;
            }
            let mut verts = vec![segs[i].1];
            verts.extend(segs[i..j].iter().map(|x| x.2));
            let whole = (j - i) as u64 == total;
            out.push((EmbeddedCurve::from_vertices(Family::Triangular, verts).expect("unit steps"), !whole));
            i = j;
        }
        out
    }
}

fn check_tri(spec: &FoldSpec) -> Result<(), CoveringError> {
    if spec.family() != Family::Triangular {
        return Err(FoldError::WrongFamily { expected: Family::Triangular, got: spec.family() }.into());
    }
    Ok(())
}

fn class_dirs(class: u8) -> Result<[i64; 3], CoveringError> {
    match class {
        1 => Ok([0, 2, 4]),
        2 => Ok([1, 3, 5]),
        c => Err(CoveringError::BadClass(c)),
    }
}

/// Points of `V_n(anchor)` within hexagonal distance `h` of `center`.
fn v_points_near(anchor: Pt, n: u32, center: Pt, h: i64) -> Vec<Pt> {
    let g = one_plus_omega_pow(n);
    let scale = 3f64.sqrt().powi(n as i32);
    let q = (((anchor - center).hex_norm() + h) as f64 / scale * 2.0 / 3f64.sqrt()).ceil() as i64 + 1;
    crate::lattice::hex_disc(Pt::default(), q)
        .map(|z| anchor + g.emul(z))
        .filter(|p| (*p - center).hex_norm() <= h)
        .collect()
}

/// Window intersection of `C(Λ_n, x)`, `n = spec.len()`: the curves
/// `T_{Λ_n}` leaving every point of `V_n(x)` in the three class-`i` directions.
fn raw_patch(
    spec: &FoldSpec,
    anchor: Pt,
    class: u8,
    center: Pt,
    r: i64,
) -> Result<Vec<(EmbeddedCurve, bool)>, CoveringError> {
    check_tri(spec)?;
    let dirs = class_dirs(class)?;
    let gen = TriGen::new(spec.signs());
    let n = spec.len();
    let mut out = Vec::new();
    for s in v_points_near(anchor, n as u32, center, r + gen.reach(n)) {
        for &d in &dirs {
            out.extend(gen.pieces(s, d, center, r));
        }
    }
    Ok(out)
}

fn sorted(mut pieces: Vec<(EmbeddedCurve, bool)>) -> (Vec<EmbeddedCurve>, Vec<bool>) {
    pieces.sort_by_key(|a| (a.0.start, a.0.dir, a.0.len()));
    pieces.into_iter().unzip()
}

/// Restriction of `C(Λ_n, anchor)` (class `class`) to `H(anchor, radius)`.
pub fn build_tri_covering_patch(
    spec: &FoldSpec,
    anchor: Pt,
    class: u8,
    radius: i64,
) -> Result<CoveringPatch, CoveringError> {
    check_tri(spec)?;
    let needed = rho(spec.len() as u32);
    if (radius as f64) < needed - crate::curves::DIAMETER_TOLERANCE {
        return Err(CoveringError::WindowTooSmall { radius, needed });
    }
    let (curves, truncated) = sorted(raw_patch(spec, anchor, class, anchor, radius)?);
    Ok(CoveringPatch {
        family: Family::Triangular,
        window: Window::Hexagon { center: anchor, radius },
        curves,
        truncated,
        spec: spec.clone(),
        anchor,
        x_prefix: vec![anchor],
    })
}

/// Smallest `n` such that `V_n(x)` meets `H(x, r)` only in `x`.
pub fn limit_depth_for_radius(r: i64) -> u32 {
    (0..).find(|&n| sublattice_min_hex_norm(n) > r).unwrap()
}

/// Restriction of `C^α(Λ, X)` to `H(x_0, radius)`, computed from `C(Λ_N, x_N)`
/// where `N = spec.len()` and the prefix is `x_0 … x_N`. For `α = ±` the three
/// curves through `x_N` are joined there; the prefix must end in a constant
/// run and `x_N` must be the only point of `V_N(x_N)` in the window.
pub fn connect_limit_patch(
    spec: &FoldSpec,
    prefix: &[Pt],
    alpha: Alpha,
    class: u8,
    radius: i64,
) -> Result<CoveringPatch, CoveringError> {
    check_tri(spec)?;
    let n = spec.len();
    if prefix.len() != n + 1 {
        return Err(CoveringError::InvalidPrefix(format!("expected {} points, got {}", n + 1, prefix.len())));
    }
    for k in 0..n {
        if !in_v(prefix[k + 1], prefix[k], k as u32) {
            return Err(CoveringError::InvalidPrefix(format!("x_{} is not in V_{k}(x_{k})", k + 1)));
        }
    }
    let x = prefix[n];
    let center = prefix[0];
    let constant_tail = n >= 1 && prefix[n] == prefix[n - 1];
    match alpha {
        Alpha::Plus | Alpha::Minus if !constant_tail => {
            return Err(CoveringError::InconsistentPrefix("a junction needs x_{N-1} = x_N".into()))
        }
        Alpha::Zero if constant_tail => {
            return Err(CoveringError::InconsistentPrefix("α = 0 needs x_{N-1} != x_N".into()))
        }
        _ => {}
    }
    let g = one_plus_omega_pow(n as u32);
    let others = v_points_near(x, n as u32, center, radius);
    if alpha != Alpha::Zero && others.iter().any(|&p| p != x) {
        return Err(CoveringError::InconsistentPrefix(format!(
            "V_{n}(x_N) has points other than x_N in the window (generator {g:?})"
        )));
    }
    let pieces = raw_patch(spec, x, class, center, radius)?;
    let pieces = if alpha == Alpha::Zero { pieces } else { join_at(pieces, x, alpha) };
    let (curves, truncated) = sorted(pieces);
    Ok(CoveringPatch {
        family: Family::Triangular,
        window: Window::Hexagon { center, radius },
        curves,
        truncated,
        spec: spec.clone(),
        anchor: x,
        x_prefix: prefix.to_vec(),
    })
}

fn join_at(pieces: Vec<(EmbeddedCurve, bool)>, x: Pt, alpha: Alpha) -> Vec<(EmbeddedCurve, bool)> {
    let turn = if alpha == Alpha::Plus { 2 } else { 4 };
    let mut outgoing: HashMap<usize, EmbeddedCurve> = HashMap::new();
    let mut rest = Vec::new();
    for (c, t) in pieces {
        if c.start == x {
            outgoing.insert(c.dir as usize, c);
        } else {
            rest.push((c, t));
        }
    }
    let mut out = Vec::with_capacity(rest.len());
    for (c, t) in rest {
        if c.end() != x {
            out.push((c, t));
            continue;
        }
        let d = c.dir_of(c.len() - 1);
        let o = outgoing.remove(&((d + turn) % 6)).expect("one outgoing half-curve per direction");
        let mut verts = c.vertices;
        verts.extend_from_slice(&o.vertices[1..]);
        out.push((EmbeddedCurve::from_vertices(Family::Triangular, verts).unwrap(), true));
    }
    assert!(outgoing.is_empty(), "unmatched outgoing half-curves at the junction");
    out
}
